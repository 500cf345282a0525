//! Loiter-disk validity over a DEM.
//!
//! A cell is valid at radius `D` when every DEM cell whose center lies within
//! horizontal distance `D` of its center (the *footprint*) is inside the grid,
//! holds data, and the footprint relief `max − min` is at most
//! `d_max − d_min`, i.e. some altitude keeps the vehicle between `d_min` and
//! `d_max` above every footprint cell.

use std::io::Write;

use crate::error::{LoiterError, Result};
use crate::exec::Exec;
use crate::format::fmt_sig;

use super::dem::{rotate_cw, write_header, DemGrid};

/// Vertical clearance band above terrain, in m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClearanceConstraints {
    pub d_min: f64,
    pub d_max: f64,
}

impl ClearanceConstraints {
    pub fn new(d_min: f64, d_max: f64) -> Result<Self> {
        if !(d_min >= 0.0 && d_min < d_max && d_max.is_finite()) {
            return Err(LoiterError::InvalidArgument(format!(
                "clearance band needs 0 <= d_min < d_max, got [{d_min}, {d_max}]"
            )));
        }
        Ok(Self { d_min, d_max })
    }

    /// Largest footprint relief that still admits a loiter altitude.
    pub fn max_relief(&self) -> f64 {
        self.d_max - self.d_min
    }
}

impl Default for ClearanceConstraints {
    fn default() -> Self {
        Self {
            d_min: 50.0,
            d_max: 120.0,
        }
    }
}

/// Min/max elevation over a footprint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FootprintStats {
    pub min: f64,
    pub max: f64,
    /// Some footprint cell holds nodata.
    pub has_nodata: bool,
    /// Some footprint cell falls outside the grid.
    pub truncated: bool,
}

/// Disk offsets `(dr, dc)` with `dr² + dc² ≤ limit`, sorted by squared
/// distance so that every smaller disk is a prefix.
struct DiskOffsets {
    offsets: Vec<(i64, i64)>,
    dist2: Vec<i64>,
}

impl DiskOffsets {
    fn new(radius_cells: f64) -> Self {
        let reach = radius_cells.floor().max(0.0) as i64;
        let limit = radius_cells * radius_cells;
        let mut v: Vec<(i64, i64, i64)> = Vec::new();
        for dr in -reach..=reach {
            for dc in -reach..=reach {
                let d2 = dr * dr + dc * dc;
                if d2 as f64 <= limit {
                    v.push((d2, dr, dc));
                }
            }
        }
        v.sort_unstable();
        Self {
            offsets: v.iter().map(|&(_, r, c)| (r, c)).collect(),
            dist2: v.iter().map(|&(d, _, _)| d).collect(),
        }
    }

    /// Number of offsets inside a disk of `radius_cells`.
    fn prefix_len(&self, radius_cells: f64) -> usize {
        let limit = radius_cells * radius_cells;
        self.dist2.partition_point(|&d| d as f64 <= limit)
    }
}

fn radius_in_cells(radius: f64, cell_size: f64) -> f64 {
    radius / cell_size
}

/// Min/max over all cells whose center is within `radius` of `cell`'s center.
pub fn footprint_minmax(dem: &DemGrid, cell: (usize, usize), radius: f64) -> FootprintStats {
    let disk = DiskOffsets::new(radius_in_cells(radius, dem.cell_size));
    let mut stats = FootprintStats {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        has_nodata: false,
        truncated: false,
    };
    for &(dr, dc) in &disk.offsets {
        let r = cell.0 as i64 + dr;
        let c = cell.1 as i64 + dc;
        if r < 0 || c < 0 || r >= dem.n_rows as i64 || c >= dem.n_cols as i64 {
            stats.truncated = true;
            continue;
        }
        match dem.get(r as usize, c as usize) {
            Some(z) => {
                stats.min = stats.min.min(z);
                stats.max = stats.max.max(z);
            }
            None => stats.has_nodata = true,
        }
    }
    stats
}

/// Per-cell validity tiers for a list of ascending radii.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityRaster {
    pub n_rows: usize,
    pub n_cols: usize,
    pub cell_size: f64,
    pub origin: (f64, f64),
    /// Tested radii in m, ascending.
    pub radii: Vec<f64>,
    /// 0 = invalid at every radius; `t ≥ 1` = valid up to and including
    /// `radii[t − 1]`.
    pub codes: Vec<u8>,
    /// Cells that are nodata in the source DEM (code 0, excluded from coverage).
    pub nodata_mask: Vec<bool>,
}

impl ValidityRaster {
    pub fn code(&self, row: usize, col: usize) -> u8 {
        self.codes[row * self.n_cols + col]
    }

    /// Whether `(row, col)` is valid at tier `tier` (1-based).
    pub fn is_valid(&self, row: usize, col: usize, tier: usize) -> bool {
        tier >= 1 && self.code(row, col) as usize >= tier
    }

    /// 1-based tier of `radius` (matched within 1e-9 relative).
    pub fn tier_of(&self, radius: f64) -> Result<usize> {
        self.radii
            .iter()
            .position(|&r| (r - radius).abs() <= 1e-9 * r.abs().max(1.0))
            .map(|i| i + 1)
            .ok_or_else(|| {
                LoiterError::InvalidArgument(format!("radius {radius} is not a tested tier"))
            })
    }

    pub fn rotated_cw(&self) -> ValidityRaster {
        ValidityRaster {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            cell_size: self.cell_size,
            origin: self.origin,
            radii: self.radii.clone(),
            codes: rotate_cw(&self.codes, self.n_rows, self.n_cols),
            nodata_mask: rotate_cw(&self.nodata_mask, self.n_rows, self.n_cols),
        }
    }
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty() {
        return Err(LoiterError::InvalidArgument("radius list is empty".into()));
    }
    if radii.len() > u8::MAX as usize {
        return Err(LoiterError::InvalidArgument(format!(
            "at most {} radius tiers supported",
            u8::MAX
        )));
    }
    if radii.iter().any(|&r| !(r.is_finite() && r > 0.0)) {
        return Err(LoiterError::InvalidArgument(
            "radii must be positive".into(),
        ));
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LoiterError::InvalidArgument(
            "radii must be strictly ascending".into(),
        ));
    }
    Ok(())
}

pub fn valid_region_raster(
    dem: &DemGrid,
    radii: &[f64],
    clearance: &ClearanceConstraints,
) -> Result<ValidityRaster> {
    valid_region_raster_with(dem, radii, clearance, Exec::default())
}

/// Classify every cell; rows are processed independently so the result does
/// not depend on `exec`.
pub fn valid_region_raster_with(
    dem: &DemGrid,
    radii: &[f64],
    clearance: &ClearanceConstraints,
    exec: Exec,
) -> Result<ValidityRaster> {
    check_radii(radii)?;
    let cells: Vec<f64> = radii
        .iter()
        .map(|&r| radius_in_cells(r, dem.cell_size))
        .collect();
    let disk = DiskOffsets::new(*cells.last().expect("non-empty"));
    let tiers: Vec<(usize, i64)> = cells
        .iter()
        .map(|&rc| (disk.prefix_len(rc), rc.floor() as i64))
        .collect();
    let max_relief = clearance.max_relief();
    let (rows, cols) = (dem.n_rows as i64, dem.n_cols as i64);

    let mut codes = vec![0u8; dem.n_rows * dem.n_cols];
    exec.for_each_chunk(&mut codes, dem.n_cols, |row, out| {
        let r0 = row as i64;
        for (col, code) in out.iter_mut().enumerate() {
            let c0 = col as i64;
            if dem.is_nodata(row, col) {
                *code = 0;
                continue;
            }
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            let mut scanned = 0usize;
            let mut valid_tiers = 0u8;
            'tiers: for &(len, reach) in &tiers {
                if r0 - reach < 0 || c0 - reach < 0 || r0 + reach >= rows || c0 + reach >= cols {
                    break;
                }
                for &(dr, dc) in &disk.offsets[scanned..len] {
                    let i = ((r0 + dr) * cols + (c0 + dc)) as usize;
                    if dem.nodata_mask[i] {
                        break 'tiers;
                    }
                    let z = dem.elevations[i];
                    lo = lo.min(z);
                    hi = hi.max(z);
                }
                scanned = len;
                if hi - lo > max_relief {
                    break;
                }
                valid_tiers += 1;
            }
            *code = valid_tiers;
        }
    });

    Ok(ValidityRaster {
        n_rows: dem.n_rows,
        n_cols: dem.n_cols,
        cell_size: dem.cell_size,
        origin: dem.origin,
        radii: radii.to_vec(),
        codes,
        nodata_mask: dem.nodata_mask.clone(),
    })
}

/// One row of the coverage report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageRow {
    pub radius_m: f64,
    /// 1-based tier.
    pub tier: usize,
    pub valid_cells: usize,
    pub total_cells: usize,
    pub coverage: f64,
}

fn coverage_row(raster: &ValidityRaster, tier: usize) -> CoverageRow {
    let total_cells = raster.nodata_mask.iter().filter(|&&m| !m).count();
    let valid_cells = raster
        .codes
        .iter()
        .zip(&raster.nodata_mask)
        .filter(|&(&c, &m)| !m && c as usize >= tier)
        .count();
    CoverageRow {
        radius_m: raster.radii[tier - 1],
        tier,
        valid_cells,
        total_cells,
        coverage: if total_cells == 0 {
            0.0
        } else {
            valid_cells as f64 / total_cells as f64
        },
    }
}

/// Fraction of data cells valid at the tested radius `radius`.
pub fn coverage(raster: &ValidityRaster, radius: f64) -> Result<f64> {
    Ok(coverage_row(raster, raster.tier_of(radius)?).coverage)
}

/// Coverage rows for every tier, ascending radius.
pub fn coverage_table(raster: &ValidityRaster) -> Vec<CoverageRow> {
    (1..=raster.radii.len())
        .map(|t| coverage_row(raster, t))
        .collect()
}

/// Nodata value used in validity `.asc` output.
pub const VALIDITY_NODATA: i32 = -1;

/// Write tier codes as an ESRI ASCII grid (nodata cells as -1).
pub fn write_validity_asc<W: Write>(raster: &ValidityRaster, mut w: W) -> Result<()> {
    write_header(
        &mut w,
        raster.n_rows,
        raster.n_cols,
        raster.origin,
        raster.cell_size,
        VALIDITY_NODATA as f64,
    )?;
    let mut line = String::new();
    for r in 0..raster.n_rows {
        line.clear();
        for c in 0..raster.n_cols {
            if c > 0 {
                line.push(' ');
            }
            let i = r * raster.n_cols + c;
            if raster.nodata_mask[i] {
                line.push_str("-1");
            } else {
                line.push_str(&raster.codes[i].to_string());
            }
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Gray level for a tier code: nodata → 0, code `c` of `n` tiers →
/// `40 + 215·c/n` (integer division), so invalid cells are 40 and cells valid
/// at every radius are 255.
pub fn pgm_gray(code: u8, n_tiers: usize, nodata: bool) -> u8 {
    if nodata {
        0
    } else {
        (40 + 215 * code as usize / n_tiers.max(1)) as u8
    }
}

/// Write the raster as a binary 8-bit PGM (P5), north row first.
pub fn write_validity_pgm<W: Write>(raster: &ValidityRaster, mut w: W) -> Result<()> {
    write!(w, "P5\n{} {}\n255\n", raster.n_cols, raster.n_rows)?;
    let n = raster.radii.len();
    let bytes: Vec<u8> = raster
        .codes
        .iter()
        .zip(&raster.nodata_mask)
        .map(|(&c, &m)| pgm_gray(c, n, m))
        .collect();
    w.write_all(&bytes)?;
    Ok(())
}

pub const COVERAGE_CSV_HEADER: &str = "radius_m,tier,valid_cells,total_cells,coverage";

pub fn write_coverage_csv<W: Write>(rows: &[CoverageRow], mut w: W) -> Result<()> {
    writeln!(w, "{COVERAGE_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_sig(r.radius_m),
            r.tier,
            r.valid_cells,
            r.total_cells,
            fmt_sig(r.coverage)
        )?;
    }
    Ok(())
}
