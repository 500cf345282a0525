//! Elevation rasters and the ESRI ASCII grid format.
//!
//! ```text
//! ncols         4
//! nrows         3
//! xllcorner     2600000
//! yllcorner     1200000
//! cellsize      10
//! NODATA_value  -9999
//! 512.1 513.0 ...      <- north row first
//! ```
//!
//! `xllcenter`/`yllcenter` are accepted in place of the corner keys and
//! shifted by half a cell. `NODATA_value` defaults to -9999. Data rows must
//! each hold exactly `ncols` values.

use std::io::{BufRead, Write};

use crate::error::{LoiterError, Result};

pub const DEFAULT_NODATA: f64 = -9999.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DemGrid {
    pub n_rows: usize,
    pub n_cols: usize,
    pub cell_size: f64,
    /// Lower-left corner `(x, y)`.
    pub origin: (f64, f64),
    pub nodata: f64,
    /// Row-major, row 0 is the northernmost row.
    pub elevations: Vec<f64>,
    /// `true` where the cell holds the nodata sentinel.
    pub nodata_mask: Vec<bool>,
}

impl DemGrid {
    pub fn new(
        n_rows: usize,
        n_cols: usize,
        cell_size: f64,
        origin: (f64, f64),
        nodata: f64,
        elevations: Vec<f64>,
    ) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(LoiterError::InvalidArgument(
                "grid must be non-empty".into(),
            ));
        }
        if !(cell_size.is_finite() && cell_size > 0.0) {
            return Err(LoiterError::InvalidArgument(format!(
                "cell size must be positive, got {cell_size}"
            )));
        }
        if elevations.len() != n_rows * n_cols {
            return Err(LoiterError::InvalidArgument(format!(
                "expected {} elevations, got {}",
                n_rows * n_cols,
                elevations.len()
            )));
        }
        let nodata_mask = elevations
            .iter()
            .map(|&z| z == nodata || z.is_nan())
            .collect();
        Ok(Self {
            n_rows,
            n_cols,
            cell_size,
            origin,
            nodata,
            elevations,
            nodata_mask,
        })
    }

    /// Grid with origin at `(0, 0)` and elevations from `f(row, col)`.
    pub fn from_fn(
        n_rows: usize,
        n_cols: usize,
        cell_size: f64,
        f: impl Fn(usize, usize) -> f64,
    ) -> Result<Self> {
        let z = (0..n_rows * n_cols)
            .map(|i| f(i / n_cols, i % n_cols))
            .collect();
        Self::new(n_rows, n_cols, cell_size, (0.0, 0.0), DEFAULT_NODATA, z)
    }

    #[inline]
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.n_cols + col
    }

    pub fn get(&self, row: usize, col: usize) -> Option<f64> {
        let i = self.index(row, col);
        (!self.nodata_mask[i]).then_some(self.elevations[i])
    }

    pub fn is_nodata(&self, row: usize, col: usize) -> bool {
        self.nodata_mask[self.index(row, col)]
    }

    pub fn valid_cell_count(&self) -> usize {
        self.nodata_mask.iter().filter(|&&m| !m).count()
    }

    /// Copy rotated 90° clockwise.
    pub fn rotated_cw(&self) -> DemGrid {
        DemGrid {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            cell_size: self.cell_size,
            origin: self.origin,
            nodata: self.nodata,
            elevations: rotate_cw(&self.elevations, self.n_rows, self.n_cols),
            nodata_mask: rotate_cw(&self.nodata_mask, self.n_rows, self.n_cols),
        }
    }
}

/// Rotate a row-major `rows × cols` grid 90° clockwise.
pub fn rotate_cw<T: Copy>(data: &[T], rows: usize, cols: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(data.len());
    for r in 0..cols {
        for c in 0..rows {
            out.push(data[(rows - 1 - c) * cols + r]);
        }
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> LoiterError {
    LoiterError::Parse {
        line,
        message: message.into(),
    }
}

/// Parse an ESRI ASCII grid.
pub fn load_dem<R: BufRead>(reader: R) -> Result<DemGrid> {
    let mut ncols = None;
    let mut nrows = None;
    let mut xll = None;
    let mut yll = None;
    let mut centered = (false, false);
    let mut cellsize = None;
    let mut nodata = DEFAULT_NODATA;
    let mut values: Vec<f64> = Vec::new();
    let mut rows_read = 0usize;
    let mut last_line = 0usize;

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let first = trimmed.split_whitespace().next().unwrap_or_default();
        if rows_read == 0 && first.starts_with(|c: char| c.is_ascii_alphabetic()) {
            let mut it = trimmed.split_whitespace();
            let key = it.next().unwrap_or_default().to_ascii_lowercase();
            let val = it
                .next()
                .ok_or_else(|| parse_err(lineno, format!("header key `{key}` has no value")))?;
            if it.next().is_some() {
                return Err(parse_err(lineno, format!("trailing tokens after `{key}`")));
            }
            let num: f64 = val.parse().map_err(|_| {
                parse_err(
                    lineno,
                    format!("header `{key}` value `{val}` is not a number"),
                )
            })?;
            let count = |v: f64| -> Result<usize> {
                if v >= 1.0 && v.fract() == 0.0 {
                    Ok(v as usize)
                } else {
                    Err(parse_err(
                        lineno,
                        format!("`{key}` must be a positive integer"),
                    ))
                }
            };
            match key.as_str() {
                "ncols" => ncols = Some(count(num)?),
                "nrows" => nrows = Some(count(num)?),
                "xllcorner" => xll = Some(num),
                "yllcorner" => yll = Some(num),
                "xllcenter" => {
                    xll = Some(num);
                    centered.0 = true;
                }
                "yllcenter" => {
                    yll = Some(num);
                    centered.1 = true;
                }
                "cellsize" => {
                    if num.is_nan() || num <= 0.0 {
                        return Err(parse_err(lineno, "cellsize must be positive"));
                    }
                    cellsize = Some(num)
                }
                "nodata_value" => nodata = num,
                _ => return Err(parse_err(lineno, format!("unknown header key `{key}`"))),
            }
            continue;
        }

        let (Some(nc), Some(nr), Some(_)) = (ncols, nrows, cellsize) else {
            return Err(parse_err(
                lineno,
                "data before complete header (need ncols, nrows, cellsize)",
            ));
        };
        if xll.is_none() || yll.is_none() {
            return Err(parse_err(lineno, "header lacks xllcorner/yllcorner"));
        }
        if rows_read == nr {
            return Err(parse_err(lineno, format!("more than {nr} data rows")));
        }
        let before = values.len();
        for tok in trimmed.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("non-numeric cell value `{tok}`")))?;
            values.push(v);
        }
        let got = values.len() - before;
        if got != nc {
            return Err(parse_err(
                lineno,
                format!("expected {nc} values, found {got}"),
            ));
        }
        rows_read += 1;
    }

    let (Some(nc), Some(nr), Some(cs), Some(mut x0), Some(mut y0)) =
        (ncols, nrows, cellsize, xll, yll)
    else {
        return Err(parse_err(last_line, "incomplete header"));
    };
    if rows_read != nr {
        return Err(parse_err(
            last_line,
            format!("expected {nr} data rows, found {rows_read}"),
        ));
    }
    if centered.0 {
        x0 -= 0.5 * cs;
    }
    if centered.1 {
        y0 -= 0.5 * cs;
    }
    DemGrid::new(nr, nc, cs, (x0, y0), nodata, values)
}

pub(crate) fn write_header<W: Write>(
    w: &mut W,
    n_rows: usize,
    n_cols: usize,
    origin: (f64, f64),
    cell_size: f64,
    nodata: f64,
) -> std::io::Result<()> {
    writeln!(w, "ncols         {n_cols}")?;
    writeln!(w, "nrows         {n_rows}")?;
    writeln!(w, "xllcorner     {}", origin.0)?;
    writeln!(w, "yllcorner     {}", origin.1)?;
    writeln!(w, "cellsize      {cell_size}")?;
    writeln!(w, "NODATA_value  {nodata}")
}

/// Write an ESRI ASCII grid. Values use the shortest representation that
/// parses back to the identical `f64`.
pub fn write_dem<W: Write>(dem: &DemGrid, mut w: W) -> Result<()> {
    write_header(
        &mut w,
        dem.n_rows,
        dem.n_cols,
        dem.origin,
        dem.cell_size,
        dem.nodata,
    )?;
    let mut line = String::new();
    for r in 0..dem.n_rows {
        line.clear();
        for c in 0..dem.n_cols {
            if c > 0 {
                line.push(' ');
            }
            let i = dem.index(r, c);
            let v = if dem.nodata_mask[i] {
                dem.nodata
            } else {
                dem.elevations[i]
            };
            line.push_str(&v.to_string());
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}
