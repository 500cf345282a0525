mod common;

use common::{params, rugged_grid};
use loiter_core::exec::Exec;
use loiter_core::terrain::{
    coverage, coverage_table, default_radii, footprint_minmax, load_dem, valid_region_raster,
    valid_region_raster_with, write_dem, ClearanceConstraints, DemGrid,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exhaustive footprint: every cell in the grid tested against the disk.
fn footprint_oracle(dem: &DemGrid, cell: (usize, usize), radius: f64) -> (f64, f64, bool, bool) {
    let (mut lo, mut hi, mut nodata) = (f64::INFINITY, f64::NEG_INFINITY, false);
    let cs = dem.cell_size;
    let mut inside = 0usize;
    for r in 0..dem.n_rows {
        for c in 0..dem.n_cols {
            let dx = (c as f64 - cell.1 as f64) * cs;
            let dy = (r as f64 - cell.0 as f64) * cs;
            if (dx * dx + dy * dy).sqrt() <= radius * (1.0 + 1e-12) {
                inside += 1;
                match dem.get(r, c) {
                    Some(z) => {
                        lo = lo.min(z);
                        hi = hi.max(z);
                    }
                    None => nodata = true,
                }
            }
        }
    }
    // Full disk cell count, independent of grid bounds.
    let reach = (radius / cs).floor() as i64;
    let full = (-reach..=reach)
        .flat_map(|a| (-reach..=reach).map(move |b| (a, b)))
        .filter(|&(a, b)| (((a * a + b * b) as f64).sqrt() * cs) <= radius * (1.0 + 1e-12))
        .count();
    (lo, hi, nodata, inside < full)
}

fn random_dem(seed: u64, rows: usize, cols: usize, nodata_frac: f64) -> DemGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = rugged_grid(&mut rng, rows, cols, 10.0);
    for i in 0..rows * cols {
        if rng.gen_bool(nodata_frac) {
            g.elevations[i] = g.nodata;
            g.nodata_mask[i] = true;
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn footprint_matches_exhaustive_scan(
        seed in any::<u64>(),
        row in 0usize..30,
        col in 0usize..25,
        radius in 5.0..120.0f64,
    ) {
        let g = random_dem(seed, 30, 25, 0.01);
        let s = footprint_minmax(&g, (row, col), radius);
        let (lo, hi, nodata, truncated) = footprint_oracle(&g, (row, col), radius);
        prop_assert_eq!(s.has_nodata, nodata);
        prop_assert_eq!(s.truncated, truncated);
        if lo.is_finite() {
            prop_assert_eq!((s.min, s.max), (lo, hi));
        }
    }

    #[test]
    fn raster_agrees_with_footprint_rule(seed in any::<u64>()) {
        let g = random_dem(seed, 40, 35, 0.005);
        let radii = [25.0, 60.0, 90.0];
        let cl = ClearanceConstraints::default();
        let v = valid_region_raster(&g, &radii, &cl).unwrap();
        for r in 0..g.n_rows {
            for c in 0..g.n_cols {
                for (t, &d) in radii.iter().enumerate() {
                    let s = footprint_minmax(&g, (r, c), d);
                    let ok = !g.is_nodata(r, c)
                        && !s.has_nodata
                        && !s.truncated
                        && s.max - s.min <= cl.max_relief();
                    prop_assert_eq!(v.is_valid(r, c, t + 1), ok);
                }
            }
        }
    }

    #[test]
    fn nesting_and_antitone_coverage(seed in any::<u64>()) {
        let g = random_dem(seed, 60, 60, 0.002);
        let radii = [15.0, 40.0, 66.67, 107.76];
        let v = valid_region_raster(&g, &radii, &ClearanceConstraints::new(30.0, 80.0).unwrap()).unwrap();
        let table = coverage_table(&v);
        for w in table.windows(2) {
            prop_assert!(w[1].coverage <= w[0].coverage);
            prop_assert!(w[1].valid_cells <= w[0].valid_cells);
        }
        for r in 0..g.n_rows {
            for c in 0..g.n_cols {
                for t in 2..=radii.len() {
                    prop_assert!(!v.is_valid(r, c, t) || v.is_valid(r, c, t - 1));
                }
            }
        }
    }

    #[test]
    fn rotation_equivariance(seed in any::<u64>(), rows in 20usize..50, cols in 20usize..50) {
        let g = random_dem(seed, rows, cols, 0.003);
        let radii = [20.0, 55.0];
        let cl = ClearanceConstraints::default();
        let a = valid_region_raster(&g, &radii, &cl).unwrap().rotated_cw();
        let b = valid_region_raster(&g.rotated_cw(), &radii, &cl).unwrap();
        prop_assert_eq!(a.codes, b.codes);
        prop_assert_eq!(a.nodata_mask, b.nodata_mask);
    }

    #[test]
    fn deterministic_across_execution_modes(seed in any::<u64>()) {
        let g = random_dem(seed, 80, 70, 0.002);
        let radii = [30.0, 70.0];
        let cl = ClearanceConstraints::default();
        let a = valid_region_raster_with(&g, &radii, &cl, Exec::Sequential).unwrap();
        let b = valid_region_raster_with(&g, &radii, &cl, Exec::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn dem_round_trip_random_grid() {
    let g = random_dem(7, 100, 100, 0.01);
    let mut buf = Vec::new();
    write_dem(&g, &mut buf).unwrap();
    let back = load_dem(buf.as_slice()).unwrap();
    assert_eq!(back, g);
}

#[test]
fn flat_grid_interior_fraction() {
    let g = DemGrid::from_fn(1000, 1000, 10.0, |_, _| 400.0).unwrap();
    let v = valid_region_raster(&g, &[100.0], &ClearanceConstraints::default()).unwrap();
    assert_eq!(coverage(&v, 100.0).unwrap(), 0.9604);
}

#[test]
fn default_radii_are_ascending_tiers() {
    let r = default_radii(&params());
    assert_eq!(r.len(), 4);
    assert!(r.windows(2).all(|w| w[0] < w[1]));
    assert!((r[1] / r[0] - 1.616_286_435_845_512).abs() < 1e-9);
}
