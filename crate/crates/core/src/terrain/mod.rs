//! Terrain-aware loiter placement over gridded elevation data.

mod dem;
mod validity;

pub use dem::{load_dem, rotate_cw, write_dem, DemGrid, DEFAULT_NODATA};
pub use validity::{
    coverage, coverage_table, footprint_minmax, pgm_gray, valid_region_raster,
    valid_region_raster_with, write_coverage_csv, write_validity_asc, write_validity_pgm,
    ClearanceConstraints, CoverageRow, FootprintStats, ValidityRaster, COVERAGE_CSV_HEADER,
    VALIDITY_NODATA,
};

use std::f64::consts::PI;

use crate::safe_set::safe_set_radius;
use crate::trochoid::VehicleParams;

/// Standard comparison radii, ascending: `R`, the safe-set radius, `2R`, `πR`.
pub fn default_radii(params: &VehicleParams) -> Vec<f64> {
    let r = params.min_turn_radius();
    vec![r, safe_set_radius(params), 2.0 * r, PI * r]
}
