//! Wind-invariant loitering for fixed-wing aircraft.
//!
//! Ground tracks under constant wind are trochoids. This crate builds closed
//! (periodic) trochoid paths, measures their spatial extent, derives the
//! smallest disk that holds a periodic path for every wind, and maps where
//! such a disk fits over terrain.

pub mod error;
pub mod exec;
pub mod extent;
pub mod format;
pub mod geometry;
pub mod path;
pub mod periodic;
pub mod roots;
pub mod safe_set;
pub mod terrain;
pub mod trochoid;

pub use error::{LoiterError, Result};
pub use exec::Exec;
pub use extent::{
    extent_bruteforce, extent_figure_eight, extent_mushroom, extent_sweep, find_switching_point,
    min_extent, ExtentCurvePoint, ExtentFamily, SwitchingPoint,
};
pub use path::{sample_path, PathType, PeriodicPath, Segment};
pub use periodic::{build_figure_eight, solve_rsl_lsr_periodic, solve_rsr_lsl_periodic};
pub use safe_set::{
    representative_path, safe_set_radius, verify_wind_invariance, InvarianceReport, SafeSet,
    Strategy, VerifyOptions,
};
pub use terrain::{
    coverage, load_dem, valid_region_raster, ClearanceConstraints, DemGrid, ValidityRaster,
};
pub use trochoid::{
    trochoid_state, Pose2H, StraightSegment, TrochoidArc, Turn, VehicleParams, WindCondition,
};
