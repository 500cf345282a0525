//! Radius of extent of periodic paths: closed forms per family, a sampling
//! oracle, and the switching point between the mushroom and figure-eight
//! families.
//!
//! The radius of extent is half the largest distance between two points on a
//! path. For mushroom paths it is attained between the two along-wind extrema
//! of the trochoid loop, where `cos φ = −η`:
//!
//! ```text
//! D(η) = R·(sqrt(1 − η²) + η·arccos(−η))
//! ```
//!
//! For figure-eight paths it is attained between the outer apexes of the two
//! loops: `D(η) = R·(1 + cos φ̄(η))`.

use std::fmt;

use crate::error::{LoiterError, Result};
use crate::exec::Exec;
use crate::geometry::{diameter, diameter_pairwise};
use crate::path::PeriodicPath;
use crate::periodic::figure_eight_heading;
use crate::roots::bisect;
use crate::trochoid::VehicleParams;

/// Mushroom-family radius of extent, `η ∈ [0, 1]`.
pub fn extent_mushroom(eta: f64, params: &VehicleParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(LoiterError::Domain(format!(
            "mushroom extent needs eta in [0, 1], got {eta}"
        )));
    }
    Ok(params.min_turn_radius() * ((1.0 - eta * eta).sqrt() + eta * (-eta).acos()))
}

/// Figure-eight radius of extent, `η ∈ [0, 1)`; `2R` at `η = 0` by continuity.
pub fn extent_figure_eight(eta: f64, params: &VehicleParams) -> Result<f64> {
    if !(0.0..1.0).contains(&eta) {
        return Err(LoiterError::Domain(format!(
            "figure-eight extent needs eta in [0, 1), got {eta}"
        )));
    }
    if eta == 0.0 {
        return Ok(2.0 * params.min_turn_radius());
    }
    Ok(params.min_turn_radius() * (1.0 + figure_eight_heading(eta)?.cos()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterMethod {
    /// Convex hull plus rotating calipers, `O(n log n)`.
    Hull,
    /// Exhaustive pairwise scan, `O(n²)`.
    Pairwise,
}

/// Radius of extent of a closed path from `n ≥ 100` uniform time samples.
pub fn extent_bruteforce(path: &PeriodicPath, n: usize) -> Result<f64> {
    extent_bruteforce_with(path, n, DiameterMethod::Hull, Exec::default())
}

pub fn extent_bruteforce_with(
    path: &PeriodicPath,
    n: usize,
    method: DiameterMethod,
    exec: Exec,
) -> Result<f64> {
    if n < 100 {
        return Err(LoiterError::InvalidArgument(format!(
            "extent sampling needs at least 100 samples, got {n}"
        )));
    }
    path.ensure_closed()?;
    let pts = path.sample_points_wind(n)?;
    let d = match method {
        DiameterMethod::Hull => diameter(&pts),
        DiameterMethod::Pairwise => diameter_pairwise(&pts, exec),
    };
    Ok(0.5 * d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtentFamily {
    Mushroom,
    FigureEight,
}

impl fmt::Display for ExtentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtentFamily::Mushroom => "Mushroom",
            ExtentFamily::FigureEight => "FigureEight",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtentCurvePoint {
    pub eta: f64,
    pub d_mushroom: f64,
    pub d_figure_eight: f64,
    pub d_min_of_two: f64,
    pub selected: ExtentFamily,
}

/// Extents of both families at `η ∈ [0, 1)` and the smaller one. Ties select
/// the figure-eight.
pub fn min_extent(eta: f64, params: &VehicleParams) -> Result<ExtentCurvePoint> {
    let d_mushroom = extent_mushroom(eta, params)?;
    let d_figure_eight = extent_figure_eight(eta, params)?;
    let (d_min_of_two, selected) = if d_figure_eight <= d_mushroom {
        (d_figure_eight, ExtentFamily::FigureEight)
    } else {
        (d_mushroom, ExtentFamily::Mushroom)
    };
    Ok(ExtentCurvePoint {
        eta,
        d_mushroom,
        d_figure_eight,
        d_min_of_two,
        selected,
    })
}

/// Largest wind ratio sampled by sweeps and verification grids.
pub const ETA_SWEEP_MAX: f64 = 1.0 - 1e-3;

/// `n ≥ 2` curve points on the uniform grid `η_i = i·(1 − 10⁻³)/(n − 1)`.
pub fn extent_sweep(params: &VehicleParams, n: usize, exec: Exec) -> Result<Vec<ExtentCurvePoint>> {
    if n < 2 {
        return Err(LoiterError::InvalidArgument(format!(
            "sweep needs at least 2 points, got {n}"
        )));
    }
    exec.map_range(n, |i| {
        min_extent(i as f64 * ETA_SWEEP_MAX / (n - 1) as f64, params)
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchingPoint {
    pub eta_star: f64,
    /// Extent at the switching point, the worst case of the switching strategy.
    pub d_min: f64,
    /// `d_min / R_min`.
    pub d_min_ratio: f64,
}

const SWITCH_BRACKET: (f64, f64) = (0.05, 0.95);

/// Wind ratio where both families have equal extent, by bisection on their
/// difference over `[0.05, 0.95]` to `|Δη| < tol`.
pub fn find_switching_point(params: &VehicleParams, tol: f64) -> Result<SwitchingPoint> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(LoiterError::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let g = |eta: f64| {
        let m = extent_mushroom(eta, params).unwrap_or(f64::NAN);
        let f = extent_figure_eight(eta, params).unwrap_or(f64::NAN);
        m - f
    };
    let (lo, hi) = SWITCH_BRACKET;
    let eta_star = bisect(g, lo, hi, tol).map_err(|e| {
        LoiterError::Numerical(format!("extent curves do not cross on [{lo}, {hi}]: {e}"))
    })?;
    let d_min = extent_mushroom(eta_star, params)?;
    Ok(SwitchingPoint {
        eta_star,
        d_min,
        d_min_ratio: d_min / params.min_turn_radius(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit() -> VehicleParams {
        VehicleParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn mushroom_limits_and_midpoint() {
        let p = VehicleParams::new(20.0, 66.67).unwrap();
        assert!((extent_mushroom(0.0, &p).unwrap() - 66.67).abs() < 1e-12);
        assert!((extent_mushroom(1.0, &p).unwrap() - PI * 66.67).abs() < 1e-9);
        let r = extent_mushroom(0.5, &unit()).unwrap();
        assert!((r - 1.913_222_954_981_036_4).abs() < 1e-12, "{r}");
        assert!(extent_mushroom(1.01, &p).is_err());
        assert!(extent_mushroom(-0.01, &p).is_err());
    }

    #[test]
    fn figure_eight_limits_and_midpoint() {
        let p = unit();
        assert_eq!(extent_figure_eight(0.0, &p).unwrap(), 2.0);
        assert!((extent_figure_eight(1e-12, &p).unwrap() - 2.0).abs() < 1e-9);
        assert!(extent_figure_eight(1.0 - 1e-9, &p).unwrap() < 1e-8);
        let r = extent_figure_eight(0.5, &p).unwrap();
        assert!((r - 1.319_022_524_142_619).abs() < 1e-10, "{r}");
        assert!(extent_figure_eight(1.0, &p).is_err());
    }

    #[test]
    fn monotone_on_grid() {
        let p = unit();
        let grid: Vec<f64> = (0..1000).map(|i| i as f64 / 1000.0).collect();
        for w in grid.windows(2) {
            assert!(extent_mushroom(w[1], &p).unwrap() > extent_mushroom(w[0], &p).unwrap());
            assert!(
                extent_figure_eight(w[1], &p).unwrap() < extent_figure_eight(w[0], &p).unwrap()
            );
        }
    }

    #[test]
    fn selection() {
        let p = unit();
        assert_eq!(
            min_extent(0.1, &p).unwrap().selected,
            ExtentFamily::Mushroom
        );
        assert_eq!(
            min_extent(0.8, &p).unwrap().selected,
            ExtentFamily::FigureEight
        );
        let c = min_extent(0.0, &p).unwrap();
        assert_eq!(
            (c.d_mushroom, c.d_figure_eight, c.d_min_of_two),
            (1.0, 2.0, 1.0)
        );
    }

    #[test]
    fn switching_point() {
        let p = unit();
        let s = find_switching_point(&p, 1e-12).unwrap();
        // Frozen from an independent scipy brentq solve of the same crossing.
        assert!(
            (s.eta_star - 0.352_388_077_292_868).abs() < 1e-9,
            "{}",
            s.eta_star
        );
        assert!((s.d_min_ratio - 1.616_286_435_845_512).abs() < 1e-9);
        let m = extent_mushroom(s.eta_star, &p).unwrap();
        let f = extent_figure_eight(s.eta_star, &p).unwrap();
        assert!((m - f).abs() < 1e-9);
        let c = min_extent(s.eta_star, &p).unwrap();
        assert!((c.d_mushroom - c.d_figure_eight).abs() < 1e-9);
        assert!(find_switching_point(&p, 0.0).is_err());
    }

    #[test]
    fn sweep_is_ordered_and_mode_independent() {
        let p = unit();
        let a = extent_sweep(&p, 64, Exec::Sequential).unwrap();
        let b = extent_sweep(&p, 64, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].eta, 0.0);
        assert!((a[63].eta - ETA_SWEEP_MAX).abs() < 1e-15);
        let peak = a.iter().map(|c| c.d_min_of_two).fold(0.0, f64::max);
        assert!(peak <= find_switching_point(&p, 1e-12).unwrap().d_min + 1e-12);
    }
}
