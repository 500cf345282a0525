//! Figure-eight periodic paths.
//!
//! Starting at the crossing point with relative heading `φ̄`, a left loop of
//! heading change `2π − 2φ̄` returns to the crossing point with heading `−φ̄`
//! when its air-relative chord `2R·sin φ̄` equals the wind drift over the loop.
//! A mirror-image right loop then restores heading `φ̄`. The loop condition
//! reduces to `η(π − φ̄) − sin φ̄ = 0`, whose interior root in `(0, π)` is
//! unique because the left-hand side is convex on `[0, π]`, positive at 0 and
//! zero at `π` with positive slope there.

use std::f64::consts::PI;

use crate::error::{LoiterError, Result};
use crate::path::{Chain, PathType, PeriodicPath};
use crate::roots::bisect;
use crate::trochoid::{to_wind_frame, Pose2H, Turn, VehicleParams, WindCondition};

/// Residual of the figure-eight heading condition.
pub fn figure_eight_residual(eta: f64, phi: f64) -> f64 {
    eta * (PI - phi) - phi.sin()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureEightSolution {
    /// Relative heading `φ̄` at the crossing point.
    pub phi_bar: f64,
    /// Duration of each loop, `R(2π − 2φ̄)/V_a`.
    pub arc_duration: f64,
    pub eta: f64,
}

/// Interior root `φ̄ ∈ (0, π)` of `η(π − φ̄) − sin φ̄ = 0` for `η ∈ (0, 1)`.
pub fn figure_eight_heading(eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(LoiterError::Domain(format!(
            "figure-eight heading needs a wind ratio in (0, 1), got {eta}"
        )));
    }
    let f = |phi: f64| figure_eight_residual(eta, phi);
    // Upper bracket: walk towards π until f < 0 (the interior root sits at
    // roughly π − sqrt(6(1 − η)) for η near 1).
    let mut gap = PI / 2.0;
    while f(PI - gap) >= 0.0 {
        gap *= 0.5;
        if gap < 1e-300 {
            return Err(LoiterError::Numerical(format!(
                "could not bracket the figure-eight heading for eta = {eta}"
            )));
        }
    }
    let mut phi = bisect(f, 0.0, PI - gap, 1e-15)?;
    // Newton polish.
    for _ in 0..4 {
        let d = -eta - phi.cos();
        if d == 0.0 {
            break;
        }
        let next = phi - f(phi) / d;
        if !(next > 0.0 && next < PI) {
            break;
        }
        phi = next;
    }
    Ok(phi)
}

pub fn solve_figure_eight_heading(eta: f64, params: &VehicleParams) -> Result<FigureEightSolution> {
    let phi_bar = figure_eight_heading(eta)?;
    Ok(FigureEightSolution {
        phi_bar,
        arc_duration: params.min_turn_radius() * (2.0 * PI - 2.0 * phi_bar) / params.airspeed(),
        eta,
    })
}

/// Figure-eight whose crossing point is the world-frame `center`. The path
/// starts there, flies the left loop, a zero-length straight, then the right
/// loop, and is symmetric about the wind axis through `center`.
///
/// `t_b` follows the opposite-turn convention with `k = 0`: `t_2π − t_A`.
pub fn build_figure_eight(
    params: &VehicleParams,
    wind: &WindCondition,
    center: (f64, f64),
) -> Result<PeriodicPath> {
    let sol = solve_figure_eight_heading(wind.eta(), params)?;
    let c = to_wind_frame(Pose2H::new(center.0, center.1, 0.0), wind);
    let start = Pose2H::new(c.x, c.y, sol.phi_bar);
    let segments = Chain::new(start, wind.eta(), params)
        .arc(Turn::Left, sol.arc_duration)
        .straight(0.0)
        .arc(Turn::Right, sol.arc_duration)
        .finish();
    let path = PeriodicPath::from_segments(
        PathType::FigureEight,
        segments,
        *wind,
        *params,
        0,
        sol.arc_duration,
        params.turn_period() - sol.arc_duration,
    );
    path.ensure_closed()?;
    Ok(path)
}
