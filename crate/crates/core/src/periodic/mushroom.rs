//! Periodic RSR/LSL ("mushroom") paths.
//!
//! The first and last arcs belong to one trochoid, so over `n` full heading
//! revolutions the arcs drift downwind by `V_w·n·t_2π` and return to the same
//! height. A straight segment parallel to the wind axis cancels the drift:
//! the vehicle faces directly upwind on it (relative heading `π`), which is
//! the only straight heading with a negative along-wind ground speed.

use std::f64::consts::{PI, TAU};

use crate::error::{LoiterError, Result};
use crate::path::{Chain, PathType, PeriodicPath};
use crate::trochoid::{to_wind_frame, Pose2H, Turn, VehicleParams, WindCondition};

use super::check_k;

/// Headings within this of upwind count as upwind.
const UPWIND_SNAP: f64 = 1e-10;

/// Duration of a straight segment flown at relative `heading` that cancels the
/// drift of `revolutions` full turns. Negative when no such segment exists
/// (heading with positive along-wind ground speed).
pub fn straight_closing_duration(
    eta: f64,
    heading: f64,
    revolutions: u32,
    params: &VehicleParams,
) -> f64 {
    let drift = eta * params.airspeed() * revolutions as f64 * params.turn_period();
    let along = params.airspeed() * (heading.cos() + eta);
    if drift == 0.0 {
        return 0.0;
    }
    -drift / along
}

/// Slope `α` of the connecting line in the general two-trochoid solution,
/// evaluated from the trochoid centers and start/end relative headings.
#[allow(clippy::too_many_arguments)]
pub fn same_turn_line_slope(
    center1: (f64, f64),
    center2: (f64, f64),
    phi1: f64,
    phi2: f64,
    k: i32,
    delta2: Turn,
    eta: f64,
    params: &VehicleParams,
) -> f64 {
    let vw = eta * params.airspeed();
    let num = center2.1 - center1.1;
    let den = center2.0 - center1.0
        + vw * (phi1 - phi2 + 2.0 * k as f64 * PI) / (delta2.sign() * params.max_yaw_rate());
    (num / den).atan()
}

/// Periodic RSR (`turn = Right`) or LSL (`turn = Left`) path through the
/// world-frame `start` pose.
///
/// `k` selects the number of heading revolutions `n = 1 + δ·k`; `n < 1` has no
/// solution and yields `Ok(None)`. The path is
/// `arc(t_A) → straight(t_S) → arc(n·t_2π − t_A)` where `t_A ∈ [0, t_2π)` turns
/// the vehicle to face upwind and `t_S = η·n·t_2π / (1 − η)`. With `η = 0` the
/// straight segment has zero length and the path is a circle.
///
/// `t_b` on the returned path holds `t_A + n·t_2π`.
pub fn solve_rsr_lsl_periodic(
    params: &VehicleParams,
    wind: &WindCondition,
    start: Pose2H,
    turn: Turn,
    k: i32,
) -> Result<Option<PeriodicPath>> {
    check_k(k)?;
    let delta = turn.sign() as i32;
    let revolutions = 1 + delta * k;
    if revolutions < 1 {
        return Ok(None);
    }
    let revolutions = revolutions as u32;

    let start_w = to_wind_frame(start, wind);
    let omega = params.max_yaw_rate();
    let period = params.turn_period();
    let eta = wind.eta();

    // Heading change needed to face upwind, turning in direction δ. A start
    // already facing upwind up to rounding must not pick up a spare loop.
    let mut turn_angle = (turn.sign() * (PI - start_w.psi)).rem_euclid(TAU);
    if TAU - turn_angle < UPWIND_SNAP {
        turn_angle = 0.0;
    }
    let t_a = turn_angle / omega;
    let t_s = straight_closing_duration(eta, PI, revolutions, params);
    let t_rest = revolutions as f64 * period - t_a;
    if t_s < 0.0 || t_rest < 0.0 {
        return Ok(None);
    }

    let segments = Chain::new(start_w, eta, params)
        .arc(turn, t_a)
        .straight(t_s)
        .arc(turn, t_rest)
        .finish();
    let path_type = match turn {
        Turn::Right => PathType::MushroomRsr,
        Turn::Left => PathType::MushroomLsl,
    };
    let path = PeriodicPath::from_segments(
        path_type,
        segments,
        *wind,
        *params,
        k,
        t_a,
        t_a + revolutions as f64 * period,
    );
    path.ensure_closed().map_err(|e| {
        LoiterError::Numerical(format!("mushroom construction failed to close: {e}"))
    })?;
    Ok(Some(path))
}
