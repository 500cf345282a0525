//! Kinematic primitives for a curvature-constrained vehicle in uniform wind.
//!
//! All solver geometry lives in the *wind frame*: the x-axis points along the
//! wind direction, so the wind adds `V_w` to the x-velocity only. World-frame
//! quantities enter and leave through [`to_wind_frame`] / [`from_wind_frame`].
//!
//! Constant-rate turns in this frame trace trochoids:
//!
//! ```text
//! x(t) = R/δ · sin(δωt + φ0) + V_w·t + x_c
//! y(t) = -R/δ · cos(δωt + φ0) + y_c
//! ψ(t) = δωt + ψ0
//! ```
//!
//! with `R = V_a/ω` the minimum turn radius and `(x_c, y_c)` the trochoid
//! center fixed by the start pose.

use std::f64::consts::{PI, TAU};

use crate::error::{LoiterError, Result};

/// Wrap an angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed smallest difference `a - b`, wrapped into `(-π, π]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Airspeed and turn-radius limits of the vehicle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleParams {
    airspeed: f64,
    min_turn_radius: f64,
    max_yaw_rate: f64,
    turn_period: f64,
}

impl VehicleParams {
    pub fn new(airspeed: f64, min_turn_radius: f64) -> Result<Self> {
        if !(airspeed.is_finite() && airspeed > 0.0) {
            return Err(LoiterError::Domain(format!(
                "airspeed must be positive, got {airspeed}"
            )));
        }
        if !(min_turn_radius.is_finite() && min_turn_radius > 0.0) {
            return Err(LoiterError::Domain(format!(
                "minimum turn radius must be positive, got {min_turn_radius}"
            )));
        }
        let max_yaw_rate = airspeed / min_turn_radius;
        Ok(Self {
            airspeed,
            min_turn_radius,
            max_yaw_rate,
            turn_period: TAU / max_yaw_rate,
        })
    }

    /// `V_a` in m/s.
    pub fn airspeed(&self) -> f64 {
        self.airspeed
    }

    /// `R_min` in m.
    pub fn min_turn_radius(&self) -> f64 {
        self.min_turn_radius
    }

    /// `ω = V_a / R_min` in rad/s.
    pub fn max_yaw_rate(&self) -> f64 {
        self.max_yaw_rate
    }

    /// Time for a full heading revolution at maximum yaw rate, `2π/ω`.
    pub fn turn_period(&self) -> f64 {
        self.turn_period
    }
}

/// Uniform wind, given as the ratio `η = V_w/V_a` and the direction the wind
/// blows towards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindCondition {
    eta: f64,
    psi_w: f64,
}

impl WindCondition {
    pub fn new(eta: f64, psi_w: f64) -> Result<Self> {
        if !(eta.is_finite() && (0.0..1.0).contains(&eta)) {
            return Err(LoiterError::Domain(format!(
                "wind ratio must lie in [0, 1), got {eta}"
            )));
        }
        if !psi_w.is_finite() {
            return Err(LoiterError::Domain("wind direction must be finite".into()));
        }
        Ok(Self {
            eta,
            psi_w: normalize_angle(psi_w),
        })
    }

    pub fn calm() -> Self {
        Self {
            eta: 0.0,
            psi_w: 0.0,
        }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn psi_w(&self) -> f64 {
        self.psi_w
    }

    /// `V_w = η·V_a`.
    pub fn wind_speed(&self, params: &VehicleParams) -> f64 {
        self.eta * params.airspeed()
    }
}

/// Planar position and heading.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Pose2H {
    pub x: f64,
    pub y: f64,
    pub psi: f64,
}

impl Pose2H {
    pub fn new(x: f64, y: f64, psi: f64) -> Self {
        Self { x, y, psi }
    }

    /// Same pose with heading wrapped into `[0, 2π)`.
    pub fn normalized(self) -> Self {
        Self {
            psi: normalize_angle(self.psi),
            ..self
        }
    }

    pub fn distance(&self, other: &Pose2H) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Turn direction `δ`: left (counter-clockwise, `+1`) or right (`-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    pub fn sign(self) -> f64 {
        match self {
            Turn::Left => 1.0,
            Turn::Right => -1.0,
        }
    }

    pub fn from_sign(delta: i32) -> Result<Self> {
        match delta {
            1 => Ok(Turn::Left),
            -1 => Ok(Turn::Right),
            d => Err(LoiterError::InvalidArgument(format!(
                "turn direction must be +1 or -1, got {d}"
            ))),
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }
}

/// Rotate a world-frame pose into the wind frame (rotation by `-ψ_w` about
/// the origin).
pub fn to_wind_frame(pose: Pose2H, wind: &WindCondition) -> Pose2H {
    let (s, c) = wind.psi_w().sin_cos();
    Pose2H {
        x: c * pose.x + s * pose.y,
        y: -s * pose.x + c * pose.y,
        psi: normalize_angle(pose.psi - wind.psi_w()),
    }
}

/// Inverse of [`to_wind_frame`].
pub fn from_wind_frame(pose: Pose2H, wind: &WindCondition) -> Pose2H {
    let (s, c) = wind.psi_w().sin_cos();
    Pose2H {
        x: c * pose.x - s * pose.y,
        y: s * pose.x + c * pose.y,
        psi: normalize_angle(pose.psi + wind.psi_w()),
    }
}

/// Ground velocity in the wind frame for a relative heading `phi = ψ - ψ_w`.
pub fn ground_velocity_wind_frame(phi: f64, eta: f64, params: &VehicleParams) -> (f64, f64) {
    let va = params.airspeed();
    (va * (phi.cos() + eta), va * phi.sin())
}

/// World-frame ground velocity of a vehicle with world-frame `pose`.
pub fn ground_velocity(pose: &Pose2H, wind: &WindCondition, params: &VehicleParams) -> (f64, f64) {
    let (vx, vy) = ground_velocity_wind_frame(pose.psi - wind.psi_w(), wind.eta(), params);
    let (s, c) = wind.psi_w().sin_cos();
    (c * vx - s * vy, s * vx + c * vy)
}

/// A constant-rate turn at maximum yaw rate, in the wind frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrochoidArc {
    /// Wind-frame start pose; heading is the relative heading `φ_t0`.
    pub start: Pose2H,
    pub direction: Turn,
    pub duration: f64,
    /// Trochoid center `(x_t0, y_t0)`.
    pub center: (f64, f64),
}

impl TrochoidArc {
    pub fn new(start: Pose2H, direction: Turn, duration: f64, params: &VehicleParams) -> Self {
        let r = params.min_turn_radius() / direction.sign();
        let (s, c) = start.psi.sin_cos();
        Self {
            start,
            direction,
            duration,
            center: (start.x - r * s, start.y + r * c),
        }
    }

    pub fn phi_t0(&self) -> f64 {
        self.start.psi
    }

    /// Closed-form state at local time `t`, heading left unwrapped.
    pub fn eval(&self, eta: f64, params: &VehicleParams, t: f64) -> Pose2H {
        let delta = self.direction.sign();
        let r = params.min_turn_radius() / delta;
        let phi = delta * params.max_yaw_rate() * t + self.start.psi;
        let (s, c) = phi.sin_cos();
        Pose2H {
            x: r * s + eta * params.airspeed() * t + self.center.0,
            y: -r * c + self.center.1,
            psi: phi,
        }
    }

    pub fn end(&self, eta: f64, params: &VehicleParams) -> Pose2H {
        self.eval(eta, params, self.duration)
    }
}

/// Wind-frame state on `arc` at time `t ∈ [0, duration]`, heading in `[0, 2π)`.
pub fn trochoid_state(
    arc: &TrochoidArc,
    wind: &WindCondition,
    params: &VehicleParams,
    t: f64,
) -> Result<Pose2H> {
    if !(0.0..=arc.duration).contains(&t) {
        return Err(LoiterError::Domain(format!(
            "time {t} outside arc duration [0, {}]",
            arc.duration
        )));
    }
    Ok(arc.eval(wind.eta(), params, t).normalized())
}

/// Constant-heading flight, in the wind frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StraightSegment {
    pub start: Pose2H,
    pub duration: f64,
    /// Direction of the ground track (course over ground).
    pub ground_course: f64,
}

impl StraightSegment {
    pub fn new(start: Pose2H, duration: f64, eta: f64) -> Self {
        let (s, c) = start.psi.sin_cos();
        Self {
            start,
            duration,
            ground_course: normalize_angle(s.atan2(c + eta)),
        }
    }

    pub fn eval(&self, eta: f64, params: &VehicleParams, t: f64) -> Pose2H {
        let (vx, vy) = ground_velocity_wind_frame(self.start.psi, eta, params);
        Pose2H {
            x: self.start.x + vx * t,
            y: self.start.y + vy * t,
            psi: self.start.psi,
        }
    }

    pub fn end(&self, eta: f64, params: &VehicleParams) -> Pose2H {
        self.eval(eta, params, self.duration)
    }
}
