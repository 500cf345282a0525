//! Periodic RSL/LSR paths: opposite-direction turns joined by a straight.
//!
//! The first trochoid starts at the start pose; the closing trochoid is
//! parameterized so that the vehicle reaches the start pose again at its clock
//! value `t_2π`. The straight leaves trochoid 1 at time `t_A` and joins
//! trochoid 2 at clock `t_B = (δ1/δ2)·t_A + (k/δ2)·t_2π + t_2π`, which makes the
//! headings at both tangent points equal. The remaining unknown `t_A` is a root
//! of
//!
//! ```text
//! f(t_A) = E·cos(δ1·ω·t_A + φ) + F(t_A)·sin(δ1·ω·t_A + φ) − G
//! ```
//!
//! which states that the displacement between the tangent points is parallel
//! to the ground velocity on the straight. Durations follow as
//! `arc(δ1, t_A) → straight(t_S) → arc(δ2, t_2π − t_B)`.

use crate::error::{LoiterError, Result};
use crate::path::{Chain, PathType, PeriodicPath};
use crate::roots::{bisect, newton, NewtonOptions, NewtonOutcome};
use crate::trochoid::{to_wind_frame, Pose2H, Turn, VehicleParams, WindCondition};

use super::check_k;

/// Number of uniform Newton seeds over `[0, t_2π)`.
pub const DEFAULT_SEEDS: usize = 32;
const MAX_NEWTON_ITER: usize = 50;
/// Newton step tolerance, relative to `t_2π`.
const STEP_TOL: f64 = 1e-12;
/// Derivative floor below which Newton hands over to bisection (relative).
const DERIVATIVE_FLOOR: f64 = 1e-14;
/// Roots closer than this (relative to `t_2π`) are the same root.
const DEDUP_TOL: f64 = 1e-8;
/// Slack on the sign of the straight and arc durations (relative to `t_2π`).
const DURATION_SLACK: f64 = 1e-9;

/// Coefficients `E`, `F`, `G` of the root function at one value of `t_A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsbRootCoefficients {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl BsbRootCoefficients {
    pub fn scale(&self) -> f64 {
        self.e.abs().max(self.f.abs()).max(self.g.abs())
    }
}

/// The root-finding problem for one start pose, turn pair and winding index.
#[derive(Debug, Clone, Copy)]
pub struct BsbProblem {
    /// Wind-frame start pose.
    pub start: Pose2H,
    pub first_turn: Turn,
    pub k: i32,
    pub eta: f64,
    pub params: VehicleParams,
    /// Centers of trochoid 1 and of trochoid 2 (closure-at-`t_2π` convention).
    center1: (f64, f64),
    center2: (f64, f64),
}

impl BsbProblem {
    pub fn new(start_w: Pose2H, first_turn: Turn, k: i32, eta: f64, params: VehicleParams) -> Self {
        let r = params.min_turn_radius();
        let d1 = first_turn.sign();
        let d2 = -d1;
        let (s, c) = start_w.psi.sin_cos();
        let vw_period = eta * params.airspeed() * params.turn_period();
        Self {
            start: start_w,
            first_turn,
            k,
            eta,
            params,
            center1: (start_w.x - r / d1 * s, start_w.y + r / d1 * c),
            center2: (start_w.x - r / d2 * s - vw_period, start_w.y + r / d2 * c),
        }
    }

    fn deltas(&self) -> (f64, f64) {
        let d1 = self.first_turn.sign();
        (d1, -d1)
    }

    fn vw(&self) -> f64 {
        self.eta * self.params.airspeed()
    }

    /// Heading on the straight, as a function of `t_A`.
    fn heading(&self, t_a: f64) -> f64 {
        self.deltas().0 * self.params.max_yaw_rate() * t_a + self.start.psi
    }

    /// Clock on trochoid 2 at the tangent point.
    pub fn t_b(&self, t_a: f64) -> f64 {
        let (d1, d2) = self.deltas();
        let period = self.params.turn_period();
        d1 / d2 * t_a + self.k as f64 / d2 * period + period
    }

    pub fn coefficients(&self, t_a: f64) -> BsbRootCoefficients {
        let (d1, d2) = self.deltas();
        let va = self.params.airspeed();
        let omega = self.params.max_yaw_rate();
        let vw = self.vw();
        // Center offsets with both trochoids referenced to clock 0 at the
        // start pose; the t_2π drift shift is carried by the F term.
        let dx = self.center2.0 + vw * self.params.turn_period() - self.center1.0;
        let dy = self.center2.1 - self.center1.1;
        let winding = 2.0 * self.k as f64 * std::f64::consts::PI / (d2 * omega);
        BsbRootCoefficients {
            e: va * (vw * (d1 - d2) / (d1 * d2 * omega) - dy),
            f: va * (dx + vw * (t_a * (d1 / d2 - 1.0) + winding)),
            g: vw * dy + va * va * (d2 - d1) / (d1 * d2 * omega),
        }
    }

    pub fn residual(&self, t_a: f64) -> f64 {
        let c = self.coefficients(t_a);
        let (s, co) = self.heading(t_a).sin_cos();
        c.e * co + c.f * s - c.g
    }

    pub fn residual_derivative(&self, t_a: f64) -> f64 {
        let (d1, d2) = self.deltas();
        let c = self.coefficients(t_a);
        let rate = d1 * self.params.max_yaw_rate();
        let df = self.params.airspeed() * self.vw() * (d1 / d2 - 1.0);
        let (s, co) = self.heading(t_a).sin_cos();
        rate * (-c.e * s + c.f * co) + df * s
    }

    /// Tangent points on trochoid 1 and trochoid 2 for a given `t_A`.
    pub fn tangent_points(&self, t_a: f64) -> ((f64, f64), (f64, f64)) {
        let (d1, d2) = self.deltas();
        let r = self.params.min_turn_radius();
        let vw = self.vw();
        let h = self.heading(t_a);
        let t_b = self.t_b(t_a);
        let h2 = d2 * self.params.max_yaw_rate() * t_b + self.start.psi;
        let p1 = (
            r / d1 * h.sin() + vw * t_a + self.center1.0,
            -r / d1 * h.cos() + self.center1.1,
        );
        let p2 = (
            r / d2 * h2.sin() + vw * t_b + self.center2.0,
            -r / d2 * h2.cos() + self.center2.1,
        );
        (p1, p2)
    }

    /// Straight duration from projecting the tangent-point displacement onto
    /// the ground velocity of the straight.
    pub fn straight_duration(&self, t_a: f64) -> f64 {
        let (p1, p2) = self.tangent_points(t_a);
        let h = self.heading(t_a);
        let va = self.params.airspeed();
        let v = (va * (h.cos() + self.eta), va * h.sin());
        let d = (p2.0 - p1.0, p2.1 - p1.1);
        (d.0 * v.0 + d.1 * v.1) / (v.0 * v.0 + v.1 * v.1)
    }

    /// All distinct roots of the residual in `[0, t_2π)`.
    ///
    /// Newton-Raphson runs from `seeds` uniform start values. A seed whose
    /// iteration escapes, stalls on a flat derivative or runs out of
    /// iterations falls back to bisection on its seed interval when that
    /// interval brackets a sign change. Any bracketing interval still without
    /// a root afterwards is bisected as well.
    pub fn roots(&self, seeds: usize) -> Vec<f64> {
        let period = self.params.turn_period();
        let seeds = seeds.max(1);
        let h = period / seeds as f64;
        let f = |t: f64| self.residual(t);
        let df = |t: f64| self.residual_derivative(t);
        let scale = self
            .coefficients(0.0)
            .scale()
            .max(self.coefficients(period).scale());
        let opts = NewtonOptions {
            max_iter: MAX_NEWTON_ITER,
            step_tol: STEP_TOL * period,
            derivative_floor: DERIVATIVE_FLOOR * scale / period,
            bounds: (0.0, period),
        };
        let bisect_tol = STEP_TOL * period;

        let intervals: Vec<(f64, f64)> = (0..seeds)
            .map(|i| {
                (
                    i as f64 * h,
                    if i + 1 == seeds {
                        period
                    } else {
                        (i + 1) as f64 * h
                    },
                )
            })
            .collect();
        let brackets = |(a, b): (f64, f64)| {
            let (fa, fb) = (f(a), f(b));
            fa == 0.0 || fb == 0.0 || fa.signum() != fb.signum()
        };

        let mut roots: Vec<f64> = Vec::new();
        let push = |r: f64, roots: &mut Vec<f64>| {
            if (0.0..period).contains(&r)
                && !roots.iter().any(|q| (q - r).abs() < DEDUP_TOL * period)
            {
                roots.push(r);
            }
        };

        for &(a, b) in &intervals {
            match newton(f, df, a, &opts) {
                NewtonOutcome::Converged(r) => push(r, &mut roots),
                _ => {
                    if brackets((a, b)) {
                        if let Ok(r) = bisect(f, a, b, bisect_tol) {
                            push(r, &mut roots);
                        }
                    }
                }
            }
        }
        for &(a, b) in &intervals {
            let covered = roots.iter().any(|&r| r >= a && r <= b);
            if !covered && brackets((a, b)) {
                if let Ok(r) = bisect(f, a, b, bisect_tol) {
                    push(r, &mut roots);
                }
            }
        }
        roots.sort_by(f64::total_cmp);
        roots
    }

    /// Build the closed path for root `t_a`, or `None` when a duration is
    /// negative, the path is degenerate or it fails to close.
    pub fn build(&self, t_a: f64, wind: &WindCondition) -> Option<PeriodicPath> {
        let period = self.params.turn_period();
        let slack = DURATION_SLACK * period;
        let t_s = self.straight_duration(t_a);
        let t_b = self.t_b(t_a);
        let closing = period - t_b;
        if t_s < -slack || closing < -slack {
            return None;
        }
        let t_s = t_s.max(0.0);
        let closing = closing.max(0.0);
        if t_a + t_s + closing < slack {
            return None;
        }
        let segments = Chain::new(self.start, self.eta, &self.params)
            .arc(self.first_turn, t_a)
            .straight(t_s)
            .arc(self.first_turn.opposite(), closing)
            .finish();
        let path_type = match self.first_turn {
            Turn::Right => PathType::BsbRsl,
            Turn::Left => PathType::BsbLsr,
        };
        let path =
            PeriodicPath::from_segments(path_type, segments, *wind, self.params, self.k, t_a, t_b);
        path.is_closed().then_some(path)
    }
}

/// All periodic RSL (`first_turn = Right`) or LSR (`Left`) paths through the
/// world-frame `start` pose for winding index `k`, one per distinct feasible
/// root, ordered by `t_A`.
pub fn solve_rsl_lsr_periodic(
    params: &VehicleParams,
    wind: &WindCondition,
    start: Pose2H,
    first_turn: Turn,
    k: i32,
    seeds: usize,
) -> Result<Vec<PeriodicPath>> {
    check_k(k)?;
    if wind.eta() <= 0.0 {
        return Err(LoiterError::Domain(
            "opposite-turn periodic paths need a wind ratio in (0, 1)".into(),
        ));
    }
    if seeds == 0 {
        return Err(LoiterError::InvalidArgument(
            "need at least one seed".into(),
        ));
    }
    let problem = BsbProblem::new(
        to_wind_frame(start, wind),
        first_turn,
        k,
        wind.eta(),
        *params,
    );
    Ok(problem
        .roots(seeds)
        .into_iter()
        .filter_map(|t_a| problem.build(t_a, wind))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params() -> VehicleParams {
        VehicleParams::new(20.0, 66.67).unwrap()
    }

    /// Residual from first principles: cross product of the tangent-point
    /// displacement with the straight's ground velocity, scaled by `V_a`.
    fn geometric_residual(p: &BsbProblem, t_a: f64) -> f64 {
        let (p1, p2) = p.tangent_points(t_a);
        let h = p.first_turn.sign() * p.params.max_yaw_rate() * t_a + p.start.psi;
        let va = p.params.airspeed();
        let d = (p2.0 - p1.0, p2.1 - p1.1);
        va * (d.0 * h.sin() - d.1 * (h.cos() + p.eta))
    }

    #[test]
    fn coefficient_form_matches_geometry() {
        let p = params();
        for (eta, psi, turn, k) in [
            (0.3, 0.2, Turn::Left, 0),
            (0.7, 2.5, Turn::Right, -1),
            (0.55, 4.0, Turn::Left, 2),
        ] {
            let prob = BsbProblem::new(Pose2H::new(10.0, -5.0, psi), turn, k, eta, p);
            for i in 0..20 {
                let t = i as f64 * p.turn_period() / 20.0;
                let a = prob.residual(t);
                let b = geometric_residual(&prob, t);
                assert!(
                    (a - b).abs() < 1e-9 * prob.coefficients(t).scale(),
                    "{a} {b}"
                );
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = params();
        let prob = BsbProblem::new(Pose2H::new(0.0, 0.0, 0.3), Turn::Right, 1, 0.45, p);
        for i in 1..10 {
            let t = i as f64 * 2.0;
            let h = 1e-5;
            let fd = (prob.residual(t + h) - prob.residual(t - h)) / (2.0 * h);
            let an = prob.residual_derivative(t);
            assert!((fd - an).abs() < 1e-6 * an.abs().max(1.0), "{fd} {an}");
        }
    }

    #[test]
    fn high_wind_from_tilted_start_has_solutions() {
        let p = params();
        let w = WindCondition::new(0.9, 0.0).unwrap();
        let start = Pose2H::new(0.0, 0.0, 0.1 * PI);
        let mut found = 0;
        for turn in [Turn::Left, Turn::Right] {
            for k in -3..=2 {
                let paths = solve_rsl_lsr_periodic(&p, &w, start, turn, k, DEFAULT_SEEDS).unwrap();
                for path in &paths {
                    assert!(path.is_closed());
                }
                found += paths.len();
            }
        }
        assert!(found >= 1);
    }

    #[test]
    fn returned_roots_satisfy_tangency_clock() {
        let p = params();
        let w = WindCondition::new(0.5, 1.0).unwrap();
        let start = Pose2H::new(0.0, 0.0, 0.1 * PI + 1.0);
        for turn in [Turn::Left, Turn::Right] {
            let d1 = turn.sign();
            let d2 = -d1;
            for k in -3..=2 {
                for path in solve_rsl_lsr_periodic(&p, &w, start, turn, k, DEFAULT_SEEDS).unwrap() {
                    let period = p.turn_period();
                    let expect = d1 / d2 * path.t_a + k as f64 / d2 * period + period;
                    assert!((path.t_b - expect).abs() <= 1e-9 * expect.abs().max(period));
                }
            }
        }
    }

    #[test]
    fn zero_wind_rejected() {
        let p = params();
        assert!(solve_rsl_lsr_periodic(
            &p,
            &WindCondition::calm(),
            Pose2H::default(),
            Turn::Left,
            0,
            32
        )
        .is_err());
    }
}
