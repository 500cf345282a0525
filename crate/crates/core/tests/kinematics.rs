mod common;

use std::f64::consts::{PI, TAU};

use common::{params, rk4_turn, R_MIN};
use loiter_core::path::sample_path;
use loiter_core::periodic::solve_rsr_lsl_periodic;
use loiter_core::trochoid::{
    angle_diff, from_wind_frame, ground_velocity, to_wind_frame, trochoid_state,
};
use loiter_core::{Pose2H, TrochoidArc, Turn, WindCondition};
use proptest::prelude::*;

fn turn() -> impl Strategy<Value = Turn> {
    prop_oneof![Just(Turn::Left), Just(Turn::Right)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_rk4(
        eta in 0.0..0.99f64,
        x in -500.0..500.0f64,
        y in -500.0..500.0f64,
        psi in 0.0..TAU,
        dir in turn(),
        frac in 0.0..1.5f64,
    ) {
        let p = params();
        let t = frac * p.turn_period();
        let start = Pose2H::new(x, y, psi);
        let arc = TrochoidArc::new(start, dir, t, &p);
        let exact = arc.eval(eta, &p, t);
        let num = rk4_turn(start, dir, eta, &p, t, 4000);
        let scale = R_MIN + p.airspeed() * t;
        prop_assert!(exact.distance(&num) <= 1e-6 * scale);
        prop_assert!(angle_diff(exact.psi, num.psi).abs() < 1e-9);
    }

    #[test]
    fn frame_round_trip(
        x in -1e4..1e4f64,
        y in -1e4..1e4f64,
        psi in 0.0..TAU,
        eta in 0.0..0.999f64,
        psi_w in 0.0..TAU,
    ) {
        let w = WindCondition::new(eta, psi_w).unwrap();
        let q = Pose2H::new(x, y, psi);
        let back = from_wind_frame(to_wind_frame(q, &w), &w);
        prop_assert!(back.distance(&q) < 1e-12 * (1.0 + x.hypot(y)));
        prop_assert!(angle_diff(back.psi, q.psi).abs() < 1e-12);
    }

    #[test]
    fn drift_over_one_turn_period(
        eta in 0.0..0.99f64,
        psi in 0.0..TAU,
        dir in turn(),
        t0 in 0.0..1.0f64,
    ) {
        let p = params();
        let period = p.turn_period();
        let t0 = t0 * period;
        let arc = TrochoidArc::new(Pose2H::new(3.0, -7.0, psi), dir, t0 + period, &p);
        let a = arc.eval(eta, &p, t0);
        let b = arc.eval(eta, &p, t0 + period);
        let drift = eta * p.airspeed() * period;
        prop_assert!((b.x - a.x - drift).abs() < 1e-9 * R_MIN);
        prop_assert!((b.y - a.y).abs() < 1e-9 * R_MIN);
        prop_assert!(angle_diff(b.psi, a.psi).abs() < 1e-9);
    }

    #[test]
    fn world_velocity_is_rotated_wind_frame_velocity(
        eta in 0.0..0.999f64,
        psi_w in 0.0..TAU,
        phi in 0.0..TAU,
    ) {
        let p = params();
        let w = WindCondition::new(eta, psi_w).unwrap();
        let (vx, vy) = ground_velocity(&Pose2H::new(0.0, 0.0, phi + psi_w), &w, &p);
        let va = p.airspeed();
        let (ax, ay) = (va * (phi.cos() + eta), va * phi.sin());
        let (s, c) = psi_w.sin_cos();
        prop_assert!((vx - (c * ax - s * ay)).abs() < 1e-9);
        prop_assert!((vy - (s * ax + c * ay)).abs() < 1e-9);
    }

    #[test]
    fn sample_spacing_bounded_by_ground_speed(
        eta in 0.0..0.95f64,
        psi_w in 0.0..TAU,
        n in 10usize..400,
    ) {
        let p = params();
        let w = WindCondition::new(eta, psi_w).unwrap();
        let path = solve_rsr_lsl_periodic(&p, &w, Pose2H::new(0.0, 0.0, 1.0), Turn::Left, 0)
            .unwrap()
            .unwrap();
        let dt = path.total_duration / (n - 1) as f64;
        let vmax = p.airspeed() * (1.0 + eta);
        let s = sample_path(&path, n).unwrap();
        for pair in s.windows(2) {
            prop_assert!(pair[0].distance(&pair[1]) <= vmax * dt * (1.0 + 1e-12));
        }
    }
}

#[test]
fn rk4_reference_case() {
    // V_a = 1, ω = 1, η = 0.5, start (0, 0, π), left turn for t = π.
    let p = loiter_core::VehicleParams::new(1.0, 1.0).unwrap();
    let w = WindCondition::new(0.5, 0.0).unwrap();
    let start = Pose2H::new(0.0, 0.0, PI);
    let arc = TrochoidArc::new(start, Turn::Left, PI, &p);
    let exact = trochoid_state(&arc, &w, &p, PI).unwrap();
    let num = rk4_turn(start, Turn::Left, 0.5, &p, PI, 10_000);
    assert!(exact.distance(&num) < 1e-6);
    // Half a turn from heading π: displaced by the diameter plus drift.
    assert!((exact.x - 0.5 * PI).abs() < 1e-12);
    assert!((exact.y + 2.0).abs() < 1e-12);
}

#[test]
fn zero_wind_circle_samples() {
    let p = params();
    let path = solve_rsr_lsl_periodic(
        &p,
        &WindCondition::calm(),
        Pose2H::new(0.0, 0.0, 0.0),
        Turn::Left,
        0,
    )
    .unwrap()
    .unwrap();
    let s = sample_path(&path, 5).unwrap();
    let expect = [
        (0.0, 0.0),
        (R_MIN, R_MIN),
        (0.0, 2.0 * R_MIN),
        (-R_MIN, R_MIN),
        (0.0, 0.0),
    ];
    for (q, (x, y)) in s.iter().zip(expect) {
        assert!((q.x - x).abs() < 1e-9 && (q.y - y).abs() < 1e-9, "{q:?}");
    }
    assert!(sample_path(&path, 1).is_err());
}
