mod common;

use std::f64::consts::TAU;

use common::{hausdorff, params, R_MIN};
use loiter_core::path::{CLOSURE_HEADING_TOL, CLOSURE_POSITION_TOL};
use loiter_core::periodic::{
    build_figure_eight, figure_eight_heading, solve_rsl_lsr_periodic, solve_rsr_lsl_periodic,
    BsbProblem, DEFAULT_SEEDS,
};
use loiter_core::trochoid::{angle_diff, to_wind_frame};
use loiter_core::{PathType, Pose2H, Turn, WindCondition};
use proptest::prelude::*;

fn turn() -> impl Strategy<Value = Turn> {
    prop_oneof![Just(Turn::Left), Just(Turn::Right)]
}

fn assert_repeatable(path: &loiter_core::PeriodicPath) -> Result<(), TestCaseError> {
    let s = path.start_wind();
    let e = path.end_after_laps(3);
    prop_assert!(s.distance(&e) < 3.0 * CLOSURE_POSITION_TOL * R_MIN);
    prop_assert!(angle_diff(s.psi, e.psi).abs() < 3.0 * CLOSURE_HEADING_TOL);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn mushroom_closes_and_repeats(
        eta in 0.0..0.95f64,
        psi_w in 0.0..TAU,
        x in -300.0..300.0f64,
        y in -300.0..300.0f64,
        psi in 0.0..TAU,
        dir in turn(),
        k in -3i32..=2,
    ) {
        let p = params();
        let w = WindCondition::new(eta, psi_w).unwrap();
        let start = Pose2H::new(x, y, psi);
        match solve_rsr_lsl_periodic(&p, &w, start, dir, k).unwrap() {
            None => prop_assert!(1 + dir.sign() as i32 * k < 1),
            Some(path) => {
                prop_assert!(path.is_closed());
                prop_assert!(path.segments.iter().all(|s| s.duration() >= 0.0));
                let s0 = path.start_pose();
                prop_assert!(s0.distance(&start) < 1e-9 * R_MIN);
                prop_assert!(angle_diff(s0.psi, start.psi).abs() < 1e-12);
                let expect = if dir == Turn::Left { PathType::MushroomLsl } else { PathType::MushroomRsr };
                prop_assert_eq!(path.path_type, expect);
                assert_repeatable(&path)?;
            }
        }
    }

    #[test]
    fn bsb_roots_close(
        eta in 0.05..0.95f64,
        psi_w in 0.0..TAU,
        psi in 0.0..TAU,
        dir in turn(),
        k in 0i32..=2,
    ) {
        let p = params();
        let k = k * dir.sign() as i32;
        let w = WindCondition::new(eta, psi_w).unwrap();
        let start = Pose2H::new(12.0, -40.0, psi);
        let paths = solve_rsl_lsr_periodic(&p, &w, start, dir, k, DEFAULT_SEEDS).unwrap();
        let problem = BsbProblem::new(to_wind_frame(start, &w), dir, k, eta, p);
        for path in &paths {
            prop_assert!(path.is_closed(), "{:?}", path.closure_error());
            prop_assert!(path.segments.iter().all(|s| s.duration() >= 0.0));
            let c = problem.coefficients(path.t_a);
            prop_assert!(problem.residual(path.t_a).abs() < 1e-9 * c.scale());
            assert_repeatable(path)?;
        }
        for pair in paths.windows(2) {
            prop_assert!(pair[0].t_a < pair[1].t_a);
        }
    }

    #[test]
    fn figure_eight_closes_and_is_symmetric(
        eta in 0.02..0.98f64,
        psi_w in 0.0..TAU,
        cx in -200.0..200.0f64,
        cy in -200.0..200.0f64,
    ) {
        let p = params();
        let w = WindCondition::new(eta, psi_w).unwrap();
        let path = build_figure_eight(&p, &w, (cx, cy)).unwrap();
        prop_assert!(path.is_closed());
        assert_repeatable(&path)?;
        let c = to_wind_frame(Pose2H::new(cx, cy, 0.0), &w);
        let pts = path.sample_points_wind(1500).unwrap();
        let mirrored: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (x, 2.0 * c.y - y)).collect();
        let spacing = p.airspeed() * (1.0 + eta) * path.total_duration / 1499.0;
        prop_assert!(hausdorff(&pts, &mirrored) <= spacing);
    }

    #[test]
    fn figure_eight_heading_solves_drift_condition(eta in 1e-3..0.999f64) {
        let phi = figure_eight_heading(eta).unwrap();
        prop_assert!(phi > 0.0 && phi < std::f64::consts::PI);
        prop_assert!((eta * (std::f64::consts::PI - phi) - phi.sin()).abs() < 1e-12);
    }
}

#[test]
fn bsb_rejects_calm_and_bad_k() {
    let p = params();
    let start = Pose2H::new(0.0, 0.0, 0.0);
    assert!(solve_rsl_lsr_periodic(&p, &WindCondition::calm(), start, Turn::Right, 0, 32).is_err());
    let w = WindCondition::new(0.5, 0.0).unwrap();
    assert!(solve_rsl_lsr_periodic(&p, &w, start, Turn::Right, 7, 32).is_err());
}

#[test]
fn figure_eight_rejects_calm() {
    let p = params();
    assert!(build_figure_eight(&p, &WindCondition::calm(), (0.0, 0.0)).is_err());
}
