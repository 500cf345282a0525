#![allow(dead_code)]

use loiter_core::terrain::DemGrid;
use loiter_core::{Pose2H, Turn, VehicleParams};
use rand::Rng;

pub const R_MIN: f64 = 66.67;
pub const AIRSPEED: f64 = 20.0;

pub fn params() -> VehicleParams {
    VehicleParams::new(AIRSPEED, R_MIN).unwrap()
}

/// Classic RK4 on the wind-frame kinematics
/// `ẋ = V_a cos ψ + V_w`, `ẏ = V_a sin ψ`, `ψ̇ = δω`.
pub fn rk4_turn(
    start: Pose2H,
    turn: Turn,
    eta: f64,
    params: &VehicleParams,
    t: f64,
    steps: usize,
) -> Pose2H {
    let va = params.airspeed();
    let vw = eta * va;
    let rate = turn.sign() * params.max_yaw_rate();
    let f = |s: [f64; 3]| [va * s[2].cos() + vw, va * s[2].sin(), rate];
    let h = t / steps as f64;
    let mut s = [start.x, start.y, start.psi];
    for _ in 0..steps {
        let k1 = f(s);
        let k2 = f(std::array::from_fn(|i| s[i] + 0.5 * h * k1[i]));
        let k3 = f(std::array::from_fn(|i| s[i] + 0.5 * h * k2[i]));
        let k4 = f(std::array::from_fn(|i| s[i] + h * k3[i]));
        for i in 0..3 {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Pose2H::new(s[0], s[1], s[2])
}

/// Rugged synthetic terrain: a few random plane waves plus white noise.
pub fn rugged_grid<R: Rng>(rng: &mut R, rows: usize, cols: usize, cell: f64) -> DemGrid {
    let waves: Vec<(f64, f64, f64, f64)> = (0..6)
        .map(|_| {
            let wavelength = rng.gen_range(400.0..3000.0);
            let dir: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let k = std::f64::consts::TAU / wavelength;
            (
                k * dir.cos(),
                k * dir.sin(),
                rng.gen_range(6.0..30.0),
                rng.gen_range(0.0..6.3),
            )
        })
        .collect();
    let noise: Vec<f64> = (0..rows * cols).map(|_| rng.gen_range(-3.0..3.0)).collect();
    DemGrid::from_fn(rows, cols, cell, |r, c| {
        let (x, y) = (c as f64 * cell, r as f64 * cell);
        500.0
            + waves
                .iter()
                .map(|&(kx, ky, a, p)| a * (kx * x + ky * y + p).sin())
                .sum::<f64>()
            + noise[r * cols + c]
    })
    .unwrap()
}

/// Maximum over `(a, b)` of the distance from any point of `a` to its nearest
/// point of `b`, in both directions.
pub fn hausdorff(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let one_way = |p: &[(f64, f64)], q: &[(f64, f64)]| {
        p.iter()
            .map(|&(x, y)| {
                q.iter()
                    .map(|&(u, v)| (x - u).hypot(y - v))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
