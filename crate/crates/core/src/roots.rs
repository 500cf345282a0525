//! Scalar root finding: bracketed bisection and guarded Newton-Raphson.

use crate::error::{LoiterError, Result};

/// Bisection on `[a, b]`, which must bracket a sign change (or an exact zero
/// at an endpoint). Stops when the bracket is narrower than `x_tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, x_tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(LoiterError::Numerical(format!(
            "no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    // 200 halvings exhaust f64 resolution on any finite bracket.
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= x_tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NewtonOutcome {
    Converged(f64),
    /// Derivative magnitude fell below the floor.
    FlatDerivative(f64),
    /// Iterate left the admissible interval.
    Escaped(f64),
    IterationLimit(f64),
}

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    pub max_iter: usize,
    /// Converged when `|Δx| < step_tol`.
    pub step_tol: f64,
    /// Give up when `|f'| < derivative_floor`.
    pub derivative_floor: f64,
    /// Admissible interval for the iterates.
    pub bounds: (f64, f64),
}

/// Newton-Raphson from `x0` with analytic derivative `df`.
pub fn newton<F, D>(f: F, df: D, x0: f64, opts: &NewtonOptions) -> NewtonOutcome
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (lo, hi) = opts.bounds;
    let mut x = x0;
    for _ in 0..opts.max_iter {
        let d = df(x);
        if d.is_nan() || d.abs() < opts.derivative_floor {
            return NewtonOutcome::FlatDerivative(x);
        }
        let step = f(x) / d;
        let next = x - step;
        if !next.is_finite() || next < lo || next > hi {
            return NewtonOutcome::Escaped(next);
        }
        x = next;
        if step.abs() < opts.step_tol {
            return NewtonOutcome::Converged(x);
        }
    }
    NewtonOutcome::IterationLimit(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisect_requires_sign_change() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn newton_converges_and_reports_failures() {
        let opts = NewtonOptions {
            max_iter: 50,
            step_tol: 1e-14,
            derivative_floor: 1e-14,
            bounds: (-10.0, 10.0),
        };
        match newton(|x| x * x - 2.0, |x| 2.0 * x, 1.0, &opts) {
            NewtonOutcome::Converged(r) => assert!((r - 2f64.sqrt()).abs() < 1e-14),
            o => panic!("{o:?}"),
        }
        assert!(matches!(
            newton(|x| x * x - 2.0, |x| 2.0 * x, 0.0, &opts),
            NewtonOutcome::FlatDerivative(_)
        ));
        assert!(matches!(
            newton(|x| x.atan(), |x| 1.0 / (1.0 + x * x), 3.0, &opts),
            NewtonOutcome::Escaped(_)
        ));
    }
}
