//! Solvers that construct closed (periodic) trochoidal paths.
//!
//! * [`mushroom`]: same-direction turn, straight, turn (RSR/LSL). Closed form.
//! * [`bsb`]: opposite-direction turn, straight, turn (RSL/LSR). Transcendental
//!   root in the first arc time, solved by multi-start Newton-Raphson.
//! * [`figure_eight`]: the RSL/LSR member with a zero-length straight segment.

pub mod bsb;
pub mod figure_eight;
pub mod mushroom;

pub use bsb::{solve_rsl_lsr_periodic, BsbProblem, BsbRootCoefficients, DEFAULT_SEEDS};
pub use figure_eight::{
    build_figure_eight, figure_eight_heading, solve_figure_eight_heading, FigureEightSolution,
};
pub use mushroom::{same_turn_line_slope, solve_rsr_lsl_periodic, straight_closing_duration};

use crate::error::{LoiterError, Result};

/// Admissible winding selectors `k`.
pub const K_RANGE: std::ops::RangeInclusive<i32> = -3..=2;

pub(crate) fn check_k(k: i32) -> Result<()> {
    if K_RANGE.contains(&k) {
        Ok(())
    } else {
        Err(LoiterError::InvalidArgument(format!(
            "winding index k must lie in [-3, 2], got {k}"
        )))
    }
}
