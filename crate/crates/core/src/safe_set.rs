//! The minimum-extent wind-invariant safe set: a disk that contains at least
//! one periodic path for every wind ratio and direction.
//!
//! Under the switching strategy the mushroom family is flown below the
//! switching wind ratio and the figure-eight above it, so the disk radius is
//! the extent at the switching point.

use std::f64::consts::PI;

use crate::error::{LoiterError, Result};
use crate::exec::Exec;
use crate::extent::{
    extent_figure_eight, extent_mushroom, find_switching_point, min_extent, ExtentFamily,
    ETA_SWEEP_MAX,
};
use crate::path::{Chain, PathType, PeriodicPath};
use crate::periodic::{build_figure_eight, solve_rsr_lsl_periodic};
use crate::trochoid::{from_wind_frame, to_wind_frame, Pose2H, Turn, VehicleParams, WindCondition};

/// Bisection tolerance used when the safe-set radius is derived.
pub const SWITCH_TOL: f64 = 1e-12;

/// Which periodic families a loiter strategy may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Smaller-extent family for each wind ratio.
    #[default]
    Switching,
    MushroomOnly,
    FigureEightOnly,
}

impl Strategy {
    /// Worst-case radius of extent over `η ∈ [0, 1)` for this strategy.
    pub fn radius(self, params: &VehicleParams) -> f64 {
        let r = params.min_turn_radius();
        match self {
            Strategy::Switching => safe_set_radius(params),
            Strategy::MushroomOnly => PI * r,
            Strategy::FigureEightOnly => 2.0 * r,
        }
    }

    pub fn family(self, eta: f64, params: &VehicleParams) -> Result<ExtentFamily> {
        Ok(match self {
            Strategy::Switching => min_extent(eta, params)?.selected,
            Strategy::MushroomOnly => ExtentFamily::Mushroom,
            Strategy::FigureEightOnly => ExtentFamily::FigureEight,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SafeSet {
    /// World-frame disk center.
    pub center: (f64, f64),
    pub radius: f64,
    pub params: VehicleParams,
}

impl SafeSet {
    /// Smallest wind-invariant safe set at `center` (switching strategy).
    pub fn minimal(params: &VehicleParams, center: (f64, f64)) -> Self {
        Self {
            center,
            radius: safe_set_radius(params),
            params: *params,
        }
    }

    /// Representative periodic path for `wind` inside this set.
    pub fn path_for(&self, wind: &WindCondition) -> Result<PeriodicPath> {
        representative_path(&self.params, wind, self.center)
    }
}

/// Radius of the minimum-extent wind-invariant safe set.
pub fn safe_set_radius(params: &VehicleParams) -> f64 {
    find_switching_point(params, SWITCH_TOL)
        .expect("extent curves cross inside the switching bracket")
        .d_min
}

/// Mushroom path (left turns, one revolution) whose extent disk is centered at
/// the world-frame `center`.
///
/// The trochoid loop's along-wind extrema sit at height `y_c + ηR` and are
/// `2πηR` apart around the loop start, so the loop starts at
/// `center + (−πηR, R(1 − η))` in the wind frame heading upwind; the path
/// begins on the upwind straight that leads into it.
pub fn centered_mushroom(
    params: &VehicleParams,
    wind: &WindCondition,
    center: (f64, f64),
) -> Result<PeriodicPath> {
    let r = params.min_turn_radius();
    let eta = wind.eta();
    let c = to_wind_frame(Pose2H::new(center.0, center.1, 0.0), wind);
    let start_w = Pose2H::new(c.x + PI * eta * r, c.y + r * (1.0 - eta), PI);
    solve_rsr_lsl_periodic(params, wind, from_wind_frame(start_w, wind), Turn::Left, 0)?
        .ok_or_else(|| LoiterError::Numerical("one-revolution mushroom is always feasible".into()))
}

/// Two tangent circles: the zero-wind limit of the figure-eight.
fn tangent_circles(
    params: &VehicleParams,
    wind: &WindCondition,
    center: (f64, f64),
) -> PeriodicPath {
    let c = to_wind_frame(Pose2H::new(center.0, center.1, 0.0), wind);
    let period = params.turn_period();
    let segments = Chain::new(Pose2H::new(c.x, c.y, 0.0), 0.0, params)
        .arc(Turn::Left, period)
        .straight(0.0)
        .arc(Turn::Right, period)
        .finish();
    PeriodicPath::from_segments(
        PathType::FigureEight,
        segments,
        *wind,
        *params,
        0,
        period,
        0.0,
    )
}

/// Representative path of `strategy` for `wind`, centered at `center`.
pub fn representative_path_for(
    strategy: Strategy,
    params: &VehicleParams,
    wind: &WindCondition,
    center: (f64, f64),
) -> Result<PeriodicPath> {
    match strategy.family(wind.eta(), params)? {
        ExtentFamily::Mushroom => centered_mushroom(params, wind, center),
        ExtentFamily::FigureEight if wind.eta() == 0.0 => Ok(tangent_circles(params, wind, center)),
        ExtentFamily::FigureEight => build_figure_eight(params, wind, center),
    }
}

/// Smallest-extent periodic path for `wind`, with its extent disk centered at
/// the world-frame `center`.
pub fn representative_path(
    params: &VehicleParams,
    wind: &WindCondition,
    center: (f64, f64),
) -> Result<PeriodicPath> {
    representative_path_for(Strategy::Switching, params, wind, center)
}

/// Analytic radius of extent of the path `strategy` flies at `eta`.
pub fn strategy_extent(strategy: Strategy, eta: f64, params: &VehicleParams) -> Result<f64> {
    match strategy.family(eta, params)? {
        ExtentFamily::Mushroom => extent_mushroom(eta, params),
        ExtentFamily::FigureEight => extent_figure_eight(eta, params),
    }
}

/// Largest distance from `center` over `samples` points of `path`.
pub fn max_distance_from(path: &PeriodicPath, center: (f64, f64), samples: usize) -> Result<f64> {
    let c = to_wind_frame(Pose2H::new(center.0, center.1, 0.0), &path.wind);
    Ok(path
        .sample_points_wind(samples)?
        .into_iter()
        .map(|(x, y)| (x - c.x).hypot(y - c.y))
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindCellResult {
    pub eta: f64,
    pub psi_w: f64,
    pub family: ExtentFamily,
    /// Largest sampled distance of the path from the disk center.
    pub max_distance: f64,
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub radius: f64,
    pub n_eta: usize,
    pub n_psi: usize,
    /// Row-major over `(eta, psi_w)`.
    pub cells: Vec<WindCellResult>,
    pub max_observed_extent: f64,
}

impl InvarianceReport {
    pub fn all_contained(&self) -> bool {
        self.cells.iter().all(|c| c.contained)
    }

    pub fn failure_count(&self) -> usize {
        self.cells.iter().filter(|c| !c.contained).count()
    }

    /// Grid wind ratios with at least one failing direction, ascending.
    pub fn failing_etas(&self) -> Vec<f64> {
        (0..self.n_eta)
            .filter(|&i| {
                self.cells[i * self.n_psi..(i + 1) * self.n_psi]
                    .iter()
                    .any(|c| !c.contained)
            })
            .map(|i| self.cells[i * self.n_psi].eta)
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub strategy: Strategy,
    /// Path samples per grid cell.
    pub samples: usize,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Switching,
            samples: 1000,
            exec: Exec::default(),
        }
    }
}

/// Grid wind ratio `i` of `n`: uniform on `[0, 1 − 10⁻³]`.
pub fn grid_eta(i: usize, n: usize) -> f64 {
    i as f64 * ETA_SWEEP_MAX / (n - 1) as f64
}

/// Grid wind direction `j` of `n`: uniform on `[0, 2π)`.
pub fn grid_psi(j: usize, n: usize) -> f64 {
    j as f64 * std::f64::consts::TAU / n as f64
}

/// Build the representative path for every `(η, ψ_w)` grid cell and check that
/// it stays inside the disk of radius `radius` about the origin.
pub fn verify_wind_invariance(
    params: &VehicleParams,
    radius: f64,
    grid: (usize, usize),
    opts: &VerifyOptions,
) -> Result<InvarianceReport> {
    let (n_eta, n_psi) = grid;
    if n_eta < 8 || n_psi < 8 {
        return Err(LoiterError::InvalidArgument(format!(
            "verification grid must be at least 8x8, got {n_eta}x{n_psi}"
        )));
    }
    if radius.is_nan() || radius <= 0.0 {
        return Err(LoiterError::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let tol = 1e-6 * params.min_turn_radius();
    let cells: Result<Vec<WindCellResult>> = opts
        .exec
        .map_range(n_eta * n_psi, |idx| {
            let eta = grid_eta(idx / n_psi, n_eta);
            let psi_w = grid_psi(idx % n_psi, n_psi);
            let wind = WindCondition::new(eta, psi_w)?;
            let family = opts.strategy.family(eta, params)?;
            let path = representative_path_for(opts.strategy, params, &wind, (0.0, 0.0))?;
            let max_distance = max_distance_from(&path, (0.0, 0.0), opts.samples)?;
            Ok(WindCellResult {
                eta,
                psi_w,
                family,
                max_distance,
                contained: max_distance <= radius + tol,
            })
        })
        .into_iter()
        .collect();
    let cells = cells?;
    let max_observed_extent = cells.iter().map(|c| c.max_distance).fold(0.0, f64::max);
    Ok(InvarianceReport {
        radius,
        n_eta,
        n_psi,
        cells,
        max_observed_extent,
    })
}
