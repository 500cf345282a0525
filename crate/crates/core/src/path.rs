//! Closed sequences of trochoid arcs and straight segments.

use std::fmt;

use crate::error::{LoiterError, Result};
use crate::trochoid::{
    angle_diff, from_wind_frame, Pose2H, StraightSegment, TrochoidArc, Turn, VehicleParams,
    WindCondition,
};

/// Position closure tolerance, as a fraction of `R_min`.
pub const CLOSURE_POSITION_TOL: f64 = 1e-6;
/// Heading closure tolerance in radians (mod 2π).
pub const CLOSURE_HEADING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathType {
    MushroomRsr,
    MushroomLsl,
    BsbRsl,
    BsbLsr,
    FigureEight,
}

impl fmt::Display for PathType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PathType::MushroomRsr => "RSR",
            PathType::MushroomLsl => "LSL",
            PathType::BsbRsl => "RSL",
            PathType::BsbLsr => "LSR",
            PathType::FigureEight => "figure-eight",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Arc(TrochoidArc),
    Straight(StraightSegment),
}

impl Segment {
    pub fn duration(&self) -> f64 {
        match self {
            Segment::Arc(a) => a.duration,
            Segment::Straight(s) => s.duration,
        }
    }

    pub fn start(&self) -> Pose2H {
        match self {
            Segment::Arc(a) => a.start,
            Segment::Straight(s) => s.start,
        }
    }

    /// Wind-frame state at local time `t` (heading unwrapped).
    pub fn eval(&self, eta: f64, params: &VehicleParams, t: f64) -> Pose2H {
        match self {
            Segment::Arc(a) => a.eval(eta, params, t),
            Segment::Straight(s) => s.eval(eta, params, t),
        }
    }

    pub fn end(&self, eta: f64, params: &VehicleParams) -> Pose2H {
        self.eval(eta, params, self.duration())
    }

    /// Same segment restarted from `start`.
    fn restarted(&self, start: Pose2H, eta: f64, params: &VehicleParams) -> Segment {
        match self {
            Segment::Arc(a) => {
                Segment::Arc(TrochoidArc::new(start, a.direction, a.duration, params))
            }
            Segment::Straight(s) => Segment::Straight(StraightSegment::new(start, s.duration, eta)),
        }
    }

    /// Short label used in CSV output.
    pub fn kind(&self) -> &'static str {
        match self {
            Segment::Arc(a) => match a.direction {
                Turn::Left => "arc_left",
                Turn::Right => "arc_right",
            },
            Segment::Straight(_) => "straight",
        }
    }
}

/// Builds a segment list where each start pose is the predecessor's end pose.
pub(crate) struct Chain<'a> {
    eta: f64,
    params: &'a VehicleParams,
    cursor: Pose2H,
    segments: Vec<Segment>,
}

impl<'a> Chain<'a> {
    pub fn new(start: Pose2H, eta: f64, params: &'a VehicleParams) -> Self {
        Self {
            eta,
            params,
            cursor: start,
            segments: Vec::with_capacity(3),
        }
    }

    pub fn arc(mut self, direction: Turn, duration: f64) -> Self {
        let arc = TrochoidArc::new(self.cursor, direction, duration, self.params);
        self.cursor = arc.end(self.eta, self.params);
        self.segments.push(Segment::Arc(arc));
        self
    }

    pub fn straight(mut self, duration: f64) -> Self {
        let s = StraightSegment::new(self.cursor, duration, self.eta);
        self.cursor = s.end(self.eta, self.params);
        self.segments.push(Segment::Straight(s));
        self
    }

    pub fn finish(self) -> Vec<Segment> {
        self.segments
    }
}

/// A periodic path: its end pose coincides with its start pose, so it can be
/// flown repeatedly. Segments are stored in the wind frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPath {
    pub path_type: PathType,
    pub segments: Vec<Segment>,
    pub total_duration: f64,
    pub wind: WindCondition,
    pub params: VehicleParams,
    /// Winding selector `k`.
    pub k_index: i32,
    /// Duration of the first arc.
    pub t_a: f64,
    /// Clock value at which the closing arc is joined (see the solvers for the
    /// convention of each family).
    pub t_b: f64,
}

impl PeriodicPath {
    pub(crate) fn from_segments(
        path_type: PathType,
        segments: Vec<Segment>,
        wind: WindCondition,
        params: VehicleParams,
        k_index: i32,
        t_a: f64,
        t_b: f64,
    ) -> Self {
        let total_duration = segments.iter().map(Segment::duration).sum();
        Self {
            path_type,
            segments,
            total_duration,
            wind,
            params,
            k_index,
            t_a,
            t_b,
        }
    }

    /// Wind-frame start pose.
    pub fn start_wind(&self) -> Pose2H {
        self.segments[0].start()
    }

    /// Wind-frame end pose (heading unwrapped).
    pub fn end_wind(&self) -> Pose2H {
        self.segments
            .last()
            .expect("non-empty path")
            .end(self.wind.eta(), &self.params)
    }

    /// World-frame start pose.
    pub fn start_pose(&self) -> Pose2H {
        from_wind_frame(self.start_wind(), &self.wind)
    }

    /// `(position gap [m], heading gap [rad])` between end and start.
    pub fn closure_error(&self) -> (f64, f64) {
        let s = self.start_wind();
        let e = self.end_wind();
        (s.distance(&e), angle_diff(e.psi, s.psi).abs())
    }

    pub fn is_closed(&self) -> bool {
        let (dp, dh) = self.closure_error();
        dp < CLOSURE_POSITION_TOL * self.params.min_turn_radius() && dh < CLOSURE_HEADING_TOL
    }

    pub(crate) fn ensure_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            let (position_gap, heading_gap) = self.closure_error();
            Err(LoiterError::OpenPath {
                position_gap,
                heading_gap,
            })
        }
    }

    /// Index of the segment active at path time `t` and the local time in it.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let mut acc = 0.0;
        for (i, seg) in self.segments.iter().enumerate() {
            let d = seg.duration();
            if t < acc + d {
                return (i, (t - acc).max(0.0));
            }
            acc += d;
        }
        let last = self.segments.len() - 1;
        (last, self.segments[last].duration())
    }

    /// Wind-frame state at path time `t ∈ [0, total_duration]` (clamped).
    pub fn state_wind(&self, t: f64) -> Pose2H {
        let t = t.clamp(0.0, self.total_duration);
        let (i, local) = self.locate(t);
        self.segments[i].eval(self.wind.eta(), &self.params, local)
    }

    /// Wind-frame end pose after flying the path `laps` times, each lap
    /// restarting every segment from the previous lap's end pose.
    pub fn end_after_laps(&self, laps: usize) -> Pose2H {
        let eta = self.wind.eta();
        let mut cursor = self.start_wind();
        for _ in 0..laps {
            for seg in &self.segments {
                cursor = seg
                    .restarted(cursor, eta, &self.params)
                    .end(eta, &self.params);
            }
        }
        cursor
    }

    /// `n` wind-frame samples at uniform time spacing with their segment index.
    pub fn sample_wind_indexed(&self, n: usize) -> Result<Vec<(f64, Pose2H, usize)>> {
        if n < 2 {
            return Err(LoiterError::InvalidArgument(format!(
                "need at least 2 samples, got {n}"
            )));
        }
        let dt = self.total_duration / (n - 1) as f64;
        Ok((0..n)
            .map(|i| {
                let t = if i == n - 1 {
                    self.total_duration
                } else {
                    i as f64 * dt
                };
                let (seg, local) = self.locate(t);
                let pose = self.segments[seg].eval(self.wind.eta(), &self.params, local);
                (t, pose, seg)
            })
            .collect())
    }

    /// `n` wind-frame positions at uniform time spacing.
    pub fn sample_points_wind(&self, n: usize) -> Result<Vec<(f64, f64)>> {
        Ok(self
            .sample_wind_indexed(n)?
            .into_iter()
            .map(|(_, p, _)| (p.x, p.y))
            .collect())
    }
}

/// `n ≥ 2` world-frame poses at uniform time spacing over the whole path; the
/// first sample is the start pose and the last is the pose at `total_duration`.
pub fn sample_path(path: &PeriodicPath, n: usize) -> Result<Vec<Pose2H>> {
    Ok(path
        .sample_wind_indexed(n)?
        .into_iter()
        .map(|(_, p, _)| from_wind_frame(p, &path.wind))
        .collect())
}
