use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use loiter_core::extent::ExtentCurvePoint;
use loiter_core::format::fmt_sig;
use loiter_core::periodic::{DEFAULT_SEEDS, K_RANGE};
use loiter_core::safe_set::grid_eta;
use loiter_core::terrain::{
    coverage_table, default_radii, write_coverage_csv, write_validity_asc, write_validity_pgm,
};
use loiter_core::trochoid::{from_wind_frame, normalize_angle};
use loiter_core::{
    build_figure_eight, extent_sweep, find_switching_point, load_dem, safe_set_radius,
    solve_rsl_lsr_periodic, solve_rsr_lsl_periodic, valid_region_raster, verify_wind_invariance,
    Exec, LoiterError, PeriodicPath, Strategy, Turn, VerifyOptions,
};

use crate::config::RunConfig;
use crate::CliError;

pub const PATH_CSV_HEADER: &str = "t,x,y,psi,segment_index,segment_type";
pub const SWEEP_CSV_HEADER: &str = "eta,D_mushroom_over_R,D_fig8_over_R,D_min_over_R,selected";

const DEFAULT_PATH_SAMPLES: usize = 1001;
const DEFAULT_SWEEP_ROWS: usize = 201;
const MIN_SWEEP_ROWS: usize = 16;
const DEFAULT_VERIFY_SAMPLES: usize = 1000;
const DEFAULT_TERRAIN_PREFIX: &str = "validity";

/// Library errors raised by a construction request: bad arguments are input
/// errors, anything else means the requested path does not exist.
fn construction_error(e: LoiterError) -> CliError {
    match e {
        LoiterError::InvalidArgument(m) => CliError::Input(m),
        other => CliError::Infeasible(other.to_string()),
    }
}

fn input_error(e: LoiterError) -> CliError {
    CliError::Input(e.to_string())
}

/// Write `text` to `out`, or stdout when no file is given.
fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn construct_path(cfg: &RunConfig) -> Result<PeriodicPath, CliError> {
    let family = cfg.family.as_deref().unwrap_or("mushroom");
    let turn = Turn::from_sign(cfg.delta).map_err(input_error)?;
    if !K_RANGE.contains(&cfg.k) {
        return Err(CliError::Input(format!(
            "k must be in {}..={}, got {}",
            K_RANGE.start(),
            K_RANGE.end(),
            cfg.k
        )));
    }
    match family {
        "mushroom" | "rsr" | "lsl" => {
            let turn = match family {
                "rsr" => Turn::Right,
                "lsl" => Turn::Left,
                _ => turn,
            };
            solve_rsr_lsl_periodic(&cfg.params, &cfg.wind, cfg.start, turn, cfg.k)
                .map_err(construction_error)?
                .ok_or_else(|| {
                    CliError::Infeasible(format!(
                        "no mushroom path with delta {} and k {}: needs 1 + delta*k >= 1",
                        cfg.delta, cfg.k
                    ))
                })
        }
        "bsb" | "rsl" | "lsr" => {
            let turn = match family {
                "rsl" => Turn::Right,
                "lsr" => Turn::Left,
                _ => turn,
            };
            let paths = solve_rsl_lsr_periodic(
                &cfg.params,
                &cfg.wind,
                cfg.start,
                turn,
                cfg.k,
                DEFAULT_SEEDS,
            )
            .map_err(construction_error)?;
            paths.into_iter().next().ok_or_else(|| {
                CliError::Infeasible(format!(
                    "no periodic opposite-turn path from this start with k {}",
                    cfg.k
                ))
            })
        }
        "figure-eight" | "fig8" => {
            if cfg.wind.eta() == 0.0 {
                return Err(CliError::Infeasible(
                    "figure-eight needs wind (eta > 0); in calm air use --family mushroom".into(),
                ));
            }
            build_figure_eight(&cfg.params, &cfg.wind, (cfg.start.x, cfg.start.y))
                .map_err(construction_error)
        }
        other => Err(CliError::Input(format!(
            "unknown path family `{other}` (mushroom, rsr, lsl, bsb, rsl, lsr, figure-eight)"
        ))),
    }
}

pub fn path_csv(path: &PeriodicPath, samples: usize) -> Result<String, CliError> {
    let rows = path.sample_wind_indexed(samples).map_err(input_error)?;
    let mut s = String::with_capacity(64 * samples);
    s.push_str(PATH_CSV_HEADER);
    s.push('\n');
    for (t, pose, seg) in rows {
        let q = from_wind_frame(pose, &path.wind);
        writeln!(
            s,
            "{},{},{},{},{},{}",
            fmt_sig(t),
            fmt_sig(q.x),
            fmt_sig(q.y),
            fmt_sig(normalize_angle(q.psi)),
            seg,
            path.segments[seg].kind()
        )
        .expect("write to String");
    }
    Ok(s)
}

pub fn cmd_path(cfg: &RunConfig) -> Result<(), CliError> {
    let samples = cfg.samples.unwrap_or(DEFAULT_PATH_SAMPLES);
    if samples < 2 {
        return Err(CliError::Input(format!(
            "samples must be at least 2, got {samples}"
        )));
    }
    let path = construct_path(cfg)?;
    let csv = path_csv(&path, samples)?;
    emit(cfg.out.as_deref(), &csv)?;
    let (gap, _) = path.closure_error();
    eprintln!(
        "{} path, duration {} s, closure gap {} m",
        path.path_type,
        fmt_sig(path.total_duration),
        fmt_sig(gap)
    );
    Ok(())
}

pub fn sweep_csv(rows: &[ExtentCurvePoint], r: f64) -> String {
    let mut s = String::new();
    s.push_str(SWEEP_CSV_HEADER);
    s.push('\n');
    for p in rows {
        writeln!(
            s,
            "{},{},{},{},{}",
            fmt_sig(p.eta),
            fmt_sig(p.d_mushroom / r),
            fmt_sig(p.d_figure_eight / r),
            fmt_sig(p.d_min_of_two / r),
            p.selected
        )
        .expect("write to String");
    }
    s
}

pub fn cmd_extent_sweep(cfg: &RunConfig) -> Result<(), CliError> {
    let n = cfg.samples.unwrap_or(DEFAULT_SWEEP_ROWS);
    if n < MIN_SWEEP_ROWS {
        return Err(CliError::Input(format!(
            "sweep needs at least {MIN_SWEEP_ROWS} rows, got {n}"
        )));
    }
    let rows = extent_sweep(&cfg.params, n, Exec::default()).map_err(input_error)?;
    emit(
        cfg.out.as_deref(),
        &sweep_csv(&rows, cfg.params.min_turn_radius()),
    )
}

pub fn switch_report(cfg: &RunConfig) -> Result<String, CliError> {
    let r = cfg.params.min_turn_radius();
    let sp = find_switching_point(&cfg.params, 1e-12).map_err(input_error)?;
    let mut s = String::new();
    let mut line = |k: &str, v: f64| writeln!(s, "{k} = {}", fmt_sig(v)).expect("write to String");
    line("eta_star", sp.eta_star);
    line("d_min_m", sp.d_min);
    line("d_min_over_rmin", sp.d_min_ratio);
    line(
        "reduction_vs_mushroom_pct",
        100.0 * (1.0 - sp.d_min / (PI * r)),
    );
    line(
        "reduction_vs_figure_eight_pct",
        100.0 * (1.0 - sp.d_min / (2.0 * r)),
    );
    Ok(s)
}

pub fn cmd_switch(cfg: &RunConfig) -> Result<(), CliError> {
    emit(cfg.out.as_deref(), &switch_report(cfg)?)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

pub fn cmd_terrain(cfg: &RunConfig) -> Result<(), CliError> {
    let dem_path = cfg
        .dem
        .as_ref()
        .ok_or_else(|| CliError::Input("terrain needs --dem <file.asc>".into()))?;
    let radii = cfg
        .radii
        .clone()
        .unwrap_or_else(|| default_radii(&cfg.params));
    // Radius list validation happens inside the raster call, but do it before
    // reading a possibly large DEM.
    if radii.is_empty()
        || radii.iter().any(|r| !(r.is_finite() && *r > 0.0))
        || radii.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(CliError::Input(
            "radii must be positive and strictly ascending".into(),
        ));
    }
    let prefix = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_TERRAIN_PREFIX));
    let outputs = [".asc", ".pgm", "_coverage.csv"].map(|s| with_suffix(&prefix, s));
    if outputs.iter().any(|o| same_file(o, dem_path)) {
        return Err(CliError::Input(format!(
            "output prefix {} would overwrite the input DEM",
            prefix.display()
        )));
    }
    let file = File::open(dem_path)
        .map_err(|e| CliError::Input(format!("cannot open {}: {e}", dem_path.display())))?;
    let dem = load_dem(BufReader::new(file))
        .map_err(|e| CliError::Input(format!("{}: {e}", dem_path.display())))?;

    let half_extent = 0.5 * dem.cell_size * dem.n_rows.min(dem.n_cols) as f64;
    for &r in radii.iter().filter(|&&r| r > half_extent) {
        eprintln!(
            "warning: radius {} m exceeds the grid half-extent {} m; every cell is invalid at this tier",
            fmt_sig(r),
            fmt_sig(half_extent)
        );
    }

    let raster = valid_region_raster(&dem, &radii, &cfg.clearance).map_err(input_error)?;
    let table = coverage_table(&raster);
    let mut asc = Vec::new();
    let mut pgm = Vec::new();
    let mut csv = Vec::new();
    write_validity_asc(&raster, &mut asc).map_err(input_error)?;
    write_validity_pgm(&raster, &mut pgm).map_err(input_error)?;
    write_coverage_csv(&table, &mut csv).map_err(input_error)?;

    for (p, bytes) in outputs.iter().zip([&asc, &pgm, &csv]) {
        fs::write(p, bytes)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?;
    }
    print!("{}", String::from_utf8(csv).expect("ascii csv"));
    Ok(())
}

fn strategy(cfg: &RunConfig) -> Result<Strategy, CliError> {
    match cfg.family.as_deref().unwrap_or("switching") {
        "switching" => Ok(Strategy::Switching),
        "mushroom-only" | "mushroom" => Ok(Strategy::MushroomOnly),
        "figure-eight-only" | "figure-eight" => Ok(Strategy::FigureEightOnly),
        other => Err(CliError::Input(format!(
            "unknown strategy `{other}` (switching, mushroom-only, figure-eight-only)"
        ))),
    }
}

/// Contiguous runs of failing grid rows as `[lo, hi]` wind-ratio intervals.
fn failing_bands(failing: &[f64], n_eta: usize) -> Vec<(f64, f64)> {
    let idx: Vec<usize> = (0..n_eta)
        .filter(|&i| failing.contains(&grid_eta(i, n_eta)))
        .collect();
    let mut bands: Vec<(usize, usize)> = Vec::new();
    for i in idx {
        match bands.last_mut() {
            Some((_, hi)) if *hi + 1 == i => *hi = i,
            _ => bands.push((i, i)),
        }
    }
    bands
        .into_iter()
        .map(|(a, b)| (grid_eta(a, n_eta), grid_eta(b, n_eta)))
        .collect()
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<(), CliError> {
    let strategy = strategy(cfg)?;
    let (n_eta, n_psi) = cfg.grid;
    if n_eta < 8 || n_psi < 8 {
        return Err(CliError::Input(format!(
            "verification grid must be at least 8x8, got {n_eta}x{n_psi}"
        )));
    }
    let samples = cfg.samples.unwrap_or(DEFAULT_VERIFY_SAMPLES);
    if samples < 2 {
        return Err(CliError::Input(format!(
            "samples must be at least 2, got {samples}"
        )));
    }
    let r = cfg.params.min_turn_radius();
    let radius = cfg.radius_scale * safe_set_radius(&cfg.params);
    let opts = VerifyOptions {
        strategy,
        samples,
        exec: Exec::default(),
    };
    let report =
        verify_wind_invariance(&cfg.params, radius, cfg.grid, &opts).map_err(input_error)?;

    let mut s = String::new();
    let mut line = |k: &str, v: String| writeln!(s, "{k} = {v}").expect("write to String");
    line("strategy", format!("{strategy:?}"));
    line("radius_m", fmt_sig(radius));
    line("radius_over_rmin", fmt_sig(radius / r));
    line("grid", format!("{n_eta}x{n_psi}"));
    line("max_distance_m", fmt_sig(report.max_observed_extent));
    line(
        "max_distance_over_rmin",
        fmt_sig(report.max_observed_extent / r),
    );
    line("failures", report.failure_count().to_string());
    let bands = failing_bands(&report.failing_etas(), n_eta);
    for (lo, hi) in &bands {
        line(
            "failing_eta_band",
            format!("{},{}", fmt_sig(*lo), fmt_sig(*hi)),
        );
    }
    emit(cfg.out.as_deref(), &s)?;
    if report.all_contained() {
        Ok(())
    } else {
        Err(CliError::Invariant(format!(
            "{} of {} wind cells leave the disk of radius {} m",
            report.failure_count(),
            n_eta * n_psi,
            fmt_sig(radius)
        )))
    }
}
