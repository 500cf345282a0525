//! Run configuration: command-line flags layered over an optional
//! `key=value` file layered over built-in defaults.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;

use clap::Args;
use loiter_core::{ClearanceConstraints, Pose2H, VehicleParams, WindCondition};

use crate::CliError;

pub const DEFAULT_AIRSPEED: f64 = 20.0;
pub const DEFAULT_MIN_TURN_RADIUS: f64 = 66.67;

/// Flags shared by every subcommand. Every flag may also be given in the
/// config file under the same name without the leading dashes.
#[derive(Debug, Default, Clone, Args)]
pub struct Flags {
    /// Airspeed in m/s [default: 20]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub va: Option<f64>,
    /// Minimum turn radius in m [default: 66.67]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub rmin: Option<f64>,
    /// Wind ratio V_w / V_a in [0, 1) [default: 0]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Wind direction in rad [default: 0]
    #[arg(long = "psi-w", global = true, allow_negative_numbers = true)]
    pub psi_w: Option<f64>,
    /// Path family (path: mushroom | bsb | figure-eight; verify: switching |
    /// mushroom-only | figure-eight-only)
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Winding index k in -3..=2 [default: 0]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k: Option<i32>,
    /// First turn direction: 1 = left, -1 = right [default: 1]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta: Option<i32>,
    /// Path samples, sweep rows, or samples per verification cell
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Comma-separated ascending loiter radii in m [default: R, safe-set radius, 2R, pi*R]
    #[arg(long, global = true)]
    pub radii: Option<String>,
    /// Lower clearance above terrain in m [default: 50]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub dmin: Option<f64>,
    /// Upper clearance above terrain in m [default: 120]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub dmax: Option<f64>,
    /// Output file (path, extent-sweep) or output prefix (terrain)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Config file of `key = value` lines
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Start pose `x,y,psi` (path) or disk center `x,y` (figure-eight) [default: 0,0,0]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub start: Option<String>,
    /// Verification disk radius as a multiple of the safe-set radius; a number or `pi` [default: 1]
    #[arg(long = "radius-scale", global = true)]
    pub radius_scale: Option<String>,
    /// Verification grid `N_ETAxN_PSI` [default: 64x64]
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// Input DEM in ESRI ASCII grid format
    #[arg(long, global = true)]
    pub dem: Option<PathBuf>,
}

const KNOWN_KEYS: &[&str] = &[
    "va",
    "rmin",
    "eta",
    "psi-w",
    "family",
    "k",
    "delta",
    "samples",
    "radii",
    "dmin",
    "dmax",
    "out",
    "start",
    "radius-scale",
    "grid",
    "dem",
];

/// Parse a flat `key = value` file. Blank lines and lines starting with `#`
/// are ignored; keys are the long flag names.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Input(format!("config line {}: expected key = value", i + 1))
        })?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Input(format!(
                "config line {}: unknown key `{key}`",
                i + 1
            )));
        }
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(CliError::Input(format!(
                "config line {}: duplicate key `{key}`",
                i + 1
            )));
        }
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::Input(format!("invalid value `{v}` for `{key}`")))
}

/// Fill every unset flag from the config file, if one is given.
pub fn merge_config(mut flags: Flags) -> Result<Flags, CliError> {
    let Some(path) = flags.config.clone() else {
        return Ok(flags);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
    let map = parse_config_text(&text)?;
    macro_rules! fill {
        ($field:ident, $key:literal) => {
            if flags.$field.is_none() {
                if let Some(v) = map.get($key) {
                    flags.$field = Some(parse_value($key, v)?);
                }
            }
        };
    }
    fill!(va, "va");
    fill!(rmin, "rmin");
    fill!(eta, "eta");
    fill!(psi_w, "psi-w");
    fill!(family, "family");
    fill!(k, "k");
    fill!(delta, "delta");
    fill!(samples, "samples");
    fill!(radii, "radii");
    fill!(dmin, "dmin");
    fill!(dmax, "dmax");
    fill!(out, "out");
    fill!(start, "start");
    fill!(radius_scale, "radius-scale");
    fill!(grid, "grid");
    fill!(dem, "dem");
    Ok(flags)
}

/// Fully resolved, validated settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: VehicleParams,
    pub wind: WindCondition,
    pub family: Option<String>,
    pub k: i32,
    pub delta: i32,
    pub samples: Option<usize>,
    pub radii: Option<Vec<f64>>,
    pub clearance: ClearanceConstraints,
    pub out: Option<PathBuf>,
    pub start: Pose2H,
    pub radius_scale: f64,
    pub grid: (usize, usize),
    pub dem: Option<PathBuf>,
}

fn parse_list(key: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| parse_value::<f64>(key, t.trim()))
        .collect()
}

fn parse_start(s: &str) -> Result<Pose2H, CliError> {
    let v = parse_list("start", s)?;
    match v.as_slice() {
        [x, y] => Ok(Pose2H::new(*x, *y, 0.0)),
        [x, y, psi] => Ok(Pose2H::new(*x, *y, *psi).normalized()),
        _ => Err(CliError::Input(format!(
            "start must be `x,y` or `x,y,psi`, got `{s}`"
        ))),
    }
}

fn parse_scale(s: &str) -> Result<f64, CliError> {
    let v = match s.trim().to_ascii_lowercase().as_str() {
        "pi" => PI,
        other => parse_value("radius-scale", other)?,
    };
    if !(v.is_finite() && v > 0.0) {
        return Err(CliError::Input(format!(
            "radius-scale must be positive, got `{s}`"
        )));
    }
    Ok(v)
}

fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| CliError::Input(format!("grid must be `N_ETAxN_PSI`, got `{s}`")))?;
    Ok((
        parse_value("grid", a.trim())?,
        parse_value("grid", b.trim())?,
    ))
}

fn finite(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Input(format!("`{key}` must be finite")))
    }
}

impl RunConfig {
    pub fn resolve(flags: Flags) -> Result<Self, CliError> {
        let f = merge_config(flags)?;
        let params = VehicleParams::new(
            finite("va", f.va.unwrap_or(DEFAULT_AIRSPEED))?,
            finite("rmin", f.rmin.unwrap_or(DEFAULT_MIN_TURN_RADIUS))?,
        )
        .map_err(|e| CliError::Input(e.to_string()))?;
        let wind = WindCondition::new(
            finite("eta", f.eta.unwrap_or(0.0))?,
            finite("psi-w", f.psi_w.unwrap_or(0.0))?,
        )
        .map_err(|e| CliError::Input(e.to_string()))?;
        let default_clearance = ClearanceConstraints::default();
        let clearance = ClearanceConstraints::new(
            f.dmin.unwrap_or(default_clearance.d_min),
            f.dmax.unwrap_or(default_clearance.d_max),
        )
        .map_err(|e| CliError::Input(e.to_string()))?;
        let delta = f.delta.unwrap_or(1);
        if delta != 1 && delta != -1 {
            return Err(CliError::Input(format!(
                "delta must be 1 or -1, got {delta}"
            )));
        }
        let radii = f
            .radii
            .as_deref()
            .map(|s| parse_list("radii", s))
            .transpose()?;
        Ok(Self {
            params,
            wind,
            family: f.family.map(|s| s.trim().to_ascii_lowercase()),
            k: f.k.unwrap_or(0),
            delta,
            samples: f.samples,
            radii,
            clearance,
            out: f.out,
            start: f
                .start
                .as_deref()
                .map(parse_start)
                .transpose()?
                .unwrap_or(Pose2H::new(0.0, 0.0, 0.0)),
            radius_scale: f
                .radius_scale
                .as_deref()
                .map(parse_scale)
                .transpose()?
                .unwrap_or(1.0),
            grid: f
                .grid
                .as_deref()
                .map(parse_grid)
                .transpose()?
                .unwrap_or((64, 64)),
            dem: f.dem,
        })
    }
}
