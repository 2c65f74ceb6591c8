use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize, Serializer};

/// Flags shared by every subcommand. Anything left unset falls back to the
/// config file, then to the built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Simulation register size
    #[arg(long, global = true)]
    pub n_sim: Option<usize>,
    /// Work register size (QPE)
    #[arg(long, global = true)]
    pub n_work: Option<usize>,
    /// Grid half-width
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub d: Option<f64>,
    /// Well half-width
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Well depth
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    /// Total evolution time
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Number of Trotter steps
    #[arg(long, global = true)]
    pub steps: Option<u64>,
    /// Trotter time step; with --steps unset the step count is t/dt
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    /// ground | excited | exact-ground | exact-excited | <path>
    #[arg(long, global = true)]
    pub state: Option<String>,
    /// `exact` or a shot count
    #[arg(long, global = true)]
    pub shots: Option<Shots>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the main result here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// TOML file with any of the keys above (snake_case)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n_sim: Option<usize>,
    n_work: Option<usize>,
    d: Option<f64>,
    a: Option<f64>,
    v0: Option<f64>,
    t: Option<f64>,
    steps: Option<u64>,
    dt: Option<f64>,
    state: Option<String>,
    shots: Option<FileShots>,
    seed: Option<u64>,
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum FileShots {
    Count(u64),
    Word(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Shots {
    #[default]
    Exact,
    Finite(u64),
}

impl FromStr for Shots {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("exact") {
            return Ok(Shots::Exact);
        }
        match s.parse::<u64>() {
            Ok(0) => Err("shot count must be at least 1".into()),
            Ok(n) => Ok(Shots::Finite(n)),
            Err(_) => Err(format!("expected `exact` or a shot count, got `{s}`")),
        }
    }
}

impl fmt::Display for Shots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shots::Exact => f.write_str("exact"),
            Shots::Finite(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for Shots {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Shots::Exact => s.serialize_str("exact"),
            Shots::Finite(n) => s.serialize_u64(*n),
        }
    }
}

impl From<Shots> for wellsim::phaseest::Shots {
    fn from(s: Shots) -> Self {
        match s {
            Shots::Exact => wellsim::phaseest::Shots::Exact,
            Shots::Finite(n) => wellsim::phaseest::Shots::Finite(n),
        }
    }
}

/// Fully resolved run parameters; echoed into every JSON report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub n_sim: usize,
    pub n_work: usize,
    pub d: f64,
    pub a: f64,
    pub v0: f64,
    pub t: f64,
    pub steps: u64,
    pub dt: f64,
    pub state: String,
    pub shots: Shots,
    pub seed: u64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: &RunArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => load_file(path)?,
            None => FileConfig::default(),
        };
        let shots = match (args.shots, file.shots) {
            (Some(s), _) => s,
            (None, Some(FileShots::Count(n))) => format!("{n}")
                .parse()
                .map_err(anyhow::Error::msg)
                .context("config file key `shots`")?,
            (None, Some(FileShots::Word(w))) => w
                .parse()
                .map_err(anyhow::Error::msg)
                .context("config file key `shots`")?,
            (None, None) => Shots::Exact,
        };
        let t = args.t.or(file.t).unwrap_or(0.06);
        let dt = args.dt.or(file.dt);
        let steps = args.steps.or(file.steps);
        let (steps, dt) = match (steps, dt) {
            (Some(m), None) => (m, t / m.max(1) as f64),
            (None, None) => (50, t / 50.0),
            (None, Some(dt)) => {
                if dt.is_nan() || dt <= 0.0 {
                    bail!("time step must be positive, got {dt}");
                }
                let m = (t / dt).round().max(1.0) as u64;
                check_time(t, m, dt)?;
                (m, dt)
            }
            (Some(m), Some(dt)) => {
                check_time(t, m, dt)?;
                (m, dt)
            }
        };
        if steps == 0 {
            bail!("number of Trotter steps must be at least 1");
        }
        Ok(Self {
            n_sim: args.n_sim.or(file.n_sim).unwrap_or(4),
            n_work: args.n_work.or(file.n_work).unwrap_or(4),
            d: args.d.or(file.d).unwrap_or(0.5),
            a: args.a.or(file.a).unwrap_or(0.25),
            v0: args.v0.or(file.v0).unwrap_or(100.0),
            t,
            steps,
            dt,
            state: args
                .state
                .clone()
                .or(file.state)
                .unwrap_or_else(|| "ground".into()),
            shots,
            seed: args.seed.or(file.seed).unwrap_or(0),
            output: args.output.clone().or(file.output),
        })
    }
}

fn check_time(t: f64, steps: u64, dt: f64) -> Result<()> {
    if (steps as f64 * dt - t).abs() > 1e-12 {
        bail!("inconsistent timing: {steps} steps of {dt} do not add up to t = {t}");
    }
    Ok(())
}

fn load_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config file {}", path.display()))
}
