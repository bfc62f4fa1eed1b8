//! Command-line arguments and their resolution into knot windows, θ
//! sequences and tolerances.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotwave::knots::{KnotWindow, Role, TauNumber};
use knotwave::quad_family::{check_theta, ThetaSequence};
use serde::Serialize;

use crate::{CliError, CliResult};

/// Environment variable overriding the orthogonality tolerance.
pub const TOL_ENV: &str = "KNOTWAVE_TOL";
pub const TOL_RANGE: (f64, f64) = (1e-14, 1e-4);

/// Irregular window used when no knots are given.
pub const DEFAULT_KNOTS: [f64; 6] = [0.0, 0.6, 1.5, 2.0, 3.2, 3.7];

#[derive(Parser, Debug)]
#[command(name = "knotwave", version, about = "Orthogonal piecewise-polynomial scaling functions and wavelets on irregular knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a scaling basis and write samples plus a manifest.
    Build(JobArgs),
    /// Build the wavelets between two nested levels.
    Wavelets(JobArgs),
    /// Run the invariant suite for a family; exits 4 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Poly,
    Quad,
    TauHaar,
    TauQuad,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RoleArg {
    Endpoint,
    Cut,
}

impl From<RoleArg> for Role {
    fn from(r: RoleArg) -> Role {
        match r {
            RoleArg::Endpoint => Role::Endpoint,
            RoleArg::Cut => Role::Cut,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    #[arg(long, value_enum)]
    pub family: Family,

    /// Polynomial degree n of the poly family (the wavelet pair is n and n+3).
    #[arg(long)]
    pub degree: Option<usize>,

    /// θ for the quad family: one value, or a comma-separated list with one
    /// value per interval, or @FILE.
    #[arg(long)]
    pub theta: Option<String>,

    /// θ on the fine window of a quad wavelet pair.
    #[arg(long)]
    pub theta1: Option<String>,

    /// Knots as a comma-separated list or @FILE.
    #[arg(long)]
    pub knots: Option<String>,

    /// Coarse knots of a quad wavelet pair (defaults to --knots).
    #[arg(long)]
    pub knots0: Option<String>,

    /// Fine knots of a quad wavelet pair (defaults to inserting every b-point).
    #[arg(long)]
    pub knots1: Option<String>,

    /// Role of the first knot of an explicit knot list.
    #[arg(long, value_enum, default_value = "endpoint")]
    pub left: RoleArg,

    /// Role of the last knot of an explicit knot list.
    #[arg(long, value_enum, default_value = "endpoint")]
    pub right: RoleArg,

    /// Lattice level k of the tau families.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub level: i32,

    /// Number of lattice knots (tau families); defaults to all knots up to τ⁷.
    #[arg(long)]
    pub count: Option<usize>,

    /// Output directory.
    #[arg(long, short)]
    pub output: Option<PathBuf>,

    /// Format of the sample file.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    #[arg(long, default_value_t = 201)]
    pub sample_points: usize,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub job: JobArgs,

    /// Test hook: perturb one coarse function by this amount before checking.
    #[arg(long)]
    pub perturb: Option<f64>,
}

/// `KNOTWAVE_TOL` if set (clamped), else the library default.
pub fn tolerance() -> CliResult<f64> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(knotwave::DEFAULT_TOL),
        Ok(s) => {
            let t: f64 = s.trim().parse().map_err(|_| CliError::Usage(format!("{TOL_ENV}={s:?} is not a number")))?;
            if !t.is_finite() {
                return Err(CliError::Usage(format!("{TOL_ENV}={s:?} is not finite")));
            }
            Ok(t.clamp(TOL_RANGE.0, TOL_RANGE.1))
        }
    }
}

fn read_list(arg: &str, what: &str) -> CliResult<Vec<f64>> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {what} file {path}: {e}")))?,
        None => arg.to_string(),
    };
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| CliError::Usage(format!("bad {what} value {t:?}"))))
        .collect()
}

impl JobArgs {
    pub fn check(&self) -> CliResult<()> {
        if self.sample_points < 2 {
            return Err(CliError::Usage("--sample-points must be at least 2".into()));
        }
        let tau = matches!(self.family, Family::TauHaar | Family::TauQuad);
        let given = |o: &Option<String>| o.is_some();
        if self.family != Family::Poly && self.degree.is_some() {
            return Err(CliError::Usage("--degree only applies to the poly family".into()));
        }
        if self.family != Family::Quad && (given(&self.theta) || given(&self.theta1)) {
            return Err(CliError::Usage("--theta only applies to the quad family".into()));
        }
        if tau && (given(&self.knots) || given(&self.knots0) || given(&self.knots1)) {
            return Err(CliError::Usage("tau families take --level and --count instead of knots".into()));
        }
        if !tau && self.count.is_some() {
            return Err(CliError::Usage("--count only applies to the tau families".into()));
        }
        if self.family == Family::Poly && (given(&self.knots0) || given(&self.knots1)) {
            return Err(CliError::Usage("the poly pair shares one window; use --knots".into()));
        }
        Ok(())
    }

    pub fn degree(&self) -> CliResult<usize> {
        let n = self.degree.unwrap_or(2);
        if !(1..=knotwave::poly_family::MAX_DEGREE - 3).contains(&n) {
            return Err(CliError::Usage(format!("--degree must be in 1..={}, got {n}", knotwave::poly_family::MAX_DEGREE - 3)));
        }
        Ok(n)
    }

    fn explicit_window(&self, arg: Option<&str>) -> CliResult<KnotWindow> {
        let knots = match arg {
            Some(s) => read_list(s, "knot")?,
            None => DEFAULT_KNOTS.to_vec(),
        };
        KnotWindow::new(knots, self.left.into(), self.right.into()).map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Window of the poly and quad families (coarse window for quad pairs).
    pub fn window(&self) -> CliResult<KnotWindow> {
        self.explicit_window(self.knots0.as_deref().or(self.knots.as_deref()))
    }

    pub fn fine_window(&self) -> CliResult<Option<KnotWindow>> {
        self.knots1.as_deref().map(|s| self.explicit_window(Some(s))).transpose()
    }

    /// Last lattice knot of the tau window at level `--level`.
    pub fn tau_bound(&self) -> CliResult<TauNumber> {
        match self.count {
            None => Ok(knotwave::tau::default_bound()),
            Some(n) => {
                let w = KnotWindow::tau_level(self.level, n).map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(*w.exact().expect("lattice window").last().expect("nonempty window"))
            }
        }
    }

    pub fn thetas(&self, arg: Option<&str>, w: &KnotWindow) -> CliResult<ThetaSequence> {
        let vals = match arg {
            None => vec![0.5],
            Some(s) => read_list(s, "theta")?,
        };
        for &t in &vals {
            check_theta(t).map_err(|e| CliError::Usage(e.to_string()))?;
        }
        let t = match vals.len() {
            1 => ThetaSequence::constant(vals[0], w),
            n if n == w.len() - 1 => ThetaSequence(vals),
            n => return Err(CliError::Usage(format!("{n} theta values for {} intervals", w.len() - 1))),
        };
        Ok(t)
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output.clone().unwrap_or_else(|| PathBuf::from("."))
    }
}
