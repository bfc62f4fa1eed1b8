//! Sample files, manifests and coefficient tables.

use std::path::{Path, PathBuf};

use knotwave::knots::{KnotWindow, Role};
use knotwave::piecewise::sample_csv;
use knotwave::{CenteredBasis, PiecewisePoly};
use serde::Serialize;

use crate::config::Format;
use crate::{CliError, CliResult};

pub const NORMALIZATION: &str = "every function has unit L2 norm";
pub const SIGN_CONVENTION: &str =
    "the first coefficient above rounding level (pieces left to right, Legendre coefficients in local coordinates, low to high degree) is positive";

pub fn write(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|source| CliError::Io { path: path.clone(), source })?;
    Ok(path)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> CliResult<PathBuf> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    write(dir, name, &s)
}

#[derive(Serialize)]
struct SampledFunction<'a> {
    label: &'a str,
    values: Vec<f64>,
}

#[derive(Serialize)]
struct Samples<'a> {
    x: Vec<f64>,
    functions: Vec<SampledFunction<'a>>,
}

/// Samples on `points` uniform points of `[x0, x1]`; zero outside supports.
pub fn samples(fs: &[(String, PiecewisePoly)], x0: f64, x1: f64, points: usize, format: Format) -> CliResult<String> {
    let labels: Vec<String> = fs.iter().map(|(l, _)| l.clone()).collect();
    let funcs: Vec<PiecewisePoly> = fs.iter().map(|(_, f)| f.clone()).collect();
    match format {
        Format::Csv => Ok(sample_csv(&funcs, &labels, x0, x1, points)?),
        Format::Json => {
            let x: Vec<f64> = (0..points).map(|k| x0 + (x1 - x0) * k as f64 / (points - 1) as f64).collect();
            let functions = fs
                .iter()
                .map(|(l, f)| SampledFunction {
                    label: l,
                    values: x.iter().map(|&t| f.eval(t) + 0.0).collect(),
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&Samples { x, functions })?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn sample_name(stem: &str, format: Format) -> String {
    match format {
        Format::Csv => format!("{stem}.csv"),
        Format::Json => format!("{stem}.json"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowInfo {
    pub knots: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<i32>,
    pub left_role: Role,
    pub right_role: Role,
}

impl From<&KnotWindow> for WindowInfo {
    fn from(w: &KnotWindow) -> Self {
        WindowInfo {
            knots: w.knots().to_vec(),
            exact: w.exact().map(|e| e.iter().map(|t| t.to_string()).collect()),
            level: w.level(),
            left_role: w.left_role,
            right_role: w.right_role,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionInfo {
    pub label: String,
    pub knot: String,
    pub flavor: &'static str,
    pub name: String,
}

/// One entry per function, in the column order of the sample file.
pub fn function_info(b: &CenteredBasis, prefix: &str) -> Vec<FunctionInfo> {
    let mut out = Vec::new();
    for (i, g) in b.groups.iter().enumerate() {
        let knot = b.knot_label(i);
        let flavors = g.bar_names.iter().map(|n| ("bar", n)).chain(g.breve_names.iter().map(|n| ("breve", n)));
        for (flavor, name) in flavors {
            out.push(FunctionInfo { label: format!("{prefix}[{knot}].{name}"), knot: knot.clone(), flavor, name: name.clone() });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotCount {
    pub knot: String,
    pub bar: usize,
    pub breve: usize,
}

pub fn knot_counts(b: &CenteredBasis) -> Vec<KnotCount> {
    b.groups
        .iter()
        .enumerate()
        .map(|(i, g)| KnotCount { knot: b.knot_label(i), bar: g.bar.len(), breve: g.breve.len() })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleGrid {
    pub x0: f64,
    pub x1: f64,
    pub points: usize,
    pub file: String,
}
