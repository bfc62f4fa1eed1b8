//! `build` and `wavelets`.

use std::path::PathBuf;

use knotwave::coeff::{c_blocks, d_blocks, CoeffTable};
use knotwave::mra::{build_scaffold, build_wavelets, check_wavelets, DimensionReport};
use knotwave::poly_family::{build_family, omega_basis};
use knotwave::quad_family::{insert_breakpoints, nesting_failures, omega, RootBranch, ThetaSequence};
use knotwave::tau::{self, TauFamily, TauTable};
use knotwave::{CenteredBasis, KnotWindow};
use serde::Serialize;

use crate::config::{Family, JobArgs};
use crate::output::{self, FunctionInfo, KnotCount, SampleGrid, WindowInfo};
use crate::CliResult;

/// Family parameters recorded in every manifest.
#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_branch: Option<RootBranch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<i32>,
}

/// A scaling basis with the parameters that produced it.
pub struct Level {
    pub basis: CenteredBasis,
    pub params: Params,
}

fn params(args: &JobArgs) -> Params {
    Params { family: args.family, degree: None, theta: None, root_branch: None, level: None }
}

fn tau_family(f: Family) -> TauFamily {
    match f {
        Family::TauHaar => TauFamily::Haar,
        _ => TauFamily::Quad,
    }
}

fn poly_level(args: &JobArgs, n: usize, w: &KnotWindow) -> CliResult<Level> {
    let basis = omega_basis(&build_family(n)?, w, true)?;
    Ok(Level { basis, params: Params { degree: Some(n), ..params(args) } })
}

fn quad_level(args: &JobArgs, w: &KnotWindow, t: &ThetaSequence) -> CliResult<Level> {
    let basis = omega(w, t, true)?;
    Ok(Level { basis, params: Params { theta: Some(t.0.clone()), root_branch: Some(RootBranch::Plus), ..params(args) } })
}

fn tau_level(args: &JobArgs, k: i32) -> CliResult<Level> {
    let b = tau::tau_level(tau_family(args.family), k, args.tau_bound()?)?;
    let theta = (args.family == Family::TauQuad).then(|| vec![1.0 / knotwave::knots::TAU]);
    let root_branch = theta.as_ref().map(|_| RootBranch::Plus);
    Ok(Level { basis: b.basis, params: Params { level: Some(k), theta, root_branch, ..params(args) } })
}

/// The scaling basis selected by the arguments.
pub fn coarse_level(args: &JobArgs) -> CliResult<Level> {
    args.check()?;
    match args.family {
        Family::Poly => poly_level(args, args.degree()?, &args.window()?),
        Family::Quad => {
            let w = args.window()?;
            let t = args.thetas(args.theta.as_deref(), &w)?;
            quad_level(args, &w, &t)
        }
        Family::TauHaar | Family::TauQuad => tau_level(args, args.level),
    }
}

/// The nested pair: poly `n → n+3` on one window, quad coarse/fine windows,
/// tau levels `k → k+1`.
pub fn pair(args: &JobArgs) -> CliResult<(Level, Level)> {
    args.check()?;
    match args.family {
        Family::Poly => {
            let w = args.window()?;
            let n = args.degree()?;
            Ok((poly_level(args, n, &w)?, poly_level(args, n + 3, &w)?))
        }
        Family::Quad => {
            let w0 = args.window()?;
            let t0 = args.thetas(args.theta.as_deref(), &w0)?;
            let w1 = match args.fine_window()? {
                Some(w) => w,
                None => insert_breakpoints(&w0, &t0)?,
            };
            let t1 = args.thetas(args.theta1.as_deref(), &w1)?;
            let failures = nesting_failures(&w0, &t0, &w1, &t1)?;
            if !failures.is_empty() {
                return Err(knotwave::Error::NotNested(failures.join("; ")).into());
            }
            Ok((quad_level(args, &w0, &t0)?, quad_level(args, &w1, &t1)?))
        }
        Family::TauHaar | Family::TauQuad => Ok((tau_level(args, args.level)?, tau_level(args, args.level + 1)?)),
    }
}

#[derive(Serialize)]
struct BuildManifest<'a> {
    command: &'static str,
    params: &'a Params,
    window: WindowInfo,
    counts: Vec<KnotCount>,
    functions: Vec<FunctionInfo>,
    normalization: &'static str,
    sign_convention: &'static str,
    samples: SampleGrid,
    gram_error: f64,
}

fn grid(w: &KnotWindow, points: usize, file: &str) -> SampleGrid {
    let k = w.knots();
    SampleGrid { x0: k[0], x1: k[k.len() - 1], points, file: file.to_string() }
}

pub fn cmd_build(args: &JobArgs) -> CliResult<Vec<PathBuf>> {
    let level = coarse_level(args)?;
    let b = &level.basis;
    let dir = args.output_dir();
    let name = output::sample_name("basis", args.format);
    let g = grid(&b.window, args.sample_points, &name);
    let text = output::samples(&b.labeled("phi"), g.x0, g.x1, g.points, args.format)?;
    let manifest = BuildManifest {
        command: "build",
        params: &level.params,
        window: WindowInfo::from(&b.window),
        counts: output::knot_counts(b),
        functions: output::function_info(b, "phi"),
        normalization: output::NORMALIZATION,
        sign_convention: output::SIGN_CONVENTION,
        samples: g,
        gram_error: b.gram_error(),
    };
    Ok(vec![output::write(&dir, &name, &text)?, output::write_json(&dir, "manifest.json", &manifest)?])
}

#[derive(Serialize)]
struct Dimensions<'a> {
    report: &'a DimensionReport,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct Coefficients {
    sign_convention: &'static str,
    blocks: Vec<CoeffTable>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    tau_tables: Vec<TauTable>,
}

#[derive(Serialize)]
struct WaveletManifest<'a> {
    command: &'static str,
    coarse: &'a Params,
    fine: &'a Params,
    window: WindowInfo,
    fine_window: WindowInfo,
    counts: Vec<KnotCount>,
    functions: Vec<FunctionInfo>,
    normalization: &'static str,
    sign_convention: &'static str,
    samples: SampleGrid,
    check: knotwave::mra::WaveletCheck,
    files: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

/// Per-knot `c` and `d` blocks that are not empty.
fn block_tables(phi0: &CenteredBasis, fine: &CenteredBasis, psi: &CenteredBasis) -> Vec<CoeffTable> {
    let mut out = Vec::new();
    for i in 0..phi0.groups.len() {
        let label = phi0.knot_label(i);
        for kb in [c_blocks(phi0, fine, i), d_blocks(psi, fine, i)] {
            for blk in [&kb.bar_breve_prev, &kb.bar_bar, &kb.bar_breve, &kb.breve_breve] {
                if !blk.is_empty() {
                    out.push(blk.to_table(label.clone()));
                }
            }
        }
    }
    out
}

fn tables_csv(blocks: &[CoeffTable], tau_tables: &[TauTable]) -> String {
    let mut s = String::from("kind,knot,a,a_prime,row,col,value\n");
    let mut emit = |t: &CoeffTable, a: &str, ap: &str| {
        let kind = serde_json::to_value(t.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        for (r, row) in t.values.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                s.push_str(&format!("{kind},{},{a},{ap},{},{},{v}\n", t.knot_class, t.row_labels[r], t.col_labels[c]));
            }
        }
    };
    for t in blocks {
        emit(t, "", "");
    }
    for t in tau_tables {
        emit(&t.table, &t.a, &t.a_prime);
    }
    s
}

pub fn cmd_wavelets(args: &JobArgs, tol: f64) -> CliResult<Vec<PathBuf>> {
    let (coarse, fine) = pair(args)?;
    let sc = build_scaffold(&coarse.basis, &fine.basis)?;
    let psi = match args.family {
        Family::TauHaar => tau::haar_wavelets(args.level, args.tau_bound()?)?,
        _ => build_wavelets(&sc),
    };
    let check = check_wavelets(&sc, &psi);
    if !check.passed(tol) {
        let report = serde_json::to_string(&check)?;
        return Err(knotwave::Error::Consistency(format!("wavelet checks failed: {report}")).into());
    }

    let mut tau_tables = Vec::new();
    let mut note = None;
    if args.family == Family::TauQuad {
        if args.level == 0 && args.tau_bound()? >= knotwave::TauNumber::tau_pow(5) {
            tau_tables = tau::quad_tau_wavelets(args.tau_bound()?)?.cd_tables()?;
        } else {
            note = Some("C/D tables need level 0 and a window reaching tau^5");
        }
    }
    let blocks = block_tables(&sc.coarse, &sc.fine, &psi);

    let dir = args.output_dir();
    let name = output::sample_name("wavelets", args.format);
    let g = grid(&psi.window, args.sample_points, &name);
    let mut files = vec![
        output::write(&dir, &name, &output::samples(&psi.labeled("psi"), g.x0, g.x1, g.points, args.format)?)?,
        output::write_json(&dir, "dimensions.json", &Dimensions { report: &sc.dims, violations: sc.dims.violations() })?,
        output::write(&dir, "coefficients.csv", &tables_csv(&blocks, &tau_tables))?,
        output::write_json(
            &dir,
            "coefficients.json",
            &Coefficients { sign_convention: output::SIGN_CONVENTION, blocks, tau_tables },
        )?,
    ];
    let names = files.iter().filter_map(|p| p.file_name()).map(|n| n.to_string_lossy().into_owned()).collect();
    let manifest = WaveletManifest {
        command: "wavelets",
        coarse: &coarse.params,
        fine: &fine.params,
        window: WindowInfo::from(&coarse.basis.window),
        fine_window: WindowInfo::from(&fine.basis.window),
        counts: output::knot_counts(&psi),
        functions: output::function_info(&psi, "psi"),
        normalization: output::NORMALIZATION,
        sign_convention: output::SIGN_CONVENTION,
        samples: g,
        check,
        files: names,
        note,
    };
    files.push(output::write_json(&dir, "manifest.json", &manifest)?);
    Ok(files)
}
