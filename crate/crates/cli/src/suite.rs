//! The invariant suite behind `knotwave verify`.

use std::fmt::Write as _;

use knotwave::coeff::calculus_report;
use knotwave::knots::{TauNumber, TAU};
use knotwave::linalg;
use knotwave::mra::{build_scaffold, build_wavelets, check_wavelets, verify_centered, verify_orth_condition, WaveletScaffold};
use knotwave::poly_family::{self, build_family, poly_wavelets};
use knotwave::quad_family::{c_discriminant, c_discriminant_closed, c_quadratic, nesting_hypothesis, quad_local, ThetaSequence};
use knotwave::tau::{self, TauFamily};
use knotwave::{CenteredBasis, KnotGroup};
use serde::Serialize;

use crate::commands::pair;
use crate::config::{Family, VerifyArgs};
use crate::CliResult;

/// Fixed tolerances for quantities with a stated bound; orthonormality
/// checks use the run tolerance instead.
const IDENTITY_TOL: f64 = 1e-12;
const SPAN_TOL: f64 = 1e-8;
const M_TOL: f64 = 1e-8;
const SPARSITY_TOL: f64 = 1e-10;
const COVARIANCE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub family: Family,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturb: Option<f64>,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(family: Family, tolerance: f64, perturb: Option<f64>) -> Self {
        Report { family, tolerance, perturb, passed: true, checks: Vec::new() }
    }

    fn push(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    /// `value <= tol`; NaN fails.
    fn max(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.push(Check { name: name.into(), passed: value <= tol, value: Some(value), tol: Some(tol), detail: None });
    }

    fn flag(&mut self, name: impl Into<String>, ok: bool, detail: Option<String>) {
        self.push(Check { name: name.into(), passed: ok, value: None, tol: None, detail });
    }

    fn error(&mut self, name: &str, e: impl std::fmt::Display) {
        self.flag(name, false, Some(e.to_string()));
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(s, "{mark}  {}", c.name);
            if let (Some(v), Some(t)) = (c.value, c.tol) {
                let _ = write!(s, "  {v:.3e} (tol {t:.0e})");
            }
            if let Some(d) = &c.detail {
                let _ = write!(s, "  {d}");
            }
            s.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(s, "{passed}/{} checks passed", self.checks.len());
        s
    }
}

/// Replaces the first function at the first knot with a neighbor by
/// `f + eps·g`, where `g` is the next function of the basis.
fn perturb(b: &CenteredBasis, eps: f64) -> CenteredBasis {
    let fns = b.functions();
    let mut out = b.clone();
    if fns.len() < 2 {
        return out;
    }
    let g = &fns[1];
    if let Some(group) = out.groups.iter_mut().find(|g: &&mut KnotGroup| !g.is_empty()) {
        if let Some(f) = group.bar.first_mut().or(group.breve.first_mut()) {
            *f = f.axpy(eps, g);
        }
    }
    out
}

/// Checks shared by every nested pair. Returns the scaffold and the generic
/// wavelets, or `None` if the scaffold could not be built.
fn nested_pair(r: &mut Report, phi0: &CenteredBasis, phi1: &CenteredBasis) -> Option<(WaveletScaffold, CenteredBasis)> {
    let tol = r.tolerance;
    for (name, b) in [("coarse", phi0), ("fine", phi1)] {
        r.max(format!("{name} basis orthonormal"), b.gram_error(), tol);
        let c = verify_centered(b, tol);
        r.flag(format!("{name} basis centered"), c.passed(), None);
        r.max(format!("{name} orthogonality condition"), verify_orth_condition(b, tol).worst(), tol);
    }
    let sc = match build_scaffold(phi0, phi1) {
        Ok(sc) => sc,
        Err(e) => {
            r.error("wavelet scaffold", e);
            return None;
        }
    };
    let bad = sc.dims.violations();
    r.flag("dimension identities", bad.is_empty(), (!bad.is_empty()).then(|| bad.join("; ")));
    let psi = build_wavelets(&sc);
    let chk = check_wavelets(&sc, &psi);
    r.max("wavelets orthonormal", chk.psi_gram_error, tol);
    r.max("wavelets orthogonal to coarse basis", chk.cross_error, tol);
    r.max("fine basis reconstructed", chk.reconstruction_residual, SPAN_TOL);
    r.max("A spaces orthogonal", chk.perp_error, tol);
    r.max("W_bar formulas agree", chk.bar_crosscheck, SPAN_TOL);
    r.flag("no bar wavelets at domain endpoints", chk.endpoint_bar_empty, None);
    match calculus_report(&sc, &psi, 8) {
        Ok(c) => {
            r.max("block sparsity", c.sparsity, SPARSITY_TOL);
            r.max("scaling equation", c.scaling_residual, SPAN_TOL);
            r.max("bar coefficient rows orthonormal", c.bar_row_orthonormality, SPAN_TOL);
            r.max("alpha+ rows span A+", c.alpha_plus_span, SPAN_TOL);
            r.max("g_hat rows span W_hat", c.ghat_span, SPAN_TOL);
            r.max("g_tilde rows span W_tilde", c.gtilde_span, SPAN_TOL);
            r.max("orthogonal completion spans W_bar", c.completion_span, SPAN_TOL);
            let counts = c.count_mismatches.is_empty();
            r.flag("block ranks", counts, (!counts).then(|| c.count_mismatches.join("; ")));
            r.max(format!("M orthogonal ({} windows)", c.m_windows), c.m_orthogonality, M_TOL);
        }
        Err(e) => r.error("coefficient blocks", e),
    }
    Some((sc, psi))
}

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

fn poly(r: &mut Report, args: &VerifyArgs) -> CliResult<()> {
    let job = &args.job;
    let n = job.degree()?;
    if n >= 2 {
        let f = build_family(n)?;
        let phi = &f.phi_tilde[n - 2];
        let (rf, lf) = (poly_family::r_fn(), poly_family::l_fn());
        r.max("|phi~^n|^2 closed form", rel(phi.norm_squared(), poly_family::phi_tilde_norm_sq_closed(n)), IDENTITY_TOL);
        r.max("<r, phi~^n> closed form", rel(rf.inner_product(phi), poly_family::r_phi_tilde_closed(n)), IDENTITY_TOL);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        r.max("<l, phi~^n> = (-1)^n <r, phi~^n>", rel(lf.inner_product(phi), sign * rf.inner_product(phi)), IDENTITY_TOL);
        r.max("<r_n, l_n> closed form", rel(f.r_n.inner_product(&f.l_n), poly_family::rn_ln_closed(n)), IDENTITY_TOL);
        r.max("alpha_n solves its quadratic", poly_family::alpha_quadratic(n, f.alpha).abs(), IDENTITY_TOL);
        r.max("<r_n, (I - P_z) l_n>", f.r_n.inner_product(&f.l_proj).abs(), IDENTITY_TOL);
        let f3 = build_family(n + 3)?;
        let lhs = f.r_proj.inner_product(&f3.r_proj);
        r.max("<r^n, r^(n+3)> = |r^(n+3)|^2", rel(lhs, f3.r_proj.norm_squared()), IDENTITY_TOL);
    }
    let (coarse, fine) = pair(job)?;
    let phi0 = match args.perturb {
        Some(eps) => perturb(&coarse.basis, eps),
        None => coarse.basis,
    };
    let Some((sc, _)) = nested_pair(r, &phi0, &fine.basis) else {
        return Ok(());
    };
    match poly_wavelets(n, &phi0.window) {
        Ok(closed) => {
            let mut worst: f64 = 0.0;
            for (i, ks) in sc.knots.iter().enumerate() {
                let g = &closed.groups[i];
                if !g.bar.is_empty() {
                    worst = worst.max(linalg::span_distance(&g.bar, &ks.w_bar()));
                }
                if !g.breve.is_empty() {
                    let d = if g.breve.len() == ks.w_breve.len() {
                        linalg::span_distance(&g.breve, &ks.w_breve)
                    } else {
                        linalg::span_residual(&g.breve, &ks.w_breve)
                    };
                    worst = worst.max(d);
                }
            }
            r.max("closed-form wavelets match generic spans", worst, SPAN_TOL);
        }
        Err(e) => r.error("closed-form wavelets", e),
    }
    Ok(())
}

fn quad(r: &mut Report, args: &VerifyArgs) -> CliResult<()> {
    let job = &args.job;
    let w0 = job.window()?;
    let t0 = job.thetas(job.theta.as_deref(), &w0)?;
    let mut thetas = t0.0.clone();
    thetas.sort_by(f64::total_cmp);
    thetas.dedup();
    let (mut sys, mut eqn, mut disc) = (0.0f64, 0.0f64, 0.0f64);
    for &t in &thetas {
        let loc = quad_local(t)?;
        sys = sys.max(loc.orthogonality_error());
        let (a, b, c) = c_quadratic(t);
        eqn = eqn.max((a * loc.c * loc.c + b * loc.c + c).abs());
        disc = disc.max(rel(c_discriminant(t), c_discriminant_closed(t)));
    }
    r.max("{r, l, q, z} orthogonal", sys, 1e-10);
    r.max("c solves its quadratic", eqn, 1e-11);
    r.max("discriminant closed form", disc, 1e-10);
    let (coarse, fine) = pair(job)?;
    let t1 = ThetaSequence(fine.params.theta.clone().unwrap_or_default());
    r.flag("nesting hypothesis", nesting_hypothesis(&w0, &t0, &fine.basis.window, &t1)?, None);
    let phi0 = match args.perturb {
        Some(eps) => perturb(&coarse.basis, eps),
        None => coarse.basis,
    };
    nested_pair(r, &phi0, &fine.basis);
    Ok(())
}

fn tau_common(r: &mut Report, args: &VerifyArgs) -> CliResult<Option<(WaveletScaffold, CenteredBasis)>> {
    let job = &args.job;
    let (coarse, fine) = pair(job)?;
    let phi0 = match args.perturb {
        Some(eps) => perturb(&coarse.basis, eps),
        None => coarse.basis,
    };
    Ok(nested_pair(r, &phi0, &fine.basis))
}

fn tau_haar(r: &mut Report, args: &VerifyArgs) -> CliResult<()> {
    let job = &args.job;
    let bound = job.tau_bound()?;
    let Some((sc, _)) = tau_common(r, args)? else {
        return Ok(());
    };
    let closed = tau::haar_wavelets(job.level, bound)?;
    let mut worst: f64 = 0.0;
    let mut sizes = true;
    for (i, ks) in sc.knots.iter().enumerate() {
        let g = &closed.groups[i].breve;
        sizes &= g.len() == ks.w_breve.len() && ks.w_bar().is_empty();
        if let (Some(f), Some(h)) = (g.first(), ks.w_breve.first()) {
            worst = worst.max(f.sub(h).sup_norm_sampled(16).min(f.add(h).sup_norm_sampled(16)));
        }
    }
    r.flag("one wavelet per long interval", sizes, None);
    r.max("generic wavelets match psi up to sign", worst, IDENTITY_TOL);
    let level = tau::haar_level(job.level, bound)?;
    if job.level == 0 {
        r.max("translation covariance", tau::translation_defect(&level)?, COVARIANCE_TOL);
    }
    r.max("scale covariance", tau::scale_defect(TauFamily::Haar, 1, bound)?, COVARIANCE_TOL);
    Ok(())
}

fn tau_quad(r: &mut Report, args: &VerifyArgs) -> CliResult<()> {
    let job = &args.job;
    let bound = job.tau_bound()?;
    let k = job.level;
    let mut ladder: f64 = 0.0;
    let mut hyp = true;
    for j in k..=k + 2 {
        let lo = tau::quad_tau_level(j, bound)?;
        let hi = tau::quad_tau_level(j + 1, bound)?;
        let (t0, t1) = (ThetaSequence::constant(1.0 / TAU, lo.window()), ThetaSequence::constant(1.0 / TAU, hi.window()));
        hyp &= nesting_hypothesis(lo.window(), &t0, hi.window(), &t1)?;
        ladder = ladder.max(linalg::span_residual(&lo.basis.functions(), &hi.basis.functions()));
    }
    r.flag(format!("nesting hypothesis for levels {k}..={}", k + 3), hyp, None);
    r.max("ladder reconstruction", ladder, SPAN_TOL);

    let Some((sc, _)) = tau_common(r, args)? else {
        return Ok(());
    };
    let (bad, checked) = tau::dimension_pattern(&sc, k)?;
    let detail = if bad.is_empty() { format!("{checked} knots") } else { bad.join("; ") };
    r.flag("dimension pattern by gap class", bad.is_empty() && checked > 0, Some(detail));

    r.max("scale covariance k=1", tau::scale_defect(TauFamily::Quad, 1, bound)?, COVARIANCE_TOL);
    r.max("scale covariance k=2", tau::scale_defect(TauFamily::Quad, 2, bound)?, COVARIANCE_TOL);
    if k != 0 {
        r.flag("explicit wavelets", true, Some("built at level 0 only; skipped".into()));
        return Ok(());
    }
    if bound < TauNumber::tau_pow(5) {
        r.flag("explicit wavelets", false, Some("the window must reach tau^5".into()));
        return Ok(());
    }
    r.max("translation covariance of Phi", tau::translation_defect(&tau::quad_tau_level(0, bound)?)?, COVARIANCE_TOL);
    let tq = tau::quad_tau_wavelets(bound)?;
    match tq.generic_distance(&sc) {
        Ok(d) => r.max("explicit wavelets match generic spans", d, SPAN_TOL),
        Err(e) => r.error("explicit wavelets match generic spans", e),
    }
    let chk = check_wavelets(&sc, &tq.psi);
    r.max("explicit wavelets orthonormal", chk.psi_gram_error, r.tolerance);
    r.max("explicit wavelets orthogonal to Phi", chk.cross_error, r.tolerance);
    r.max("translation covariance of Psi", tq.psi_translation_defect()?, COVARIANCE_TOL);
    r.max("c_(tau,1) = 0", linalg::max_abs(&tq.c_tau_one()?), IDENTITY_TOL);
    r.max("stationary c and d blocks", tq.stationarity_defect()?, COVARIANCE_TOL);
    r.max("C/D tables reconstruct Phi and Psi", tq.table_reconstruction_defect()?, SPAN_TOL);
    r.max("M from explicit wavelets orthogonal", tq.m_orthogonality()?, M_TOL);
    Ok(())
}

/// Runs every check for the configured family. Construction errors become
/// failing checks; only argument errors are returned.
pub fn run(args: &VerifyArgs, tol: f64) -> CliResult<Report> {
    args.job.check()?;
    // argument errors surface before any construction
    if matches!(args.job.family, Family::Poly | Family::Quad) {
        args.job.window()?;
    }
    let mut r = Report::new(args.job.family, tol, args.perturb);
    let res = match args.job.family {
        Family::Poly => poly(&mut r, args),
        Family::Quad => quad(&mut r, args),
        Family::TauHaar => tau_haar(&mut r, args),
        Family::TauQuad => tau_quad(&mut r, args),
    };
    match res {
        Ok(()) => {}
        Err(crate::CliError::Construction(e)) => r.error("construction", e),
        Err(e) => return Err(e),
    }
    Ok(r)
}
