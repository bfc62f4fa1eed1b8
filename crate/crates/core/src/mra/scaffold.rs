//! Wavelet spaces between two nested orthonormal centered bases.
//!
//! For each knot `a` the scaffold holds orthonormal bases of
//! `A_a^±`, `W̆_a`, `Ŵ_a`, `T_a`, `T_a^±`, `U_a`, `S_a` and `W̃_a`, together
//! with the dimensions needed to check the dimension formulas.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use super::centered::{CenteredBasis, KnotGroup};
use crate::error::{Error, Result};
use crate::linalg::{self, orthonormal_span, residual_orthonormal};
use crate::piecewise::PiecewisePoly;

/// Absolute residual norm below which a direction built from unit-norm
/// sources is treated as zero.
pub const RANK_TOL: f64 = 1e-8;

/// Eigenvalue threshold for null spaces of restricted Gram matrices.
const NULL_TOL: f64 = 1e-10;

/// Residual above which a coarse function is not in the fine span.
pub const NESTING_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct KnotDims {
    pub k0: usize,
    pub k1: usize,
    pub k0_bar: usize,
    pub k1_bar: usize,
    pub k0_breve: usize,
    pub k1_breve: usize,
    pub m: usize,
    pub m_minus: usize,
    pub m_plus: usize,
    pub a_plus: usize,
    pub a_minus: usize,
    /// `dim A⁻_{a₊}`, the part of `V̄⁰_{a₊}` seen by `V̆¹_a`.
    pub a_minus_next: usize,
    pub w_bar: usize,
    pub w_breve: usize,
    pub w_hat: usize,
    pub w_tilde: usize,
    pub t: usize,
    pub t_minus: usize,
    pub t_plus: usize,
    pub u: usize,
    pub s: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub knots: Vec<f64>,
    pub dims: Vec<KnotDims>,
}

impl DimensionReport {
    /// Every violated dimension identity, as `"knot i: formula"` strings.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let z = KnotDims::default();
        for (i, d) in self.dims.iter().enumerate() {
            let prev = if i > 0 { &self.dims[i - 1] } else { &z };
            let next = self.dims.get(i + 1).unwrap_or(&z);
            let s = |x: usize| x as i64;
            let mut check = |name: &str, lhs: i64, rhs: i64| {
                if lhs != rhs {
                    out.push(format!("knot {}: {name}: {lhs} != {rhs}", self.knots[i]));
                }
            };
            check("dim W_bar = k1_bar + k0_bar - m+ - m-", s(d.w_bar), s(d.k1_bar) + s(d.k0_bar) - s(d.m_plus) - s(d.m_minus));
            check(
                "dim W_breve = k1_breve - k0_breve - k0_bar - k0_bar(a+) + m+ + m-(a+)",
                s(d.w_breve),
                s(d.k1_breve) - s(d.k0_breve) - s(d.k0_bar) - s(next.k0_bar) + s(d.m_plus) + s(next.m_minus),
            );
            check(
                "dim W_breve(a-) + dim W_breve(a)",
                s(prev.w_breve) + s(d.w_breve),
                (s(prev.m_plus) - s(prev.k0_bar))
                    + (s(d.k1) - s(d.k0) - s(d.k1_bar) - s(d.k0_bar) + s(d.m_minus) + s(d.m_plus))
                    + (s(next.m_minus) - s(next.k0_bar)),
            );
            check("dim A+ = k0_bar - m+", s(d.a_plus), s(d.k0_bar) - s(d.m_plus));
            check("dim A- = k0_bar - m-", s(d.a_minus), s(d.k0_bar) - s(d.m_minus));
            check("dim A-(a+) = k0_bar(a+) - m-(a+)", s(d.a_minus_next), s(next.k0_bar) - s(next.m_minus));
            check("dim T = k0_bar - m", s(d.t), s(d.k0_bar) - s(d.m));
            check("dim T- = m+ - m", s(d.t_minus), s(d.m_plus) - s(d.m));
            check("dim T+ = m- - m", s(d.t_plus), s(d.m_minus) - s(d.m));
            check("dim U = k0_bar + m - m- - m+", s(d.u), s(d.k0_bar) + s(d.m) - s(d.m_minus) - s(d.m_plus));
            check("dim S = dim U", s(d.s), s(d.u));
            check("dim W_hat = k1_bar - m", s(d.w_hat), s(d.k1_bar) - s(d.m));
            check("dim W_tilde = k0_bar + m - m- - m+", s(d.w_tilde), s(d.k0_bar) + s(d.m) - s(d.m_minus) - s(d.m_plus));
            check(
                "k1_breve = k0_breve + dim A+ + dim A-(a+) + dim W_breve",
                s(d.k1_breve),
                s(d.k0_breve) + s(d.a_plus) + s(d.a_minus_next) + s(d.w_breve),
            );
        }
        out
    }
}

/// All per-knot spaces, each as an orthonormal list.
#[derive(Clone, Debug, Default)]
pub struct KnotScaffold {
    pub knot: f64,
    pub a_minus: Vec<PiecewisePoly>,
    pub a_plus: Vec<PiecewisePoly>,
    pub a_minus_next: Vec<PiecewisePoly>,
    pub w_breve: Vec<PiecewisePoly>,
    pub w_hat: Vec<PiecewisePoly>,
    pub w_tilde: Vec<PiecewisePoly>,
    pub t: Vec<PiecewisePoly>,
    pub t_minus: Vec<PiecewisePoly>,
    pub t_plus: Vec<PiecewisePoly>,
    pub u: Vec<PiecewisePoly>,
    pub s: Vec<PiecewisePoly>,
    pub dims: KnotDims,
    /// Largest inner product among `V̆⁰_a`, `A⁺_a`, `A⁻_{a₊}`.
    pub perp_error: f64,
    /// Span distance between `Ŵ ⊕ W̃` and `(A⁻ ⊕ V̄¹ ⊕ A⁺) ∩ (V̄⁰)^⊥`.
    pub bar_crosscheck: f64,
}

impl KnotScaffold {
    /// `W̄_a = Ŵ_a ⊕ W̃_a`.
    pub fn w_bar(&self) -> Vec<PiecewisePoly> {
        self.w_hat.iter().chain(&self.w_tilde).cloned().collect()
    }
}

#[derive(Clone, Debug)]
pub struct WaveletScaffold {
    pub coarse: CenteredBasis,
    /// The fine basis grouped on the coarse knots.
    pub fine: CenteredBasis,
    pub knots: Vec<KnotScaffold>,
    pub dims: DimensionReport,
    /// Largest relative residual of a coarse function against the fine span.
    pub nesting_residual: f64,
}

/// Regroups `phi1` onto the knots of `phi0` when the windows differ.
pub fn align_fine(phi0: &CenteredBasis, phi1: &CenteredBasis) -> Result<CenteredBasis> {
    if phi0.window.knots() == phi1.window.knots() {
        return Ok(phi1.clone());
    }
    let fns = phi1.labeled("");
    CenteredBasis::from_functions(phi0.window.clone(), fns, phi1.orthonormal)
}

fn require_orthonormal(b: &CenteredBasis, which: &str) -> Result<()> {
    let e = b.gram_error();
    if e > 1e-8 {
        return Err(Error::Contract(format!("{which} is not orthonormal (Gram error {e:.3e})")));
    }
    Ok(())
}

/// Builds every per-knot space; fails if the inputs are not orthonormal,
/// not nested, or if a dimension identity does not hold.
pub fn build_scaffold(phi0: &CenteredBasis, phi1: &CenteredBasis) -> Result<WaveletScaffold> {
    require_orthonormal(phi0, "coarse basis")?;
    require_orthonormal(phi1, "fine basis")?;
    let fine = align_fine(phi0, phi1)?;
    let n = phi0.groups.len();

    let nesting_residual = (0..n)
        .into_par_iter()
        .map(|i| linalg::span_residual(&phi0.groups[i].all(), &fine.neighborhood(i)))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max);
    if nesting_residual > NESTING_TOL {
        return Err(Error::NotNested(format!(
            "a coarse function leaves the fine span with residual {nesting_residual:.3e}"
        )));
    }

    let knots: Vec<KnotScaffold> = (0..n)
        .into_par_iter()
        .map(|i| knot_scaffold(i, phi0, &fine))
        .collect::<Vec<_>>();
    let dims = DimensionReport {
        knots: phi0.window.knots().to_vec(),
        dims: knots.iter().map(|k| k.dims.clone()).collect(),
    };
    let bad = dims.violations();
    if !bad.is_empty() {
        return Err(Error::Consistency(bad.join("; ")));
    }
    Ok(WaveletScaffold { coarse: phi0.clone(), fine, knots, dims, nesting_residual })
}

fn project_all(fs: &[PiecewisePoly], q: &[PiecewisePoly]) -> Vec<PiecewisePoly> {
    fs.iter().map(|f| linalg::project_orthonormal(f, q)).collect()
}

fn residual_all(fs: &[PiecewisePoly], q: &[PiecewisePoly]) -> Vec<PiecewisePoly> {
    fs.iter().map(|f| residual_orthonormal(f, q)).collect()
}

fn restricted_intersection_dim(a: &[PiecewisePoly], b: &[PiecewisePoly], u: f64, v: f64) -> usize {
    let ra: Vec<PiecewisePoly> = a.iter().map(|f| f.restrict(u, v)).collect();
    let rb: Vec<PiecewisePoly> = b.iter().map(|f| f.restrict(u, v)).collect();
    linalg::intersection_dim(&linalg::orthonormalize(&ra, 1e-9), &linalg::orthonormalize(&rb, 1e-9))
}

/// Orthonormal basis of `{Σ c_j t_j : Σ c_j t_j = 0 on [u, v]}` for an
/// orthonormal list `t`.
fn vanishing_on(t: &[PiecewisePoly], u: f64, v: f64) -> Vec<PiecewisePoly> {
    if t.is_empty() {
        return Vec::new();
    }
    let r: Vec<PiecewisePoly> = t.iter().map(|f| f.restrict(u, v)).collect();
    let g = linalg::gram(&r, &r);
    let eig = SymmetricEigen::new(g);
    let mut idx: Vec<usize> = (0..t.len()).filter(|&j| eig.eigenvalues[j] < NULL_TOL).collect();
    idx.sort_unstable();
    let fns: Vec<PiecewisePoly> = idx
        .iter()
        .map(|&j| {
            let c: Vec<f64> = eig.eigenvectors.column(j).iter().copied().collect();
            let refs: Vec<&PiecewisePoly> = t.iter().collect();
            // drop the numerically-zero remainder on [u, v]
            let f = PiecewisePoly::linear_combination(&c, &refs);
            f.sub(&f.restrict(u, v))
        })
        .collect();
    orthonormal_span(&fns, RANK_TOL)
}

/// `X ∩ Y^⊥` for orthonormal `x`, `y`.
fn orthogonal_part(x: &[PiecewisePoly], y: &[PiecewisePoly]) -> Vec<PiecewisePoly> {
    if x.is_empty() {
        return Vec::new();
    }
    if y.is_empty() {
        return x.to_vec();
    }
    let g = linalg::gram(x, y);
    let ggt: DMatrix<f64> = &g * g.transpose();
    let eig = SymmetricEigen::new(ggt);
    let refs: Vec<&PiecewisePoly> = x.iter().collect();
    let fns: Vec<PiecewisePoly> = (0..x.len())
        .filter(|&j| eig.eigenvalues[j] < NULL_TOL)
        .map(|j| {
            let c: Vec<f64> = eig.eigenvectors.column(j).iter().copied().collect();
            PiecewisePoly::linear_combination(&c, &refs)
        })
        .collect();
    orthonormal_span(&residual_all(&fns, y), RANK_TOL)
}

fn max_cross(a: &[PiecewisePoly], b: &[PiecewisePoly]) -> f64 {
    linalg::max_abs(&linalg::gram(a, b))
}

fn knot_scaffold(i: usize, coarse: &CenteredBasis, fine: &CenteredBasis) -> KnotScaffold {
    let w = &coarse.window;
    let a = w.knots()[i];
    let prev = w.predecessor_at(i).knot();
    let next = w.successor_at(i).knot();
    let empty = KnotGroup::default();
    let c = &coarse.groups[i];
    let f = &fine.groups[i];
    let c_prev = if i > 0 { &coarse.groups[i - 1] } else { &empty };
    let f_prev = if i > 0 { &fine.groups[i - 1] } else { &empty };
    let c_next = coarse.groups.get(i + 1).unwrap_or(&empty);

    let a_plus = orthonormal_span(&project_all(&c.bar, &f.breve), RANK_TOL);
    let a_minus = orthonormal_span(&project_all(&c.bar, &f_prev.breve), RANK_TOL);
    let a_minus_next = orthonormal_span(&project_all(&c_next.bar, &f.breve), RANK_TOL);
    let perp_error = max_cross(&c.breve, &a_plus).max(max_cross(&c.breve, &a_minus_next)).max(max_cross(&a_plus, &a_minus_next));

    let mut seen: Vec<PiecewisePoly> = c.breve.clone();
    seen.extend(a_plus.iter().cloned());
    seen.extend(a_minus_next.iter().cloned());
    let seen = orthonormal_span(&seen, RANK_TOL);
    let w_breve = orthonormal_span(&residual_all(&f.breve, &seen), RANK_TOL);

    let w_hat = orthonormal_span(&residual_all(&f.bar, &c.bar), RANK_TOL);
    let t = orthonormal_span(&residual_all(&c.bar, &f.bar), RANK_TOL);
    let lo = prev.unwrap_or(f64::NEG_INFINITY);
    let hi = next.unwrap_or(f64::INFINITY);
    let t_minus = vanishing_on(&t, a, hi);
    let t_plus = vanishing_on(&t, lo, a);
    let mut tpm = t_minus.clone();
    tpm.extend(t_plus.iter().cloned());
    let tpm = orthonormal_span(&tpm, RANK_TOL);
    let u = orthonormal_span(&residual_all(&t, &tpm), RANK_TOL);
    let s_raw: Vec<PiecewisePoly> = u.iter().map(|g| g.restrict(a, hi).sub(&g.restrict(lo, a))).collect();
    let s = orthonormal_span(&s_raw, RANK_TOL);
    let mut v0_hat = c.bar.clone();
    v0_hat.extend(w_hat.iter().cloned());
    let w_tilde = orthonormal_span(&residual_all(&s, &v0_hat), RANK_TOL);

    let mut around: Vec<PiecewisePoly> = a_minus.clone();
    around.extend(f.bar.iter().cloned());
    around.extend(a_plus.iter().cloned());
    let around = orthonormal_span(&around, RANK_TOL);
    let alt = orthogonal_part(&around, &c.bar);
    let w_bar: Vec<PiecewisePoly> = w_hat.iter().chain(&w_tilde).cloned().collect();
    let bar_crosscheck = if alt.len() == w_bar.len() {
        linalg::span_residual(&alt, &w_bar).max(linalg::span_residual(&w_bar, &alt))
    } else {
        f64::INFINITY
    };

    let m = linalg::intersection_dim(&c.bar, &f.bar);
    let m_plus = restricted_intersection_dim(&c.bar, &f.bar, a, hi);
    let m_minus = restricted_intersection_dim(&c.bar, &f.bar, lo, a);

    let dims = KnotDims {
        k0: c_prev.breve.len() + c.bar.len() + c.breve.len(),
        k1: f_prev.breve.len() + f.bar.len() + f.breve.len(),
        k0_bar: c.bar.len(),
        k1_bar: f.bar.len(),
        k0_breve: c.breve.len(),
        k1_breve: f.breve.len(),
        m,
        m_minus,
        m_plus,
        a_plus: a_plus.len(),
        a_minus: a_minus.len(),
        a_minus_next: a_minus_next.len(),
        w_bar: w_bar.len(),
        w_breve: w_breve.len(),
        w_hat: w_hat.len(),
        w_tilde: w_tilde.len(),
        t: t.len(),
        t_minus: t_minus.len(),
        t_plus: t_plus.len(),
        u: u.len(),
        s: s.len(),
    };
    KnotScaffold {
        knot: a,
        a_minus,
        a_plus,
        a_minus_next,
        w_breve,
        w_hat,
        w_tilde,
        t,
        t_minus,
        t_plus,
        u,
        s,
        dims,
        perp_error,
        bar_crosscheck,
    }
}

/// The wavelet basis `Ψ`: `Ŵ_a ⊕ W̃_a` as bar functions and `W̆_a` as breve
/// functions at every knot.
pub fn build_wavelets(sc: &WaveletScaffold) -> CenteredBasis {
    let groups = sc
        .knots
        .iter()
        .map(|k| {
            let mut g = KnotGroup::default();
            for (j, f) in k.w_hat.iter().enumerate() {
                g.push_bar(format!("hat{j}"), f.clone());
            }
            for (j, f) in k.w_tilde.iter().enumerate() {
                g.push_bar(format!("tilde{j}"), f.clone());
            }
            for (j, f) in k.w_breve.iter().enumerate() {
                g.push_breve(format!("w{j}"), f.clone());
            }
            g
        })
        .collect();
    CenteredBasis { window: sc.coarse.window.clone(), groups, orthonormal: true }
}

/// Contract checks for a wavelet basis built from a scaffold.
#[derive(Clone, Debug, Serialize)]
pub struct WaveletCheck {
    /// `max |⟨Ψ,Ψ⟩ - I|`.
    pub psi_gram_error: f64,
    /// `max |⟨Ψ,Φ⁰⟩|`.
    pub cross_error: f64,
    /// Largest relative residual of a fine function against `Φ⁰ ∪ Ψ`.
    pub reconstruction_residual: f64,
    /// Largest inner product among `V̆⁰_a`, `A⁺_a`, `A⁻_{a₊}` over all knots.
    pub perp_error: f64,
    /// Largest span distance between the two `W̄_a` formulas.
    pub bar_crosscheck: f64,
    /// Whether `W̄_a` is empty at every true domain endpoint.
    pub endpoint_bar_empty: bool,
}

impl WaveletCheck {
    pub fn passed(&self, tol: f64) -> bool {
        self.psi_gram_error < tol
            && self.cross_error < tol
            && self.reconstruction_residual < tol
            && self.perp_error < tol
            && self.bar_crosscheck < tol
            && self.endpoint_bar_empty
    }
}

pub fn check_wavelets(sc: &WaveletScaffold, psi: &CenteredBasis) -> WaveletCheck {
    let coarse = &sc.coarse;
    let n = coarse.groups.len();
    let psi_fns = psi.functions();
    let phi_fns = coarse.functions();
    let psi_gram_error = linalg::orthonormality_error(&psi_fns);
    let cross_error = max_cross(&psi_fns, &phi_fns);
    let reconstruction_residual = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut q = coarse.neighborhood(i);
            q.extend(psi.neighborhood(i));
            linalg::span_residual(&sc.fine.groups[i].all(), &q)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max);
    let perp_error = sc.knots.iter().map(|k| k.perp_error).fold(0.0, f64::max);
    let bar_crosscheck = sc.knots.iter().map(|k| k.bar_crosscheck).fold(0.0, f64::max);
    let endpoint_bar_empty = (0..n).filter(|&i| coarse.window.is_domain_endpoint(i)).all(|i| psi.groups[i].bar.is_empty());
    WaveletCheck { psi_gram_error, cross_error, reconstruction_residual, perp_error, bar_crosscheck, endpoint_bar_empty }
}

/// `‖f‖² - Σ⟨f,φ⁰⟩² - Σ⟨f,ψ⟩²`, relative to `‖f‖²`.
pub fn parseval_defect(f: &PiecewisePoly, phi0: &CenteredBasis, psi: &CenteredBasis) -> f64 {
    let nf = f.norm_squared();
    let s: f64 = phi0
        .functions()
        .iter()
        .chain(psi.functions().iter())
        .map(|g| g.inner_product(f).powi(2))
        .sum();
    ((nf - s) / nf).abs()
}
