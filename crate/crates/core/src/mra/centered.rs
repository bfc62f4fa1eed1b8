//! Bases centered on a knot window and the checks that make them so.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::knots::{KnotWindow, Role};
use crate::linalg;
use crate::piecewise::{PiecewisePoly, Polynomial};

/// Relative coefficient size below which an end piece does not count
/// towards a function's support.
pub const SUPPORT_EPS: f64 = 1e-12;

/// The functions attached to one knot `a`: `breve` lives on `[a, a₊]`,
/// `bar` on `[a₋, a₊]` and straddles `a`.
#[derive(Clone, Debug, Default)]
pub struct KnotGroup {
    pub bar: Vec<PiecewisePoly>,
    pub bar_names: Vec<String>,
    pub breve: Vec<PiecewisePoly>,
    pub breve_names: Vec<String>,
}

impl KnotGroup {
    pub fn push_bar(&mut self, name: impl Into<String>, f: PiecewisePoly) {
        self.bar_names.push(name.into());
        self.bar.push(f);
    }

    pub fn push_breve(&mut self, name: impl Into<String>, f: PiecewisePoly) {
        self.breve_names.push(name.into());
        self.breve.push(f);
    }

    /// `Φ_a` in the fixed order bar first, then breve.
    pub fn all(&self) -> Vec<PiecewisePoly> {
        self.bar.iter().chain(&self.breve).cloned().collect()
    }

    pub fn all_names(&self) -> Vec<String> {
        self.bar_names.iter().map(|n| format!("bar.{n}")).chain(self.breve_names.iter().map(|n| format!("breve.{n}"))).collect()
    }

    pub fn len(&self) -> usize {
        self.bar.len() + self.breve.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A basis centered on the knots of a window: one [`KnotGroup`] per knot.
#[derive(Clone, Debug)]
pub struct CenteredBasis {
    pub window: KnotWindow,
    pub groups: Vec<KnotGroup>,
    pub orthonormal: bool,
}

impl CenteredBasis {
    pub fn new(window: KnotWindow, groups: Vec<KnotGroup>, orthonormal: bool) -> Result<Self> {
        if groups.len() != window.len() {
            return Err(Error::Contract(format!(
                "{} knot groups for a window of {} knots",
                groups.len(),
                window.len()
            )));
        }
        Ok(CenteredBasis { window, groups, orthonormal })
    }

    /// Sorts functions into knot groups by their numerical support: a
    /// function inside `[a, a₊]` is breve at `a`, one inside `[a₋, a₊]`
    /// that straddles `a` is bar at `a`.
    pub fn from_functions(window: KnotWindow, fns: Vec<(String, PiecewisePoly)>, orthonormal: bool) -> Result<Self> {
        let mut groups = vec![KnotGroup::default(); window.len()];
        let knots = window.knots().to_vec();
        let tol = 1e-9 * knots.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
        for (name, f) in fns {
            let Some((lo, hi)) = f.numerical_support(SUPPORT_EPS) else {
                continue;
            };
            // first knot whose interval [a, a₊] could hold lo
            let i = knots.partition_point(|&k| k <= lo + tol).saturating_sub(1);
            if i + 1 < knots.len() && hi <= knots[i + 1] + tol {
                groups[i].push_breve(name, f);
            } else if i + 2 < knots.len() && hi <= knots[i + 2] + tol && lo >= knots[i] - tol {
                groups[i + 1].push_bar(name, f);
            } else {
                return Err(Error::Contract(format!(
                    "function {name} with support [{lo}, {hi}] is not centered on the window"
                )));
            }
        }
        CenteredBasis::new(window, groups, orthonormal)
    }

    pub fn knot_label(&self, i: usize) -> String {
        knot_label(&self.window, i)
    }

    /// Every function with a label `"{prefix}[{knot}].{bar|breve}.{name}"`,
    /// in knot order and bar-before-breve order within a knot.
    pub fn labeled(&self, prefix: &str) -> Vec<(String, PiecewisePoly)> {
        let mut out = Vec::new();
        for (i, g) in self.groups.iter().enumerate() {
            let k = self.knot_label(i);
            for (n, f) in g.all_names().into_iter().zip(g.all()) {
                out.push((format!("{prefix}[{k}].{n}"), f));
            }
        }
        out
    }

    pub fn functions(&self) -> Vec<PiecewisePoly> {
        self.groups.iter().flat_map(|g| g.all()).collect()
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(KnotGroup::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Scales every function to unit norm.
    pub fn normalized(&self) -> CenteredBasis {
        let unit = |fs: &[PiecewisePoly]| -> Vec<PiecewisePoly> {
            fs.iter().map(|f| f.scale(1.0 / f.norm())).collect()
        };
        let groups = self
            .groups
            .iter()
            .map(|g| KnotGroup {
                bar: unit(&g.bar),
                bar_names: g.bar_names.clone(),
                breve: unit(&g.breve),
                breve_names: g.breve_names.clone(),
            })
            .collect();
        CenteredBasis { window: self.window.clone(), groups, orthonormal: true }
    }

    /// Largest deviation of the full Gram matrix from the identity.
    pub fn gram_error(&self) -> f64 {
        linalg::orthonormality_error(&self.functions())
    }

    /// Functions of groups `i-1..=i+1`, which are the only ones that can
    /// overlap anything attached to knot `i`.
    pub fn neighborhood(&self, i: usize) -> Vec<PiecewisePoly> {
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(self.groups.len() - 1);
        (lo..=hi).flat_map(|j| self.groups[j].all()).collect()
    }
}

pub fn knot_label(w: &KnotWindow, i: usize) -> String {
    match w.exact() {
        Some(ex) => ex[i].to_string(),
        None => format!("{}", w.knots()[i]),
    }
}

/// Per-knot outcome of [`verify_centered`].
#[derive(Clone, Debug, Serialize)]
pub struct KnotCheck {
    pub knot: f64,
    pub supports_ok: bool,
    pub locally_independent: bool,
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CenteredReport {
    pub knots: Vec<KnotCheck>,
    /// Full Gram deviation from identity, for bases flagged orthonormal.
    pub gram_error: Option<f64>,
    pub tol: f64,
}

impl CenteredReport {
    pub fn passed(&self) -> bool {
        self.knots.iter().all(|k| k.supports_ok && k.locally_independent) && self.gram_error.is_none_or(|e| e < self.tol)
    }
}

/// Checks support containment, local linear independence of
/// `(Φ_a ∪ Φ̄_{a₊})` restricted to `[a, a₊]`, and orthonormality if claimed.
pub fn verify_centered(b: &CenteredBasis, tol: f64) -> CenteredReport {
    let w = &b.window;
    let knots = w.knots();
    let stol = 1e-9 * knots.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let mut out = Vec::with_capacity(knots.len());
    for (i, g) in b.groups.iter().enumerate() {
        let a = knots[i];
        let mut detail = Vec::new();
        let next = w.successor_at(i).knot();
        let prev = w.predecessor_at(i).knot();
        let within = |f: &PiecewisePoly, lo: f64, hi: f64| match f.numerical_support(SUPPORT_EPS) {
            None => true,
            Some((u, v)) => u >= lo - stol && v <= hi + stol,
        };
        let breve_hi = next.unwrap_or(a);
        for (f, n) in g.breve.iter().zip(&g.breve_names) {
            if !within(f, a, breve_hi) {
                detail.push(format!("breve {n} leaves [a, a+]"));
            }
        }
        let (bar_lo, bar_hi) = (prev.unwrap_or(a), next.unwrap_or(a));
        for (f, n) in g.bar.iter().zip(&g.bar_names) {
            if !within(f, bar_lo, bar_hi) {
                detail.push(format!("bar {n} leaves [a-, a+]"));
            }
        }
        let supports_ok = detail.is_empty();

        let mut locally_independent = true;
        if let Some(ap) = next {
            let mut local: Vec<PiecewisePoly> = g.all().iter().map(|f| f.restrict(a, ap)).collect();
            local.extend(b.groups[i + 1].bar.iter().map(|f| f.restrict(a, ap)));
            let rank = linalg::orthonormalize(&local, 1e-9).len();
            if rank != local.len() {
                locally_independent = false;
                detail.push(format!("rank {rank} < {} on [a, a+]", local.len()));
            }
        }
        out.push(KnotCheck { knot: a, supports_ok, locally_independent, detail });
    }
    let gram_error = b.orthonormal.then(|| b.gram_error());
    CenteredReport { knots: out, gram_error, tol }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthConditionReport {
    /// Per knot, `max |⟨(I - P_{V̆_a}) V_a, V_{a₊}⟩|`.
    pub max_entries: Vec<f64>,
    pub tol: f64,
}

impl OrthConditionReport {
    pub fn passed(&self) -> bool {
        self.max_entries.iter().all(|&e| e < self.tol)
    }

    pub fn worst(&self) -> f64 {
        self.max_entries.iter().copied().fold(0.0, f64::max)
    }
}

/// The orthogonality condition `(I - P_{V̆_a}) V_a ⊥ V_{a₊}` at every knot.
pub fn verify_orth_condition(b: &CenteredBasis, tol: f64) -> OrthConditionReport {
    let n = b.groups.len();
    let mut max_entries = Vec::with_capacity(n);
    for i in 0..n {
        if i + 1 == n {
            max_entries.push(0.0);
            continue;
        }
        let g = &b.groups[i];
        let qb = linalg::orthonormalize(&g.breve, 1e-9);
        let res: Vec<PiecewisePoly> = g.all().iter().map(|f| linalg::residual_orthonormal(f, &qb)).collect();
        let next = b.groups[i + 1].all();
        max_entries.push(linalg::max_abs(&linalg::gram(&res, &next)));
    }
    OrthConditionReport { max_entries, tol }
}

/// Centered (non-orthogonal) basis of the continuous splines `S⁰_n` on a
/// window: hats as bar functions at interior knots, `t(1-t)·y^j` bumps as
/// breve functions, and one-sided hats at true endpoints. Cut edges get no
/// function that is nonzero at the cut knot.
pub fn spline_basis(w: &KnotWindow, n: usize) -> Result<CenteredBasis> {
    if n == 0 {
        return Err(Error::Domain("continuous splines need degree at least 1".into()));
    }
    let knots = w.knots();
    let last = knots.len() - 1;
    let rising = Polynomial::new(vec![0.5, 0.5]);
    let falling = Polynomial::new(vec![0.5, -0.5]);
    let mut groups = vec![KnotGroup::default(); knots.len()];
    for i in 0..=last {
        if i == 0 && w.left_role == Role::Endpoint {
            groups[0].push_breve("hat", PiecewisePoly::local_on(knots[0], knots[1], falling.clone())?);
        }
        if i > 0 && i < last {
            let hat = PiecewisePoly::from_local_pieces(
                vec![knots[i - 1], knots[i], knots[i + 1]],
                vec![rising.clone(), falling.clone()],
            )?;
            groups[i].push_bar("hat", hat);
        }
        if i < last {
            for j in 0..n.saturating_sub(1) {
                // (1 - y²)·y^j is a multiple of t(1-t)·(2t-1)^j
                let mut c = vec![0.0; j + 3];
                c[j] = 1.0;
                c[j + 2] = -1.0;
                groups[i].push_breve(format!("bump{j}"), PiecewisePoly::local_on(knots[i], knots[i + 1], Polynomial::new(c))?);
            }
        }
        if i + 1 == last && w.right_role == Role::Endpoint {
            groups[i].push_breve("hat", PiecewisePoly::local_on(knots[i], knots[i + 1], rising.clone())?);
        }
    }
    CenteredBasis::new(w.clone(), groups, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window() -> KnotWindow {
        KnotWindow::new(vec![0.0, 1.0, 2.5, 3.0], Role::Endpoint, Role::Endpoint).unwrap()
    }

    #[test]
    fn spline_basis_is_centered() {
        for n in 1..=4 {
            let b = spline_basis(&window(), n).unwrap();
            assert!(verify_centered(&b, 1e-9).passed(), "degree {n}");
        }
    }

    #[test]
    fn hat_basis_breaks_the_orth_condition() {
        let b = spline_basis(&window(), 2).unwrap();
        let rep = verify_orth_condition(&b, 1e-9);
        assert!(!rep.passed());
        // ⟨(I - P_bump) hat_1, hat_2.5⟩ = h/6 - 5h/24 = -h/24 with h = 1.5
        assert!((rep.max_entries[1] - 0.0625).abs() < 1e-12, "{:?}", rep.max_entries);
    }

    #[test]
    fn duplicated_bar_fails() {
        let mut b = spline_basis(&window(), 2).unwrap();
        let bar = b.groups[1].bar[0].clone();
        b.groups[1].push_breve("dup", bar);
        let rep = verify_centered(&b, 1e-9);
        assert!(!rep.passed());
        assert!(!rep.knots[1].supports_ok);
    }

    #[test]
    fn regroup_by_support() {
        let b = spline_basis(&window(), 3).unwrap();
        let again = CenteredBasis::from_functions(window(), b.labeled("S"), false).unwrap();
        for (g, h) in b.groups.iter().zip(&again.groups) {
            assert_eq!(g.bar.len(), h.bar.len());
            assert_eq!(g.breve.len(), h.breve.len());
        }
    }
}
