//! Bases on the golden-mean lattice `a^k = τ^{-k}ℤ_τ⁺`: the τ-Haar system
//! and the continuous piecewise-quadratic scaling functions with `θ ≡ 1/τ`,
//! their explicit wavelets, and the stationary coefficient tables.

use serde::Serialize;

use crate::coeff::{assemble_m, BlockKind, CoeffTable};
use crate::error::{Error, Result};
use crate::knots::{beta_mu, classify, GapClass, KnotWindow, TauNumber, TAU};
use crate::linalg;
use crate::mra::scaffold::{align_fine, RANK_TOL};
use crate::mra::{CenteredBasis, KnotGroup, WaveletScaffold};
use crate::piecewise::PiecewisePoly;
use crate::quad_family::{omega, ThetaSequence};

/// Right end of the default window, `τ⁷`.
pub fn default_bound() -> TauNumber {
    TauNumber::tau_pow(7)
}

/// Knots in `[τ², τ⁵]` are far enough from the cut at `τ⁷` for
/// per-knot checks.
pub fn in_validation_zone(a: f64) -> bool {
    let t = |k: i32| TauNumber::tau_pow(k).to_f64();
    a >= t(2) - 1e-12 && a <= t(5) + 1e-12
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TauFamily {
    Haar,
    Quad,
}

/// A centered basis on the level-`k` lattice window `[0, bound]`.
#[derive(Clone, Debug)]
pub struct TauBasisLevel {
    pub k: i32,
    pub family: TauFamily,
    pub basis: CenteredBasis,
}

impl TauBasisLevel {
    pub fn window(&self) -> &KnotWindow {
        &self.basis.window
    }

    /// Group of the knot with exact value `a`.
    pub fn group_at(&self, a: TauNumber) -> Result<&KnotGroup> {
        Ok(&self.basis.groups[self.window().index_of(a.to_f64())?])
    }
}

fn long_gap(w: &KnotWindow, i: usize) -> Result<bool> {
    let (Some(exact), Some(k)) = (w.exact(), w.level()) else {
        return Err(Error::Domain("expected an exact lattice window".into()));
    };
    Ok(exact[i + 1] - exact[i] == TauNumber::tau_pow(-k))
}

/// `{τ^{k/2} φ₁(τ^k · - b)} ∪ {τ^{k/2} φ₂(τ^k · - c)}`: one normalized
/// indicator per lattice interval.
pub fn haar_level(k: i32, bound: TauNumber) -> Result<TauBasisLevel> {
    let w = KnotWindow::tau_level_upto(k, bound)?;
    let knots = w.knots().to_vec();
    let mut groups = vec![KnotGroup::default(); knots.len()];
    for i in 0..knots.len() - 1 {
        let (a, ap) = (knots[i], knots[i + 1]);
        let name = if long_gap(&w, i)? { "phi1" } else { "phi2" };
        groups[i].push_breve(name, PiecewisePoly::indicator(a, ap, 1.0 / (ap - a).sqrt())?);
    }
    Ok(TauBasisLevel { k, family: TauFamily::Haar, basis: CenteredBasis::new(w, groups, true)? })
}

/// `ψ = τ^{-1/2}χ_{[0,1/τ]} - τ^{1/2}χ_{[1/τ,1]}`.
pub fn haar_psi() -> PiecewisePoly {
    let s = TAU.sqrt();
    let left = PiecewisePoly::indicator(0.0, 1.0 / TAU, 1.0 / s).expect("valid interval");
    let right = PiecewisePoly::indicator(1.0 / TAU, 1.0, -s).expect("valid interval");
    left.add(&right)
}

/// `Ψ^k`: `τ^{k/2}ψ(τ^k(· - b))` at every knot `b` followed by a long interval.
pub fn haar_wavelets(k: i32, bound: TauNumber) -> Result<CenteredBasis> {
    let w = KnotWindow::tau_level_upto(k, bound)?;
    let s = TAU.powi(k);
    let psi = haar_psi().dilate_unitary(s);
    let mut groups = vec![KnotGroup::default(); w.len()];
    for i in 0..w.len() - 1 {
        if long_gap(&w, i)? {
            groups[i].push_breve("psi", psi.translate(w.knots()[i]));
        }
    }
    CenteredBasis::new(w, groups, true)
}

/// `Φ^k = Ω_{a^k, 1/τ}`, normalized.
pub fn quad_tau_level(k: i32, bound: TauNumber) -> Result<TauBasisLevel> {
    let w = KnotWindow::tau_level_upto(k, bound)?;
    let t = ThetaSequence::constant(1.0 / TAU, &w);
    Ok(TauBasisLevel { k, family: TauFamily::Quad, basis: omega(&w, &t, true)? })
}

pub fn tau_level(family: TauFamily, k: i32, bound: TauNumber) -> Result<TauBasisLevel> {
    match family {
        TauFamily::Haar => haar_level(k, bound),
        TauFamily::Quad => quad_tau_level(k, bound),
    }
}

/// Largest elementwise deviation of `Φ_a` from `Φ_{β(a)}(· - μ(a))` over the
/// positive knots of a level-0 basis that sit at least two knots from the
/// cut.
pub fn translation_defect(b: &TauBasisLevel) -> Result<f64> {
    let w = b.window();
    let exact = w.exact().ok_or_else(|| Error::Domain("expected an exact lattice window".into()))?;
    let mut worst: f64 = 0.0;
    for (i, &a) in exact.iter().enumerate().skip(1) {
        if w.distance_to_cut(i) < 2 {
            continue;
        }
        let (beta, mu) = beta_mu(a)?;
        let src = b.group_at(beta)?;
        let dst = &b.basis.groups[i];
        worst = worst.max(group_defect(dst, src, mu.to_f64())?);
    }
    Ok(worst)
}

fn group_defect(dst: &KnotGroup, src: &KnotGroup, shift: f64) -> Result<f64> {
    if dst.bar.len() != src.bar.len() || dst.breve.len() != src.breve.len() {
        return Err(Error::Consistency("translation classes have different sizes".into()));
    }
    Ok(dst.all().iter().zip(src.all()).map(|(f, g)| f.sub(&g.translate(shift)).norm()).fold(0.0, f64::max))
}

/// Largest deviation of `Φ^k_b` from `τ^{k/2}Φ_{τ^k b}(τ^k ·)` for knots `b`
/// of the level-`k` window at least two knots from the cut. The level-0
/// basis is built on `[0, τ^k·bound]` so that both cover the same knots.
pub fn scale_defect(family: TauFamily, k: i32, bound: TauNumber) -> Result<f64> {
    let lk = tau_level(family, k, bound)?;
    let l0 = tau_level(family, 0, bound * TauNumber::tau_pow(k))?;
    let s = TAU.powi(k);
    let w = lk.window();
    let exact = w.exact().expect("lattice window");
    let mut worst: f64 = 0.0;
    for (i, &b) in exact.iter().enumerate() {
        if w.distance_to_cut(i) < 2 {
            continue;
        }
        let src = l0.group_at(b * TauNumber::tau_pow(k))?;
        let dst = &lk.basis.groups[i];
        let d = dst.all().iter().zip(src.all()).map(|(f, g)| f.sub(&g.dilate_unitary(s)).norm()).fold(0.0, f64::max);
        worst = worst.max(d);
    }
    Ok(worst)
}

/// The explicit continuous quadratic τ-wavelets at level 0.
#[derive(Clone, Debug)]
pub struct TauQuadWavelets {
    pub phi0: TauBasisLevel,
    pub phi1: TauBasisLevel,
    /// `Φ¹` grouped on the level-0 knots.
    pub fine: CenteredBasis,
    /// `ŵ_1`, `ŵ_τ`, `ŵ_{τ²}`.
    pub w_hat: [PiecewisePoly; 3],
    pub w_tilde: PiecewisePoly,
    pub w_breve_tau: PiecewisePoly,
    pub w_breve_tau2: PiecewisePoly,
    pub w_breve_0: [PiecewisePoly; 2],
    /// `Ψ` assembled by translation; knots next to the cut are left empty.
    pub psi: CenteredBasis,
}

fn unit(f: PiecewisePoly, what: &str) -> Result<PiecewisePoly> {
    let n = f.norm();
    if n < RANK_TOL {
        return Err(Error::Consistency(format!("{what} vanished")));
    }
    Ok(f.scale(1.0 / n))
}

/// Builds `Ψ_0 = {w̆_{0,1}, w̆_{0,2}}`, `Ψ_1 = {ŵ_1}`, `Ψ_τ = {ŵ_τ, w̆_τ}`,
/// `Ψ_{τ²} = {ŵ_{τ²}, w̃_{τ²}, w̆_{τ²}}` and `Ψ_a = Ψ_{β(a)}(· - μ(a))`.
pub fn quad_tau_wavelets(bound: TauNumber) -> Result<TauQuadWavelets> {
    if bound < TauNumber::tau_pow(5) {
        return Err(Error::Domain("the window must reach at least tau^5".into()));
    }
    let phi0 = quad_tau_level(0, bound)?;
    let phi1 = quad_tau_level(1, bound)?;
    let fine = align_fine(&phi0.basis, &phi1.basis)?;
    let one = TauNumber::ONE;
    let tau = TauNumber::TAU;
    let tau2 = TauNumber::tau_pow(2);

    let bar0 = |a: TauNumber| -> Result<PiecewisePoly> { Ok(phi0.group_at(a)?.bar[0].clone()) };
    let bar1 = |a: TauNumber| -> Result<PiecewisePoly> { Ok(phi1.group_at(a)?.bar[0].clone()) };
    // t_a = φ̄⁰_a - ⟨φ̄⁰_a, φ̄¹_a⟩ φ̄¹_a
    let t_of = |a: TauNumber| -> Result<PiecewisePoly> {
        let (p0, p1) = (bar0(a)?, bar1(a)?);
        Ok(p0.axpy(-p0.inner_product(&p1), &p1))
    };
    let neighbors = |a: TauNumber| -> Result<(f64, f64)> {
        let w = phi0.window();
        let i = w.index_of(a.to_f64())?;
        Ok((w.knots()[i - 1], w.knots()[i + 1]))
    };

    let mut w_hat = Vec::with_capacity(3);
    for a in [one, tau, tau2] {
        let (p0, p1) = (bar0(a)?, bar1(a)?);
        w_hat.push(linalg::fix_sign(unit(p1.axpy(-p1.inner_product(&p0), &p0), "w_hat")?));
    }
    let w_hat: [PiecewisePoly; 3] = w_hat.try_into().expect("three entries");

    let (lo, hi) = neighbors(tau2)?;
    let a = tau2.to_f64();
    let t2 = t_of(tau2)?;
    let s = t2.restrict(a, hi).sub(&t2.restrict(lo, a));
    let p0 = bar0(tau2)?;
    let s = s.axpy(-s.inner_product(&p0), &p0);
    let s = s.axpy(-s.inner_product(&w_hat[2]), &w_hat[2]);
    let w_tilde = linalg::fix_sign(unit(s, "w_tilde")?);

    let f_plus = |a: TauNumber| -> Result<PiecewisePoly> {
        let (_, hi) = neighbors(a)?;
        unit(t_of(a)?.restrict(a.to_f64(), hi), "f+")
    };
    let f_minus = |a: TauNumber| -> Result<PiecewisePoly> {
        let (lo, _) = neighbors(a)?;
        unit(t_of(a)?.restrict(lo, a.to_f64()), "f-")
    };

    let g_tau = phi0.group_at(tau)?;
    let mut span = vec![f_plus(tau)?];
    span.extend(g_tau.breve.iter().cloned());
    span.push(f_minus(tau2)?);
    let seed = bar0(one + tau2)?.dilate_unitary(TAU);
    let w_breve_tau = linalg::fix_sign(unit(linalg::residual(&seed, &span)?, "w_breve_tau")?);
    let w_breve_tau2 = w_breve_tau.translate(1.0);

    let w01 = w_breve_tau.translate(-tau.to_f64());
    let mut known = phi0.basis.groups[0].breve.clone();
    known.push(f_minus(one)?);
    known.push(w01.clone());
    let known = linalg::orthonormalize(&known, 1e-9);
    let rest: Vec<PiecewisePoly> = fine.groups[0].breve.iter().map(|f| linalg::residual_orthonormal(f, &known)).collect();
    let rest = linalg::orthonormal_span(&rest, RANK_TOL);
    if rest.len() != 1 {
        return Err(Error::Consistency(format!("expected one more short wavelet at 0, found {}", rest.len())));
    }
    let w02 = rest[0].clone();

    let w = phi0.window().clone();
    let exact = w.exact().expect("lattice window").to_vec();
    let mut groups = vec![KnotGroup::default(); w.len()];
    groups[0].push_breve("w01", w01.clone());
    groups[0].push_breve("w02", w02.clone());
    for (i, &a) in exact.iter().enumerate().skip(1) {
        if w.distance_to_cut(i) < 2 {
            continue;
        }
        let (_, mu) = beta_mu(a)?;
        let m = mu.to_f64();
        let g = &mut groups[i];
        match classify(a)? {
            GapClass::LS => g.push_bar("hat", w_hat[0].translate(m)),
            GapClass::SL => {
                g.push_bar("hat", w_hat[1].translate(m));
                g.push_breve("breve", w_breve_tau.translate(m));
            }
            GapClass::LL => {
                g.push_bar("hat", w_hat[2].translate(m));
                g.push_bar("tilde", w_tilde.translate(m));
                g.push_breve("breve", w_breve_tau2.translate(m));
            }
        }
    }
    let psi = CenteredBasis::new(w, groups, true)?;
    Ok(TauQuadWavelets { phi0, phi1, fine, w_hat, w_tilde, w_breve_tau, w_breve_tau2, w_breve_0: [w01, w02], psi })
}

/// Level-0 indices `a'` whose level-1 groups `Φ_{1,a'}` make up `Φ¹_a`:
/// `τ·a¹` for the level-1 knots `a¹ ∈ [a, a₊)`.
pub fn polyphase(a: TauNumber) -> Result<Vec<TauNumber>> {
    if a.is_zero() {
        return Ok(vec![TauNumber::ZERO, TauNumber::ONE]);
    }
    match classify(a)? {
        // the gap after an LS knot is short and is not split
        GapClass::LS => Ok(vec![a * TauNumber::TAU]),
        _ => Ok(vec![a * TauNumber::TAU, a * TauNumber::TAU + TauNumber::ONE]),
    }
}

/// One `C_{a,a'} = ⟨Φ_a, Φ_{1,a'}⟩` or `D_{a,a'} = ⟨Ψ_a, Φ_{1,a'}⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct TauTable {
    pub a: String,
    pub a_prime: String,
    #[serde(flatten)]
    pub table: CoeffTable,
}

fn class_name(a: TauNumber) -> String {
    if a.is_zero() {
        "0".into()
    } else {
        classify(a).map(|c| c.name().to_string()).unwrap_or_else(|_| "?".into())
    }
}

impl TauQuadWavelets {
    /// `Φ_{1,a'} = τ^{1/2}Φ_{a'}(τ ·)`.
    pub fn phi_1(&self, a_prime: TauNumber) -> Result<Vec<PiecewisePoly>> {
        Ok(self.phi0.group_at(a_prime)?.all().iter().map(|f| f.dilate_unitary(TAU)).collect())
    }

    fn rows(&self, kind: BlockKind, a: TauNumber) -> Result<(Vec<PiecewisePoly>, Vec<String>)> {
        let i = self.phi0.window().index_of(a.to_f64())?;
        let g = match kind {
            BlockKind::C => &self.phi0.basis.groups[i],
            _ => &self.psi.groups[i],
        };
        Ok((g.all(), g.all_names()))
    }

    fn table(&self, kind: BlockKind, a: TauNumber, a_prime: TauNumber) -> Result<TauTable> {
        let (rows, row_labels) = self.rows(kind, a)?;
        let cols = self.phi_1(a_prime)?;
        let col_labels = self.phi0.group_at(a_prime)?.all_names();
        let m = linalg::gram(&rows, &cols);
        Ok(TauTable {
            a: a.to_string(),
            a_prime: a_prime.to_string(),
            table: CoeffTable { knot_class: class_name(a), kind, row_labels, col_labels, values: linalg::matrix_rows(&m) },
        })
    }

    /// The `C` and `D` tables for the pairs that generate every coefficient
    /// block by translation.
    pub fn cd_tables(&self) -> Result<Vec<TauTable>> {
        let mut out = Vec::new();
        for kind in [BlockKind::C, BlockKind::D] {
            for (a, ap) in table_pairs() {
                out.push(self.table(kind, a, ap)?);
            }
        }
        Ok(out)
    }

    /// `[⟨Φ_a, Φ¹_{a₋}⟩ ⟨Φ_a, Φ¹_a⟩]` (or with `Ψ_a`), columns ordered as
    /// the polyphase groups.
    pub fn full_block(&self, kind: BlockKind, a: TauNumber) -> Result<nalgebra::DMatrix<f64>> {
        let (rows, _) = self.rows(kind, a)?;
        let w = self.phi0.window();
        let i = w.index_of(a.to_f64())?;
        let mut cols = Vec::new();
        let exact = w.exact().expect("lattice window");
        if i > 0 {
            for ap in polyphase(exact[i - 1])? {
                cols.extend(self.phi_1(ap)?);
            }
        }
        for ap in polyphase(a)? {
            cols.extend(self.phi_1(ap)?);
        }
        Ok(linalg::gram(&rows, &cols))
    }

    /// Largest deviation of `c_{aa₋}, c_{aa}` (and the `d` blocks) at knots
    /// `a > τ²` in the validation zone from those at `β(a)`.
    pub fn stationarity_defect(&self) -> Result<f64> {
        let w = self.phi0.window();
        let exact = w.exact().expect("lattice window");
        let mut worst: f64 = 0.0;
        for (i, &a) in exact.iter().enumerate() {
            if a <= TauNumber::tau_pow(2) || w.distance_to_cut(i) < 2 || !in_validation_zone(a.to_f64()) {
                continue;
            }
            let (beta, _) = beta_mu(a)?;
            for kind in [BlockKind::C, BlockKind::D] {
                let x = self.full_block(kind, a)?;
                let y = self.full_block(kind, beta)?;
                if x.shape() != y.shape() {
                    return Err(Error::Consistency(format!("block shapes differ at {a} and {beta}")));
                }
                worst = worst.max(linalg::max_abs(&(x - y)));
            }
        }
        Ok(worst)
    }

    /// `c_{τ1} = ⟨Φ_τ, Φ¹_1⟩`.
    pub fn c_tau_one(&self) -> Result<nalgebra::DMatrix<f64>> {
        let (rows, _) = self.rows(BlockKind::C, TauNumber::TAU)?;
        let mut cols = Vec::new();
        for ap in polyphase(TauNumber::ONE)? {
            cols.extend(self.phi_1(ap)?);
        }
        Ok(linalg::gram(&rows, &cols))
    }
}

impl TauQuadWavelets {
    /// Largest two-sided span distance between the explicit groups and the
    /// scaffold's `W̄_a`, `W̆_a` at `0` and in the validation zone. Group sizes
    /// must agree.
    pub fn generic_distance(&self, sc: &WaveletScaffold) -> Result<f64> {
        let w = self.phi0.window();
        let mut worst: f64 = 0.0;
        for (i, &a) in w.knots().iter().enumerate() {
            if i != 0 && !in_validation_zone(a) {
                continue;
            }
            let (ex, ks) = (&self.psi.groups[i], &sc.knots[i]);
            let bar = ks.w_bar();
            if ex.bar.len() != bar.len() || ex.breve.len() != ks.w_breve.len() {
                return Err(Error::Consistency(format!(
                    "knot {a}: explicit sizes ({}, {}) against ({}, {})",
                    ex.bar.len(),
                    ex.breve.len(),
                    bar.len(),
                    ks.w_breve.len()
                )));
            }
            for (x, y) in [(&ex.bar, &bar), (&ex.breve, &ks.w_breve)] {
                if !x.is_empty() {
                    worst = worst.max(linalg::span_distance(x, y));
                }
            }
        }
        Ok(worst)
    }

    /// Largest `‖Ψ_a - Ψ_{β(a)}(· - μ(a))‖` over `a > τ²` in the zone.
    pub fn psi_translation_defect(&self) -> Result<f64> {
        let w = self.phi0.window();
        let exact = w.exact().expect("lattice window");
        let mut worst: f64 = 0.0;
        for (i, &a) in exact.iter().enumerate() {
            if a <= TauNumber::tau_pow(2) || !in_validation_zone(a.to_f64()) {
                continue;
            }
            let (beta, mu) = beta_mu(a)?;
            let src = &self.psi.groups[w.index_of(beta.to_f64())?];
            worst = worst.max(group_defect(&self.psi.groups[i], src, mu.to_f64())?);
        }
        Ok(worst)
    }

    /// Largest `‖Φ_a - Σ C_{a,a'}Φ_{1,a'}‖` and `‖Ψ_a - Σ D_{a,a'}Φ_{1,a'}‖`
    /// over the representatives `0, 1, τ, τ²`, using the emitted tables.
    pub fn table_reconstruction_defect(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        let pairs = table_pairs();
        for kind in [BlockKind::C, BlockKind::D] {
            for a in [TauNumber::ZERO, TauNumber::ONE, TauNumber::TAU, TauNumber::tau_pow(2)] {
                let (target, _) = self.rows(kind, a)?;
                let mut sum = vec![PiecewisePoly::zero(); target.len()];
                for &(_, ap) in pairs.iter().filter(|(x, _)| *x == a) {
                    let t = self.table(kind, a, ap)?;
                    let cols = self.phi_1(ap)?;
                    for (r, acc) in sum.iter_mut().enumerate() {
                        let refs: Vec<&PiecewisePoly> = cols.iter().collect();
                        *acc = acc.add(&PiecewisePoly::linear_combination(&t.table.values[r], &refs));
                    }
                }
                for (f, g) in target.iter().zip(&sum) {
                    worst = worst.max(f.sub(g).norm());
                }
            }
        }
        Ok(worst)
    }

    /// Largest orthogonality defect of `M_{[a,b]}` built from the explicit
    /// wavelets over runs of 3..=8 knots inside the zone, and over the first
    /// five knots.
    pub fn m_orthogonality(&self) -> Result<f64> {
        let w = self.phi0.window();
        let idx: Vec<usize> = (0..w.len()).filter(|&i| in_validation_zone(w.knots()[i])).collect();
        let (lo, hi) = (idx[0], idx[idx.len() - 1]);
        let mut worst: f64 = 0.0;
        for len in 3..=8.min(hi - lo + 1) {
            for start in lo..=hi + 1 - len {
                worst = worst.max(assemble_m(&self.phi0.basis, &self.fine, &self.psi, start, start + len - 1)?.orthogonality_error());
            }
        }
        worst = worst.max(assemble_m(&self.phi0.basis, &self.fine, &self.psi, 0, 4)?.orthogonality_error());
        Ok(worst)
    }
}

/// Dimension pattern of the quadratic τ-wavelets at level `k`: `W̆_0 = 2`,
/// and by class (LS, SL, LL) `dim W̄ = 1, 1, 2`, `dim W̆ = 0, 1, 1`,
/// `m⁺ = 1, 0, 0`, `m⁻ = 0, 1, 0` at knots whose level-0 image lies in the
/// zone. Returns the violations and the number of knots checked.
pub fn dimension_pattern(sc: &WaveletScaffold, k: i32) -> Result<(Vec<String>, usize)> {
    let w = &sc.coarse.window;
    let exact = w.exact().ok_or_else(|| Error::Domain("expected an exact lattice window".into()))?;
    let up = TauNumber::tau_pow(k);
    let mut bad = Vec::new();
    let d0 = &sc.knots[0].dims;
    if d0.w_breve != 2 || d0.w_bar != 0 {
        bad.push(format!("knot 0: (W_bar, W_breve) = ({}, {}), expected (0, 2)", d0.w_bar, d0.w_breve));
    }
    let mut checked = 0;
    for (i, &a) in exact.iter().enumerate().skip(1) {
        let a0 = a * up;
        if !in_validation_zone(a0.to_f64()) {
            continue;
        }
        let class = classify(a0)?;
        let want = match class {
            GapClass::LS => (1, 0, 1, 0),
            GapClass::SL => (1, 1, 0, 1),
            GapClass::LL => (2, 1, 0, 0),
        };
        let d = &sc.knots[i].dims;
        let got = (d.w_bar, d.w_breve, d.m_plus, d.m_minus);
        if got != want {
            bad.push(format!("knot {a} ({}): (W_bar, W_breve, m+, m-) = {got:?}, expected {want:?}", class.name()));
        }
        checked += 1;
    }
    Ok((bad, checked))
}

/// `(a, a')` for `C_{0,0}, C_{0,1}, C_{1,0}, C_{1,1}, C_{1,τ}, C_{τ,τ²},
/// C_{τ,1+τ²}, C_{τ²,τ²}, C_{τ²,1+τ²}, C_{τ²,τ³}, C_{τ²,1+τ³}`.
pub fn table_pairs() -> Vec<(TauNumber, TauNumber)> {
    let t = TauNumber::tau_pow;
    let one = TauNumber::ONE;
    let zero = TauNumber::ZERO;
    vec![
        (zero, zero),
        (zero, one),
        (one, zero),
        (one, one),
        (one, t(1)),
        (t(1), t(2)),
        (t(1), one + t(2)),
        (t(2), t(2)),
        (t(2), one + t(2)),
        (t(2), t(3)),
        (t(2), one + t(3)),
    ]
}
