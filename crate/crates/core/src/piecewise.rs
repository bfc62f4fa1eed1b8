//! Compactly supported piecewise polynomials with closed-form inner products.
//!
//! A [`PiecewisePoly`] stores one [`Polynomial`] per interval between
//! consecutive breakpoints. Each piece is expressed in the interval's local
//! coordinate `y = (2x - b_i - b_{i+1}) / (b_{i+1} - b_i)`, which maps the
//! interval onto `[-1, 1]`. Affine changes of variable (translation,
//! dilation, `f ∘ σ_a`) therefore only touch the breakpoints, and integrals
//! reduce to Legendre orthogonality on `[-1, 1]`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative distance under which two breakpoints are treated as one.
pub const BREAKPOINT_MERGE_TOL: f64 = 1e-12;

/// Polynomial on `[-1, 1]` stored as a Legendre series `Σ a_k P_k`, lowest
/// degree first. Monomial coefficients of high-degree bumps alternate and
/// cancel badly; in the Legendre basis `∫ p q` is a diagonal sum and products
/// and affine substitutions go through the stable three-term recurrence.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    legendre: Vec<f64>,
}

fn trimmed(mut a: Vec<f64>) -> Vec<f64> {
    while a.last() == Some(&0.0) {
        a.pop();
    }
    a
}

/// `Σ a_k y P_k` via `y P_k = ((k+1) P_{k+1} + k P_{k-1}) / (2k+1)`.
fn times_y(a: &[f64]) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + 1];
    for (k, &c) in a.iter().enumerate() {
        let kf = k as f64;
        let d = 2.0 * kf + 1.0;
        out[k + 1] += c * (kf + 1.0) / d;
        if k > 0 {
            out[k - 1] += c * kf / d;
        }
    }
    out
}

fn axpy_into(acc: &mut Vec<f64>, s: f64, x: &[f64]) {
    if acc.len() < x.len() {
        acc.resize(x.len(), 0.0);
    }
    for (a, b) in acc.iter_mut().zip(x) {
        *a += s * b;
    }
}

/// `Σ_k c_k P_k(u)·s` for a multiplication operator `lin(v) = u·v` and a
/// start series `s`.
fn legendre_sum(c: &[f64], start: Vec<f64>, lin: impl Fn(&[f64]) -> Vec<f64>) -> Vec<f64> {
    let mut acc = Vec::new();
    let Some(&c0) = c.first() else {
        return acc;
    };
    let mut prev = start;
    axpy_into(&mut acc, c0, &prev);
    if c.len() == 1 {
        return acc;
    }
    let mut cur = lin(&prev);
    axpy_into(&mut acc, c[1], &cur);
    for (k, &ck) in c.iter().enumerate().skip(2) {
        // P_k = ((2k-1) u P_{k-1} - (k-1) P_{k-2}) / k
        let kf = k as f64;
        let mut next = lin(&cur);
        for v in next.iter_mut() {
            *v *= (2.0 * kf - 1.0) / kf;
        }
        axpy_into(&mut next, -(kf - 1.0) / kf, &prev);
        axpy_into(&mut acc, ck, &next);
        prev = cur;
        cur = next;
    }
    acc
}

impl Polynomial {
    /// From monomial coefficients, lowest degree first.
    pub fn new(monomial: Vec<f64>) -> Self {
        let mut acc: Vec<f64> = Vec::new();
        for &c in trimmed(monomial).iter().rev() {
            acc = times_y(&acc);
            axpy_into(&mut acc, c, &[1.0]);
        }
        Polynomial { legendre: trimmed(acc) }
    }

    pub fn from_legendre(coeffs: Vec<f64>) -> Self {
        Polynomial { legendre: trimmed(coeffs) }
    }

    pub fn zero() -> Self {
        Polynomial { legendre: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::from_legendre(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Polynomial::from_legendre(vec![0.0, 1.0])
    }

    pub fn legendre(&self) -> &[f64] {
        &self.legendre
    }

    /// Monomial coefficients, lowest degree first.
    pub fn monomial(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.legendre.len()];
        let (mut prev, mut cur) = (vec![1.0], vec![0.0, 1.0]);
        for (k, &c) in self.legendre.iter().enumerate() {
            let pk = match k {
                0 => prev.clone(),
                1 => cur.clone(),
                _ => {
                    let kf = k as f64;
                    let mut next = vec![0.0; k + 1];
                    for (j, v) in cur.iter().enumerate() {
                        next[j + 1] += v * (2.0 * kf - 1.0) / kf;
                    }
                    for (j, v) in prev.iter().enumerate() {
                        next[j] -= v * (kf - 1.0) / kf;
                    }
                    prev = std::mem::replace(&mut cur, next);
                    cur.clone()
                }
            };
            for (o, v) in out.iter_mut().zip(&pk) {
                *o += c * v;
            }
        }
        trimmed(out)
    }

    pub fn is_zero(&self) -> bool {
        self.legendre.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.legendre.len().checked_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (mut prev, mut cur) = (1.0, x);
        let mut sum = 0.0;
        for (k, &c) in self.legendre.iter().enumerate() {
            match k {
                0 => sum += c,
                1 => sum += c * x,
                _ => {
                    let kf = k as f64;
                    let next = ((2.0 * kf - 1.0) * x * cur - (kf - 1.0) * prev) / kf;
                    prev = cur;
                    cur = next;
                    sum += c * cur;
                }
            }
        }
        sum
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut acc = self.legendre.clone();
        axpy_into(&mut acc, 1.0, &other.legendre);
        Polynomial::from_legendre(acc)
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::from_legendre(self.legendre.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        // Σ b_k (P_k·p), with P_k·p from the recurrence started at p
        Polynomial::from_legendre(legendre_sum(&other.legendre, self.legendre.clone(), times_y))
    }

    /// Returns `s ↦ p(shift + slope·s)`. Stable when `[shift - |slope|,
    /// shift + |slope|]` lies in `[-1, 1]`, which holds for restrictions to
    /// sub-intervals.
    pub fn compose_affine(&self, shift: f64, slope: f64) -> Polynomial {
        Polynomial::from_legendre(legendre_sum(&self.legendre, vec![1.0], |v| {
            let mut out = times_y(v);
            for o in out.iter_mut() {
                *o *= slope;
            }
            axpy_into(&mut out, shift, v);
            out
        }))
    }

    /// `∫_{-1}^{1} p(y) dy`.
    pub fn integral_symmetric(&self) -> f64 {
        2.0 * self.legendre.first().copied().unwrap_or(0.0)
    }

    /// `∫_{-1}^{1} p(y) q(y) dy = Σ 2 a_k b_k / (2k+1)`.
    pub fn dot_symmetric(&self, other: &Polynomial) -> f64 {
        self.legendre
            .iter()
            .zip(&other.legendre)
            .enumerate()
            .map(|(k, (a, b))| 2.0 * a * b / (2.0 * k as f64 + 1.0))
            .sum()
    }

    fn max_abs_coeff(&self) -> f64 {
        self.legendre.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// Compactly supported piecewise polynomial. Zero outside
/// `[breakpoints[0], breakpoints[last]]`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PiecewisePoly {
    breakpoints: Vec<f64>,
    pieces: Vec<Polynomial>,
}

impl PiecewisePoly {
    pub fn zero() -> Self {
        PiecewisePoly::default()
    }

    /// Builds a function from pieces given in local `[-1, 1]` coordinates.
    pub fn from_local_pieces(breakpoints: Vec<f64>, pieces: Vec<Polynomial>) -> Result<Self> {
        if breakpoints.is_empty() && pieces.is_empty() {
            return Ok(PiecewisePoly::zero());
        }
        if breakpoints.len() != pieces.len() + 1 {
            return Err(Error::Contract(format!(
                "{} breakpoints cannot carry {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Contract("breakpoints must be strictly increasing".into()));
        }
        Ok(PiecewisePoly { breakpoints, pieces }.normalize())
    }

    /// Single piece on `[u, v]` given in the local coordinate of that interval.
    pub fn local_on(u: f64, v: f64, local: Polynomial) -> Result<Self> {
        if !(u < v) {
            return Err(Error::InvalidInterval { lo: u, hi: v });
        }
        Ok(PiecewisePoly { breakpoints: vec![u, v], pieces: vec![local] }.normalize())
    }

    /// `p(x)·χ_[u,v]` for a polynomial `p` written in the global variable.
    pub fn from_global(p: &Polynomial, u: f64, v: f64) -> Result<Self> {
        if !(u < v) {
            return Err(Error::InvalidInterval { lo: u, hi: v });
        }
        let local = p.compose_affine(0.5 * (u + v), 0.5 * (v - u));
        PiecewisePoly::local_on(u, v, local)
    }

    /// `c·χ_[u,v]`.
    pub fn indicator(u: f64, v: f64, c: f64) -> Result<Self> {
        PiecewisePoly::local_on(u, v, Polynomial::constant(c))
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `(first, last)` breakpoint, `None` for the zero function.
    pub fn support(&self) -> Option<(f64, f64)> {
        match (self.breakpoints.first(), self.breakpoints.last()) {
            (Some(&a), Some(&b)) if !self.pieces.is_empty() => Some((a, b)),
            _ => None,
        }
    }

    /// Support after discarding end pieces whose coefficients are below
    /// `rel_eps` times the largest coefficient of the function.
    pub fn numerical_support(&self, rel_eps: f64) -> Option<(f64, f64)> {
        let scale = self.pieces.iter().fold(0.0, |m: f64, p| m.max(p.max_abs_coeff()));
        if scale == 0.0 {
            return None;
        }
        let keep = |p: &Polynomial| p.max_abs_coeff() > rel_eps * scale;
        let first = self.pieces.iter().position(keep)?;
        let last = self.pieces.iter().rposition(keep)?;
        Some((self.breakpoints[first], self.breakpoints[last + 1]))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.pieces.iter().filter_map(Polynomial::degree).max()
    }

    /// Drops leading and trailing zero pieces.
    pub fn normalize(mut self) -> Self {
        let Some(first) = self.pieces.iter().position(|p| !p.is_zero()) else {
            return PiecewisePoly::zero();
        };
        let last = self.pieces.iter().rposition(|p| !p.is_zero()).unwrap_or(first);
        self.pieces = self.pieces[first..=last].to_vec();
        self.breakpoints = self.breakpoints[first..=last + 1].to_vec();
        self
    }

    fn piece_index(&self, x: f64) -> Option<usize> {
        let (a, b) = self.support()?;
        if x < a || x > b {
            return None;
        }
        if x == b {
            return Some(self.pieces.len() - 1);
        }
        // Last breakpoint <= x.
        let idx = self.breakpoints.partition_point(|&t| t <= x);
        Some(idx.saturating_sub(1).min(self.pieces.len() - 1))
    }

    fn local_coord(&self, i: usize, x: f64) -> f64 {
        let (u, v) = (self.breakpoints[i], self.breakpoints[i + 1]);
        (2.0 * x - u - v) / (v - u)
    }

    /// Value at `x`; pieces are half-open on the right except the last,
    /// which returns its left limit at the final breakpoint.
    pub fn eval(&self, x: f64) -> f64 {
        match self.piece_index(x) {
            Some(i) => self.pieces[i].eval(self.local_coord(i, x)),
            None => 0.0,
        }
    }

    /// Restriction of the piece covering `[u, v]` (a sub-interval of one
    /// piece or of the gap outside the support) in `[u, v]`'s local coordinate.
    fn local_piece_on(&self, u: f64, v: f64) -> Polynomial {
        let mid = 0.5 * (u + v);
        let Some(i) = self.piece_index(mid) else {
            return Polynomial::zero();
        };
        let (bu, bv) = (self.breakpoints[i], self.breakpoints[i + 1]);
        let h = bv - bu;
        let shift = (u + v - bu - bv) / h;
        let slope = (v - u) / h;
        if shift.abs() < 1e-15 && (slope - 1.0).abs() < 1e-15 {
            self.pieces[i].clone()
        } else {
            self.pieces[i].compose_affine(shift, slope)
        }
    }

    /// Re-expresses the function on a refined grid covering its support.
    fn on_grid(&self, grid: &[f64]) -> Vec<Polynomial> {
        grid.windows(2).map(|w| self.local_piece_on(w[0], w[1])).collect()
    }

    /// `Σ c_i f_i` on the merged breakpoint grid.
    pub fn linear_combination(coeffs: &[f64], fs: &[&PiecewisePoly]) -> PiecewisePoly {
        assert_eq!(coeffs.len(), fs.len(), "coefficient/function count mismatch");
        let active: Vec<(f64, &PiecewisePoly)> = coeffs
            .iter()
            .zip(fs)
            .filter(|(c, f)| **c != 0.0 && !f.is_zero())
            .map(|(c, f)| (*c, *f))
            .collect();
        if active.is_empty() {
            return PiecewisePoly::zero();
        }
        let grid = merged_grid(active.iter().map(|(_, f)| f.breakpoints.as_slice()));
        let mut pieces = vec![Polynomial::zero(); grid.len() - 1];
        for (c, f) in active {
            for (acc, p) in pieces.iter_mut().zip(f.on_grid(&grid)) {
                if !p.is_zero() {
                    *acc = acc.add(&p.scale(c));
                }
            }
        }
        PiecewisePoly { breakpoints: grid, pieces }.normalize()
    }

    pub fn add(&self, other: &PiecewisePoly) -> PiecewisePoly {
        PiecewisePoly::linear_combination(&[1.0, 1.0], &[self, other])
    }

    pub fn sub(&self, other: &PiecewisePoly) -> PiecewisePoly {
        PiecewisePoly::linear_combination(&[1.0, -1.0], &[self, other])
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: f64, other: &PiecewisePoly) -> PiecewisePoly {
        PiecewisePoly::linear_combination(&[1.0, s], &[self, other])
    }

    pub fn scale(&self, s: f64) -> PiecewisePoly {
        if s == 0.0 {
            return PiecewisePoly::zero();
        }
        PiecewisePoly {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(s)).collect(),
        }
    }

    /// Exact `∫ f·g` over the merged breakpoint grid of the overlap.
    pub fn inner_product(&self, other: &PiecewisePoly) -> f64 {
        let (Some((a0, a1)), Some((b0, b1))) = (self.support(), other.support()) else {
            return 0.0;
        };
        let lo = a0.max(b0);
        let hi = a1.min(b1);
        let scale = a0.abs().max(a1.abs()).max(b0.abs()).max(b1.abs()).max(1.0);
        if hi - lo <= BREAKPOINT_MERGE_TOL * scale {
            return 0.0;
        }
        let clip = |bs: &[f64]| -> Vec<f64> {
            bs.iter().copied().filter(|&t| t > lo && t < hi).collect::<Vec<_>>()
        };
        let inner_a = clip(&self.breakpoints);
        let inner_b = clip(&other.breakpoints);
        let mut seeds = vec![lo, hi];
        seeds.extend(inner_a);
        let grid = merged_grid([seeds.as_slice(), inner_b.as_slice()]);
        let pa = self.on_grid(&grid);
        let pb = other.on_grid(&grid);
        grid.windows(2)
            .zip(pa.iter().zip(&pb))
            .map(|(w, (p, q))| 0.5 * (w[1] - w[0]) * p.dot_symmetric(q))
            .sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.inner_product(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().max(0.0).sqrt()
    }

    /// `x ↦ f((x - shift) / scale)`: breakpoints move to `shift + scale·b`.
    pub fn affine_image(&self, shift: f64, scale: f64) -> PiecewisePoly {
        assert!(scale > 0.0, "affine_image needs an orientation-preserving map");
        PiecewisePoly {
            breakpoints: self.breakpoints.iter().map(|b| shift + scale * b).collect(),
            pieces: self.pieces.clone(),
        }
    }

    /// `f ∘ σ` where `σ` maps `a ↦ 0` and `a_plus ↦ 1`.
    pub fn compose_affine(&self, a: f64, a_plus: f64) -> Result<PiecewisePoly> {
        if !(a < a_plus) {
            return Err(Error::InvalidInterval { lo: a, hi: a_plus });
        }
        Ok(self.affine_image(a, a_plus - a))
    }

    /// `f(· - t)`.
    pub fn translate(&self, t: f64) -> PiecewisePoly {
        self.affine_image(t, 1.0)
    }

    /// `s^{1/2} f(s·)`, the unitary dilation by `s > 0`.
    pub fn dilate_unitary(&self, s: f64) -> PiecewisePoly {
        self.affine_image(0.0, 1.0 / s).scale(s.sqrt())
    }

    /// `f·χ_[u,v]`.
    pub fn restrict(&self, u: f64, v: f64) -> PiecewisePoly {
        let Some((a, b)) = self.support() else {
            return PiecewisePoly::zero();
        };
        let lo = u.max(a);
        let hi = v.min(b);
        let scale = a.abs().max(b.abs()).max(1.0);
        if !(hi - lo > BREAKPOINT_MERGE_TOL * scale) {
            return PiecewisePoly::zero();
        }
        let mut seeds = vec![lo, hi];
        seeds.extend(self.breakpoints.iter().copied().filter(|&t| t > lo && t < hi));
        let grid = merged_grid([seeds.as_slice()]);
        let pieces = self.on_grid(&grid);
        PiecewisePoly { breakpoints: grid, pieces }.normalize()
    }

    /// Largest absolute value on a uniform sample of `n` points per piece.
    pub fn sup_norm_sampled(&self, n: usize) -> f64 {
        let mut m: f64 = 0.0;
        for (p, w) in self.pieces.iter().zip(self.breakpoints.windows(2)) {
            let _ = w;
            for k in 0..=n {
                let y = -1.0 + 2.0 * k as f64 / n as f64;
                m = m.max(p.eval(y).abs());
            }
        }
        m
    }
}

/// Merges sorted breakpoint lists, collapsing points closer than
/// [`BREAKPOINT_MERGE_TOL`] times the magnitude of the grid.
fn merged_grid<'a>(lists: impl IntoIterator<Item = &'a [f64]>) -> Vec<f64> {
    let mut all: Vec<f64> = lists.into_iter().flatten().copied().collect();
    all.sort_by(|a, b| a.total_cmp(b));
    let scale = all.iter().fold(1.0_f64, |m, t| m.max(t.abs()));
    let eps = BREAKPOINT_MERGE_TOL * scale;
    let mut out: Vec<f64> = Vec::with_capacity(all.len());
    for t in all {
        match out.last() {
            Some(&last) if t - last <= eps => {}
            _ => out.push(t),
        }
    }
    out
}

/// Samples `functions` on a uniform grid of `points` values over `[x0, x1]`
/// and renders CSV with a header row `x,<labels...>`.
pub fn sample_csv(functions: &[PiecewisePoly], labels: &[String], x0: f64, x1: f64, points: usize) -> Result<String> {
    if points < 2 {
        return Err(Error::Usage("sample_points must be at least 2".into()));
    }
    if labels.len() != functions.len() {
        return Err(Error::Contract("one label per sampled function".into()));
    }
    let mut out = String::from("x");
    for l in labels {
        out.push(',');
        out.push_str(l);
    }
    out.push('\n');
    for k in 0..points {
        let x = x0 + (x1 - x0) * k as f64 / (points - 1) as f64;
        write!(out, "{x}").expect("writing to a String cannot fail");
        for f in functions {
            let v = f.eval(x);
            let v = if v == 0.0 { 0.0 } else { v };
            write!(out, ",{v}").expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> PiecewisePoly {
        // 4x(1-x) on [0,1]
        PiecewisePoly::from_global(&Polynomial::new(vec![0.0, 4.0, -4.0]), 0.0, 1.0).unwrap()
    }
    fn r() -> PiecewisePoly {
        PiecewisePoly::from_global(&Polynomial::x(), 0.0, 1.0).unwrap()
    }
    fn l() -> PiecewisePoly {
        PiecewisePoly::from_global(&Polynomial::new(vec![1.0, -1.0]), 0.0, 1.0).unwrap()
    }

    #[test]
    fn polynomial_canonical_form() {
        assert!(Polynomial::new(vec![0.0, 0.0]).is_zero());
        assert_eq!(Polynomial::new(vec![1.0, 2.0, 0.0]).degree(), Some(1));
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn compose_affine_polynomial() {
        // (1 + 2x) at x = 3 + 2s  ->  7 + 4s
        let p = Polynomial::new(vec![1.0, 2.0]).compose_affine(3.0, 2.0);
        assert_eq!(p.monomial(), vec![7.0, 4.0]);
        let q = Polynomial::new(vec![0.5, -1.0, 0.0, 2.0]);
        let m = q.mul(&q).monomial();
        let want = [0.25, -1.0, 1.0, 2.0, -4.0, 0.0, 4.0];
        for (a, b) in m.iter().zip(want) {
            assert!((a - b).abs() < 1e-14, "{m:?}");
        }
        let s = q.compose_affine(0.25, -0.5);
        for y in [-1.0, -0.3, 0.2, 1.0] {
            assert!((s.eval(y) - q.eval(0.25 - 0.5 * y)).abs() < 1e-15);
        }
    }

    #[test]
    fn eval_examples() {
        assert!((q().eval(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(q().eval(1.5), 0.0);
        assert_eq!(q().eval(-0.1), 0.0);
        assert!((r().eval(0.25) - 0.25).abs() < 1e-15);
        // left limit at the last breakpoint
        assert!((r().eval(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eval_half_open_pieces() {
        let f = PiecewisePoly::from_local_pieces(
            vec![0.0, 1.0, 2.0],
            vec![Polynomial::constant(1.0), Polynomial::constant(2.0)],
        )
        .unwrap();
        assert_eq!(f.eval(1.0), 2.0);
        assert_eq!(f.eval(0.999), 1.0);
        assert_eq!(f.eval(2.0), 2.0);
    }

    #[test]
    fn inner_product_examples() {
        assert!((r().inner_product(&l()) - 1.0 / 6.0).abs() < 1e-15);
        assert!((q().inner_product(&q()) - 8.0 / 15.0).abs() < 1e-15);
        let g = PiecewisePoly::from_global(&Polynomial::x(), 1.0, 2.0).unwrap();
        assert_eq!(r().inner_product(&g), 0.0);
    }

    #[test]
    fn compose_affine_examples() {
        let same = r().compose_affine(0.0, 1.0).unwrap();
        assert_eq!(same, r());
        let moved = q().compose_affine(2.0, 4.0).unwrap();
        assert!((moved.eval(3.0) - 1.0).abs() < 1e-15);
        assert_eq!(moved.support(), Some((2.0, 4.0)));
        let ip = moved.inner_product(&r().compose_affine(2.0, 4.0).unwrap());
        assert!((ip - 2.0 * q().inner_product(&r())).abs() < 1e-15);
        assert!(matches!(q().compose_affine(1.0, 1.0), Err(Error::InvalidInterval { .. })));
    }

    #[test]
    fn restrict_examples() {
        let half = q().restrict(0.0, 0.5);
        assert!((half.eval(0.25) - 0.75).abs() < 1e-15);
        assert_eq!(half.eval(0.75), 0.0);
        assert!(q().restrict(2.0, 3.0).is_zero());
        let one = r().add(&l()).restrict(0.0, 1.0);
        for x in [0.0, 0.3, 0.9] {
            assert!((one.eval(x) - 1.0).abs() < 1e-15);
        }
        assert!((one.norm_squared() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn subtraction_cancels_exactly() {
        let f = q().add(&r().translate(0.5));
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.sub(&f).norm_squared(), 0.0);
    }

    #[test]
    fn close_breakpoints_merge() {
        let a = PiecewisePoly::indicator(0.0, 1.0, 1.0).unwrap();
        let b = PiecewisePoly::indicator(1.0 + 1e-15, 2.0, 1.0).unwrap();
        let s = a.add(&b);
        assert_eq!(s.breakpoints().len(), 3);
    }

    #[test]
    fn unitary_dilation_preserves_norm() {
        let f = q().translate(0.3);
        let g = f.dilate_unitary(1.618);
        assert!((g.norm_squared() - f.norm_squared()).abs() < 1e-14);
        assert!((g.eval(0.5) - 1.618f64.sqrt() * f.eval(0.5 * 1.618)).abs() < 1e-14);
    }

    #[test]
    fn numerical_support_ignores_noise() {
        let f = PiecewisePoly::from_local_pieces(
            vec![0.0, 1.0, 2.0, 3.0],
            vec![Polynomial::constant(1e-18), Polynomial::constant(1.0), Polynomial::constant(1e-17)],
        )
        .unwrap();
        assert_eq!(f.support(), Some((0.0, 3.0)));
        assert_eq!(f.numerical_support(1e-12), Some((1.0, 2.0)));
    }

    #[test]
    fn csv_has_header_and_zero_outside() {
        let csv = sample_csv(&[r()], &["r".into()], -1.0, 1.0, 3).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,r");
        assert_eq!(lines[1], "-1,0");
        assert_eq!(lines.len(), 4);
        assert!(sample_csv(&[r()], &["r".into()], 0.0, 1.0, 1).is_err());
    }
}
