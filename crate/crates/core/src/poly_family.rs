//! Continuous orthogonal bases reproducing polynomials of arbitrary degree,
//! built from ultraspherical bumps and one extra `zⁿ` per interval, and the
//! closed-form wavelets between degrees `n` and `n + 3`.

use crate::error::{Error, Result};
use crate::knots::{KnotWindow, Role};
use crate::linalg;
use crate::mra::{CenteredBasis, KnotGroup};
use crate::piecewise::{PiecewisePoly, Polynomial};

/// Monic ultraspherical polynomial `p_i^{5/2}` on `[-1, 1]` (weight `(1-x²)²`),
/// from `p_i = x·p_{i-1} - γ_i·p_{i-2}` with
/// `γ_i = (i-1)(i+3) / ((2i+3)(2i+1))`.
pub fn ultraspherical_monic(i: usize) -> Polynomial {
    let mut prev = Polynomial::constant(1.0);
    if i == 0 {
        return prev;
    }
    let mut cur = Polynomial::x();
    for k in 2..=i {
        let kf = k as f64;
        let gamma = (kf - 1.0) * (kf + 3.0) / ((2.0 * kf + 3.0) * (2.0 * kf + 1.0));
        let next = cur.mul(&Polynomial::x()).add(&prev.scale(-gamma));
        prev = cur;
        cur = next;
    }
    cur
}

/// `φ̃ⁱ(x) = x(1-x)·p_{i-2}(2x-1)` on `[0, 1]`; in the local coordinate
/// `y = 2x - 1` this is `(1 - y²)/4 · p_{i-2}(y)`.
pub fn phi_tilde(i: usize) -> Result<PiecewisePoly> {
    if i < 2 {
        return Err(Error::Domain(format!("phi_tilde needs i >= 2, got {i}")));
    }
    let bump = Polynomial::new(vec![0.25, 0.0, -0.25]);
    PiecewisePoly::local_on(0.0, 1.0, bump.mul(&ultraspherical_monic(i - 2)))
}

/// `r = x·χ_[0,1)`.
pub fn r_fn() -> PiecewisePoly {
    PiecewisePoly::local_on(0.0, 1.0, Polynomial::new(vec![0.5, 0.5])).expect("unit interval")
}

/// `l = (1 - x)·χ_[0,1)`.
pub fn l_fn() -> PiecewisePoly {
    PiecewisePoly::local_on(0.0, 1.0, Polynomial::new(vec![0.5, -0.5])).expect("unit interval")
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn double_factorial_odd(m: usize) -> f64 {
    // (2m-1)!! for m >= 1, 1 for m = 0
    (1..=m).map(|k| (2 * k - 1) as f64).product()
}

/// `‖φ̃ⁿ‖² = (n-2)!(n+2)! / (16 (2n-1)!! (2n+1)!!)`.
pub fn phi_tilde_norm_sq_closed(n: usize) -> f64 {
    factorial(n - 2) * factorial(n + 2) / (16.0 * double_factorial_odd(n) * double_factorial_odd(n + 1))
}

/// `⟨r, φ̃ⁿ⟩ = (n-2)! / (4 (2n-1)!!)`.
pub fn r_phi_tilde_closed(n: usize) -> f64 {
    factorial(n - 2) / (4.0 * double_factorial_odd(n))
}

/// `⟨r_n, l_n⟩ = (-1)^{n+1} / (n(n+1)(n+2))`.
pub fn rn_ln_closed(n: usize) -> f64 {
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let nf = n as f64;
    sign / (nf * (nf + 1.0) * (nf + 2.0))
}

/// The positive root `α_n` that makes `r_n` and `l_n` orthogonal once `zⁿ`
/// is projected out.
pub fn alpha(n: usize) -> f64 {
    let nf = n as f64;
    let d = 2.0 * nf + 5.0;
    -(nf + 1.0) / d + (nf + 3.0) / d * (3.0 * (nf + 1.0) * (nf + 3.0) / ((2.0 * nf + 7.0) * (2.0 * nf + 3.0))).sqrt()
}

/// Value of `α² + 2(n+1)/(2n+5)·α + (n+2)(n+1)(n²-5n-30)/((2n+7)(2n+5)²(2n+3))`.
pub fn alpha_quadratic(n: usize, a: f64) -> f64 {
    let nf = n as f64;
    let b = 2.0 * (nf + 1.0) / (2.0 * nf + 5.0);
    let c = (nf + 2.0) * (nf + 1.0) * (nf * nf - 5.0 * nf - 30.0)
        / ((2.0 * nf + 7.0) * (2.0 * nf + 5.0).powi(2) * (2.0 * nf + 3.0));
    a * a + b * a + c
}

/// All pieces of the degree-`n` construction on `[0, 1]`.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    pub n: usize,
    pub alpha: f64,
    /// `φ̃², …, φ̃ⁿ`.
    pub phi_tilde: Vec<PiecewisePoly>,
    pub z: PiecewisePoly,
    /// `r_n = (I - P_{U_n}) r`.
    pub r_n: PiecewisePoly,
    /// `l_n = (I - P_{U_n}) l`.
    pub l_n: PiecewisePoly,
    /// `rⁿ = (I - P_{zⁿ}) r_n`.
    pub r_proj: PiecewisePoly,
    /// `lⁿ = (I - P_{zⁿ}) l_n`.
    pub l_proj: PiecewisePoly,
}

impl PolyFamily {
    /// `Λⁿ = span{φ̃², …, φ̃ⁿ, zⁿ}`.
    pub fn lambda(&self) -> Vec<PiecewisePoly> {
        let mut out = self.phi_tilde.clone();
        out.push(self.z.clone());
        out
    }
}

fn unit(fs: &[PiecewisePoly]) -> Vec<PiecewisePoly> {
    fs.iter().map(|f| f.scale(1.0 / f.norm())).collect()
}

/// Largest degree accepted by [`build_family`]; the wavelet pair of degree
/// `n` uses `n + 3`.
pub const MAX_DEGREE: usize = 15;

/// Builds the degree-`n` family (`n = 1` gives the degenerate `Λ¹ = span{z¹}`)
/// and checks the orthogonality relations it is designed to satisfy.
pub fn build_family(n: usize) -> Result<PolyFamily> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::Domain(format!("degree must be in 1..={MAX_DEGREE}, got {n}")));
    }
    let phi: Vec<PiecewisePoly> = (2..=n).map(phi_tilde).collect::<Result<_>>()?;
    let a = alpha(n);
    let z = phi_tilde(n + 1)?.scale(a).add(&phi_tilde(n + 3)?);
    let qu = unit(&phi);
    let (r, l) = (r_fn(), l_fn());
    let r_n = linalg::residual_orthonormal(&r, &qu);
    let l_n = linalg::residual_orthonormal(&l, &qu);
    let qz = unit(std::slice::from_ref(&z));
    let r_proj = linalg::residual_orthonormal(&r_n, &qz);
    let l_proj = linalg::residual_orthonormal(&l_n, &qz);

    let want = rn_ln_closed(n);
    let got = r_n.inner_product(&l_n);
    if ((got - want) / want).abs() > 1e-10 {
        return Err(Error::Consistency(format!("<r_n, l_n> = {got}, expected {want}")));
    }
    let rl = r_proj.inner_product(&l_proj);
    if rl.abs() > 1e-10 {
        return Err(Error::Consistency(format!("<r^n, l^n> = {rl:.3e} is not zero")));
    }
    Ok(PolyFamily { n, alpha: a, phi_tilde: phi, z, r_n, l_n, r_proj, l_proj })
}

/// `Ωⁿ` on a window. Interior intervals carry `{zⁿ, φ̃², …, φ̃ⁿ}`; the
/// interval at a true left (right) endpoint adds `lⁿ` (`rⁿ`) in front; knots
/// with both neighbors carry the bar function `rⁿ∘σ_{a₋} + lⁿ∘σ_a`.
pub fn omega_basis(fam: &PolyFamily, w: &KnotWindow, normalized: bool) -> Result<CenteredBasis> {
    let knots = w.knots();
    let last = knots.len() - 1;
    let mut groups = vec![KnotGroup::default(); knots.len()];
    for i in 0..last {
        let (a, ap) = (knots[i], knots[i + 1]);
        let g = &mut groups[i];
        if i == 0 && w.left_role == Role::Endpoint {
            g.push_breve("l", fam.l_proj.compose_affine(a, ap)?);
        }
        if i + 1 == last && w.right_role == Role::Endpoint {
            g.push_breve("r", fam.r_proj.compose_affine(a, ap)?);
        }
        g.push_breve("z", fam.z.compose_affine(a, ap)?);
        for (k, f) in fam.phi_tilde.iter().enumerate() {
            g.push_breve(format!("phi{}", k + 2), f.compose_affine(a, ap)?);
        }
    }
    for i in 1..last {
        let bar = fam
            .r_proj
            .compose_affine(knots[i - 1], knots[i])?
            .add(&fam.l_proj.compose_affine(knots[i], knots[i + 1])?);
        groups[i].push_bar("omega", bar);
    }
    let b = CenteredBasis::new(w.clone(), groups, false)?;
    Ok(if normalized { b.normalized() } else { b })
}

/// The closed-form wavelets between `Ωⁿ` and `Ω^{n+3}`, normalized:
/// `ŵ_a`, `w̃_a` at knots with a bar function, and `w̆_a` on intervals
/// whose both end knots carry bar functions (elsewhere the short wavelet
/// space is larger and this single function only lies inside it).
pub fn poly_wavelets(n: usize, w: &KnotWindow) -> Result<CenteredBasis> {
    let f0 = build_family(n)?;
    let f3 = build_family(n + 3)?;
    let knots = w.knots();
    let last = knots.len() - 1;
    let rho = f3.r_proj.norm_squared() / f0.r_proj.norm_squared();
    let r_hat = f3.r_proj.axpy(-rho, &f0.r_proj);
    let l_hat = f3.l_proj.axpy(-rho, &f0.l_proj);
    let r_diff = f0.r_proj.sub(&f3.r_proj);
    let l_diff = f0.l_proj.sub(&f3.l_proj);
    let phi = phi_tilde(n + 2)?;
    let r = r_fn();
    let short = phi.scale(f3.z.inner_product(&r)).axpy(-phi.inner_product(&r), &f3.z);

    let has_bar = |i: usize| i > 0 && i < last;
    let mut groups = vec![KnotGroup::default(); knots.len()];
    for i in 0..=last {
        if has_bar(i) {
            let (am, a, ap) = (knots[i - 1], knots[i], knots[i + 1]);
            let c_a = (a - am) / (ap - a);
            let w_hat = r_hat.compose_affine(am, a)?.add(&l_hat.compose_affine(a, ap)?);
            let w_tilde = r_diff.compose_affine(am, a)?.axpy(-c_a, &l_diff.compose_affine(a, ap)?);
            groups[i].push_bar("hat", w_hat);
            groups[i].push_bar("tilde", w_tilde);
        }
        if has_bar(i) && has_bar(i + 1) {
            groups[i].push_breve("breve", short.compose_affine(knots[i], knots[i + 1])?);
        }
    }
    Ok(CenteredBasis::new(w.clone(), groups, false)?.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i128>;

    /// `∫_{-1}^{1} x^k (1-x²)² dx`.
    fn weighted_moment(k: usize) -> Q {
        if k % 2 == 1 {
            return Q::from_integer(0);
        }
        let k = k as i128;
        Q::new(2, k + 1) - Q::new(4, k + 3) + Q::new(2, k + 5)
    }

    fn weighted_ip(p: &[Q], q: &[Q]) -> Q {
        let mut s = Q::from_integer(0);
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                s += *a * *b * weighted_moment(i + j);
            }
        }
        s
    }

    /// Monic orthogonal polynomials by exact Gram-Schmidt of monomials.
    fn oracle(max: usize) -> Vec<Vec<Q>> {
        let mut out: Vec<Vec<Q>> = Vec::new();
        for d in 0..=max {
            let mut p = vec![Q::from_integer(0); d + 1];
            p[d] = Q::from_integer(1);
            for q in &out {
                let c = weighted_ip(&p, q) / weighted_ip(q, q);
                for (k, qk) in q.iter().enumerate() {
                    p[k] -= c * *qk;
                }
            }
            out.push(p);
        }
        out
    }

    #[test]
    fn recurrence_matches_exact_gram_schmidt() {
        for (i, exact) in oracle(10).iter().enumerate() {
            let p = ultraspherical_monic(i).monomial();
            assert_eq!(p.len(), i + 1);
            for (c, e) in p.iter().zip(exact) {
                let e = *e.numer() as f64 / *e.denom() as f64;
                assert!((c - e).abs() < 1e-13, "degree {i}: {c} vs {e}");
            }
        }
        assert_eq!(ultraspherical_monic(0).monomial(), vec![1.0]);
        assert_eq!(ultraspherical_monic(1).monomial(), vec![0.0, 1.0]);
    }

    #[test]
    fn small_integrals() {
        let p2 = phi_tilde(2).unwrap();
        assert!((p2.norm_squared() - 1.0 / 30.0).abs() < 1e-15);
        assert!((r_fn().inner_product(&p2) - 1.0 / 12.0).abs() < 1e-15);
        let p3 = phi_tilde(3).unwrap();
        assert!((l_fn().inner_product(&p3) + r_fn().inner_product(&p3)).abs() < 1e-15);
        assert!(phi_tilde(1).is_err());
    }

    #[test]
    fn alpha_two() {
        let want = -1.0 / 3.0 + 5.0 / 9.0 * (45.0f64 / 77.0).sqrt();
        assert!((alpha(2) - want).abs() < 1e-15);
        assert!((alpha(2) - 0.09137).abs() < 1e-5);
        assert!(alpha_quadratic(2, alpha(2)).abs() < 1e-15);
    }

    #[test]
    fn family_two() {
        let f = build_family(2).unwrap();
        assert!((f.r_n.inner_product(&f.l_n) + 1.0 / 24.0).abs() < 1e-15);
        let quad = [f.r_proj.clone(), f.l_proj.clone(), f.z.clone(), f.phi_tilde[0].clone()];
        let g = linalg::gram(&quad, &quad);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(g[(i, j)].abs() < 1e-14, "({i},{j}) = {}", g[(i, j)]);
                }
            }
        }
    }

    #[test]
    fn degenerate_degree_one() {
        let f = build_family(1).unwrap();
        assert!(f.phi_tilde.is_empty());
        assert!((f.r_n.inner_product(&f.l_n) - 1.0 / 6.0).abs() < 1e-15);
        assert!(f.r_proj.inner_product(&f.l_proj).abs() < 1e-14);
    }

    #[test]
    fn omega_counts() {
        let w = KnotWindow::new(vec![0.0, 1.0, 2.5, 3.0, 4.2], Role::Endpoint, Role::Endpoint).unwrap();
        let f = build_family(3).unwrap();
        let b = omega_basis(&f, &w, true).unwrap();
        assert_eq!(b.groups[0].breve.len(), 4);
        assert_eq!(b.groups[1].breve.len(), 3);
        assert_eq!(b.groups[3].breve.len(), 4);
        assert_eq!(b.groups[1].bar.len(), 1);
        assert!(b.groups[0].bar.is_empty());
        assert!(b.gram_error() < 1e-12);
    }
}
