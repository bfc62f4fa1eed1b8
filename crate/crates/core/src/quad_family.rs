//! Continuous piecewise-quadratic orthogonal bases with one extra function
//! `z^θ` per interval, breaking at `θ` inside the unit interval.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::knots::{KnotWindow, Role};
use crate::linalg;
use crate::mra::{CenteredBasis, KnotGroup};
use crate::piecewise::{PiecewisePoly, Polynomial};
use crate::poly_family::{l_fn, r_fn};

/// Smallest distance of `θ` from 0 and 1 that is accepted.
pub const THETA_MARGIN: f64 = 1e-6;

/// Which root of the quadratic for `c` was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootBranch {
    Plus,
    Minus,
}

/// Coefficients `(A, B, C)` of `A c² + B c + C = 0`.
pub fn c_quadratic(theta: f64) -> (f64, f64, f64) {
    let t = theta;
    let s = (1.0 - t) * t;
    let a = 4.0 * (1.0 + 45.0 * s);
    let b = -20.0 * (2.0 + t * (9.0 + 13.0 * t * (2.0 * t - 3.0)));
    let c = 5.0 * (4.0 - 5.0 * s * s * (15.0 + s));
    (a, b, c)
}

/// `B² - 4AC` evaluated directly.
pub fn c_discriminant(theta: f64) -> f64 {
    let (a, b, c) = c_quadratic(theta);
    b * b - 4.0 * a * c
}

/// `80 (4 - 15 (1-θ)² θ²)²`.
pub fn c_discriminant_closed(theta: f64) -> f64 {
    let s = (1.0 - theta) * theta;
    80.0 * (4.0 - 15.0 * s * s).powi(2)
}

/// Both roots `(plus, minus)` from the closed form.
pub fn c_roots(theta: f64) -> (f64, f64) {
    let t = theta;
    let s = (1.0 - t) * t;
    let num = 20.0 * (2.0 + t * (9.0 + 13.0 * t * (2.0 * t - 3.0)));
    let rad = 4.0 * 5f64.sqrt() * (4.0 - 15.0 * s * s);
    let den = 8.0 * (1.0 + 45.0 * s);
    ((num + rad) / den, (num - rad) / den)
}

pub fn check_theta(theta: f64) -> Result<()> {
    if !(THETA_MARGIN..=1.0 - THETA_MARGIN).contains(&theta) {
        return Err(Error::Domain(format!("theta must lie in [{THETA_MARGIN}, {}], got {theta}", 1.0 - THETA_MARGIN)));
    }
    Ok(())
}

/// The four orthogonal functions on `[0, 1]` for one value of `θ`.
#[derive(Clone, Debug)]
pub struct QuadLocal {
    pub theta: f64,
    pub branch: RootBranch,
    pub c: f64,
    /// `q = 4x(1-x)`.
    pub q: PiecewisePoly,
    pub q0: PiecewisePoly,
    pub q1: PiecewisePoly,
    pub h: PiecewisePoly,
    pub u0: PiecewisePoly,
    pub u1: PiecewisePoly,
    /// Unit-norm `z^θ ∝ u₀ + c·u₁`.
    pub z: PiecewisePoly,
    pub r_theta: PiecewisePoly,
    pub l_theta: PiecewisePoly,
}

fn bump() -> Polynomial {
    Polynomial::new(vec![1.0, 0.0, -1.0])
}

/// `q0^θ`, `q1^θ`, `h^θ`, `u₀`, `u₁` for a given `θ`.
pub fn local_pieces(theta: f64) -> Result<[PiecewisePoly; 5]> {
    check_theta(theta)?;
    let t = theta;
    let q0 = PiecewisePoly::local_on(0.0, t, bump())?;
    let q1 = PiecewisePoly::local_on(t, 1.0, bump())?;
    let h = PiecewisePoly::from_local_pieces(
        vec![0.0, t, 1.0],
        vec![Polynomial::new(vec![0.5, 0.5]), Polynomial::new(vec![0.5, -0.5])],
    )?;
    let u0 = PiecewisePoly::linear_combination(&[(1.0 - t).powi(2) * (2.0 + 3.0 * t), t * t * (3.0 * t - 5.0)], &[&q0, &q1]);
    let u1 = PiecewisePoly::linear_combination(
        &[
            -2.0 + 3.0 * (t - 1.0) * t.powi(3),
            -2.0 + 3.0 * (t - 1.0).powi(3) * t,
            16.0 / 5.0 - 12.0 * (t - 1.0).powi(2) * t * t,
        ],
        &[&q0, &q1, &h],
    );
    Ok([q0, q1, h, u0, u1])
}

/// Builds `z^θ`, `r^θ`, `l^θ` and checks that `{r^θ, l^θ, q, z^θ}` is
/// orthogonal.
pub fn quad_local_with(theta: f64, branch: RootBranch) -> Result<QuadLocal> {
    let [q0, q1, h, u0, u1] = local_pieces(theta)?;
    let q = PiecewisePoly::local_on(0.0, 1.0, bump())?;
    let (plus, minus) = c_roots(theta);
    let c = match branch {
        RootBranch::Plus => plus,
        RootBranch::Minus => minus,
    };
    let z = u0.axpy(c, &u1);
    let z = z.scale(1.0 / z.norm());
    let qz = [q.scale(1.0 / q.norm()), z.clone()];
    let r_theta = linalg::residual_orthonormal(&r_fn(), &qz);
    let l_theta = linalg::residual_orthonormal(&l_fn(), &qz);
    let local = QuadLocal { theta, branch, c, q, q0, q1, h, u0, u1, z, r_theta, l_theta };
    let err = local.orthogonality_error();
    if err > 1e-10 {
        return Err(Error::Consistency(format!("theta = {theta}: {{r, l, q, z}} off-diagonal Gram entry {err:.3e}")));
    }
    Ok(local)
}

/// [`quad_local_with`] on the default `+` branch.
pub fn quad_local(theta: f64) -> Result<QuadLocal> {
    quad_local_with(theta, RootBranch::Plus)
}

impl QuadLocal {
    pub fn system(&self) -> [PiecewisePoly; 4] {
        [self.r_theta.clone(), self.l_theta.clone(), self.q.clone(), self.z.clone()]
    }

    /// Largest off-diagonal entry of the Gram matrix of `{r^θ, l^θ, q, z^θ}`.
    pub fn orthogonality_error(&self) -> f64 {
        let s = self.system();
        let g = linalg::gram(&s, &s);
        let mut m: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    m = m.max(g[(i, j)].abs());
                }
            }
        }
        m
    }

    /// `b = θ` mapped into `[a, a₊]`.
    pub fn breakpoint(&self, a: f64, a_plus: f64) -> f64 {
        (1.0 - self.theta) * a + self.theta * a_plus
    }
}

/// One `θ` per knot that has a successor in the window.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSequence(pub Vec<f64>);

impl ThetaSequence {
    pub fn constant(theta: f64, w: &KnotWindow) -> Self {
        ThetaSequence(vec![theta; w.len() - 1])
    }

    pub fn validate(&self, w: &KnotWindow) -> Result<()> {
        if self.0.len() != w.len() - 1 {
            return Err(Error::Domain(format!("{} theta values for {} intervals", self.0.len(), w.len() - 1)));
        }
        self.0.iter().try_for_each(|&t| check_theta(t))
    }

    /// `b_a = (1-θ_a) a + θ_a a₊` for every interval.
    pub fn breakpoints(&self, w: &KnotWindow) -> Vec<f64> {
        w.knots().windows(2).zip(&self.0).map(|(k, t)| (1.0 - t) * k[0] + t * k[1]).collect()
    }
}

/// The refinement of `w` that adds every `b_a` as a knot.
pub fn insert_breakpoints(w: &KnotWindow, thetas: &ThetaSequence) -> Result<KnotWindow> {
    thetas.validate(w)?;
    let mut k = w.knots().to_vec();
    k.extend(thetas.breakpoints(w));
    k.sort_by(f64::total_cmp);
    KnotWindow::new(k, w.left_role, w.right_role)
}

/// `Ω_{a,θ}`: `{q∘σ_a, z_a}` on interior intervals, `l^θ∘σ_a` added in front
/// at a true left endpoint and `r^θ∘σ_a` at a true right endpoint, and the
/// bar function `r^{θ_{a₋}}∘σ_{a₋} + l^{θ_a}∘σ_a` at knots with both
/// neighbors.
pub fn omega(w: &KnotWindow, thetas: &ThetaSequence, normalized: bool) -> Result<CenteredBasis> {
    thetas.validate(w)?;
    let knots = w.knots();
    let last = knots.len() - 1;
    let locals: Vec<QuadLocal> = thetas.0.iter().map(|&t| quad_local(t)).collect::<Result<_>>()?;
    let mut groups = vec![KnotGroup::default(); knots.len()];
    for i in 0..last {
        let (a, ap) = (knots[i], knots[i + 1]);
        let loc = &locals[i];
        let g = &mut groups[i];
        if i == 0 && w.left_role == Role::Endpoint {
            g.push_breve("l", loc.l_theta.compose_affine(a, ap)?);
        }
        if i + 1 == last && w.right_role == Role::Endpoint {
            g.push_breve("r", loc.r_theta.compose_affine(a, ap)?);
        }
        g.push_breve("q", loc.q.compose_affine(a, ap)?);
        g.push_breve("z", loc.z.compose_affine(a, ap)?);
    }
    for i in 1..last {
        let bar = locals[i - 1]
            .r_theta
            .compose_affine(knots[i - 1], knots[i])?
            .add(&locals[i].l_theta.compose_affine(knots[i], knots[i + 1])?);
        groups[i].push_bar("bar", bar);
    }
    let b = CenteredBasis::new(w.clone(), groups, false)?;
    Ok(if normalized { b.normalized() } else { b })
}

/// Clauses of the nesting hypothesis that fail, one message per interval.
/// Errors if `w0` is not contained in `w1`.
pub fn nesting_failures(w0: &KnotWindow, t0: &ThetaSequence, w1: &KnotWindow, t1: &ThetaSequence) -> Result<Vec<String>> {
    t0.validate(w0)?;
    t1.validate(w1)?;
    for &a in w0.knots() {
        if !w1.contains(a) {
            return Err(Error::Contract(format!("coarse knot {a} is missing from the fine window")));
        }
    }
    let tol = w1.match_tol();
    let b1 = t1.breakpoints(w1);
    let mut out = Vec::new();
    for (i, b0) in t0.breakpoints(w0).into_iter().enumerate() {
        let (a, ap) = (w0.knots()[i], w0.knots()[i + 1]);
        let j = w1.index_of(a)?;
        let split = w1.knots()[j + 1] < ap - tol;
        if split {
            if !w1.contains(b0) {
                out.push(format!("interval [{a}, {ap}] is refined but b = {b0} is not a fine knot"));
            }
        } else if (b1[j] - b0).abs() > tol {
            out.push(format!("interval [{a}, {ap}] is not refined but b = {b0} differs from the fine b = {}", b1[j]));
        }
    }
    Ok(out)
}

/// Whether `(w0, t0)` and `(w1, t1)` satisfy the hypotheses under which
/// `S(Ω_{w0,t0}) ⊂ S(Ω_{w1,t1})`.
pub fn nesting_hypothesis(w0: &KnotWindow, t0: &ThetaSequence, w1: &KnotWindow, t1: &ThetaSequence) -> Result<bool> {
    Ok(nesting_failures(w0, t0, w1, t1)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::TAU;

    #[test]
    fn roots_at_half() {
        let (p, m) = c_roots(0.5);
        let want = 5f64.sqrt() / 8.0;
        assert!((p - want).abs() < 1e-15);
        assert!((m + want).abs() < 1e-15);
    }

    #[test]
    fn discriminant_closed_form() {
        for k in 1..=9 {
            let t = k as f64 / 10.0;
            let d = c_discriminant(t);
            assert!(((d - c_discriminant_closed(t)) / d).abs() < 1e-12, "theta {t}");
        }
    }

    #[test]
    fn u_functions_are_orthogonal_to_q() {
        for t in [0.1, 0.3, 0.5, 1.0 / TAU, 0.9] {
            let [q0, q1, h, u0, u1] = local_pieces(t).unwrap();
            let q = PiecewisePoly::local_on(0.0, 1.0, bump()).unwrap();
            assert!(u0.inner_product(&q).abs() < 1e-14);
            assert!(u1.inner_product(&q).abs() < 1e-14);
            let span = linalg::orthonormalize(&[q0, q1, h], 1e-12);
            assert!(linalg::residual_orthonormal(&q, &span).norm() < 1e-12);
        }
    }

    /// `(I - P_{q,z}) r ⊥ l` written out with the Gram entries of `q`, `z`,
    /// `r`, `l`; `z` is taken orthogonal to `q`.
    fn zeqn_residual(z: &PiecewisePoly) -> f64 {
        let q = PiecewisePoly::local_on(0.0, 1.0, bump()).unwrap();
        let (r, l) = (r_fn(), l_fn());
        let k = r.inner_product(&l) - r.inner_product(&q) * l.inner_product(&q) / q.norm_squared();
        (k * z.norm_squared() - r.inner_product(z) * l.inner_product(z)) / z.norm_squared()
    }

    #[test]
    fn quadratic_describes_u0_plus_c_u1() {
        for t in [0.2, 1.0 / 3.0, 0.5, 1.0 / TAU] {
            let [_, _, _, u0, u1] = local_pieces(t).unwrap();
            let (p, m) = c_roots(t);
            for c in [p, m] {
                assert!(zeqn_residual(&u0.axpy(c, &u1)).abs() < 1e-13, "theta {t}, c {c}");
            }
            // the reading z = c·u0 + u1 does not satisfy the condition
            let swapped = u1.axpy(p, &u0);
            assert!(zeqn_residual(&swapped).abs() > 1e-4, "theta {t}");
        }
    }

    #[test]
    fn both_branches_give_orthogonal_systems() {
        for t in [0.25, 0.5, 1.0 / TAU] {
            assert!(quad_local_with(t, RootBranch::Plus).unwrap().orthogonality_error() < 1e-12);
            assert!(quad_local_with(t, RootBranch::Minus).unwrap().orthogonality_error() < 1e-12);
        }
    }

    #[test]
    fn theta_domain() {
        assert!(matches!(quad_local(1.2), Err(Error::Domain(_))));
        assert!(quad_local(0.0).is_err());
        assert!(quad_local(1e-7).is_err());
    }

    #[test]
    fn omega_counts() {
        let w = KnotWindow::new(vec![0.0, 1.0, 1.8, 3.0, 3.5, 5.0], Role::Endpoint, Role::Endpoint).unwrap();
        let b = omega(&w, &ThetaSequence::constant(0.4, &w), true).unwrap();
        assert_eq!(b.groups[0].breve.len(), 3);
        assert_eq!(b.groups[2].breve.len(), 2);
        assert_eq!(b.groups[2].bar.len(), 1);
        assert_eq!(b.groups[4].breve.len(), 3);
        assert!(b.gram_error() < 1e-9);
    }

    #[test]
    fn nesting_examples() {
        let w0 = KnotWindow::new(vec![0.0, 1.0, 2.0, 3.0, 4.0], Role::Endpoint, Role::Endpoint).unwrap();
        let w1 = w0.midpoint_refine();
        let half0 = ThetaSequence::constant(0.5, &w0);
        let half1 = ThetaSequence::constant(0.5, &w1);
        assert!(nesting_hypothesis(&w0, &half0, &w1, &half1).unwrap());
        let off0 = ThetaSequence::constant(0.3, &w0);
        assert!(!nesting_hypothesis(&w0, &off0, &w1, &half1).unwrap());
        let other = KnotWindow::new(vec![0.0, 1.5, 2.0, 3.0, 4.0], Role::Endpoint, Role::Endpoint).unwrap();
        let t = ThetaSequence::constant(0.5, &other);
        assert!(nesting_hypothesis(&w0, &half0, &other, &t).is_err());
    }
}
