use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use knotwave::knots::{classify, tau_integers_upto, GapClass, TAU};
use knotwave::linalg;
use knotwave::mra::{build_scaffold, build_wavelets, parseval_defect};
use knotwave::poly_family;
use knotwave::{CenteredBasis, KnotWindow, PiecewisePoly, Polynomial, Role, TauNumber};
use proptest::prelude::*;

fn piecewise(max_pieces: usize, max_degree: usize) -> impl Strategy<Value = PiecewisePoly> {
    (1..=max_pieces, -2.0..2.0f64)
        .prop_flat_map(move |(n, start)| {
            (
                Just(start),
                prop::collection::vec(0.05..1.5f64, n),
                prop::collection::vec(prop::collection::vec(-1.0..1.0f64, 1..=max_degree + 1), n),
            )
        })
        .prop_map(|(start, widths, coeffs)| {
            let mut bps = vec![start];
            for w in widths {
                bps.push(bps.last().unwrap() + w);
            }
            let pieces = coeffs.into_iter().map(Polynomial::new).collect();
            PiecewisePoly::from_local_pieces(bps, pieces).unwrap()
        })
}

/// Gauss-Legendre on every cell of the merged breakpoint grid; 20 nodes are
/// exact for the degree-24 products used here.
fn quadrature(f: &PiecewisePoly, g: &PiecewisePoly) -> f64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(20).unwrap());
    let mut grid: Vec<f64> = f.breakpoints().iter().chain(g.breakpoints()).copied().collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid.windows(2).map(|c| rule.integrate(c[0], c[1], |x| f.eval(x) * g.eval(x))).sum()
}

fn rel(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_is_bilinear_and_symmetric(
        f in piecewise(4, 6), g in piecewise(4, 6), h in piecewise(4, 6),
        a in -3.0..3.0f64, b in -3.0..3.0f64,
    ) {
        let lhs = f.scale(a).add(&g.scale(b)).inner_product(&h);
        let rhs = a * f.inner_product(&h) + b * g.inner_product(&h);
        let scale = (a.abs() * f.norm() + b.abs() * g.norm()) * h.norm();
        prop_assert!(rel(lhs, rhs, scale) < 1e-13);
        let fg = f.inner_product(&g);
        prop_assert!(rel(fg, g.inner_product(&f), f.norm() * g.norm()) < 1e-14);
        prop_assert!(f.norm_squared() >= 0.0);
    }

    #[test]
    fn inner_product_matches_quadrature(f in piecewise(5, 12), g in piecewise(5, 12)) {
        let exact = f.inner_product(&g);
        let oracle = quadrature(&f, &g);
        prop_assert!(rel(exact, oracle, f.norm() * g.norm()) < 1e-10, "{exact} vs {oracle}");
    }

    #[test]
    fn affine_maps_scale_norms(f in piecewise(3, 8), a in -5.0..5.0f64, len in 0.01..20.0f64) {
        let g = f.compose_affine(a, a + len).unwrap();
        prop_assert!(rel(g.norm_squared(), len * f.norm_squared(), len * f.norm_squared()) < 1e-12);
        for (p, q) in f.pieces().iter().zip(g.pieces()) {
            prop_assert_eq!(p.degree(), q.degree());
        }
    }

    #[test]
    fn projection_is_idempotent_with_pythagoras(
        f in piecewise(3, 5),
        fs in prop::collection::vec(piecewise(3, 5), 1..5),
    ) {
        let q = linalg::orthonormalize(&fs, 1e-9);
        let p = linalg::project_orthonormal(&f, &q);
        let pp = linalg::project_orthonormal(&p, &q);
        prop_assert!(p.sub(&pp).norm() <= 1e-10 * f.norm().max(1.0));
        let r = linalg::residual_orthonormal(&f, &q);
        let n2 = f.norm_squared();
        prop_assert!(rel(n2, p.norm_squared() + r.norm_squared(), n2) < 1e-9);
        // every input is reproduced from the orthonormal output
        for g in &fs {
            prop_assert!(linalg::residual_orthonormal(g, &q).norm() <= 1e-8 * g.norm().max(1.0));
        }
    }

    #[test]
    fn tau_multiplication_matches_floats(
        p in -1_000_000i64..=1_000_000, q in -1_000_000i64..=1_000_000,
        r in -1_000_000i64..=1_000_000, s in -1_000_000i64..=1_000_000,
    ) {
        let x = TauNumber::new(p, q);
        let y = TauNumber::new(r, s);
        let prod = x * y;
        prop_assert_eq!(prod, TauNumber::new(p * r + q * s, p * s + q * r + q * s));
        // the float product loses digits to cancellation; compare against the
        // magnitude of the factors instead
        let scale = (p.abs() as f64 + TAU * q.abs() as f64) * (r.abs() as f64 + TAU * s.abs() as f64);
        prop_assert!(rel(prod.to_f64(), x.to_f64() * y.to_f64(), scale.max(1.0)) < 1e-12);
    }

    #[test]
    fn double_refinement_matches_direct_level(k in -1i32..=3, n in 6usize..40) {
        let w = KnotWindow::tau_level(k, n).unwrap();
        let twice = w.refine().unwrap().refine().unwrap();
        let direct = KnotWindow::tau_level_upto(k + 2, w.exact().unwrap()[n - 1]).unwrap();
        prop_assert_eq!(twice.exact().unwrap(), direct.exact().unwrap());
        prop_assert_eq!(twice.level(), Some(k + 2));
    }
}

#[test]
fn lattice_gaps_are_one_or_tau_inverse() {
    let xs = tau_integers_upto(TauNumber::tau_pow(12));
    for pair in xs.windows(2) {
        let gap = pair[1] - pair[0];
        assert!(gap == TauNumber::ONE || gap == TauNumber::new(-1, 1), "{} -> {}", pair[0], pair[1]);
    }
}

#[test]
fn gap_classes_partition_the_positive_lattice() {
    let bound = TauNumber::tau_pow(8);
    let xs = tau_integers_upto(bound);
    let t2 = TauNumber::tau_pow(2);
    let t3 = TauNumber::tau_pow(3);
    let mut counts = [0usize; 3];
    for &a in xs.iter().skip(1) {
        // brute force membership: a - β must be τ²·(τ-integer) or τ³·(τ-integer)
        let member = |beta: TauNumber, step: TauNumber| {
            xs.iter().any(|&b| beta + step * b == a)
        };
        let hits = [member(TauNumber::ONE, t2), member(TauNumber::TAU, t2), member(t2, t3)];
        assert_eq!(hits.iter().filter(|&&h| h).count(), 1, "{a}");
        let idx = hits.iter().position(|&h| h).unwrap();
        let class = [GapClass::LS, GapClass::SL, GapClass::LL][idx];
        assert_eq!(classify(a).unwrap(), class, "{a}");
        counts[idx] += 1;
    }
    assert!(counts.iter().all(|&c| c > 3));
}

fn poly_omega(w: &KnotWindow, n: usize) -> CenteredBasis {
    poly_family::omega_basis(&poly_family::build_family(n).unwrap(), w, true).unwrap()
}

/// `(Φ⁰, Φ¹, Ψ)` for the degree 2 → 5 pair on an irregular window.
fn poly_pair() -> &'static (CenteredBasis, CenteredBasis, CenteredBasis) {
    static PAIR: OnceLock<(CenteredBasis, CenteredBasis, CenteredBasis)> = OnceLock::new();
    PAIR.get_or_init(|| {
        let w = KnotWindow::new(vec![0.0, 0.7, 1.5, 1.9, 3.0, 3.4], Role::Endpoint, Role::Cut).unwrap();
        let phi0 = poly_omega(&w, 2);
        let phi1 = poly_omega(&w, 5);
        let psi = build_wavelets(&build_scaffold(&phi0, &phi1).unwrap());
        (phi0, phi1, psi)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parseval_holds_in_the_fine_space(coeffs in prop::collection::vec(-1.0..1.0f64, 1..200)) {
        let (phi0, phi1, psi) = poly_pair();
        let fns = phi1.functions();
        let refs: Vec<&PiecewisePoly> = fns.iter().collect();
        let c: Vec<f64> = coeffs.iter().copied().cycle().take(fns.len()).collect();
        let f = PiecewisePoly::linear_combination(&c, &refs);
        prop_assume!(f.norm() > 1e-3);
        prop_assert!(parseval_defect(&f, phi0, psi) < 1e-9);
    }
}
