use knotwave::knots::{KnotWindow, Role};
use knotwave::linalg;
use knotwave::mra::{build_scaffold, build_wavelets, check_wavelets, verify_centered, verify_orth_condition};
use knotwave::quad_family::{insert_breakpoints, nesting_hypothesis, omega, ThetaSequence};

fn window(role: Role) -> KnotWindow {
    KnotWindow::new(vec![0.0, 0.8, 1.7, 2.2, 3.5, 4.1, 5.0], role, role).unwrap()
}

#[test]
fn midpoint_refinement_pair() {
    for role in [Role::Endpoint, Role::Cut] {
        let w0 = window(role);
        let w1 = w0.midpoint_refine();
        let (t0, t1) = (ThetaSequence::constant(0.5, &w0), ThetaSequence::constant(0.5, &w1));
        assert!(nesting_hypothesis(&w0, &t0, &w1, &t1).unwrap());
        let phi0 = omega(&w0, &t0, true).unwrap();
        let phi1 = omega(&w1, &t1, true).unwrap();
        assert!(verify_centered(&phi0, 1e-9).passed());
        assert!(verify_orth_condition(&phi1, 1e-9).passed());
        let sc = build_scaffold(&phi0, &phi1).unwrap();
        let psi = build_wavelets(&sc);
        let chk = check_wavelets(&sc, &psi);
        assert!(chk.passed(1e-8), "{role:?}: {chk:?}");
    }
}

#[test]
fn b_point_refinement_with_uneven_theta() {
    let w0 = window(Role::Endpoint);
    let t0 = ThetaSequence(vec![0.3, 0.45, 0.6, 0.25, 0.7, 0.5]);
    let w1 = insert_breakpoints(&w0, &t0).unwrap();
    let t1 = ThetaSequence((0..w1.len() - 1).map(|i| 0.35 + 0.05 * (i % 4) as f64).collect());
    assert!(nesting_hypothesis(&w0, &t0, &w1, &t1).unwrap());
    let phi0 = omega(&w0, &t0, true).unwrap();
    let phi1 = omega(&w1, &t1, true).unwrap();
    let sc = build_scaffold(&phi0, &phi1).unwrap();
    let chk = check_wavelets(&sc, &build_wavelets(&sc));
    assert!(chk.passed(1e-8), "{chk:?}");
}

#[test]
fn unrefined_intervals_need_matching_b() {
    let w0 = window(Role::Endpoint);
    let t0 = ThetaSequence::constant(0.4, &w0);
    // only the first interval is split, at its b point; elsewhere θ carries over
    let mut k = w0.knots().to_vec();
    k.push(0.32);
    k.sort_by(f64::total_cmp);
    let w1 = KnotWindow::new(k, Role::Endpoint, Role::Endpoint).unwrap();
    let t1 = ThetaSequence::constant(0.4, &w1);
    assert!(nesting_hypothesis(&w0, &t0, &w1, &t1).unwrap());
    let phi0 = omega(&w0, &t0, true).unwrap();
    let phi1 = omega(&w1, &t1, true).unwrap();
    assert!(build_scaffold(&phi0, &phi1).is_ok());

    // a different θ on an unsplit interval breaks both the hypothesis and nesting
    let mut t_bad = t1.clone();
    t_bad.0[3] = 0.55;
    assert!(!nesting_hypothesis(&w0, &t0, &w1, &t_bad).unwrap());
    let phi_bad = omega(&w1, &t_bad, true).unwrap();
    assert!(build_scaffold(&phi0, &phi_bad).is_err());
}

#[test]
fn omega_contains_continuous_quadratic_splines() {
    let w = window(Role::Endpoint);
    let t = ThetaSequence::constant(0.37, &w);
    let phi = omega(&w, &t, true).unwrap();
    let s = knotwave::mra::spline_basis(&w, 2).unwrap();
    let q = phi.functions();
    assert!(linalg::span_residual(&s.functions(), &q) < 1e-10);
    // breakpoints only at knots and b points
    let mut allowed = w.knots().to_vec();
    allowed.extend(t.breakpoints(&w));
    for f in &q {
        for x in f.breakpoints() {
            assert!(allowed.iter().any(|a| (a - x).abs() < 1e-12), "stray breakpoint {x}");
        }
    }
}
