use knotwave::coeff::{assemble_m, calculus_report};
use knotwave::knots::{KnotWindow, Role};
use knotwave::mra::{build_scaffold, build_wavelets, CenteredBasis, WaveletScaffold};
use knotwave::poly_family::{build_family, omega_basis};
use knotwave::quad_family::{omega, ThetaSequence};

fn poly_pair(w: &KnotWindow) -> (CenteredBasis, CenteredBasis) {
    (omega_basis(&build_family(2).unwrap(), w, true).unwrap(), omega_basis(&build_family(5).unwrap(), w, true).unwrap())
}

fn quad_pair(w: &KnotWindow) -> (CenteredBasis, CenteredBasis) {
    let w1 = w.midpoint_refine();
    (
        omega(w, &ThetaSequence::constant(0.5, w), true).unwrap(),
        omega(&w1, &ThetaSequence::constant(0.5, &w1), true).unwrap(),
    )
}

fn setup(pair: (CenteredBasis, CenteredBasis)) -> (WaveletScaffold, CenteredBasis) {
    let sc = build_scaffold(&pair.0, &pair.1).unwrap();
    let psi = build_wavelets(&sc);
    (sc, psi)
}

fn check_all(sc: &WaveletScaffold, psi: &CenteredBasis) {
    let r = calculus_report(sc, psi, 8).unwrap();
    assert!(r.count_mismatches.is_empty(), "{:?}", r.count_mismatches);
    assert!(r.sparsity < 1e-10, "{r:?}");
    assert!(r.scaling_residual < 1e-9, "{r:?}");
    assert!(r.bar_row_orthonormality < 1e-9, "{r:?}");
    assert!(r.alpha_plus_span < 1e-8 && r.ghat_span < 1e-8 && r.gtilde_span < 1e-8, "{r:?}");
    assert!(r.completion_span < 1e-8, "{r:?}");
    assert!(r.m_orthogonality < 1e-8 && r.m_direct < 1e-10, "{r:?}");
    let n = sc.coarse.groups.len();
    assert_eq!(r.m_windows, (3..=8.min(n)).map(|l| n - l + 1).sum::<usize>());
}

#[test]
fn poly_blocks_and_m() {
    for role in [Role::Endpoint, Role::Cut] {
        let w = KnotWindow::new(vec![0.0, 0.7, 2.0, 2.4, 3.9, 5.0, 5.5, 7.0], role, role).unwrap();
        let (sc, psi) = setup(poly_pair(&w));
        check_all(&sc, &psi);
    }
}

#[test]
fn quad_blocks_and_m() {
    let w = KnotWindow::new(vec![0.0, 1.0, 1.6, 3.0, 3.3, 4.5, 6.0, 6.4], Role::Endpoint, Role::Endpoint).unwrap();
    let (sc, psi) = setup(quad_pair(&w));
    check_all(&sc, &psi);
}

#[test]
fn m_needs_three_knots() {
    let w = KnotWindow::new(vec![0.0, 1.0, 2.0, 3.0], Role::Endpoint, Role::Endpoint).unwrap();
    let (sc, psi) = setup(quad_pair(&w));
    assert!(assemble_m(&sc.coarse, &sc.fine, &psi, 1, 2).is_err());
}
