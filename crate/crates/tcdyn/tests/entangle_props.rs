//! Concurrence properties: Wootters vs the X-matrix shortcut, and the
//! collapse and revival of two-qubit entanglement with a coherent field.

use ndarray::Array2;
use num_complex::Complex64;
use tcdyn::dynamics::Propagator;
use tcdyn::entangle::{
    bell_coherent_initial, concurrence, concurrence_x, reduce_to_qubits, ConcurrenceAnalytic,
};
use tcdyn::error::TcdynError;
use tcdyn::hamiltonian::{hamiltonian, ModelParams, Variant};
use tcdyn::revival::RevivalParams;
use tcdyn::state::{default_n_max, JointState};

fn fig_model() -> (ModelParams, f64) {
    (ModelParams::with_unit_omega(0.15, 0.16).unwrap(), 3.0)
}

fn fig_revival() -> RevivalParams {
    RevivalParams { alpha: 3.0, beta: 0.16, omega0: 0.15 }
}

/// Physical time at scaled time `tau`.
fn t_of_tau(rp: &RevivalParams, tau: f64) -> f64 {
    tau / (rp.omega0 * (-rp.x() / 2.0).exp())
}

fn x_state(theta: f64, phi: f64, outer: bool) -> Array2<Complex64> {
    // outer: support on (ee, gg); otherwise on (eg, ge).
    let (i, j) = if outer { (0, 3) } else { (1, 2) };
    let a = Complex64::new(theta.cos(), 0.0);
    let b = Complex64::from_polar(theta.sin(), phi);
    let mut rho = Array2::zeros((4, 4));
    rho[(i, i)] = a * a.conj();
    rho[(i, j)] = a * b.conj();
    rho[(j, i)] = b * a.conj();
    rho[(j, j)] = b * b.conj();
    rho
}

#[test]
fn x_shortcut_matches_wootters_on_x_states() {
    let angles = [0.2, 0.7, 1.2];
    let phases = [0.0, 1.1, 2.9];
    let mixes = [(1.0, 0.0), (0.0, 1.0), (0.5, 0.3), (0.3, 0.3), (0.6, 0.4)];
    let eye = Array2::from_diag(&ndarray::Array1::from(vec![Complex64::new(0.25, 0.0); 4]));
    for &theta in &angles {
        for &phi in &phases {
            for &chi in &angles {
                for &xi in &phases {
                    for &(p1, p2) in &mixes {
                        let rho = x_state(theta, phi, true).mapv(|v| p1 * v)
                            + x_state(chi, xi, false).mapv(|v| p2 * v)
                            + eye.mapv(|v| (1.0 - p1 - p2) * v);
                        let cw = concurrence(&rho).unwrap();
                        let cx = concurrence_x(&rho, 1e-12).unwrap();
                        assert!(
                            (cw - cx).abs() <= 1e-8,
                            "theta = {theta}, phi = {phi}, chi = {chi}, xi = {xi}, \
                             p = ({p1}, {p2}): wootters = {cw}, shortcut = {cx}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn bell_pair_with_coherent_field_collapses_and_revives() {
    let (params, alpha) = fig_model();
    let rp = fig_revival();
    let n_max = default_n_max(alpha);
    let h = hamiltonian(Variant::Full, params, 2, n_max);
    let prop = Propagator::new(&h).unwrap();
    let psi0 = bell_coherent_initial(alpha, n_max).unwrap();
    psi0.check_truncation(1e-10).unwrap();

    let tau1 = rp.tau_k(1);
    let analytic = ConcurrenceAnalytic::new(rp.clone(), tau1).unwrap();

    let exact_c = |tau: f64| -> f64 {
        let psi = prop.evolve(&psi0.psi, t_of_tau(&rp, tau));
        let state = JointState { basis: psi0.basis.clone(), psi };
        let rho = reduce_to_qubits(&state).unwrap();
        let trace: Complex64 = (0..4).map(|i| rho[(i, i)]).sum();
        assert!((trace.re - 1.0).abs() <= 1e-9 && trace.im.abs() <= 1e-12);
        let herm = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| (rho[(i, j)] - rho[(j, i)].conj()).norm())
            .fold(0.0f64, f64::max);
        assert!(herm <= 1e-12, "hermiticity defect {herm}");
        concurrence(&rho).unwrap()
    };

    // Maximally entangled start, by both routes.
    assert!((exact_c(0.0) - 1.0).abs() <= 1e-9);
    assert!((analytic.eval_tau(0.0) - 1.0).abs() <= 1e-9);

    // Dead plateau between collapse and revival.
    for &tau in &[tau1 / 8.0, tau1 / 4.0] {
        let c = exact_c(tau);
        assert!(c <= 0.01, "tau = {tau}: concurrence {c} above collapse budget");
        assert!(analytic.eval_tau(tau) <= 0.01);
    }

    // Entanglement revival at half the population-revival time.
    let c_rev = exact_c(tau1 / 2.0);
    assert!((0.75..=0.95).contains(&c_rev), "revival concurrence {c_rev}");
    let gap = (analytic.eval_tau(tau1 / 2.0) - c_rev).abs();
    assert!(gap <= 0.15, "analytic-exact revival gap {gap}");
}

#[test]
fn exact_reduced_state_is_not_x_but_projection_agrees() {
    // The exact reduced matrix carries coherences outside the X pattern:
    // the two extremal wells sit beta^2 below the middle one, and the
    // resulting carrier-phase drift populates the (ee, eg) block. The X
    // shortcut therefore applies only after projection, where it must agree
    // with Wootters to numerical precision.
    let (params, alpha) = fig_model();
    let rp = fig_revival();
    let n_max = default_n_max(alpha);
    let h = hamiltonian(Variant::Full, params, 2, n_max);
    let prop = Propagator::new(&h).unwrap();
    let psi0 = bell_coherent_initial(alpha, n_max).unwrap();

    let psi = prop.evolve(&psi0.psi, t_of_tau(&rp, rp.tau_k(1) / 2.0));
    let state = JointState { basis: psi0.basis.clone(), psi };
    let rho = reduce_to_qubits(&state).unwrap();

    match concurrence_x(&rho, 1e-3) {
        Err(TcdynError::NotXShaped(w)) => assert!(w >= 0.05, "off-pattern weight {w}"),
        other => panic!("expected NotXShaped, got {other:?}"),
    }

    let off = [(0, 1), (0, 2), (1, 3), (2, 3)];
    let mut rho_x = rho.clone();
    for &(i, j) in &off {
        rho_x[(i, j)] = Complex64::new(0.0, 0.0);
        rho_x[(j, i)] = Complex64::new(0.0, 0.0);
    }
    let cw = concurrence(&rho_x).unwrap();
    let cx = concurrence_x(&rho_x, 1e-12).unwrap();
    assert!((cw - cx).abs() <= 1e-8, "wootters = {cw}, shortcut = {cx}");
}

#[test]
fn analytic_concurrence_peaks_on_schedule() {
    let rp = fig_revival();
    let tau1 = rp.tau_k(1);
    let ca = ConcurrenceAnalytic::new(rp.clone(), tau1).unwrap();

    assert!(ca.eval_tau(0.0) >= 0.9999);
    assert!(ca.eval_tau(tau1 / 4.0) <= 1e-6);

    // The first revival sits at tau_1 / 2 with the k = 1 packet height.
    let mut best = (0.0f64, 0.0f64);
    for i in 0..=2000 {
        let tau = tau1 / 2.0 * (0.9 + 0.2 * f64::from(i) / 2000.0);
        let c = ca.eval_tau(tau);
        if c > best.1 {
            best = (tau, c);
        }
    }
    assert!(
        (best.0 - tau1 / 2.0).abs() <= 0.005 * (tau1 / 2.0),
        "peak at {} instead of {}",
        best.0,
        tau1 / 2.0
    );
    assert!((best.1 - rp.height(1)).abs() <= 1e-6, "peak height {}", best.1);

    // eval_t runs through the same scaled-time mapping.
    let t_rev = t_of_tau(&rp, tau1 / 2.0);
    assert!((ca.eval_t(t_rev) - ca.eval_tau(tau1 / 2.0)).abs() <= 1e-12);

    // The interference-free envelope bounds the signal near revivals.
    for i in 0..=200 {
        let tau = tau1 * 0.6 * f64::from(i) / 200.0;
        assert!(ca.eval_tau(tau) <= ca.envelope_tau(tau) + 1e-9);
    }
}
