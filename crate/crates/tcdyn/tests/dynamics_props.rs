//! Structural properties of the exact propagator: unitarity, Hermiticity,
//! the closed-form degenerate-limit oscillator motion, Ehrenfest consistency
//! of the spin observables, and the rotating-wave excitation number.

use num_complex::Complex64;

use tcdyn::dynamics::{ehrenfest_residuals, observables, Propagator};
use tcdyn::hamiltonian::{hamiltonian, ModelParams, Variant};
use tcdyn::state::{coherent_amplitudes, displaced_coherent, JointBasis, JointState};

#[test]
fn evolution_is_unitary_to_machine_precision() {
    let params = ModelParams::with_unit_omega(0.15, 0.16).unwrap();
    let basis = JointBasis::new(2, 60);
    let h = hamiltonian(Variant::Full, params, basis.two_j, basis.n_max);
    let prop = Propagator::new(&h).unwrap();
    let osc = displaced_coherent(2.0, params.beta, basis.n_max);
    let state = JointState::product(basis, 2, osc.view()).unwrap();
    for &t in &[0.1, 1.0, 10.0, 100.0, 1000.0, 12345.0] {
        let psi = prop.evolve(&state.psi, t);
        let norm: f64 = psi.iter().map(|v| v.norm_sqr()).sum();
        assert!((norm - 1.0).abs() <= 1e-10, "norm drift {} at t = {t}", norm - 1.0);
    }
}

#[test]
fn hamiltonians_are_hermitian() {
    for &(omega0, beta) in &[(0.15, 0.16), (0.25, 0.2), (0.0, 0.1), (1.0, 0.05)] {
        let params = ModelParams::with_unit_omega(omega0, beta).unwrap();
        for &variant in &[Variant::Full, Variant::Rwa, Variant::Degenerate] {
            for &two_j in &[1u32, 2, 3] {
                let h = hamiltonian(variant, params, two_j, 25);
                let dim = h.nrows();
                let mut worst = 0.0f64;
                for r in 0..dim {
                    for c in 0..dim {
                        worst = worst.max((h[(r, c)] - h[(c, r)]).abs());
                    }
                }
                assert!(
                    worst <= 1e-12,
                    "asymmetry {worst} for {variant:?}, two_j = {two_j}"
                );
            }
        }
    }
}

/// `<a>` of a joint state, from the observable record.
fn mean_a(state: &JointState) -> Complex64 {
    let obs = observables(state, 0.0);
    Complex64::new(obs.a_re, obs.a_im)
}

#[test]
fn degenerate_limit_follows_the_displaced_rotation() {
    // With omega0 = 0 each Sx label m evolves under a displaced oscillator,
    // so <a(t)> = e^{-i omega t}(alpha + m beta) - m beta and the label
    // populations freeze.
    let params = ModelParams::with_unit_omega(0.0, 0.16).unwrap();
    let basis = JointBasis::new(2, 45);
    let h = hamiltonian(Variant::Full, params, basis.two_j, basis.n_max);
    let prop = Propagator::new(&h).unwrap();

    let alpha = 1.2;
    let osc = coherent_amplitudes(alpha, basis.n_max);
    for (label_idx, m) in [(0usize, 1.0f64), (2, -1.0)] {
        let state = JointState::product(basis, label_idx, osc.view()).unwrap();
        let p0 = state.label_populations();
        for &t in &[0.3, 1.7, 6.0, 25.0] {
            let psi = prop.evolve(&state.psi, t);
            let evolved = JointState { basis, psi };
            let want = Complex64::new(0.0, -params.omega * t).exp()
                * Complex64::new(alpha + m * params.beta, 0.0)
                - Complex64::new(m * params.beta, 0.0);
            let got = mean_a(&evolved);
            assert!(
                (got - want).norm() <= 1e-8,
                "m = {m}, t = {t}: <a> = {got} vs closed form {want}"
            );
            let pt = evolved.label_populations();
            for (a, b) in p0.iter().zip(&pt) {
                assert!((a - b).abs() <= 1e-12, "label populations must freeze");
            }
        }
    }
}

#[test]
fn ehrenfest_relations_close_on_the_spin_sector() {
    let params = ModelParams::with_unit_omega(0.15, 0.16).unwrap();
    let basis = JointBasis::new(2, 60);
    let h = hamiltonian(Variant::Full, params, basis.two_j, basis.n_max);
    let prop = Propagator::new(&h).unwrap();
    let osc = displaced_coherent(2.0, params.beta, basis.n_max);
    let state = JointState::product(basis, 2, osc.view()).unwrap();

    let dt = 0.005;
    let ts: Vec<f64> = (0..2001).map(|i| i as f64 * dt).collect();
    let series: Vec<_> = prop
        .evolve_many(&state.psi, &ts)
        .into_iter()
        .zip(&ts)
        .map(|(psi, &t)| observables(&JointState { basis, psi }, t))
        .collect();
    let residuals = ehrenfest_residuals(&series, params);
    let worst = residuals
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(worst <= 1e-4, "worst Ehrenfest residual {worst}");
}

#[test]
fn rotating_wave_variant_conserves_excitation_number() {
    let params = ModelParams::with_unit_omega(0.95, 0.05).unwrap();
    let basis = JointBasis::new(2, 40);
    let h = hamiltonian(Variant::Rwa, params, basis.two_j, basis.n_max);
    let prop = Propagator::new(&h).unwrap();
    let osc = coherent_amplitudes(1.5, basis.n_max);
    let state = JointState::product(basis, 2, osc.view()).unwrap();
    let obs0 = observables(&state, 0.0);
    let sum0 = obs0.sz + obs0.n;
    for &t in &[0.7, 5.0, 50.0, 400.0] {
        let psi = prop.evolve(&state.psi, t);
        let obs = observables(&JointState { basis, psi }, t);
        assert!(
            (obs.sz + obs.n - sum0).abs() <= 1e-10,
            "Sz + n drifts by {} at t = {t}",
            obs.sz + obs.n - sum0
        );
    }
}
