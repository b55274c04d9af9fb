//! Oracles for the manifold treatment: the closed-form 3x3 eigensystem
//! against blind numerical diagonalization, frozen Rabi frequencies, and
//! Fourier analysis of exact number-state dynamics against the two-line
//! population formula.

use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;
use rustfft::FftPlanner;

use tcdyn::adiabatic::{
    manifold, manifold_eigensystem, manifold_levels, prob_middle_return, rabi_frequency,
    simplified_frequencies,
};
use tcdyn::dynamics::Propagator;
use tcdyn::hamiltonian::{hamiltonian, ModelParams, Variant};
use tcdyn::special::displacement_matrix;
use tcdyn::state::{JointBasis, JointState};

#[test]
fn closed_forms_match_numerical_diagonalization() {
    for &omega0 in &[0.05, 0.15, 0.25] {
        for &beta in &[0.05, 0.16, 0.2] {
            let params = ModelParams::with_unit_omega(omega0, beta).unwrap();
            for &n in &[0u32, 1, 9, 20] {
                let h = manifold(params, n);
                let (evals, _) = h.eigh(UPLO::Lower).unwrap();
                let levels = manifold_levels(params, n);
                for (i, &e) in evals.iter().enumerate() {
                    assert!(
                        (levels[i] - e).abs() < 1e-12,
                        "omega0 = {omega0}, beta = {beta}, n = {n}, level {i}: \
                         closed {} vs numeric {e}",
                        levels[i]
                    );
                }
                let eigsys = manifold_eigensystem(params, n).unwrap();
                for (i, vec) in eigsys.vectors.iter().enumerate() {
                    // H v = E v for each closed-form eigenpair.
                    for r in 0..3 {
                        let hv: f64 = (0..3).map(|c| h[(r, c)] * vec[c]).sum();
                        assert!(
                            (hv - eigsys.energies[i] * vec[r]).abs() < 1e-12,
                            "eigenvector residual at level {i}, row {r}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn rabi_frequency_pins_reference_values() {
    let params = ModelParams::with_unit_omega(0.15, 0.16).unwrap();
    assert!((rabi_frequency(params, 0) - 0.10471702413180094693).abs() < 1e-15);
    assert!((rabi_frequency(params, 9) - 0.081801152927296586677).abs() < 1e-15);
}

/// Exact survival probability of one well state under the full Hamiltonian.
fn well_survival(params: ModelParams, n: u32, well: i32, ts: &[f64]) -> Vec<f64> {
    let n_max = n as usize + 60;
    let basis = JointBasis::new(2, n_max);
    let osc = displacement_matrix(-(well as f64) * params.beta, basis.fock_dim())
        .column(n as usize)
        .to_owned();
    let label_idx = (1 - well) as usize;
    let state = JointState::product(basis, label_idx, osc.view()).unwrap();
    let h = hamiltonian(Variant::Full, params, 2, n_max);
    let prop = Propagator::new(&h).unwrap();
    prop.evolve_many(&state.psi, ts)
        .iter()
        .map(|psi| {
            let ov: Complex64 =
                state.psi.iter().zip(psi.iter()).map(|(a, b)| a.conj() * b).sum();
            ov.norm_sqr()
        })
        .collect()
}

/// Hann-windowed FFT magnitudes of a real signal with its mean removed.
fn spectrum(signal: &[f64]) -> Vec<f64> {
    let n = signal.len();
    let mean = signal.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex64> = signal
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let w = 0.5 - 0.5 * (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos();
            Complex64::new((v - mean) * w, 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf.iter().take(n / 2).map(|c| c.norm()).collect()
}

/// Quadrature line amplitude around bin `center`: the windowed energy in
/// `center +- 4` bins is leakage-robust, so amplitude ratios survive the
/// Hann window.
fn line_amplitude(spec: &[f64], center: usize) -> f64 {
    let lo = center.saturating_sub(4);
    let hi = (center + 5).min(spec.len());
    spec[lo..hi].iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[test]
fn extremal_survival_carries_two_lines_at_four_to_one() {
    // Very deep simplified regime. The exact level gaps differ by
    // omega beta^2 (the slow line is really a doublet), so the observation
    // window is chosen to keep that dephasing below the 1 percent ratio
    // budget (delta nu * T about 0.27 rad) while still separating the two
    // lines by 16 Fourier bins.
    let params = ModelParams::with_unit_omega(0.15, 0.02).unwrap();
    let n = 9;
    let (nu1, nu2) = simplified_frequencies(params, n);

    let samples = 8192usize;
    let dt = 0.0825;
    let ts: Vec<f64> = (0..samples).map(|i| i as f64 * dt).collect();
    let survival = well_survival(params, n, -1, &ts);
    let spec = spectrum(&survival);

    let total_t = dt * samples as f64;
    let bin_of = |nu: f64| (nu / (2.0 * std::f64::consts::PI) * total_t).round() as usize;
    let b1 = bin_of(nu1);
    let b2 = bin_of(nu2);
    let a1 = line_amplitude(&spec, b1);
    let a2 = line_amplitude(&spec, b2);

    // Amplitude ratio of the two cosines: (1/2) / (1/8) = 4.
    let ratio = a1 / a2;
    assert!(
        (ratio - 4.0).abs() < 0.04,
        "line ratio {ratio} strays from 4 by more than 1 percent"
    );

    // No third line: outside the two line windows (and DC leakage), nothing
    // rises above a few percent of the weaker line.
    let peak2 = spec[b2];
    for (i, &v) in spec.iter().enumerate() {
        let near = |c: usize| (i as isize - c as isize).unsigned_abs() <= 8;
        if i < 8 || near(b1) || near(b2) {
            continue;
        }
        assert!(
            v < 0.05 * peak2,
            "unexpected spectral content at bin {i}: {v} vs line2 {peak2}"
        );
    }
}

#[test]
fn middle_well_line_sits_at_half_the_quoted_rate() {
    // The quoted closed form for the middle well oscillates at
    // 4 sqrt(2) Omega_N omega. Direct diagonalization of the same manifold
    // block puts the line at 2 sqrt(2) Omega_N omega. The closed form is
    // kept in its quoted shape; this test records the factor of two so the
    // discrepancy stays visible instead of silently corrected.
    let params = ModelParams::with_unit_omega(0.15, 0.05).unwrap();
    let n = 9;
    let (nu1, _) = simplified_frequencies(params, n);

    let samples = 16384usize;
    let dt = 0.6;
    let ts: Vec<f64> = (0..samples).map(|i| i as f64 * dt).collect();
    let survival = well_survival(params, n, 0, &ts);
    let spec = spectrum(&survival);

    let peak_bin = spec
        .iter()
        .enumerate()
        .skip(16)
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0;
    let total_t = dt * samples as f64;
    let nu_peak = 2.0 * std::f64::consts::PI * peak_bin as f64 / total_t;

    // Exact line: 2 nu1 (i.e. 2 sqrt(2) Omega omega).
    assert!(
        (nu_peak - 2.0 * nu1).abs() < 0.005,
        "dominant middle-well line at {nu_peak}, expected {}",
        2.0 * nu1
    );
    // Quoted form: twice that rate, verified as implemented.
    let t = 0.37;
    let quoted = 0.5 + 0.5 * (4.0 * nu1 * t).cos();
    assert!((prob_middle_return(params, n, t) - quoted).abs() < 1e-15);
    assert!((nu_peak - 4.0 * nu1).abs() > 0.1, "the quoted rate is twice the exact line");
}
