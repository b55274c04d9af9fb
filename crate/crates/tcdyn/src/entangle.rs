//! Qubit-qubit entanglement for the two-qubit model.
//!
//! The exact route evolves the joint triplet-sector state, reduces to the
//! two-qubit density matrix in the sigma-z product basis, and evaluates the
//! Wootters concurrence. The analytic route uses the revival-packet sum:
//! the reduced state is an X matrix whose single coherence is
//! `sum_k S_bar_k(t, 2 omega0) / 2`, giving
//! `C(t) = |sum_k S_bar_k(t, 2 omega0)|` with packets evaluated at doubled
//! scaled time.

use ndarray::{array, Array2};
use ndarray_linalg::Eig;
use num_complex::Complex64;

use crate::error::{Result, TcdynError};
use crate::revival::{RevivalParams, SAnalytic};
use crate::state::{coherent_amplitudes, JointBasis, JointState};

/// `(|1,1> + |1,-1>)/sqrt(2) (x) |alpha>` on the triplet sector, the
/// sigma-x Bell pair `(|++> + |-->)/sqrt(2)` with an undisplaced coherent
/// oscillator.
pub fn bell_coherent_initial(alpha: f64, n_max: usize) -> Result<JointState> {
    let basis = JointBasis::new(2, n_max);
    let w = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let osc = coherent_amplitudes(alpha, n_max);
    JointState::spin_superposition(basis, &[w, zero, w], osc.view())
}

/// Reduced two-qubit density matrix in the sigma-z product basis
/// (|ee>, |eg>, |ge>, |gg>) from a triplet-sector joint state.
///
/// The triplet labels embed into the sigma-x product basis
/// (`|1,0> -> (|+-> + |-+>)/sqrt(2)`, the antisymmetric singlet carries no
/// amplitude), then a Hadamard on each qubit rotates to the z basis, and the
/// oscillator is traced out.
pub fn reduce_to_qubits(state: &JointState) -> Result<Array2<Complex64>> {
    if state.basis.two_j != 2 {
        return Err(TcdynError::InvalidParams(
            "two-qubit reduction requires the triplet sector (two_j = 2)".into(),
        ));
    }
    let fdim = state.basis.fock_dim();
    let s = 1.0 / 2f64.sqrt();

    // Rows: x-product basis (++, +-, -+, --); columns: triplet labels.
    let embed: Array2<f64> = array![
        [1.0, 0.0, 0.0],
        [0.0, s, 0.0],
        [0.0, s, 0.0],
        [0.0, 0.0, 1.0],
    ];
    // Hadamard (x) Hadamard maps x-product amplitudes to z-product ones.
    let h: Array2<f64> = 0.5
        * array![
            [1.0, 1.0, 1.0, 1.0],
            [1.0, -1.0, 1.0, -1.0],
            [1.0, 1.0, -1.0, -1.0],
            [1.0, -1.0, -1.0, 1.0],
        ];
    let map = h.dot(&embed); // 4 x 3, real

    let mut rho = Array2::zeros((4, 4));
    for n in 0..fdim {
        let mut vec_z = [Complex64::new(0.0, 0.0); 4];
        for (a, row) in map.outer_iter().enumerate() {
            for l in 0..3 {
                vec_z[a] += row[l] * state.psi[state.basis.index(l, n)];
            }
        }
        for a in 0..4 {
            for b in 0..4 {
                rho[(a, b)] += vec_z[a] * vec_z[b].conj();
            }
        }
    }
    Ok(rho)
}

/// Wootters concurrence of an arbitrary two-qubit density matrix:
/// eigenvalues of `rho (sy (x) sy) rho* (sy (x) sy)` give the spin-flip
/// singular values `lambda_i`; `C = max(0, l1 - l2 - l3 - l4)`.
pub fn concurrence(rho: &Array2<Complex64>) -> Result<f64> {
    if rho.shape() != [4, 4] {
        return Err(TcdynError::InvalidParams("concurrence needs a 4x4 density matrix".into()));
    }
    // sigma_y (x) sigma_y is real with an anti-diagonal sign pattern.
    let syy: Array2<f64> = array![
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ];
    let syy = syy.mapv(|v| Complex64::new(v, 0.0));
    let rho_tilde = syy.dot(&rho.mapv(|v| v.conj())).dot(&syy);
    let r = rho.dot(&rho_tilde);
    let (eigs, _) = r.eig()?;
    let mut lambdas: Vec<f64> = eigs.iter().map(|e| e.re.max(0.0).sqrt()).collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Concurrence by the X-matrix shortcut
/// `C = 2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44))`.
///
/// Errs with [`TcdynError::NotXShaped`] when any entry outside the X pattern
/// exceeds `tol` in magnitude.
pub fn concurrence_x(rho: &Array2<Complex64>, tol: f64) -> Result<f64> {
    if rho.shape() != [4, 4] {
        return Err(TcdynError::InvalidParams("concurrence needs a 4x4 density matrix".into()));
    }
    let off_pattern = [(0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (3, 1), (2, 3), (3, 2)];
    let worst = off_pattern.iter().map(|&(i, j)| rho[(i, j)].norm()).fold(0.0f64, f64::max);
    if worst > tol {
        return Err(TcdynError::NotXShaped(worst));
    }
    let c1 = rho[(0, 3)].norm() - (rho[(1, 1)].re * rho[(2, 2)].re).max(0.0).sqrt();
    let c2 = rho[(1, 2)].norm() - (rho[(0, 0)].re * rho[(3, 3)].re).max(0.0).sqrt();
    Ok((2.0 * c1.max(c2)).max(0.0))
}

/// Analytic concurrence `C(t) = |sum_k S_bar_k(t, 2 omega0)|`; the packets
/// run at doubled scaled time, so revivals sit at `tau_k / 2`.
#[derive(Debug, Clone)]
pub struct ConcurrenceAnalytic {
    sum: SAnalytic,
}

impl ConcurrenceAnalytic {
    /// `tau_horizon` is the horizon in the ordinary (`omega0`) scaled time.
    pub fn new(params: RevivalParams, tau_horizon: f64) -> Result<Self> {
        Ok(Self { sum: SAnalytic::new(params, 2.0 * tau_horizon)? })
    }

    pub fn params(&self) -> &RevivalParams {
        &self.sum.params
    }

    /// Concurrence at scaled time `tau`.
    pub fn eval_tau(&self, tau: f64) -> f64 {
        self.sum.eval_complex(2.0 * tau).norm().min(1.0)
    }

    /// Concurrence at physical time `t`.
    pub fn eval_t(&self, t: f64) -> f64 {
        self.eval_tau(self.sum.params.tau(t))
    }

    /// Interference-free envelope
    /// `sum_k h_k exp(-(2 tau - tau_k)^2 alpha^2 x^2 / (2 (1 + (pi k f)^2)))`.
    pub fn envelope_tau(&self, tau: f64) -> f64 {
        let p = &self.sum.params;
        let a2x2 = (p.alpha * p.alpha) * p.x() * p.x();
        (0..=self.sum.k_max)
            .map(|k| {
                let pkf2 = (std::f64::consts::PI * f64::from(k) * p.f()).powi(2);
                p.height(k) * (-(2.0 * tau - p.tau_k(k)).powi(2) * a2x2 / (2.0 * (1.0 + pkf2))).exp()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bell_state_is_maximally_entangled_at_t0() {
        let state = bell_coherent_initial(3.0, 60).unwrap();
        state.check_truncation(1e-10).unwrap();
        let rho = reduce_to_qubits(&state).unwrap();
        let c = concurrence(&rho).unwrap();
        assert_abs_diff_eq!(c, 1.0, epsilon = 1e-10);
        let cx = concurrence_x(&rho, 1e-8).unwrap();
        assert_abs_diff_eq!(cx, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn separable_product_state_has_zero_concurrence() {
        // |1,-1> (x) |alpha>: the two qubits are in a product state |-->.
        let basis = JointBasis::new(2, 40);
        let osc = coherent_amplitudes(2.0, 40);
        let state = JointState::product(basis, 2, osc.view()).unwrap();
        let rho = reduce_to_qubits(&state).unwrap();
        let c = concurrence(&rho).unwrap();
        assert!(c < 1e-10, "got {c}");
    }

    #[test]
    fn x_check_rejects_off_pattern_matrices() {
        let mut rho = Array2::from_diag(&ndarray::Array1::from(vec![
            Complex64::new(0.25, 0.0);
            4
        ]));
        rho[(0, 1)] = Complex64::new(0.1, 0.0);
        rho[(1, 0)] = Complex64::new(0.1, 0.0);
        match concurrence_x(&rho, 1e-8) {
            Err(TcdynError::NotXShaped(w)) => assert_abs_diff_eq!(w, 0.1, epsilon = 1e-15),
            other => panic!("expected NotXShaped, got {other:?}"),
        }
    }
}
