//! Joint qubit-oscillator states on the truncated Fock space.

use ndarray::{Array1, ArrayView1};
use num_complex::Complex64;

use crate::error::{Result, TcdynError};
use crate::special::displacement_matrix;
use crate::spin;

/// Index bookkeeping for the joint space `spin sector (2j+1) x Fock (n_max+1)`.
/// Joint index is `label_index * (n_max + 1) + n`, spin labels ordered by
/// descending `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JointBasis {
    pub two_j: u32,
    pub n_max: usize,
}

impl JointBasis {
    pub fn new(two_j: u32, n_max: usize) -> Self {
        Self { two_j, n_max }
    }

    pub fn spin_dim(&self) -> usize {
        spin::sector_dim(self.two_j)
    }

    pub fn fock_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        self.spin_dim() * self.fock_dim()
    }

    pub fn index(&self, label_idx: usize, n: usize) -> usize {
        debug_assert!(label_idx < self.spin_dim() && n < self.fock_dim());
        label_idx * self.fock_dim() + n
    }

    /// Spin label index of the state `|j, m>`; `two_m` is the doubled m.
    pub fn label_of_two_m(&self, two_m: i32) -> usize {
        let idx = (i64::from(self.two_j) - i64::from(two_m)) / 2;
        debug_assert!(idx >= 0 && (idx as usize) < self.spin_dim());
        idx as usize
    }
}

/// Fock-space amplitude heuristic: levels needed to hold coherent states of
/// amplitude `alpha` through displacements and revivals with norm deficit
/// far below observable tolerances.
pub fn default_n_max(alpha: f64) -> usize {
    let a = alpha.abs();
    (a * a + 10.0 * a + 20.0).ceil() as usize
}

/// Amplitudes of the coherent state `|alpha>` (real `alpha`) on a truncated
/// Fock space: `c_n = e^{-alpha^2/2} alpha^n / sqrt(n!)`.
pub fn coherent_amplitudes(alpha: f64, n_max: usize) -> Array1<f64> {
    let mut c = Array1::zeros(n_max + 1);
    // Recurrence c_{n+1} = c_n * alpha / sqrt(n+1) avoids factorial overflow.
    c[0] = (-0.5 * alpha * alpha).exp();
    for n in 0..n_max {
        c[n + 1] = c[n] * alpha / ((n as f64 + 1.0).sqrt());
    }
    c
}

/// Amplitudes of the displaced coherent state `D(d)|alpha>`.
///
/// For real `alpha` and `d` this is exactly the coherent state `|alpha + d>`
/// (the Weyl phase vanishes), so in particular `<a> = alpha + d`. The state
/// is prepared through the truncated displacement matrix so that it stays
/// consistent with operator truncation.
pub fn displaced_coherent(alpha: f64, d: f64, n_max: usize) -> Array1<f64> {
    if d == 0.0 {
        return coherent_amplitudes(alpha, n_max);
    }
    let dmat = displacement_matrix(d, n_max + 1);
    dmat.dot(&coherent_amplitudes(alpha, n_max))
}

/// Pure state on a [`JointBasis`].
#[derive(Debug, Clone)]
pub struct JointState {
    pub basis: JointBasis,
    pub psi: Array1<Complex64>,
}

impl JointState {
    /// Product state `|label> (x) |osc>` from real oscillator amplitudes.
    pub fn product(basis: JointBasis, label_idx: usize, osc: ArrayView1<f64>) -> Result<Self> {
        if label_idx >= basis.spin_dim() {
            return Err(TcdynError::InvalidParams(format!(
                "label index {label_idx} outside spin sector of dimension {}",
                basis.spin_dim()
            )));
        }
        if osc.len() != basis.fock_dim() {
            return Err(TcdynError::InvalidParams(format!(
                "oscillator amplitude length {} does not match fock dimension {}",
                osc.len(),
                basis.fock_dim()
            )));
        }
        let mut psi = Array1::zeros(basis.dim());
        for n in 0..basis.fock_dim() {
            psi[basis.index(label_idx, n)] = Complex64::new(osc[n], 0.0);
        }
        Ok(Self { basis, psi })
    }

    /// Superposition over spin labels, each with the same real oscillator
    /// amplitudes; `weights[label_idx]` multiplies the product component.
    pub fn spin_superposition(
        basis: JointBasis,
        weights: &[Complex64],
        osc: ArrayView1<f64>,
    ) -> Result<Self> {
        if weights.len() != basis.spin_dim() {
            return Err(TcdynError::InvalidParams(
                "weight vector length must equal spin dimension".into(),
            ));
        }
        if osc.len() != basis.fock_dim() {
            return Err(TcdynError::InvalidParams(
                "oscillator amplitude length must equal fock dimension".into(),
            ));
        }
        let mut psi = Array1::zeros(basis.dim());
        for (label_idx, w) in weights.iter().enumerate() {
            if w.norm_sqr() == 0.0 {
                continue;
            }
            for n in 0..basis.fock_dim() {
                psi[basis.index(label_idx, n)] = w * osc[n];
            }
        }
        Ok(Self { basis, psi })
    }

    pub fn norm(&self) -> f64 {
        self.psi.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// How much probability the truncation lost: `1 - |psi|^2`.
    pub fn norm_deficit(&self) -> f64 {
        1.0 - self.psi.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }

    /// Errors out when the truncated basis failed to hold the state.
    pub fn check_truncation(&self, tol: f64) -> Result<()> {
        let deficit = self.norm_deficit();
        if deficit.abs() > tol {
            return Err(TcdynError::Truncation { deficit, n_max: self.basis.n_max });
        }
        Ok(())
    }

    /// Population of one spin label: `sum_n |psi(label, n)|^2`.
    pub fn label_population(&self, label_idx: usize) -> f64 {
        (0..self.basis.fock_dim())
            .map(|n| self.psi[self.basis.index(label_idx, n)].norm_sqr())
            .sum()
    }

    /// Populations of all spin labels, ordered by descending m.
    pub fn label_populations(&self) -> Vec<f64> {
        (0..self.basis.spin_dim()).map(|l| self.label_population(l)).collect()
    }
}
