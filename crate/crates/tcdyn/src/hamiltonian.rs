//! Joint qubit-oscillator Hamiltonians on a truncated Fock space.
//!
//! The model is a collective-spin Tavis-Cummings Hamiltonian kept beyond
//! the rotating-wave approximation (hbar = 1 throughout):
//!
//! `H = omega0 Sz + omega a^dag a + omega beta (a + a^dag) Sx`.
//!
//! In the Sx eigenbasis every variant below is a real symmetric matrix, so
//! exact evolution reduces to one real symmetric eigendecomposition.

use ndarray::{linalg::kron, Array2};

use crate::error::{Result, TcdynError};
use crate::spin;

/// Model parameters in units of the oscillator quantum (`hbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Oscillator angular frequency `omega` (energy scale; usually 1).
    pub omega: f64,
    /// Qubit splitting `omega0`.
    pub omega0: f64,
    /// Dimensionless coupling `beta`.
    pub beta: f64,
}

impl ModelParams {
    pub fn new(omega: f64, omega0: f64, beta: f64) -> Result<Self> {
        if !(omega.is_finite() && omega0.is_finite() && beta.is_finite()) {
            return Err(TcdynError::InvalidParams("non-finite model parameter".into()));
        }
        if omega <= 0.0 {
            return Err(TcdynError::InvalidParams(format!("omega must be positive, got {omega}")));
        }
        Ok(Self { omega, omega0, beta })
    }

    /// Convenience constructor with `omega = 1`.
    pub fn with_unit_omega(omega0: f64, beta: f64) -> Result<Self> {
        Self::new(1.0, omega0, beta)
    }
}

/// Which interaction terms the Hamiltonian keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Full coupling `omega beta (a + a^dag) Sx`; no rotating-wave dropping.
    Full,
    /// Rotating-wave approximation: keeps `(omega beta / 2)(a S+ + a^dag S-)`
    /// with the ladder operators `S+- = Sx +- i Sy` of the Sz eigenbasis.
    /// Conserves `Sz + a^dag a`.
    Rwa,
    /// Degenerate qubits: `omega0` forced to zero, full coupling retained.
    Degenerate,
}

/// Annihilation operator on a `dim`-level Fock space.
pub fn annihilation(dim: usize) -> Array2<f64> {
    let mut a = Array2::zeros((dim, dim));
    for n in 1..dim {
        a[(n - 1, n)] = (n as f64).sqrt();
    }
    a
}

/// Number operator `a^dag a`.
pub fn number_op(dim: usize) -> Array2<f64> {
    Array2::from_diag(&ndarray::Array1::from_iter((0..dim).map(|n| n as f64)))
}

/// Quadrature `a + a^dag`.
pub fn quadrature(dim: usize) -> Array2<f64> {
    let a = annihilation(dim);
    &a + &a.t()
}

/// Joint Hamiltonian on the spin sector `two_j` tensored with a Fock space
/// truncated at `n_max` (dimension `n_max + 1`). Joint index convention is
/// `label_index * (n_max + 1) + n` with spin labels ordered by descending m.
///
/// The result is real symmetric for every variant: in the Sx eigenbasis the
/// ladder operators `S+-` have real entries.
pub fn hamiltonian(
    variant: Variant,
    params: ModelParams,
    two_j: u32,
    n_max: usize,
) -> Array2<f64> {
    let sdim = spin::sector_dim(two_j);
    let fdim = n_max + 1;
    let eye_s = Array2::eye(sdim);
    let eye_f = Array2::eye(fdim);
    let num = number_op(fdim);
    let sz = spin::sz_matrix(two_j);

    let omega0 = match variant {
        Variant::Degenerate => 0.0,
        _ => params.omega0,
    };

    let mut h = kron(&sz.mapv(|v| omega0 * v), &eye_f);
    h = h + kron(&eye_s, &num.mapv(|v| params.omega * v));

    match variant {
        Variant::Full | Variant::Degenerate => {
            let sx = spin::sx_matrix(two_j);
            let x = quadrature(fdim);
            h + kron(&sx.mapv(|v| params.omega * params.beta * v), &x)
        }
        Variant::Rwa => {
            // S+- = Sx +- i Sy stay real in this basis: Sy = -i [Sz, Sx]
            // makes i Sy = [Sz, Sx], a real matrix.
            let sx = spin::sx_matrix(two_j);
            let i_sy = sz.dot(&sx) - sx.dot(&sz);
            let s_plus = &sx + &i_sy;
            let s_minus = &sx - &i_sy;
            let a = annihilation(fdim);
            let g = 0.5 * params.omega * params.beta;
            h + kron(&s_plus.mapv(|v| g * v), &a) + kron(&s_minus.mapv(|v| g * v), &a.t().to_owned())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamiltonians_are_exactly_symmetric() {
        let params = ModelParams::with_unit_omega(0.15, 0.16).unwrap();
        for variant in [Variant::Full, Variant::Rwa, Variant::Degenerate] {
            let h = hamiltonian(variant, params, 2, 12);
            let asym = (&h - &h.t()).iter().map(|v| v.abs()).fold(0.0, f64::max);
            assert_eq!(asym, 0.0, "{variant:?} not symmetric");
        }
    }

    #[test]
    fn rwa_conserves_excitation_number() {
        let params = ModelParams::with_unit_omega(0.9, 0.05).unwrap();
        let n_max = 10;
        let fdim = n_max + 1;
        let h = hamiltonian(Variant::Rwa, params, 2, n_max);
        // Excitation operator Sz + a^dag a in the joint space.
        let exc = kron(&crate::spin::sz_matrix(2), &Array2::eye(fdim))
            + kron(&Array2::eye(3), &number_op(fdim));
        let comm = h.dot(&exc) - exc.dot(&h);
        let max = comm.iter().map(|v| v.abs()).fold(0.0, f64::max);
        assert!(max < 1e-12, "RWA does not conserve Sz + n: {max}");
    }
}
