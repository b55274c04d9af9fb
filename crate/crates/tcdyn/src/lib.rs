//! Dynamics of qubits ultra-strongly coupled to a single oscillator mode in
//! the quasi-degenerate regime, where the qubit splitting lies far below the
//! mode frequency and the rotating-wave approximation fails.
//!
//! The model is a pair (or a register) of qubits with collective spin
//! operators coupled to one bosonic mode through the position quadrature:
//!
//! ```text
//! H = omega0 Sz + omega a'a + omega beta (a + a') Sx      (hbar = 1)
//! ```
//!
//! Everything is expressed in units of the mode frequency by default
//! (`omega = 1`), so times are in units of `1/omega`.
//!
//! Three engines compute the same observables at different levels of
//! approximation and cross-validate each other:
//!
//! * **exact**: diagonalization of the full Hamiltonian on a truncated Fock
//!   space ([`dynamics`]). In the basis where the coupling operator `Sx` is
//!   diagonal every variant of the Hamiltonian is real symmetric, so one
//!   symmetric eigendecomposition drives arbitrarily long evolutions.
//! * **adiabatic**: manifold-by-manifold treatment in which the oscillator
//!   stays in displaced number states and the slow qubit dynamics reduces to
//!   small tunnelling blocks ([`adiabatic`], [`multiqubit`]).
//! * **analytic**: closed-form collapse/revival packets for coherent-state
//!   preparations, including revival times, heights, and widths ([`revival`])
//!   and the qubit-qubit concurrence they imply ([`entangle`]).
//!
//! [`validity`] classifies parameter points into the regimes where these
//! treatments apply, and [`scenario`] runs config-driven computations behind
//! the `tcdyn` binary.
//!
//! # Example
//!
//! Energies of one excitation manifold, adiabatic against exact:
//!
//! ```
//! use tcdyn::adiabatic::manifold_levels;
//! use tcdyn::scenario::exact_manifold_levels;
//! use tcdyn::ModelParams;
//!
//! let params = ModelParams::with_unit_omega(0.15, 0.16)?;
//! let adiabatic = manifold_levels(params, 9);
//! let exact = exact_manifold_levels(params, 9, 9, 40)?[0];
//! for (a, e) in adiabatic.iter().zip(&exact) {
//!     assert!((a - e).abs() < 1e-2);
//! }
//! # Ok::<(), tcdyn::TcdynError>(())
//! ```
//!
//! The `examples/` directory holds one runnable program per capability:
//! spectra, number-state Rabi oscillations, collapse and revival, revival
//! schedules, concurrence dynamics, multi-qubit registers, validity maps,
//! and engine comparison.

pub mod adiabatic;
pub mod dynamics;
pub mod entangle;
pub mod error;
pub mod hamiltonian;
pub mod multiqubit;
pub mod revival;
pub mod scenario;
pub mod special;
pub mod spin;
pub mod state;
pub mod validity;

pub use error::{Result, TcdynError};
pub use hamiltonian::{ModelParams, Variant};
