//! Exact evolution by one-time eigendecomposition.
//!
//! Every Hamiltonian variant is real symmetric in the Sx eigenbasis, so
//! `psi(t) = V exp(-i E t) V^T psi(0)` with a single `dsyev`-style call up
//! front. Time samples then cost two real matrix-vector products each; no
//! step-size error enters anywhere.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;

use crate::error::Result;
use crate::spin;
use crate::state::{JointBasis, JointState};

/// Eigendecomposition of a real symmetric Hamiltonian, reused across all
/// time samples.
#[derive(Debug, Clone)]
pub struct Propagator {
    eigvals: Array1<f64>,
    eigvecs: Array2<f64>,
}

impl Propagator {
    pub fn new(h: &Array2<f64>) -> Result<Self> {
        let (eigvals, eigvecs) = h.eigh(UPLO::Lower)?;
        Ok(Self { eigvals, eigvecs })
    }

    pub fn eigenvalues(&self) -> &Array1<f64> {
        &self.eigvals
    }

    /// Expands `psi` in the eigenbasis (`c = V^T psi`).
    fn to_eigenbasis(&self, psi: &Array1<Complex64>) -> (Array1<f64>, Array1<f64>) {
        let re = psi.mapv(|v| v.re);
        let im = psi.mapv(|v| v.im);
        (self.eigvecs.t().dot(&re), self.eigvecs.t().dot(&im))
    }

    /// `exp(-i H t) psi0`.
    pub fn evolve(&self, psi0: &Array1<Complex64>, t: f64) -> Array1<Complex64> {
        let c0 = self.to_eigenbasis(psi0);
        self.evolve_from_coeffs(&c0, t)
    }

    fn evolve_from_coeffs(&self, (c_re, c_im): &(Array1<f64>, Array1<f64>), t: f64) -> Array1<Complex64> {
        let dim = self.eigvals.len();
        let mut rot_re = Array1::zeros(dim);
        let mut rot_im = Array1::zeros(dim);
        for k in 0..dim {
            let (s, c) = (-self.eigvals[k] * t).sin_cos();
            // (c_re + i c_im)(cos + i sin)
            rot_re[k] = c_re[k] * c - c_im[k] * s;
            rot_im[k] = c_re[k] * s + c_im[k] * c;
        }
        let out_re = self.eigvecs.dot(&rot_re);
        let out_im = self.eigvecs.dot(&rot_im);
        Array1::from_iter(out_re.iter().zip(out_im.iter()).map(|(&r, &i)| Complex64::new(r, i)))
    }

    /// States at every time in `ts`; the eigenbasis expansion of `psi0` is
    /// computed once.
    pub fn evolve_many(&self, psi0: &Array1<Complex64>, ts: &[f64]) -> Vec<Array1<Complex64>> {
        let c0 = self.to_eigenbasis(psi0);
        ts.iter().map(|&t| self.evolve_from_coeffs(&c0, t)).collect()
    }
}

/// Uniform grid of `samples >= 2` times from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, samples: usize) -> Vec<f64> {
    assert!(samples >= 2, "need at least two samples");
    let step = (stop - start) / (samples as f64 - 1.0);
    (0..samples).map(|i| start + step * i as f64).collect()
}

/// Expectation values of one joint state.
#[derive(Debug, Clone, PartialEq)]
pub struct Observables {
    pub t: f64,
    pub norm: f64,
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    /// `<a>` (complex).
    pub a_re: f64,
    pub a_im: f64,
    /// `<a^dag a>`.
    pub n: f64,
    /// `<(a + a^dag) Sz>`, the coupling moment entering dSy/dt.
    pub x_sz: f64,
    /// `<(a + a^dag) Sy>`, the coupling moment entering dSz/dt.
    pub x_sy: f64,
    /// Populations of the Sx labels, descending m.
    pub label_populations: Vec<f64>,
}

/// Which single-mode factor a spin observable is tensored with.
enum FockFactor {
    Identity,
    Quadrature,
}

/// `<psi| (spin_mat (x) fock_factor) |psi>` using the block structure of the
/// joint index; `spin_mat` is a small dense real matrix.
fn spin_fock_expectation(
    basis: JointBasis,
    psi: &Array1<Complex64>,
    spin_mat: &Array2<f64>,
    factor: FockFactor,
) -> Complex64 {
    let sdim = basis.spin_dim();
    let fdim = basis.fock_dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 0..sdim {
        for lp in 0..sdim {
            let w = spin_mat[(l, lp)];
            if w == 0.0 {
                continue;
            }
            let row = l * fdim;
            let col = lp * fdim;
            let mut inner = Complex64::new(0.0, 0.0);
            match factor {
                FockFactor::Identity => {
                    for n in 0..fdim {
                        inner += psi[row + n].conj() * psi[col + n];
                    }
                }
                FockFactor::Quadrature => {
                    for n in 0..fdim - 1 {
                        let amp = ((n + 1) as f64).sqrt();
                        inner += amp
                            * (psi[row + n].conj() * psi[col + n + 1]
                                + psi[row + n + 1].conj() * psi[col + n]);
                    }
                }
            }
            acc += w * inner;
        }
    }
    acc
}

/// Computes the full observable record for a state.
///
/// `<Sy>`-type moments use `Sy = -i [Sz, Sx]`, so only real spin matrices are
/// needed: `<Sy (x) F> = 2 Im <psi| (Sz Sx) (x) F |psi>` for Hermitian `F`.
pub fn observables(state: &JointState, t: f64) -> Observables {
    let basis = state.basis;
    let psi = &state.psi;
    let sdim = basis.spin_dim();
    let fdim = basis.fock_dim();

    let sz = spin::sz_matrix(basis.two_j);
    let sx = spin::sx_matrix(basis.two_j);
    let sz_sx = sz.dot(&sx);

    let norm_sqr: f64 = psi.iter().map(|v| v.norm_sqr()).sum();

    // Diagonal spin pieces.
    let mut sx_exp = 0.0;
    let mut n_exp = 0.0;
    let mut label_populations = vec![0.0; sdim];
    for l in 0..sdim {
        let m = spin::m_value(basis.two_j, l);
        for n in 0..fdim {
            let p = psi[basis.index(l, n)].norm_sqr();
            sx_exp += m * p;
            n_exp += n as f64 * p;
            label_populations[l] += p;
        }
    }

    // <a> couples adjacent Fock levels within each label.
    let mut a_exp = Complex64::new(0.0, 0.0);
    for l in 0..sdim {
        for n in 0..fdim - 1 {
            let amp = ((n + 1) as f64).sqrt();
            a_exp += amp * psi[basis.index(l, n)].conj() * psi[basis.index(l, n + 1)];
        }
    }

    let sz_exp = spin_fock_expectation(basis, psi, &sz, FockFactor::Identity).re;
    let sy_exp = 2.0 * spin_fock_expectation(basis, psi, &sz_sx, FockFactor::Identity).im;
    let x_sz = spin_fock_expectation(basis, psi, &sz, FockFactor::Quadrature).re;
    let x_sy = 2.0 * spin_fock_expectation(basis, psi, &sz_sx, FockFactor::Quadrature).im;

    Observables {
        t,
        norm: norm_sqr.sqrt(),
        sx: sx_exp,
        sy: sy_exp,
        sz: sz_exp,
        a_re: a_exp.re,
        a_im: a_exp.im,
        n: n_exp,
        x_sz,
        x_sy,
        label_populations,
    }
}

/// Residuals of the Ehrenfest equations of motion
///
/// `d<Sx>/dt = -omega0 <Sy>`
/// `d<Sy>/dt =  omega0 <Sx> - beta omega <(a+a^dag) Sz>`
/// `d<Sz>/dt =  beta omega <(a+a^dag) Sy>`
///
/// evaluated with central second-order differences on a uniform grid.
/// Returns one `[rx, ry, rz]` triple per interior grid point.
pub fn ehrenfest_residuals(
    series: &[Observables],
    params: crate::hamiltonian::ModelParams,
) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    if series.len() < 3 {
        return out;
    }
    for i in 1..series.len() - 1 {
        let dt = series[i + 1].t - series[i - 1].t;
        let d_sx = (series[i + 1].sx - series[i - 1].sx) / dt;
        let d_sy = (series[i + 1].sy - series[i - 1].sy) / dt;
        let d_sz = (series[i + 1].sz - series[i - 1].sz) / dt;
        let o = &series[i];
        out.push([
            d_sx + params.omega0 * o.sy,
            d_sy - params.omega0 * o.sx + params.beta * params.omega * o.x_sz,
            d_sz - params.beta * params.omega * o.x_sy,
        ]);
    }
    out
}
