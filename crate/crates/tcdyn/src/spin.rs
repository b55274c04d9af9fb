//! Collective spin operators in the Sx eigenbasis.
//!
//! All matrices act on a single total-spin sector `j` with basis states
//! `|j, m>` ordered by descending `m` (so index 0 is `m = +j`). Spin is
//! stored doubled (`two_j = 2j`) so half-integer sectors of odd qubit
//! numbers need no floating-point bookkeeping.
//!
//! The Sx eigenbasis is the natural frame for the coupling term
//! `beta (a + a^dag) Sx`: `Sx` is diagonal while `Sz` acquires the ladder
//! structure usually associated with `Sx`, with matrix elements
//! `<j, m+1|Sz|j, m> = (1/2) sqrt((j-m)(j+m+1))`.

use ndarray::Array2;
use num_complex::Complex64;

/// `m` value of basis index `idx` in a sector with doubled spin `two_j`.
/// Index 0 is `m = +j`; values descend in steps of one.
pub fn m_value(two_j: u32, idx: usize) -> f64 {
    f64::from(two_j) / 2.0 - idx as f64
}

/// Dimension `2j + 1` of the spin sector.
pub fn sector_dim(two_j: u32) -> usize {
    two_j as usize + 1
}

/// Diagonal of `Sx` in its own eigenbasis: `m = j, j-1, ..., -j`.
pub fn sx_diagonal(two_j: u32) -> Vec<f64> {
    (0..sector_dim(two_j)).map(|i| m_value(two_j, i)).collect()
}

/// `Sz` in the Sx eigenbasis: real symmetric tridiagonal with
/// `<j, m+1|Sz|j, m> = (1/2) sqrt((j-m)(j+m+1))`.
pub fn sz_matrix(two_j: u32) -> Array2<f64> {
    let dim = sector_dim(two_j);
    let j = f64::from(two_j) / 2.0;
    let mut sz = Array2::zeros((dim, dim));
    for idx in 1..dim {
        // Couples |j, m> (index idx) to |j, m+1> (index idx - 1).
        let m = m_value(two_j, idx);
        let elem = 0.5 * ((j - m) * (j + m + 1.0)).sqrt();
        sz[(idx - 1, idx)] = elem;
        sz[(idx, idx - 1)] = elem;
    }
    sz
}

/// `Sx` as a dense matrix (diagonal in this basis).
pub fn sx_matrix(two_j: u32) -> Array2<f64> {
    Array2::from_diag(&ndarray::Array1::from(sx_diagonal(two_j)))
}

/// `Sy = -i [Sz, Sx]`, purely imaginary in the Sx eigenbasis.
pub fn sy_matrix(two_j: u32) -> Array2<Complex64> {
    let sx = sx_matrix(two_j);
    let sz = sz_matrix(two_j);
    let comm = sz.dot(&sx) - sx.dot(&sz);
    comm.mapv(|v| Complex64::new(0.0, -1.0) * v)
}

/// Total-spin sector of a `K`-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sector {
    /// Doubled total spin `2j`.
    pub two_j: u32,
    /// Number of degenerate multiplets carrying this `j`.
    pub multiplicity: u64,
}

fn binomial(n: u32, k: i64) -> u64 {
    if k < 0 || k > i64::from(n) {
        return 0;
    }
    let k = k as u32;
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// Multiplicity of the spin-`j` sector in the decomposition of `K` qubits:
/// `C(K, K/2 - j) - C(K, K/2 - j - 1)` (Catalan's triangle).
pub fn multiplicity(k: u32, two_j: u32) -> u64 {
    if two_j > k || (k - two_j) % 2 != 0 {
        return 0;
    }
    let half = i64::from(k - two_j) / 2;
    binomial(k, half) - binomial(k, half - 1)
}

/// All total-spin sectors of `K` qubits, highest `j` first.
pub fn sectors(k: u32) -> Vec<Sector> {
    let mut out = Vec::new();
    let mut two_j = k as i64;
    while two_j >= 0 {
        let tj = two_j as u32;
        let mult = multiplicity(k, tj);
        if mult > 0 {
            out.push(Sector { two_j: tj, multiplicity: mult });
        }
        two_j -= 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn commutator(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
        a.dot(b) - b.dot(a)
    }

    fn to_complex(m: &Array2<f64>) -> Array2<Complex64> {
        m.mapv(|v| Complex64::new(v, 0.0))
    }

    #[test]
    fn su2_closure_spin_half() {
        let sx = to_complex(&sx_matrix(1));
        let sz = to_complex(&sz_matrix(1));
        let sy = sy_matrix(1);
        // [Sx, Sy] = i Sz and cyclic.
        let i = Complex64::new(0.0, 1.0);
        let c1 = commutator(&sx, &sy) - sz.mapv(|v| i * v);
        let c2 = commutator(&sy, &sz) - sx.mapv(|v| i * v);
        let c3 = commutator(&sz, &sx) - sy.mapv(|v| i * v);
        for c in [c1, c2, c3] {
            assert!(c.iter().all(|v| v.norm() < 1e-14));
        }
    }

    #[test]
    fn casimir_matches_j() {
        for two_j in [1u32, 2, 3, 4, 7] {
            let j = f64::from(two_j) / 2.0;
            let sx = to_complex(&sx_matrix(two_j));
            let sz = to_complex(&sz_matrix(two_j));
            let sy = sy_matrix(two_j);
            let s2 = sx.dot(&sx) + sy.dot(&sy) + sz.dot(&sz);
            for idx in 0..sector_dim(two_j) {
                assert_abs_diff_eq!(s2[(idx, idx)].re, j * (j + 1.0), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn sector_multiplicities_two_and_four_qubits() {
        assert_eq!(
            sectors(2),
            vec![Sector { two_j: 2, multiplicity: 1 }, Sector { two_j: 0, multiplicity: 1 }]
        );
        assert_eq!(
            sectors(4),
            vec![
                Sector { two_j: 4, multiplicity: 1 },
                Sector { two_j: 2, multiplicity: 3 },
                Sector { two_j: 0, multiplicity: 2 },
            ]
        );
        // Dimensions add up to 2^K.
        for k in 1..=8u32 {
            let total: u64 =
                sectors(k).iter().map(|s| s.multiplicity * (u64::from(s.two_j) + 1)).sum();
            assert_eq!(total, 1u64 << k);
        }
    }
}
