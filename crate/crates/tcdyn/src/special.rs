//! Special functions for displaced-oscillator matrix elements.
//!
//! Everything here is elementary: Laguerre polynomials via the three-term
//! recurrence and Franck-Condon overlaps of displaced Fock states. The
//! recurrences are numerically benign for the small arguments (`x = beta^2
//! <~ 0.1`) this crate operates at.

use ndarray::Array2;

/// Laguerre polynomial `L_n(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre(n: u32, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 1.0 - x,
        _ => {
            let mut lm1 = 1.0;
            let mut l = 1.0 - x;
            for k in 1..n {
                let kf = f64::from(k);
                let lp1 = ((2.0 * kf + 1.0 - x) * l - kf * lm1) / (kf + 1.0);
                lm1 = l;
                l = lp1;
            }
            l
        }
    }
}

/// Associated Laguerre polynomial `L_n^{(a)}(x)` for integer order `a >= 0`,
/// by the recurrence `(k+1) L_{k+1}^{(a)} = (2k+a+1-x) L_k^{(a)} - (k+a) L_{k-1}^{(a)}`.
pub fn assoc_laguerre(n: u32, a: u32, x: f64) -> f64 {
    let af = f64::from(a);
    match n {
        0 => 1.0,
        1 => 1.0 + af - x,
        _ => {
            let mut lm1 = 1.0;
            let mut l = 1.0 + af - x;
            for k in 1..n {
                let kf = f64::from(k);
                let lp1 = ((2.0 * kf + af + 1.0 - x) * l - (kf + af) * lm1) / (kf + 1.0);
                lm1 = l;
                l = lp1;
            }
            l
        }
    }
}

/// `sqrt(lo! / hi!)` for `lo <= hi`, evaluated in log space.
fn sqrt_factorial_ratio(lo: u32, hi: u32) -> f64 {
    let mut log_sum = 0.0;
    for j in (lo + 1)..=hi {
        log_sum += f64::from(j).ln();
    }
    (-0.5 * log_sum).exp()
}

/// Matrix element `<m| D(d) |n>` of the displacement operator
/// `D(d) = exp(d (a^dag - a))` with real displacement `d`, which makes the
/// element real:
///
/// `<m|D(d)|n> = sqrt(n!/m!) d^{m-n} e^{-d^2/2} L_n^{(m-n)}(d^2)` for `m >= n`,
/// and the transpose picks up `(-d)^{n-m}` for `m < n`.
pub fn displaced_fock_overlap(m: u32, n: u32, d: f64) -> f64 {
    let x = d * d;
    let gauss = (-0.5 * x).exp();
    if m >= n {
        let k = m - n;
        sqrt_factorial_ratio(n, m) * d.powi(k as i32) * gauss * assoc_laguerre(n, k, x)
    } else {
        let k = n - m;
        sqrt_factorial_ratio(m, n) * (-d).powi(k as i32) * gauss * assoc_laguerre(m, k, x)
    }
}

/// Dense truncated displacement operator `D(d)` on a `dim`-level Fock space.
///
/// Rows and columns are Fock indices; entries come from
/// [`displaced_fock_overlap`], so the matrix is exactly unitary only in the
/// infinite-dimensional limit. Callers should keep `dim` comfortably above
/// the occupied levels.
pub fn displacement_matrix(d: f64, dim: usize) -> Array2<f64> {
    let mut mat = Array2::zeros((dim, dim));
    for m in 0..dim {
        for n in 0..dim {
            mat[(m, n)] = displaced_fock_overlap(m as u32, n as u32, d);
        }
    }
    mat
}

/// Overlap `<N_1|N_0> = e^{-beta^2/2} L_N(beta^2)` between displaced Fock
/// states whose wells are one displacement quantum `beta` apart.
pub fn well_overlap(beta: f64, n: u32) -> f64 {
    let x = beta * beta;
    (-0.5 * x).exp() * laguerre(n, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn laguerre_low_orders() {
        let x = 0.3;
        assert_abs_diff_eq!(laguerre(0, x), 1.0);
        assert_abs_diff_eq!(laguerre(1, x), 1.0 - x);
        assert_abs_diff_eq!(laguerre(2, x), 1.0 - 2.0 * x + x * x / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn assoc_laguerre_reduces_to_plain() {
        for n in 0..20 {
            assert_abs_diff_eq!(assoc_laguerre(n, 0, 0.7), laguerre(n, 0.7), epsilon = 1e-13);
        }
    }

    #[test]
    fn overlap_is_symmetric_up_to_parity() {
        // <m|D(d)|n> = (-1)^{m-n} <n|D(d)|m> from D(d)^T = D(-d).
        for (m, n) in [(0u32, 3u32), (2, 5), (7, 4)] {
            let lhs = displaced_fock_overlap(m, n, 0.23);
            let rhs = displaced_fock_overlap(n, m, 0.23);
            let parity = if (m as i32 - n as i32).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(lhs, parity * rhs, epsilon = 1e-14);
        }
    }
}
