//! Adiabatic manifold energies against exact eigenvalues.
//!
//! Each oscillator manifold `N` carries three levels split by the
//! qubit-mediated tunnelling `Omega_N`, with the middle one offset by the
//! well depth `beta^2`. The adiabatic 3x3 blocks reproduce the exact
//! truncated-Fock spectrum to well below the tunnelling scale.
//!
//! ```text
//! cargo run --release --example spectrum
//! ```

use tcdyn::adiabatic::{manifold_levels, rabi_frequency};
use tcdyn::scenario::exact_manifold_levels;
use tcdyn::ModelParams;

fn main() -> tcdyn::Result<()> {
    let params = ModelParams::with_unit_omega(0.15, 0.16)?;
    let (lo, hi) = (0u32, 20u32);
    let exact = exact_manifold_levels(params, lo, hi, 60)?;

    println!("manifold levels at omega0 = {}, beta = {}", params.omega0, params.beta);
    println!(
        "{:>3}  {:>10} {:>10} {:>10}   {:>10} {:>10} {:>10}  {:>9}",
        "N", "adia -", "adia 0", "adia +", "exact -", "exact 0", "exact +", "gap"
    );
    let mut worst = 0.0f64;
    for n in lo..=hi {
        let a = manifold_levels(params, n);
        let e = exact[(n - lo) as usize];
        let gap = (0..3).map(|i| (a[i] - e[i]).abs()).fold(0.0f64, f64::max);
        worst = worst.max(gap);
        println!(
            "{n:>3}  {:>10.5} {:>10.5} {:>10.5}   {:>10.5} {:>10.5} {:>10.5}  {gap:>9.2e}",
            a[0], a[1], a[2], e[0], e[1], e[2]
        );
    }
    println!(
        "\nworst disagreement {worst:.2e}, tunnelling splitting Omega_9 = {:.4}, \
         well depth beta^2 = {:.4}",
        rabi_frequency(params, 9),
        params.beta * params.beta
    );
    Ok(())
}
