//! Single-qubit collapse and revival: one revival sequence, no beats.
//!
//! A single qubit (`j = 1/2`) has two wells at the same depth, so the slow
//! dynamics carries one line instead of the two-line `omega0`-`2 omega0`
//! beat of the two-qubit case. The return probability collapses to 1/2 and
//! shows exactly one revival cluster per schedule slot.
//!
//! ```text
//! cargo run --release --example collapse_revival_single_qubit
//! ```

use tcdyn::adiabatic::AdiabaticCoherent;
use tcdyn::dynamics::{linspace, Propagator};
use tcdyn::hamiltonian::{hamiltonian, Variant};
use tcdyn::revival::{peak_in_window, RevivalParams};
use tcdyn::special::displacement_matrix;
use tcdyn::state::{coherent_amplitudes, default_n_max, JointBasis, JointState};
use tcdyn::ModelParams;

fn main() -> tcdyn::Result<()> {
    let params = ModelParams::with_unit_omega(0.15, 0.16)?;
    let alpha = 3.0;
    let rp = RevivalParams { alpha, beta: params.beta, omega0: params.omega0 };
    let t1 = rp.revival_time(1);

    // j = 1/2 wells sit at +-beta/2, so the initial displacement is beta/2.
    let n_max = default_n_max(alpha + params.beta / 2.0);
    let basis = JointBasis::new(1, n_max);
    let osc = displacement_matrix(params.beta / 2.0, basis.fock_dim())
        .dot(&coherent_amplitudes(alpha, n_max));
    let state = JointState::product(basis, basis.spin_dim() - 1, osc.view())?;
    let prop = Propagator::new(&hamiltonian(Variant::Full, params, 1, n_max))?;

    let ts = linspace(0.0, 1.3 * t1, 1500);
    let label = basis.spin_dim() - 1;
    let p: Vec<f64> = prop
        .evolve_many(&state.psi, &ts)
        .iter()
        .map(|psi| (0..basis.fock_dim()).map(|i| psi[basis.index(label, i)].norm_sqr()).sum())
        .collect();

    let bins = 60;
    println!("P(return) for a single qubit, alpha = {alpha}");
    for b in 0..bins {
        let (lo, hi) = (b * ts.len() / bins, (b + 1) * ts.len() / bins);
        let v = p[lo..hi].iter().fold(0.0f64, |m, &x| m.max(x));
        println!("t {:>6.0}  {:>6.3}  {}", ts[lo], v, "#".repeat((v * 50.0).round() as usize));
    }

    let model = AdiabaticCoherent::new(params, alpha)?;
    let plateau: Vec<f64> = ts
        .iter()
        .zip(&p)
        .filter(|(&t, _)| t >= 0.22 * t1 && t <= 0.42 * t1)
        .map(|(_, &v)| v)
        .collect();
    let plateau_mean = plateau.iter().sum::<f64>() / plateau.len() as f64;
    let peak = peak_in_window(&ts, &p, 0.8 * t1, 1.2 * t1).expect("revival inside the window");
    let closed: Vec<f64> = ts.iter().map(|&t| model.prob_single_qubit(t)).collect();
    let closed_peak =
        peak_in_window(&ts, &closed, 0.8 * t1, 1.2 * t1).expect("revival inside the window");
    println!(
        "\nplateau mean {plateau_mean:.4} (1/2); revival peak {:.3} at t = {:.0}; \
         closed-form peak {:.3} at t = {:.0}",
        peak.height,
        peak.t,
        closed_peak.height,
        closed_peak.t
    );
    Ok(())
}
