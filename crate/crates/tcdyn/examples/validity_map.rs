//! Map of the validity regions over the coupling plane.
//!
//! Region 1 is the quasi-degenerate adiabatic regime (`omega0 << omega`,
//! weak coupling, large coherent amplitude), region 3 the near-resonant
//! RWA cone, region 2 the dispersive strip between them. The two
//! structured regions never overlap.
//!
//! ```text
//! cargo run --release --example validity_map
//! ```

use tcdyn::validity::{classify_validity, Region, ValidityThresholds};
use tcdyn::ModelParams;

fn main() -> tcdyn::Result<()> {
    let thresholds = ValidityThresholds::default();
    let alpha = 3.0;
    println!("alpha = {alpha}; rows omega0/omega (descending), columns beta");
    println!("   1 = adiabatic, 2 = dispersive, 3 = RWA cone, . = outside\n");
    let n_rows = 14;
    let n_cols = 48;
    for row in 0..n_rows {
        let omega0 = 1.3 - 1.28 * row as f64 / (n_rows - 1) as f64;
        let mut line = String::new();
        for col in 0..n_cols {
            let beta = 0.01 + 0.49 * col as f64 / (n_cols - 1) as f64;
            let report = classify_validity(
                ModelParams::with_unit_omega(omega0, beta)?,
                alpha,
                &thresholds,
            );
            line.push(match report.region {
                Region::Region1 => '1',
                Region::Region2 => '2',
                Region::Region3 => '3',
                Region::Outside => '.',
            });
        }
        println!("{omega0:>5.2} {line}");
    }
    let betas: Vec<String> =
        (0..6).map(|i| format!("{:.2}", 0.01 + 0.49 * i as f64 / 5.0)).collect();
    println!("beta: {}", betas.join(" .. "));

    let report = classify_validity(ModelParams::with_unit_omega(0.15, 0.16)?, alpha, &thresholds);
    println!("\nreference point (omega0 = 0.15, beta = 0.16, alpha = 3):");
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
