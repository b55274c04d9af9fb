//! Parameter-regime classification.
//!
//! Three disjoint-by-construction regimes matter here. Region 1 is where the
//! quasi-degenerate closed-form collapse/revival analysis holds; Region 2,
//! a superset in the coupling direction, is where the adiabatic spectrum
//! alone holds; Region 3 is the near-resonance rotating-wave regime. A point
//! is labelled with the most specific region it qualifies for.

use serde::{Deserialize, Serialize};

use crate::adiabatic::rabi_frequency;
use crate::hamiltonian::ModelParams;

/// Threshold knobs, all surfaced in the report rather than hidden.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValidityThresholds {
    /// Region 1 and 2: quasi-degeneracy bound on `omega0 / omega`.
    pub omega0_ratio_max: f64,
    /// Region 1: required `Omega_nbar / beta^2` separation.
    pub rabi_ratio_min: f64,
    /// Region 1: minimum coherent amplitude.
    pub alpha_min: f64,
    /// Region 1: maximum coupling.
    pub beta_max: f64,
    /// Region 1: maximum `|alpha beta|` for the truncated Laguerre expansion.
    pub alpha_beta_max: f64,
    /// Region 2: maximum coupling for the adiabatic spectrum.
    pub adiabatic_beta_max: f64,
    /// Region 3: maximum detuning `| omega0/omega - 1 |`.
    pub resonance_detuning_max: f64,
    /// Region 3: coupling bound at zero detuning; shrinks linearly to zero
    /// at the detuning bound.
    pub rwa_beta_at_resonance: f64,
    /// Treat the three soft separations (Rabi ratio, coherent amplitude,
    /// Laguerre truncation) as disqualifying instead of warnings. They
    /// quantify "much greater/less than" conditions that control accuracy
    /// gradually, so the default reports margins and warns.
    pub soft_guards_are_hard: bool,
}

impl Default for ValidityThresholds {
    fn default() -> Self {
        Self {
            omega0_ratio_max: 0.25,
            rabi_ratio_min: 10.0,
            alpha_min: 2.0,
            beta_max: 0.2,
            alpha_beta_max: 0.3,
            adiabatic_beta_max: 0.25,
            resonance_detuning_max: 0.25,
            rwa_beta_at_resonance: 0.2,
            soft_guards_are_hard: false,
        }
    }
}

/// Most specific regime a parameter point qualifies for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// Quasi-degenerate closed-form collapse/revival dynamics.
    Region1,
    /// Adiabatic spectrum only.
    Region2,
    /// Rotating-wave approximation.
    Region3,
    /// None of the above.
    Outside,
}

/// One threshold check with its signed margin (positive = satisfied, in the
/// native units of the quantity checked).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Predicate {
    pub ok: bool,
    pub margin: f64,
}

impl Predicate {
    fn at_most(value: f64, bound: f64) -> Self {
        Self { ok: value <= bound, margin: bound - value }
    }

    fn at_least(value: f64, bound: f64) -> Self {
        Self { ok: value >= bound, margin: value - bound }
    }
}

/// Full classification record.
#[derive(Debug, Clone, Serialize)]
pub struct ValidityReport {
    pub omega0_ratio: f64,
    pub beta: f64,
    pub alpha: f64,
    /// Manifold index the Rabi separation is evaluated at: `round(alpha^2)`.
    pub nbar: u32,
    /// `Omega_nbar / beta^2`.
    pub rabi_ratio: f64,
    /// Region 1 check: `omega0 <= 0.25 omega`.
    pub quasi_degenerate: Predicate,
    /// Region 1 check: `Omega_nbar / beta^2 >= 10`.
    pub rabi_separation: Predicate,
    /// Region 1 check: `|alpha| >= 2`.
    pub large_alpha: Predicate,
    /// Region 1 check: `|beta| <= 0.2`.
    pub weak_coupling: Predicate,
    /// Region 1 check: `|alpha beta| <= 0.3`.
    pub laguerre_truncation: Predicate,
    pub region1_eligible: bool,
    pub region2_eligible: bool,
    pub region3_eligible: bool,
    pub region: Region,
    pub warnings: Vec<String>,
}

/// Classifies a parameter point. `alpha` may be zero when no coherent state
/// is involved; the Rabi separation is then evaluated at `nbar = 0`.
pub fn classify_validity(
    params: ModelParams,
    alpha: f64,
    thresholds: &ValidityThresholds,
) -> ValidityReport {
    let t = thresholds;
    let ratio = params.omega0.abs() / params.omega;
    let beta = params.beta.abs();
    let alpha_abs = alpha.abs();
    let nbar = (alpha * alpha).round() as u32;
    let beta2 = params.beta * params.beta;
    let rabi_ratio = if beta2 > 0.0 {
        rabi_frequency(params, nbar).abs() / beta2
    } else {
        f64::INFINITY
    };

    let quasi_degenerate = Predicate::at_most(ratio, t.omega0_ratio_max);
    let rabi_separation = Predicate::at_least(rabi_ratio, t.rabi_ratio_min);
    let large_alpha = Predicate::at_least(alpha_abs, t.alpha_min);
    let weak_coupling = Predicate::at_most(beta, t.beta_max);
    let laguerre_truncation = Predicate::at_most(alpha_abs * beta, t.alpha_beta_max);

    // Three of the five conditions are hard bounds; the two that encode
    // "much greater/less than" separations default to reported-margin
    // warnings, since accuracy degrades gradually as they are strained.
    let mut warnings = Vec::new();
    let hard_ok = quasi_degenerate.ok && weak_coupling.ok && large_alpha.ok;
    let soft_ok = rabi_separation.ok && laguerre_truncation.ok;
    if hard_ok && !rabi_separation.ok {
        warnings.push(format!(
            "rabi separation Omega_nbar / beta^2 = {rabi_ratio:.3} is below the {}x guard; \
             the closed-form populations lose accuracy here",
            t.rabi_ratio_min
        ));
    }
    if hard_ok && !laguerre_truncation.ok {
        warnings.push(format!(
            "|alpha beta| = {:.3} exceeds the {} guard; the truncated Laguerre expansion \
             behind the packet widths degrades here",
            alpha_abs * beta,
            t.alpha_beta_max
        ));
    }
    let region1_eligible = if t.soft_guards_are_hard { hard_ok && soft_ok } else { hard_ok };

    let region2_eligible = ratio <= t.omega0_ratio_max && beta <= t.adiabatic_beta_max;

    let detuning = (params.omega0 / params.omega - 1.0).abs();
    let region3_eligible = detuning <= t.resonance_detuning_max
        && beta <= t.rwa_beta_at_resonance * (1.0 - detuning / t.resonance_detuning_max);

    let region = if region1_eligible {
        Region::Region1
    } else if region3_eligible {
        Region::Region3
    } else if region2_eligible {
        Region::Region2
    } else {
        Region::Outside
    };

    ValidityReport {
        omega0_ratio: ratio,
        beta: params.beta,
        alpha,
        nbar,
        rabi_ratio,
        quasi_degenerate,
        rabi_separation,
        large_alpha,
        weak_coupling,
        laguerre_truncation,
        region1_eligible,
        region2_eligible,
        region3_eligible,
        region,
        warnings,
    }
}
