//! Controllability estimate: fraction of driver nodes needed to control a
//! scale-free network, from its exponent and average degree.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControllabilityEstimate {
    pub gamma: f64,
    pub avg_degree: f64,
    /// `n_d / n`, clamped into (0, 1].
    pub nd_fraction: f64,
    /// `round(fraction * n)`, floored at 1.
    pub nd_count: usize,
    /// Set when the raw formula value exceeded 1 and was clamped, which
    /// happens whenever `gamma <= 2`.
    pub clamped: bool,
}

/// Evaluates `n_d/n ~ exp[-(1/2)(1 - 1/(γ-1))⟨k⟩]` as written, clamping
/// results above 1; γ ≤ 1 is outside the formula's domain.
pub fn driver_nodes(gamma: f64, avg_degree: f64, n: usize) -> Result<ControllabilityEstimate> {
    if gamma.is_nan() || gamma <= 1.0 {
        return Err(Error::Fit(format!(
            "driver-node estimate needs gamma > 1, got {gamma}"
        )));
    }
    if avg_degree.is_nan() || avg_degree <= 0.0 || n == 0 {
        return Err(Error::Fit(
            "driver-node estimate needs a positive average degree and n >= 1".into(),
        ));
    }
    let bracket = 1.0 - 1.0 / (gamma - 1.0);
    let raw = (-0.5 * bracket * avg_degree).exp();
    let clamped = raw > 1.0;
    let nd_fraction = if clamped { 1.0 } else { raw };
    let nd_count = ((nd_fraction * n as f64).round() as usize).max(1);
    Ok(ControllabilityEstimate {
        gamma,
        avg_degree,
        nd_fraction,
        nd_count,
        clamped,
    })
}
