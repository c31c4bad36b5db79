use serde::{Deserialize, Serialize};

use crate::bessel::zeros_l_mn;
use crate::error::{Error, Result};
use crate::spectrum::SpectrumResult;

/// Slack allowed above `ξ²/2` before a bound is flagged.
pub const DEFAULT_BOUND_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub j: usize,
    pub lambda: f64,
    /// `ξ_{m,j}² / 2`.
    pub bound: f64,
    /// `bound - lambda`.
    pub gap: f64,
    pub ok: bool,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub m: u32,
    pub tolerance: f64,
    pub records: Vec<BoundRecord>,
    pub all_ok: bool,
}

impl BoundReport {
    pub fn gaps(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.gap).collect()
    }
}

/// Compares `λ_1 … λ_{j_max}` with `ξ_{m,j}²/2`.
pub fn verify_bound(result: &SpectrumResult, m: u32, j_max: usize) -> Result<BoundReport> {
    verify_bound_with_tol(result, m, j_max, DEFAULT_BOUND_TOL)
}

pub fn verify_bound_with_tol(result: &SpectrumResult, m: u32, j_max: usize, tolerance: f64) -> Result<BoundReport> {
    if j_max == 0 || j_max >= result.len() {
        return Err(Error::InvalidArgument(format!(
            "bound check up to j = {j_max} needs that many nonzero eigenvalues, have {}",
            result.len().saturating_sub(1)
        )));
    }
    let ladder = zeros_l_mn(m, 0, j_max)?;
    let records: Vec<BoundRecord> = (1..=j_max)
        .map(|j| {
            let lambda = result.eigenvalues[j];
            let xi = ladder.zeros[j - 1];
            let bound = 0.5 * xi * xi;
            BoundRecord {
                j,
                lambda,
                bound,
                gap: bound - lambda,
                ok: lambda <= bound + tolerance,
                error_estimate: result.error_estimates[j],
            }
        })
        .collect();
    Ok(BoundReport {
        m,
        tolerance,
        all_ok: records.iter().all(|r| r.ok),
        records,
    })
}
