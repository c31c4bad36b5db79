use serde::{Deserialize, Serialize};

use super::hermitian::HermitianProfile;
use super::symplectic::{gamma_can, SymplecticProfile};

/// Default number of ladder points `x_k = ¼·2^{-k}` per endpoint.
pub const DEFAULT_LADDER: usize = 30;
const INTERIOR_GRID: usize = 4096;
const ENDPOINT_TOL: f64 = 1e-12;

/// Outcome of [`validate_class_g`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassGReport {
    pub constant: f64,
    pub passed: bool,
    pub positive_interior: bool,
    pub gamma_at_0: f64,
    pub gamma_at_1: f64,
    /// Largest `|γ - γ_can| / γ_can²` seen on the endpoint ladders.
    pub worst_ratio: f64,
    pub worst_ratio_at: f64,
    /// `γ(x)/x` and `γ(1 - t)/t` at the innermost ladder points.
    pub left_slope: f64,
    pub right_slope: f64,
    pub failures: Vec<String>,
}

/// Numerical membership test for 𝒢: positivity inside, zeros at both
/// ends, and `|γ - γ_can| ≤ C γ_can²` on geometric ladders toward 0 and 1.
pub fn validate_class_g(gamma: &SymplecticProfile, constant: f64, ladder: usize) -> ClassGReport {
    let mut failures = Vec::new();
    if !(constant > 0.0) {
        failures.push(format!("class constant must be positive, got {constant}"));
    }

    let mut positive_interior = true;
    for i in 1..INTERIOR_GRID {
        let x = i as f64 / INTERIOR_GRID as f64;
        let v = if x <= 0.5 {
            gamma.eval(x)
        } else {
            gamma.eval_from_right(1.0 - x)
        };
        if !(v > 0.0) || !v.is_finite() {
            positive_interior = false;
            failures.push(format!("γ({x}) = {v} is not positive"));
            break;
        }
    }

    let gamma_at_0 = gamma.eval(0.0);
    let gamma_at_1 = gamma.eval_from_right(0.0);
    if !(gamma_at_0.abs() <= ENDPOINT_TOL) {
        failures.push(format!("γ(0) = {gamma_at_0} is not zero"));
    }
    if !(gamma_at_1.abs() <= ENDPOINT_TOL) {
        failures.push(format!("γ(1) = {gamma_at_1} is not zero"));
    }

    let mut worst_ratio = 0.0f64;
    let mut worst_ratio_at = 0.0;
    let mut left_slope = f64::NAN;
    let mut right_slope = f64::NAN;
    for k in 0..ladder.max(1) {
        let s = 0.25 * 0.5f64.powi(k as i32);
        let c = gamma_can(s);
        for (v, at) in [(gamma.eval(s), s), (gamma.eval_from_right(s), 1.0 - s)] {
            let ratio = (v - c).abs() / (c * c);
            if !ratio.is_finite() {
                worst_ratio = f64::INFINITY;
                worst_ratio_at = at;
            } else if ratio > worst_ratio {
                worst_ratio = ratio;
                worst_ratio_at = at;
            }
        }
        left_slope = gamma.eval(s) / s;
        right_slope = gamma.eval_from_right(s) / s;
    }
    if !(worst_ratio <= constant) {
        failures.push(format!(
            "|γ - γ_can|/γ_can² reaches {worst_ratio:.6e} at x = {worst_ratio_at:.6e}, above C = {constant}"
        ));
    }

    ClassGReport {
        constant,
        passed: failures.is_empty(),
        positive_interior,
        gamma_at_0,
        gamma_at_1,
        worst_ratio,
        worst_ratio_at,
        left_slope,
        right_slope,
        failures,
    }
}

/// Outcome of [`validate_hermitian`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianReport {
    pub degree: u32,
    pub passed: bool,
    pub positive: bool,
    pub min_value: f64,
    pub min_at: f64,
    /// Extrapolated `lim_{x→1⁻} h̄(x)/(1 - x)^m`.
    pub limit_coefficient: f64,
    /// Difference between the last two extrapolants.
    pub limit_change: f64,
    pub failures: Vec<String>,
}

/// Smallest admissible `|lim h̄/(1 - x)^m|`.
pub const LIMIT_FLOOR: f64 = 1e-8;

/// Checks positivity of `h̄` on `[0, 1)` and that `h̄(x)/(1 - x)^m` has a
/// finite nonzero limit at 1.
pub fn validate_hermitian(h: &HermitianProfile) -> HermitianReport {
    let m = h.degree() as i32;
    let mut failures = Vec::new();

    let mut min_value = f64::INFINITY;
    let mut min_at = 0.0;
    for i in 0..INTERIOR_GRID {
        let x = i as f64 / INTERIOR_GRID as f64;
        let v = if x <= 0.5 {
            h.eval(x)
        } else {
            h.eval_from_right(1.0 - x)
        };
        if !(v >= min_value) {
            min_value = v;
            min_at = x;
        }
    }
    let positive = min_value > 0.0 && min_value.is_finite();
    if !positive {
        failures.push(format!("h̄({min_at}) = {min_value} is not positive"));
    }

    let quotient = |k: i32| {
        let t = 0.5f64.powi(k);
        h.eval_from_right(t) / t.powi(m)
    };
    let extrapolant = |k: i32| 2.0 * quotient(k + 1) - quotient(k);
    let last = extrapolant(40);
    let prev = extrapolant(39);
    let limit_change = (last - prev).abs();
    if !last.is_finite() {
        failures.push("h̄(x)/(1 - x)^m has no finite limit at x = 1".into());
    } else if last.abs() < LIMIT_FLOOR {
        failures.push(format!("h̄(x)/(1 - x)^m tends to {last:.3e}, effectively zero"));
    } else if limit_change > 1e-6 * last.abs() {
        failures.push(format!(
            "h̄(x)/(1 - x)^m does not settle: successive extrapolants differ by {limit_change:.3e}"
        ));
    }

    HermitianReport {
        degree: h.degree(),
        passed: failures.is_empty(),
        positive,
        min_value,
        min_at,
        limit_coefficient: last,
        limit_change,
        failures,
    }
}
