use serde::{Deserialize, Serialize};

use super::hermitian::{canonical_hermitian, HermitianProfile};
use super::symplectic::{gamma_can, SymplecticProfile};

const UNIFORM: usize = 2048;
const LADDER: i32 = 40;

/// Verdicts of [`check_hypothesis`].
///
/// `lower_ok` and `upper_ok` test `h̄ ≥ h̄_{m,∞}` and `h̄ γ ≤ h̄_{m,∞} γ_can`
/// on the closed interval; these are what the eigenvalue bound needs.
/// `strict_interior` tests `1 < h̄/h̄_{m,∞} < γ_can/γ` at interior points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub m: u32,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub strict_interior: bool,
    /// `min (h̄ - h̄_{m,∞})`.
    pub worst_margin_lower: f64,
    pub worst_margin_lower_at: f64,
    /// `min (h̄_{m,∞} γ_can - h̄ γ)`.
    pub worst_margin_upper: f64,
    pub worst_margin_upper_at: f64,
    /// `min over the interior of min(h̄/h̄_{m,∞} - 1, γ_can/γ - h̄/h̄_{m,∞})`.
    pub strict_margin: f64,
    pub strict_margin_at: f64,
    pub grid_points: usize,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// Grid of `(x, t = 1 - x, left)` with a uniform core and geometric ladders
/// toward both endpoints; `left` selects evaluation in `x` or in `t`.
fn grid() -> Vec<(f64, f64, bool)> {
    let mut pts = Vec::new();
    pts.push((0.0, 1.0, true));
    for k in (1..=LADDER).rev() {
        let s = 0.5f64.powi(k + 3);
        pts.push((s, 1.0 - s, true));
    }
    for i in 1..UNIFORM {
        let x = i as f64 / UNIFORM as f64;
        if x <= 0.5 {
            pts.push((x, 1.0 - x, true));
        } else {
            pts.push((x, 1.0 - x, false));
        }
    }
    for k in 1..=LADDER {
        let t = 0.5f64.powi(k + 3);
        pts.push((1.0 - t, t, false));
    }
    pts.push((1.0, 0.0, false));
    pts
}

/// Evaluates both forms of the hypothesis for `(γ, h̄)` on `O(m)`.
pub fn check_hypothesis(gamma: &SymplecticProfile, h: &HermitianProfile, m: u32) -> HypothesisReport {
    let pts = grid();
    let mut lower = (f64::INFINITY, 0.0);
    let mut upper = (f64::INFINITY, 0.0);
    let mut strict = (f64::INFINITY, 0.5);
    for &(x, t, left) in &pts {
        let (g, hv, hinf, gc) = if left {
            (gamma.eval(x), h.eval(x), canonical_hermitian(m, x), gamma_can(x))
        } else {
            (
                gamma.eval_from_right(t),
                h.eval_from_right(t),
                (2.0 * t).min(1.0).powi(m as i32),
                gamma_can(t),
            )
        };
        let lo = hv - hinf;
        if !(lo >= lower.0) {
            lower = (lo, x);
        }
        let up = hinf * gc - hv * g;
        if !(up >= upper.0) {
            upper = (up, x);
        }
        if x > 0.0 && x < 1.0 {
            let q = hv / hinf;
            let s = (q - 1.0).min(gc / g - q);
            if !(s >= strict.0) {
                strict = (s, x);
            }
        }
    }
    HypothesisReport {
        m,
        lower_ok: lower.0 >= 0.0,
        upper_ok: upper.0 >= 0.0,
        strict_interior: strict.0 > 0.0,
        worst_margin_lower: lower.0,
        worst_margin_lower_at: lower.1,
        worst_margin_upper: upper.0,
        worst_margin_upper_at: upper.1,
        strict_margin: strict.0,
        strict_margin_at: strict.1,
        grid_points: pts.len(),
    }
}
