//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Bisection on a bracket `[lo, hi]` where `f(lo)` and `f(hi)` have opposite
/// signs, stopping once the bracket is narrower than
/// `abs_tol + rel_tol * |midpoint|`, followed by safeguarded Newton steps when
/// a derivative is supplied.
pub fn bracketed_root(
    mut f: impl FnMut(f64) -> f64,
    df: Option<&mut dyn FnMut(f64) -> f64>,
    mut lo: f64,
    mut hi: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return Err(Error::Bracket(format!(
            "f({lo}) = {flo}, f({hi}) = {fhi} do not straddle zero"
        )));
    }
    let mut iterations = 0;
    while (hi - lo).abs() > abs_tol + rel_tol * (0.5 * (lo + hi)).abs() {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > 2000 {
            return Err(Error::NoConvergence(format!(
                "bisection stalled on [{lo}, {hi}]"
            )));
        }
    }
    let mut x = 0.5 * (lo + hi);
    if let Some(df) = df {
        let (a, b) = (lo.min(hi), lo.max(hi));
        for _ in 0..4 {
            let fx = f(x);
            let d = df(x);
            if fx == 0.0 || d == 0.0 || !d.is_finite() {
                break;
            }
            let next = x - fx / d;
            if !(next >= a && next <= b) {
                break;
            }
            if next == x {
                break;
            }
            x = next;
        }
    }
    Ok(x)
}
