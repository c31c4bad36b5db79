use super::zeros::{zeros_l_mn, zeros_l_mn_below, ZERO_TOL};
use crate::error::{Error, Result};
use crate::spectrum::{Method, SpectrumResult};

const MERGE_TOL: f64 = 1e-9;

/// Spectrum of the canonical pair `(γ_can, h̄_{m,∞})` from the zeros of
/// `L_{m,n}`: `{0} ∪ {ξ²/2}`.
///
/// With `invariant_only` only `n = 0` contributes. Otherwise ladders for
/// `n = 0, 1, 2, …` are merged until the `count` smallest nonzero values no
/// longer change; multiplicities count the orders `n` sharing a value.
pub fn canonical_spectrum(m: u32, count: usize, invariant_only: bool) -> Result<SpectrumResult> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let base = zeros_l_mn(m, 0, count)?;
    let mut xis: Vec<f64> = base.zeros.clone();
    if !invariant_only {
        let mut threshold = *xis.last().unwrap();
        let mut quiet = 0;
        let mut n = 1i32;
        while quiet < 3 || n <= m as i32 {
            let ladder = zeros_l_mn_below(m, n, threshold)?;
            if ladder.zeros.is_empty() {
                quiet += 1;
            } else {
                quiet = 0;
                xis.extend(ladder.zeros);
                xis.sort_by(f64::total_cmp);
                // keep every copy of values up to the count-th distinct one
                let cut = distinct_prefix(&xis, count);
                xis.truncate(cut);
                threshold = *xis.last().unwrap();
            }
            n += 1;
            if n > 10_000 {
                return Err(Error::NoConvergence("order sweep did not terminate".into()));
            }
        }
    }
    let mut raw = Vec::with_capacity(xis.len() + 1);
    let mut err = Vec::with_capacity(xis.len() + 1);
    raw.push(0.0);
    err.push(0.0);
    for &xi in &xis {
        raw.push(xi * xi);
        err.push(xi * ZERO_TOL);
    }
    Ok(SpectrumResult::from_raw(&raw, &err, 0.5, Method::Bessel, MERGE_TOL))
}

fn distinct_prefix(sorted: &[f64], count: usize) -> usize {
    let mut distinct = 0;
    for (i, &v) in sorted.iter().enumerate() {
        let new = i == 0 || (v - sorted[i - 1]).abs() > MERGE_TOL * v.abs();
        if new {
            distinct += 1;
            if distinct > count {
                return i;
            }
        }
    }
    sorted.len()
}
