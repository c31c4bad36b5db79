//! Smallest eigenpairs of `K v = μ M v` for symmetric tridiagonal `K`, `M`
//! with `M` positive definite: spectrum slicing by Sylvester inertia,
//! bisection, then inverse iteration.

use rayon::prelude::*;

use super::assemble::{DiscreteForms, SymTridiagonal};
use crate::error::{Error, Result};

/// Eigenvalues in increasing order with `M`-orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

const SHIFT_RETRIES: usize = 8;

/// Number of negative pivots of `LDLᵀ = K - σM`, i.e. the number of
/// eigenvalues below `σ`. `None` on an exactly zero pivot.
fn inertia_once(k: &SymTridiagonal, m: &SymTridiagonal, sigma: f64) -> Option<usize> {
    let n = k.dim();
    let mut count = 0;
    let mut d = k.diag[0] - sigma * m.diag[0];
    for i in 0..n {
        if i > 0 {
            let e = k.off[i - 1] - sigma * m.off[i - 1];
            d = (k.diag[i] - sigma * m.diag[i]) - e * e / d;
        }
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    Some(count)
}

const LANES: usize = 8;

/// [`inertia_once`] for up to `LANES` shifts in one sweep; the independent
/// pivot recurrences overlap in the pipeline.
fn inertia_lanes(k: &SymTridiagonal, m: &SymTridiagonal, shifts: &[f64]) -> [Option<usize>; LANES] {
    let lanes = shifts.len();
    debug_assert!(lanes <= LANES);
    let mut s = [0.0; LANES];
    s[..lanes].copy_from_slice(shifts);
    let mut d = [1.0; LANES];
    let mut count = [0usize; LANES];
    let mut broken = [false; LANES];
    let n = k.dim();
    for i in 0..n {
        let kd = k.diag[i];
        let md = m.diag[i];
        if i == 0 {
            for l in 0..LANES {
                d[l] = kd - s[l] * md;
            }
        } else {
            let ko = k.off[i - 1];
            let mo = m.off[i - 1];
            for l in 0..LANES {
                let e = ko - s[l] * mo;
                d[l] = (kd - s[l] * md) - e * e / d[l];
            }
        }
        for l in 0..LANES {
            broken[l] |= d[l] == 0.0 || !d[l].is_finite();
            count[l] += (d[l] < 0.0) as usize;
        }
    }
    let mut out = [None; LANES];
    for l in 0..lanes {
        if !broken[l] {
            out[l] = Some(count[l]);
        }
    }
    out
}

/// Counts below each shift, batched; breakdowns fall back to
/// [`count_below`].
fn count_many(forms: &DiscreteForms, shifts: &[f64]) -> Result<Vec<usize>> {
    let chunks: Vec<Vec<usize>> = shifts
        .par_chunks(LANES)
        .map(|chunk| {
            let r = inertia_lanes(&forms.stiffness, &forms.mass, chunk);
            chunk
                .iter()
                .zip(r)
                .map(|(&s, c)| match c {
                    Some(c) => Ok(c),
                    None => count_below(forms, s),
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Eigenvalue count below `σ`, nudging the shift on pivot breakdown.
pub fn count_below(forms: &DiscreteForms, sigma: f64) -> Result<usize> {
    let mut s = sigma;
    for attempt in 0..SHIFT_RETRIES {
        if let Some(c) = inertia_once(&forms.stiffness, &forms.mass, s) {
            return Ok(c);
        }
        // σM must move K by at least an ulp, so small shifts are nudged on
        // the scale of the pencil
        let spread = pencil_scale(forms);
        let nudge = f64::EPSILON * 4f64.powi(attempt as i32 + 1) * sigma.abs().max(spread);
        s = sigma + nudge;
    }
    Err(Error::Breakdown { shift: sigma })
}

/// Rough upper bound on the largest eigenvalue: `max K_ii / min M_ii`.
fn pencil_scale(forms: &DiscreteForms) -> f64 {
    let k = forms.stiffness.diag.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let m = forms.mass.diag.iter().fold(f64::INFINITY, |a, &v| a.min(v));
    if m > 0.0 {
        k / m
    } else {
        k
    }
}

fn check_mass(m: &SymTridiagonal) -> Result<()> {
    let mut d = m.diag[0];
    for i in 0..m.dim() {
        if i > 0 {
            d = m.diag[i] - m.off[i - 1] * m.off[i - 1] / d;
        }
        if !(d > 0.0) {
            return Err(Error::MassNotPositive { row: i, pivot: d });
        }
    }
    Ok(())
}

/// Solves `(K - σM) x = b` by Gaussian elimination with partial pivoting.
fn shifted_solve(k: &SymTridiagonal, m: &SymTridiagonal, sigma: f64, b: &[f64]) -> Vec<f64> {
    let n = k.dim();
    // rows of the banded matrix: sub (a), diagonal (d), super (c), and the
    // second superdiagonal created by pivoting (c2)
    let mut a: Vec<f64> = (0..n).map(|i| if i > 0 { k.off[i - 1] - sigma * m.off[i - 1] } else { 0.0 }).collect();
    let mut d: Vec<f64> = (0..n).map(|i| k.diag[i] - sigma * m.diag[i]).collect();
    let mut c: Vec<f64> = (0..n).map(|i| if i + 1 < n { k.off[i] - sigma * m.off[i] } else { 0.0 }).collect();
    let mut c2 = vec![0.0; n];
    let mut x = b.to_vec();
    let tiny = f64::EPSILON * d.iter().chain(&c).fold(0.0f64, |s, v| s.max(v.abs())).max(f64::MIN_POSITIVE);
    for i in 0..n.saturating_sub(1) {
        if a[i + 1].abs() > d[i].abs() {
            // swap rows i and i + 1
            std::mem::swap(&mut d[i], &mut a[i + 1]);
            std::mem::swap(&mut c[i], &mut d[i + 1]);
            if i + 2 < n {
                c2[i] = c[i + 1];
                c[i + 1] = 0.0;
            }
            x.swap(i, i + 1);
        }
        if d[i] == 0.0 {
            d[i] = tiny;
        }
        let l = a[i + 1] / d[i];
        d[i + 1] -= l * c[i];
        if i + 2 < n {
            c[i + 1] -= l * c2[i];
        }
        x[i + 1] -= l * x[i];
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        if i + 1 < n {
            s -= c[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= c2[i] * x[i + 2];
        }
        x[i] = s / d[i];
    }
    x
}

fn m_normalize(m: &SymTridiagonal, v: &mut [f64]) {
    let norm = m.quadratic_form(v).sqrt();
    // largest component positive
    let pivot = v.iter().fold(0.0f64, |best, &x| if x.abs() > best.abs() { x } else { best });
    let scale = if pivot < 0.0 { -1.0 / norm } else { 1.0 / norm };
    for x in v.iter_mut() {
        *x *= scale;
    }
}

/// `vᵀKv` as `Σ r_i v_i² + Σ (-k_{i,i+1})(v_{i+1} - v_i)²` with row sums
/// `r_i`; exact for vectors in the kernel of a zero-row-sum `K`.
fn stiffness_form(k: &SymTridiagonal, v: &[f64]) -> f64 {
    let n = k.dim();
    let mut s = 0.0;
    for i in 0..n {
        let mut r = k.diag[i];
        if i > 0 {
            r += k.off[i - 1];
        }
        if i + 1 < n {
            r += k.off[i];
            s -= k.off[i] * (v[i + 1] - v[i]).powi(2);
        }
        s += r * v[i] * v[i];
    }
    s
}

fn inverse_iteration(forms: &DiscreteForms, values: &[f64], j: usize, scale: f64) -> Vec<f64> {
    let k = &forms.stiffness;
    let m = &forms.mass;
    let mu = values[j];
    // shift slightly below the eigenvalue; separation from neighbours keeps
    // the iteration on this one
    let gap = [j.checked_sub(1).map(|i| values[i]), values.get(j + 1).copied()]
        .into_iter()
        .flatten()
        .map(|v| (v - mu).abs())
        .fold(f64::INFINITY, f64::min);
    let delta = (1e-10 * scale).min(0.01 * gap.max(f64::MIN_POSITIVE));
    let sigma = mu - delta;
    let n = k.dim();
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + ((i * 7919 + j * 104_729) % 101) as f64 * 1e-3).collect();
    m_normalize(m, &mut v);
    for _ in 0..4 {
        let rhs = m.mul_vec(&v);
        v = shifted_solve(k, m, sigma, &rhs);
        m_normalize(m, &mut v);
    }
    v
}

/// Relative size below which an eigenvalue is recomputed as a Rayleigh
/// quotient; inertia counts near a singular `K` only resolve such values to
/// about `ε‖K‖/‖M‖`.
const SMALL_EIGENVALUE: f64 = 1e-6;

/// Relative bracket width at which bisection stops.
const RELATIVE_TOL: f64 = 1e-13;

/// Bisection for `μ_0 … μ_{count-1}` at once. Every count `c` at a shift
/// `σ` narrows all brackets (`μ_k < σ` iff `k < c`), so early rounds act as
/// a spectrum slicing shared by all eigenvalues.
fn multisection(forms: &DiscreteForms, count: usize, lo0: f64, hi0: f64) -> Result<Vec<f64>> {
    let floor = 1e-15 * hi0.max(1.0);
    let mut lo = vec![lo0; count];
    let mut hi = vec![hi0; count];
    let done = |a: f64, b: f64| {
        let mid = 0.5 * (a + b);
        b - a <= (RELATIVE_TOL * mid.abs()).max(floor) || mid <= a || mid >= b
    };
    loop {
        let mut shifts: Vec<f64> = (0..count)
            .filter(|&j| !done(lo[j], hi[j]))
            .map(|j| 0.5 * (lo[j] + hi[j]))
            .collect();
        if shifts.is_empty() {
            break;
        }
        shifts.dedup();
        let counts = count_many(forms, &shifts)?;
        // brackets stay sorted in j, so only a contiguous run changes
        for (&sigma, &c) in shifts.iter().zip(&counts) {
            let c = c.min(count);
            for h in hi[..c].iter_mut().rev() {
                if sigma >= *h {
                    break;
                }
                *h = sigma;
            }
            for l in lo[c..].iter_mut() {
                if sigma <= *l {
                    break;
                }
                *l = sigma;
            }
        }
    }
    Ok(lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect())
}

/// Eigenvalues only.
pub fn eigenvalues(forms: &DiscreteForms, count: usize) -> Result<Vec<f64>> {
    let n = forms.stiffness.dim();
    if count == 0 || count > n {
        return Err(Error::InvalidArgument(format!(
            "requested {count} eigenvalues of a pencil of size {n}"
        )));
    }
    check_mass(&forms.mass)?;
    let mut lo = -1.0;
    while count_below(forms, lo)? > 0 {
        lo *= 2.0;
        if lo < -1e300 {
            return Err(Error::NoConvergence("no lower bound for the spectrum".into()));
        }
    }
    let mut hi = 1.0;
    while count_below(forms, hi)? < count {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::NoConvergence("no upper bound for the spectrum".into()));
        }
    }
    let mut values = multisection(forms, count, lo, hi)?;
    let scale = values[count - 1].abs().max(1.0);
    for j in 0..count {
        if values[j].abs() <= SMALL_EIGENVALUE * scale {
            let v = inverse_iteration(forms, &values, j, scale);
            values[j] = stiffness_form(&forms.stiffness, &v) / forms.mass.quadratic_form(&v);
        }
    }
    Ok(values)
}

/// The `count` smallest eigenpairs.
pub fn solve_generalized(forms: &DiscreteForms, count: usize) -> Result<Eigenpairs> {
    let values = eigenvalues(forms, count)?;
    let scale = values[count - 1].abs().max(1.0);
    let vectors = (0..count)
        .into_par_iter()
        .map(|j| inverse_iteration(forms, &values, j, scale))
        .collect();
    Ok(Eigenpairs { values, vectors })
}
