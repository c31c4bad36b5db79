use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use super::bessel_j_orders;
use crate::error::{Error, Result};
use crate::format::sig;
use crate::roots::bracketed_root;

/// Below this argument `L_{m,n}` is summed from the product series, which
/// avoids the cancellation between the three derivative terms.
const SERIES_SWITCH: f64 = 1.0;
const SCAN_START: f64 = 1e-3;
const SCAN_STEP: f64 = 0.5;

/// `L_{m,n}(z) = -z^m d/dz (z^{-m} J_n(z) J_{n-m}(z))` for `z > 0`.
pub fn l_mn(m: u32, n: i32, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "L_{{m,n}} needs z > 0, got {z}"
        )));
    }
    let a = n;
    let b = n - m as i32;
    if z < SERIES_SWITCH {
        return Ok(l_mn_series(m, a, b, z));
    }
    let top = a.unsigned_abs().max(b.unsigned_abs()) as usize + 1;
    let js = bessel_j_orders(top, z);
    let j = |k: i32| -> f64 {
        let v = js[k.unsigned_abs() as usize];
        if k < 0 && k % 2 != 0 {
            -v
        } else {
            v
        }
    };
    let ja = j(a);
    let jb = j(b);
    let dja = 0.5 * (j(a - 1) - j(a + 1));
    let djb = 0.5 * (j(b - 1) - j(b + 1));
    Ok(-(dja * jb + ja * djb - (m as f64 / z) * ja * jb))
}

/// Series of the product `J_a J_b` (DLMF 10.8.3), differentiated termwise.
fn l_mn_series(m: u32, a: i32, b: i32, z: f64) -> f64 {
    let sign = {
        let mut s = 1.0;
        if a < 0 && a % 2 != 0 {
            s = -s;
        }
        if b < 0 && b % 2 != 0 {
            s = -s;
        }
        s
    };
    let p = a.unsigned_abs() as u64;
    let q = b.unsigned_abs() as u64;
    let half = 0.5 * z;
    // c_0 = (z/2)^{p+q} / (p! q!), expressed per power of z below.
    let mut c = 1.0;
    for i in 1..=p {
        c *= half / i as f64;
    }
    for i in 1..=q {
        c *= half / i as f64;
    }
    let mut acc = 0.0;
    let mut k: u64 = 0;
    loop {
        let power = (p + q + 2 * k) as f64;
        // term of z^{-m} J_a J_b is c z^{-m}; its derivative times -z^m:
        let t = -(power - m as f64) * c / z;
        acc += t;
        k += 1;
        let pk = p + q + 2 * k;
        c *= -half * half * (pk as f64) * (pk as f64 - 1.0)
            / ((k as f64) * ((p + k) as f64) * ((q + k) as f64) * ((p + q + k) as f64));
        if c.abs() < 1e-18 * acc.abs().max(f64::MIN_POSITIVE) || k > 200 || c == 0.0 {
            break;
        }
    }
    sign * acc
}

/// Ordered positive zeros `ξ_1 < ξ_2 < …` of `L_{m,n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroLadder {
    pub m: u32,
    pub n: i32,
    pub zeros: Vec<f64>,
    pub tolerance: f64,
}

impl ZeroLadder {
    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    /// CSV rows `m,n,j,xi,lambda` with `lambda = xi² / 2`, 15 significant
    /// digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,n,j,xi,lambda\n");
        self.write_rows(&mut s);
        s
    }

    pub fn write_rows(&self, s: &mut String) {
        for (i, &xi) in self.zeros.iter().enumerate() {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                self.m,
                self.n,
                i + 1,
                sig(xi, 15),
                sig(0.5 * xi * xi, 15)
            );
        }
    }
}

/// Refinement tolerance on the zero locations.
pub const ZERO_TOL: f64 = 1e-14;

fn refine(m: u32, n: i32, a: f64, b: f64) -> Result<f64> {
    bracketed_root(
        |z| l_mn(m, n, z).unwrap_or(f64::NAN),
        None,
        a,
        b,
        ZERO_TOL,
        0.0,
    )
}

/// Scans `(0, z_max]` and refines every sign change, stopping early once
/// `limit` zeros are found.
fn scan(m: u32, n: i32, z_max: f64, limit: usize) -> Result<Vec<f64>> {
    let mut zeros = Vec::new();
    let mut a = SCAN_START;
    let mut fa = l_mn(m, n, a)?;
    while a < z_max && zeros.len() < limit {
        let b = (a + SCAN_STEP).min(z_max);
        let mid = 0.5 * (a + b);
        let fm = l_mn(m, n, mid)?;
        let fb = l_mn(m, n, b)?;
        for (lo, flo, hi, fhi) in [(a, fa, mid, fm), (mid, fm, b, fb)] {
            if flo == 0.0 {
                if lo > SCAN_START && zeros.last().is_none_or(|&z: &f64| z < lo) {
                    zeros.push(lo);
                }
            } else if flo.signum() != fhi.signum() && fhi != 0.0 {
                zeros.push(refine(m, n, lo, hi)?);
            }
        }
        a = b;
        fa = fb;
    }
    zeros.truncate(limit);
    Ok(zeros)
}

/// The first `count` positive zeros of `L_{m,n}`.
pub fn zeros_l_mn(m: u32, n: i32, count: usize) -> Result<ZeroLadder> {
    if count == 0 {
        return Err(Error::InvalidArgument("zero count must be at least 1".into()));
    }
    let z_max = 2.0 * count as f64 + n.unsigned_abs() as f64 + m as f64 + 50.0;
    let zeros = scan(m, n, z_max, count)?;
    if zeros.len() < count {
        return Err(Error::ScanBudget {
            z_max,
            found: zeros.len(),
            wanted: count,
        });
    }
    Ok(ZeroLadder {
        m,
        n,
        zeros,
        tolerance: ZERO_TOL,
    })
}

/// All positive zeros of `L_{m,n}` in `(0, z_max]`.
pub fn zeros_l_mn_below(m: u32, n: i32, z_max: f64) -> Result<ZeroLadder> {
    let zeros = scan(m, n, z_max, usize::MAX)?;
    Ok(ZeroLadder {
        m,
        n,
        zeros,
        tolerance: ZERO_TOL,
    })
}
