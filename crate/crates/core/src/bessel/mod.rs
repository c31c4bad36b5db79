//! Integer-order Bessel functions of the first kind, the `L_{m,n}` family and
//! its zero ladders.
//!
//! `J_n` is evaluated by its power series for `z <= Z_SWITCH` and by Miller's
//! backward recurrence, normalized with `J_0 + 2 Σ J_{2k} = 1`, beyond. Both
//! schemes keep absolute errors near `1e-15` for `z <= 50`.

mod spectrum;
mod zeros;

pub use spectrum::canonical_spectrum;
pub use zeros::{l_mn, zeros_l_mn, zeros_l_mn_below, ZeroLadder};

/// Largest argument evaluated by the power series.
pub const Z_SWITCH: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    PowerSeries,
    MillerRecurrence,
}

/// Evaluator for `J_n` of a fixed integer order.
#[derive(Debug, Clone, Copy)]
pub struct BesselEvaluator {
    order: i32,
    z_switch: f64,
}

impl BesselEvaluator {
    pub fn new(order: i32) -> Self {
        BesselEvaluator {
            order,
            z_switch: Z_SWITCH,
        }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn scheme(&self, z: f64) -> Scheme {
        if z.abs() <= self.z_switch {
            Scheme::PowerSeries
        } else {
            Scheme::MillerRecurrence
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        bessel_j(self.order, z)
    }

    /// `J_n'(z) = (J_{n-1}(z) - J_{n+1}(z)) / 2`.
    pub fn derivative(&self, z: f64) -> f64 {
        bessel_j_prime(self.order, z)
    }
}

/// `J_n(z)` for any integer `n` and real `z`.
pub fn bessel_j(n: i32, z: f64) -> f64 {
    if z < 0.0 {
        return parity(n) * bessel_j(n, -z);
    }
    let k = n.unsigned_abs() as usize;
    let v = if z <= Z_SWITCH {
        series(k, z)
    } else {
        miller(k, z)[k]
    };
    if n < 0 {
        parity(n) * v
    } else {
        v
    }
}

/// `J_n'(z)`.
pub fn bessel_j_prime(n: i32, z: f64) -> f64 {
    0.5 * (bessel_j(n - 1, z) - bessel_j(n + 1, z))
}

/// `J_0(z), …, J_{nmax}(z)` for `z >= 0` in one pass.
pub fn bessel_j_orders(nmax: usize, z: f64) -> Vec<f64> {
    assert!(z >= 0.0, "bessel_j_orders expects a non-negative argument");
    if z <= Z_SWITCH {
        (0..=nmax).map(|k| series(k, z)).collect()
    } else {
        let mut v = miller(nmax, z);
        v.truncate(nmax + 1);
        v
    }
}

fn parity(n: i32) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Power series with Neumaier-compensated summation.
fn series(n: usize, z: f64) -> f64 {
    let half = 0.5 * z;
    let mut term = 1.0;
    for i in 1..=n {
        term *= half / i as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut sum = term;
    let mut comp = 0.0;
    let mut k = 1usize;
    loop {
        term *= q / (k as f64 * (n + k) as f64);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if term.abs() <= 1e-18 * sum.abs() && k > 2 {
            break;
        }
        k += 1;
        if k > 500 {
            break;
        }
    }
    sum + comp
}

/// Miller's backward recurrence; returns `J_0 ..= J_{max(nmax, start)}`
/// (at least `nmax + 1` entries).
fn miller(nmax: usize, z: f64) -> Vec<f64> {
    debug_assert!(z > 0.0);
    let base = (nmax as f64).max(z);
    let mut start = (base + 30.0 + 6.0 * base.cbrt()).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let mut j = vec![0.0; start + 2];
    j[start] = 1e-30;
    let two_over_z = 2.0 / z;
    for k in (1..=start).rev() {
        j[k - 1] = k as f64 * two_over_z * j[k] - j[k + 1];
        if j[k - 1].abs() > 1e250 {
            for v in j[k - 1..].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    let mut norm = j[0];
    let mut k = 2;
    while k <= start {
        norm += 2.0 * j[k];
        k += 2;
    }
    for v in j.iter_mut() {
        *v /= norm;
    }
    j
}
