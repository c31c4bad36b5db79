//! Legendre–Fenchel transform `F̌(x) = inf_u (x u - F(u))` and the moment
//! coordinate `x = ∂F/∂u`.

use std::f64::consts::PI;

use super::potential::KahlerPotential;
use crate::error::{Error, Result};
use crate::roots::bracketed_root;

const BRACKET_LIMIT: f64 = 1e3;

fn residual(f: &KahlerPotential, x: f64, u: f64) -> f64 {
    // decreasing in u; written through 1 - d1 when x is close to 1
    if x <= 0.5 {
        f.d1(u) - x
    } else {
        (1.0 - x) - f.d1_complement(u)
    }
}

/// `G(x)`, the unique `u` with `∂F/∂u(u) = x`, for `x ∈ (0, 1)`.
pub fn moment_inverse(f: &KahlerPotential, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::OutsideUnitInterval { x });
    }
    let mut lo = -1.0;
    let mut hi = 1.0;
    while residual(f, x, lo) < 0.0 {
        lo *= 2.0;
        if lo < -BRACKET_LIMIT {
            return Err(Error::Bracket(format!(
                "dF/du stays below {x} on [{lo}, ∞) for {}",
                f.name()
            )));
        }
    }
    while residual(f, x, hi) > 0.0 {
        hi *= 2.0;
        if hi > BRACKET_LIMIT {
            return Err(Error::Bracket(format!(
                "dF/du stays above {x} on (-∞, {hi}] for {}",
                f.name()
            )));
        }
    }
    let mut d = |u: f64| f.d2(u);
    let u = bracketed_root(|u| residual(f, x, u), Some(&mut d), lo, hi, 1e-12, 1e-12)?;
    let d2 = f.d2(u);
    if !(d2 < 0.0) {
        return Err(Error::NonConcave { u, d2 });
    }
    let r = residual(f, x, u);
    if r.abs() > 1e-9 * x.min(1.0 - x).max(1e-300) + 1e-15 {
        return Err(Error::NoConvergence(format!(
            "moment inverse at x = {x}: residual {r:e} at u = {u}"
        )));
    }
    Ok(u)
}

/// `F̌(x)`; interior points by inversion of `∂F/∂u`, endpoints by limits.
pub fn legendre_fenchel(f: &KahlerPotential, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!(
            "Legendre-Fenchel transform is finite only on [0, 1], got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(-f.limit_plus());
    }
    if x == 1.0 {
        return Ok(f.limit_minus_offset());
    }
    let u = moment_inverse(f, x)?;
    Ok(x * u - f.eval(u))
}

/// `γ(x) = -∂²F/∂u²(G(x))`.
pub fn gamma_from_potential(f: &KahlerPotential, x: f64) -> Result<f64> {
    let u = moment_inverse(f, x)?;
    Ok(-f.d2(u))
}

/// Density of `ω` against the affine area element: `-F''(u) e^{2u} / 4π`.
pub fn density_from_potential(f: &KahlerPotential, u: f64) -> f64 {
    let v = -f.d2(u);
    if v == 0.0 {
        0.0
    } else {
        (v.ln() + 2.0 * u).exp() / (4.0 * PI)
    }
}

/// The limits `l_g = lim_{u→+∞} 2 / (-F'' e^{2u})` and
/// `l_{g*} = lim_{u→-∞} 2 / (-F'' e^{-2u})`.
pub fn density_limits(f: &KahlerPotential) -> (f64, f64) {
    let u = 2.0 * f.truncation_radius();
    let plus = (-f.d2(u)).ln() + 2.0 * u;
    let minus = (-f.d2(-u)).ln() + 2.0 * u;
    (2.0 / plus.exp(), 2.0 / minus.exp())
}

/// Concave conjugate `inf_{x ∈ (0,1)} (u x - L(x))` of a strictly concave `L`
/// on `(0, 1)` with decreasing derivative `L' = G` onto ℝ.
pub fn concave_conjugate(
    value: impl Fn(f64) -> Result<f64>,
    derivative: impl Fn(f64) -> Result<f64>,
    u: f64,
) -> Result<f64> {
    // logit parametrization keeps both ends resolvable
    let x_of = |y: f64| 1.0 / (1.0 + (-y).exp());
    let g = |y: f64| derivative(x_of(y)).map(|v| v - u);
    let mut lo = -1.0;
    let mut hi = 1.0;
    while g(lo)? < 0.0 {
        lo *= 2.0;
        if lo < -700.0 {
            return Err(Error::Bracket(format!("derivative stays below {u} near x = 0")));
        }
    }
    while g(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 700.0 {
            return Err(Error::Bracket(format!("derivative stays above {u} near x = 1")));
        }
    }
    let mut failure = None;
    let y = bracketed_root(
        |y| match g(y) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        None,
        lo,
        hi,
        1e-14,
        1e-14,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let x = x_of(y);
    Ok(u * x - value(x)?)
}

/// `F̌̌(u)`: the conjugate of `F̌`, computed from [`legendre_fenchel`] and
/// [`moment_inverse`]. Reproduces `F` for admissible potentials.
///
/// For `u < 0` the minimizer `x` is close to 1, so the conjugate is taken
/// on the reflected potential instead: `F̌̌(u) = u + F̌̌*(-u)`.
pub fn double_legendre(f: &KahlerPotential, u: f64) -> Result<f64> {
    if u < 0.0 {
        let r = f.reflect();
        return Ok(u + concave_conjugate(|x| legendre_fenchel(&r, x), |x| moment_inverse(&r, x), -u)?);
    }
    concave_conjugate(|x| legendre_fenchel(f, x), |x| moment_inverse(f, x), u)
}
