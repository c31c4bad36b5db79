//! Potential of a class-𝒢 profile: `G_g(x) = -∫_{½}^x ds/γ(s)`,
//! `L_g(x) = ∫_{½}^x G_g`, `F_g(u) = inf_x (u x - L_g(x))`.
//!
//! `1/γ` has `1/(2x)` singularities at both ends. The canonical part
//! `1/γ_can` is integrated in closed form and only the bounded remainder
//! `r = 1/γ - 1/γ_can` is integrated numerically, on adaptively refined
//! Gauss–Legendre panels graded geometrically toward each endpoint. The two
//! halves are tabulated separately in the distance to their endpoint, so
//! points `1 - t` with `t` below machine epsilon stay resolvable.

use std::sync::Arc;

use super::potential::{KahlerPotential, PotentialFn, DEFAULT_TRUNCATION};
use super::symplectic::SymplecticProfile;
use super::validate::validate_class_g;
use crate::error::{Error, Result};
use crate::quadrature::rule;
use crate::roots::bracketed_root;

/// Smallest panel boundary of the geometric grading.
const S_MIN: f64 = 1e-17;
const PANEL_TOL: f64 = 1e-15;
const MAX_DEPTH: usize = 40;

/// Tabulated integrals for one half of `[0, 1]`, in the coordinate `s`
/// measuring the distance to the endpoint (`s ∈ (0, ½]`).
#[derive(Debug)]
struct HalfTable {
    gamma: SideFn,
    /// Panel boundaries, decreasing from ½ to `S_MIN`.
    bounds: Vec<f64>,
    /// `R(b) = ∫_{½}^{b} r` at each boundary.
    r_int: Vec<f64>,
    /// `S(b) = ∫_{½}^{b} R` at each boundary.
    s_int: Vec<f64>,
}

#[derive(Clone)]
struct SideFn(Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl std::fmt::Debug for SideFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("SideFn")
    }
}

impl HalfTable {
    fn remainder(&self, s: f64) -> f64 {
        1.0 / (self.gamma.0)(s) - 0.5 / s
    }

    fn build(gamma: SideFn) -> Result<HalfTable> {
        let mut table = HalfTable {
            gamma,
            bounds: vec![0.5],
            r_int: vec![0.0],
            s_int: vec![0.0],
        };
        // coarse panels: 8 uniform on [¼, ½], then halving down to S_MIN
        let mut coarse = vec![0.5];
        for k in 1..=8 {
            coarse.push(0.5 - 0.25 * k as f64 / 8.0);
        }
        let mut b = 0.25;
        while b > S_MIN {
            b *= 0.5;
            coarse.push(b.max(S_MIN));
        }
        for w in coarse.windows(2) {
            table.refine_panel(w[1], w[0], 0)?;
        }
        Ok(table)
    }

    /// Integrals of `r` and `(t - a) r` over `[a, b]` on one GL-16 panel.
    fn panel_integrals(&self, a: f64, b: f64) -> Result<(f64, f64)> {
        let g = rule(16);
        let half = 0.5 * (b - a);
        let mut i0 = 0.0;
        let mut i1 = 0.0;
        for (x, w) in g.nodes.iter().zip(&g.weights) {
            let t = a + half * (1.0 + x);
            let r = self.remainder(t);
            if !r.is_finite() {
                return Err(Error::Evaluation {
                    x: t,
                    value: (self.gamma.0)(t),
                });
            }
            i0 += w * r;
            i1 += w * (t - a) * r;
        }
        Ok((i0 * half, i1 * half))
    }

    fn refine_panel(&mut self, a: f64, b: f64, depth: usize) -> Result<()> {
        let (whole0, whole1) = self.panel_integrals(a, b)?;
        let m = 0.5 * (a + b);
        let (l0, l1) = self.panel_integrals(a, m)?;
        let (r0, r1) = self.panel_integrals(m, b)?;
        let split0 = l0 + r0;
        let split1 = l1 + r1 + (m - a) * r0;
        let tol = PANEL_TOL * (1.0 + whole0.abs());
        let fine_enough = (whole0 - split0).abs() <= tol && (whole1 - split1).abs() <= tol * (b - a);
        if fine_enough || depth >= MAX_DEPTH {
            // values at b are known; step down to a
            let rb = *self.r_int.last().unwrap();
            let sb = *self.s_int.last().unwrap();
            let ra = rb - split0;
            let sa = sb - (b - a) * rb + split1;
            self.bounds.push(a);
            self.r_int.push(ra);
            self.s_int.push(sa);
            Ok(())
        } else {
            self.refine_panel(m, b, depth + 1)?;
            self.refine_panel(a, m, depth + 1)
        }
    }

    /// Index `k` such that `s ∈ [bounds[k+1], bounds[k]]`, or the last
    /// index when `s` lies below `S_MIN`.
    fn locate(&self, s: f64) -> usize {
        // bounds are decreasing
        let k = self.bounds.partition_point(|&b| b > s);
        k.saturating_sub(1).min(self.bounds.len() - 1)
    }

    /// `(R(s), S(s))`.
    fn integrals(&self, s: f64) -> (f64, f64) {
        let k = self.locate(s);
        let b = self.bounds[k];
        if s == b {
            return (self.r_int[k], self.s_int[k]);
        }
        let g = rule(16);
        let half = 0.5 * (b - s);
        let mut i0 = 0.0;
        let mut i1 = 0.0;
        for (x, w) in g.nodes.iter().zip(&g.weights) {
            let t = s + half * (1.0 + x);
            let r = self.remainder(t);
            i0 += w * r;
            i1 += w * (t - s) * r;
        }
        let r = self.r_int[k] - i0 * half;
        let big_s = self.s_int[k] - (b - s) * self.r_int[k] + i1 * half;
        (r, big_s)
    }

    /// `G` on this half: `-½ log(2s) - R(s)`.
    fn g(&self, s: f64) -> f64 {
        -0.5 * (2.0 * s).ln() - self.integrals(s).0
    }

    /// `L` on this half: `-½ s log(2s) + ½ s - ¼ - S(s)`.
    fn l(&self, s: f64) -> f64 {
        let (_, big_s) = self.integrals(s);
        let lcan = if s == 0.0 { -0.25 } else { -0.5 * s * (2.0 * s).ln() + 0.5 * s - 0.25 };
        lcan - big_s
    }

    /// Solves `G(s) = u` for `u >= 0`, with `s = ½ e^{-v}`.
    fn invert(&self, u: f64) -> Result<f64> {
        if u == 0.0 {
            return Ok(0.5);
        }
        let s_of = |v: f64| 0.5 * (-v).exp();
        let mut hi = 2.0 * u + 2.0;
        while self.g(s_of(hi)) < u {
            hi *= 2.0;
            if hi > 2000.0 {
                return Err(Error::Bracket(format!("G does not reach {u}")));
            }
        }
        let mut dg = |v: f64| {
            let s = s_of(v);
            s / (self.gamma.0)(s)
        };
        let v = bracketed_root(|v| self.g(s_of(v)) - u, Some(&mut dg), 0.0, hi, 1e-15, 1e-15)?;
        Ok(s_of(v))
    }
}

/// Potential built from tabulated halves; see the module docs.
#[derive(Debug)]
pub struct ConstructedPotential {
    left: HalfTable,
    right: HalfTable,
    radius: f64,
    /// `(d1, F)` at `u = +radius` and `(1 - d1, F)` at `u = -radius`.
    plus_edge: (f64, f64),
    minus_edge: (f64, f64),
}

impl ConstructedPotential {
    /// `G_g(x)` for `x ∈ (0, 1)`.
    pub fn moment_map_inverse(&self, x: f64) -> f64 {
        if x <= 0.5 {
            self.left.g(x)
        } else {
            -self.right.g(1.0 - x)
        }
    }

    /// `L_g(x)` for `x ∈ [0, 1]`.
    pub fn l(&self, x: f64) -> f64 {
        if x <= 0.5 {
            self.left.l(x)
        } else {
            self.right.l(1.0 - x)
        }
    }

    /// Inside the truncation radius: `(d1, 1 - d1, d2, F)` at `u`.
    fn core(&self, u: f64) -> (f64, f64, f64, f64) {
        if u >= 0.0 {
            let s = self.left.invert(u).unwrap_or(f64::NAN);
            let d2 = -(self.left.gamma.0)(s);
            (s, 1.0 - s, d2, u * s - self.left.l(s))
        } else {
            let t = self.right.invert(-u).unwrap_or(f64::NAN);
            let d2 = -(self.right.gamma.0)(t);
            (1.0 - t, t, d2, u - (u * t + self.right.l(t)))
        }
    }

    fn full(&self, u: f64) -> (f64, f64, f64, f64) {
        let r = self.radius;
        if u > r {
            let (s_r, f_r) = self.plus_edge;
            let e = (-2.0 * (u - r)).exp();
            let d1 = s_r * e;
            (d1, 1.0 - d1, -2.0 * d1, f_r + 0.5 * s_r * (1.0 - e))
        } else if u < -r {
            let (t_r, f_r) = self.minus_edge;
            let e = (2.0 * (u + r)).exp();
            let c = t_r * e;
            (1.0 - c, c, -2.0 * c, f_r + (u + r) - 0.5 * t_r * (e - 1.0))
        } else {
            self.core(u)
        }
    }
}

impl PotentialFn for ConstructedPotential {
    fn value(&self, u: f64) -> f64 {
        self.full(u).3
    }

    fn d1(&self, u: f64) -> f64 {
        self.full(u).0
    }

    fn d1_complement(&self, u: f64) -> f64 {
        self.full(u).1
    }

    fn d2(&self, u: f64) -> f64 {
        self.full(u).2
    }
}

/// Class-𝒢 constant used when validating the input of [`potential_from_gamma`].
pub const DEFAULT_CLASS_G_CONSTANT: f64 = 4.0;

/// Builds `F_g` from `γ ∈ 𝒢`, normalized by `F_g(0) = -L_g(½) = 0`.
pub fn potential_from_gamma(gamma: &SymplecticProfile) -> Result<KahlerPotential> {
    Ok(construct(gamma, DEFAULT_CLASS_G_CONSTANT, DEFAULT_TRUNCATION)?.0)
}

/// [`potential_from_gamma`] with explicit class-𝒢 constant and truncation
/// radius, also returning the tabulated construction.
pub fn construct(
    gamma: &SymplecticProfile,
    class_g_constant: f64,
    radius: f64,
) -> Result<(KahlerPotential, Arc<ConstructedPotential>)> {
    let report = validate_class_g(gamma, class_g_constant, 30);
    if !report.passed {
        return Err(Error::NotInClassG(report.failures.join("; ")));
    }
    let gl = gamma.clone();
    let gr = gamma.clone();
    let left = HalfTable::build(SideFn(Arc::new(move |s| gl.eval(s))))?;
    let right = HalfTable::build(SideFn(Arc::new(move |t| gr.eval_from_right(t))))?;
    let mut c = ConstructedPotential {
        left,
        right,
        radius,
        plus_edge: (0.0, 0.0),
        minus_edge: (0.0, 0.0),
    };
    let plus = c.core(radius);
    let minus = c.core(-radius);
    if !(plus.0.is_finite() && minus.1.is_finite()) {
        return Err(Error::NoConvergence(format!(
            "moment inversion failed at the truncation radius {radius}"
        )));
    }
    c.plus_edge = (plus.0, plus.3);
    c.minus_edge = (minus.1, minus.3);
    let c = Arc::new(c);
    let pot = KahlerPotential::new(format!("F[{}]", gamma.name()), c.clone(), radius);
    Ok((pot, c))
}

/// `∫_ℝ -F''(u) du`, the total mass of the associated form; 1 for a
/// normalized potential. Adaptive Gauss–Legendre on `[-U, U]` plus the exact
/// tails `F'(U)` and `1 - F'(-U)`.
pub fn total_mass(f: &KahlerPotential) -> f64 {
    let radius = f.truncation_radius();
    let integrand = |u: f64| -f.d2(u);
    let panels = (4.0 * radius).ceil().max(2.0) as usize;
    let width = 2.0 * radius / panels as f64;
    let mut sum = 0.0;
    for i in 0..panels {
        let a = -radius + i as f64 * width;
        sum += adaptive(&integrand, a, a + width, 0);
    }
    sum + f.d1(radius) + f.d1_complement(-radius)
}

fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, depth: usize) -> f64 {
    let g = rule(8);
    let whole = g.integrate(a, b, f);
    let m = 0.5 * (a + b);
    let split = g.integrate(a, m, f) + g.integrate(m, b, f);
    if (whole - split).abs() <= 1e-14 * (b - a).max(1e-3) || depth >= 30 {
        split
    } else {
        adaptive(f, a, m, depth + 1) + adaptive(f, m, b, depth + 1)
    }
}
