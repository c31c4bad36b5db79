use std::fmt;
use std::sync::Arc;

/// Pointwise evaluation of a Kähler potential profile `F(u)`.
pub trait PotentialFn: Send + Sync + fmt::Debug {
    fn value(&self, u: f64) -> f64;
    fn d1(&self, u: f64) -> f64;
    fn d2(&self, u: f64) -> f64;

    /// `1 - d1(u)`, evaluated without cancellation where the implementation
    /// can.
    fn d1_complement(&self, u: f64) -> f64 {
        1.0 - self.d1(u)
    }
}

/// A concave potential `F` on ℝ with slopes 1 at `-∞` and 0 at `+∞`.
#[derive(Clone)]
pub struct KahlerPotential {
    inner: Arc<dyn PotentialFn>,
    name: String,
    slope_minus_inf: f64,
    slope_plus_inf: f64,
    truncation_radius: f64,
}

impl fmt::Debug for KahlerPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KahlerPotential")
            .field("name", &self.name)
            .field("slope_minus_inf", &self.slope_minus_inf)
            .field("slope_plus_inf", &self.slope_plus_inf)
            .field("truncation_radius", &self.truncation_radius)
            .finish()
    }
}

/// Default radius beyond which constructed potentials use their asymptotic
/// continuation.
pub const DEFAULT_TRUNCATION: f64 = 20.0;

impl KahlerPotential {
    pub fn new(name: impl Into<String>, inner: Arc<dyn PotentialFn>, truncation_radius: f64) -> Self {
        KahlerPotential {
            inner,
            name: name.into(),
            slope_minus_inf: 1.0,
            slope_plus_inf: 0.0,
            truncation_radius,
        }
    }

    pub(crate) fn with_slopes(mut self, minus: f64, plus: f64) -> Self {
        self.slope_minus_inf = minus;
        self.slope_plus_inf = plus;
        self
    }

    /// Fubini–Study: `F_0(u) = -½ log(1 + e^{-2u})`.
    pub fn fubini_study() -> Self {
        Self::new("fubini-study", Arc::new(FubiniStudy), DEFAULT_TRUNCATION)
    }

    /// Canonical metric: `F_can(u) = min(0, u) - ¼ e^{-2|u|}`.
    pub fn canonical() -> Self {
        Self::new("canonical", Arc::new(Canonical), DEFAULT_TRUNCATION)
    }

    /// `F_{m,∞}(u) = m min(0, u)`, the reference metric on `O(m)`. Not
    /// strictly concave; used for comparisons only.
    pub fn max_norm(m: u32) -> Self {
        Self::new(format!("max-norm-{m}"), Arc::new(MaxNorm { m }), DEFAULT_TRUNCATION)
            .with_slopes(m as f64, 0.0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.inner.value(u)
    }

    pub fn d1(&self, u: f64) -> f64 {
        self.inner.d1(u)
    }

    pub fn d2(&self, u: f64) -> f64 {
        self.inner.d2(u)
    }

    pub fn d1_complement(&self, u: f64) -> f64 {
        self.inner.d1_complement(u)
    }

    pub fn slope_minus_inf(&self) -> f64 {
        self.slope_minus_inf
    }

    pub fn slope_plus_inf(&self) -> f64 {
        self.slope_plus_inf
    }

    pub fn truncation_radius(&self) -> f64 {
        self.truncation_radius
    }

    /// Slope gap measured from `d1` at `±R`, `R = 2 × truncation radius`.
    pub fn measured_slope_gap(&self) -> f64 {
        let r = 2.0 * self.truncation_radius;
        (1.0 - self.d1_complement(-r)) - self.d1(r)
    }

    /// `lim_{u→+∞} F(u)`, using `F(u) ≈ F(∞) - d1(u)/2` for the `e^{-2u}`
    /// tail.
    pub fn limit_plus(&self) -> f64 {
        let u = self.truncation_radius;
        self.eval(u) + 0.5 * self.d1(u)
    }

    /// `lim_{u→-∞} (u - F(u))`.
    pub fn limit_minus_offset(&self) -> f64 {
        let u = -self.truncation_radius;
        (u - self.eval(u)) - 0.5 * self.d1_complement(u)
    }

    /// `sup |F(u) - m min(0, u)|` over the grid `u_k = -R + k h`.
    pub fn deviation_from_max_norm(&self, m: u32, radius: f64, samples: usize) -> f64 {
        let samples = samples.max(2);
        (0..samples)
            .map(|k| -radius + 2.0 * radius * k as f64 / (samples - 1) as f64)
            .map(|u| (self.eval(u) - m as f64 * u.min(0.0)).abs())
            .fold(0.0, f64::max)
    }

    /// Reflected potential `F*(u) = u + F(-u)`, i.e. the pull-back by `z ↦ 1/z`.
    pub fn reflect(&self) -> KahlerPotential {
        KahlerPotential {
            inner: Arc::new(Reflected(self.inner.clone())),
            name: format!("reflect({})", self.name),
            slope_minus_inf: 1.0 - self.slope_plus_inf,
            slope_plus_inf: 1.0 - self.slope_minus_inf,
            truncation_radius: self.truncation_radius,
        }
    }
}

#[derive(Debug)]
struct FubiniStudy;

impl PotentialFn for FubiniStudy {
    fn value(&self, u: f64) -> f64 {
        if u >= 0.0 {
            -0.5 * (-2.0 * u).exp().ln_1p()
        } else {
            u - 0.5 * (2.0 * u).exp().ln_1p()
        }
    }

    fn d1(&self, u: f64) -> f64 {
        if u >= 0.0 {
            let e = (-2.0 * u).exp();
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + (2.0 * u).exp())
        }
    }

    fn d1_complement(&self, u: f64) -> f64 {
        FubiniStudy.d1(-u)
    }

    fn d2(&self, u: f64) -> f64 {
        let e = (-2.0 * u.abs()).exp();
        -2.0 * e / ((1.0 + e) * (1.0 + e))
    }
}

#[derive(Debug)]
struct Canonical;

impl PotentialFn for Canonical {
    fn value(&self, u: f64) -> f64 {
        u.min(0.0) - 0.25 * (-2.0 * u.abs()).exp()
    }

    fn d1(&self, u: f64) -> f64 {
        if u >= 0.0 {
            0.5 * (-2.0 * u).exp()
        } else {
            1.0 - 0.5 * (2.0 * u).exp()
        }
    }

    fn d1_complement(&self, u: f64) -> f64 {
        if u >= 0.0 {
            1.0 - 0.5 * (-2.0 * u).exp()
        } else {
            0.5 * (2.0 * u).exp()
        }
    }

    fn d2(&self, u: f64) -> f64 {
        -(-2.0 * u.abs()).exp()
    }
}

#[derive(Debug)]
struct MaxNorm {
    m: u32,
}

impl PotentialFn for MaxNorm {
    fn value(&self, u: f64) -> f64 {
        self.m as f64 * u.min(0.0)
    }

    fn d1(&self, u: f64) -> f64 {
        if u < 0.0 {
            self.m as f64
        } else {
            0.0
        }
    }

    fn d2(&self, _u: f64) -> f64 {
        0.0
    }
}

#[derive(Debug)]
struct Reflected(Arc<dyn PotentialFn>);

impl PotentialFn for Reflected {
    fn value(&self, u: f64) -> f64 {
        u + self.0.value(-u)
    }

    fn d1(&self, u: f64) -> f64 {
        self.0.d1_complement(-u)
    }

    fn d1_complement(&self, u: f64) -> f64 {
        self.0.d1(-u)
    }

    fn d2(&self, u: f64) -> f64 {
        self.0.d2(-u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central(f: impl Fn(f64) -> f64, u: f64, h: f64) -> f64 {
        (f(u + h) - f(u - h)) / (2.0 * h)
    }

    #[test]
    fn fubini_study_closed_forms() {
        let f = KahlerPotential::fubini_study();
        assert!((f.eval(0.0) + 0.5 * 2f64.ln()).abs() < 1e-15);
        assert!((f.eval(0.0) + 0.34657359027997264).abs() < 1e-15);
        assert_eq!(f.d1(0.0), 0.5);
        assert_eq!(f.d2(0.0), -0.5);
    }

    #[test]
    fn canonical_is_c2_at_origin() {
        let f = KahlerPotential::canonical();
        assert_eq!(f.eval(0.0), -0.25);
        assert_eq!(f.d1(0.0), 0.5);
        assert!((f.d1(-1e-300) - 0.5).abs() < 1e-15);
        assert_eq!(f.d2(0.0), -1.0);
        assert_eq!(f.d2(1e-300), f.d2(-1e-300));
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for f in [KahlerPotential::fubini_study(), KahlerPotential::canonical()] {
            for k in -40..=40 {
                let u = k as f64 * 0.25 + 0.013;
                let h = 1e-5;
                let fd1 = central(|v| f.eval(v), u, h);
                let fd2 = central(|v| f.d1(v), u, h);
                assert!((fd1 - f.d1(u)).abs() <= 1e-6 * f.d1(u).abs().max(1e-3), "{} d1 at {u}", f.name());
                assert!((fd2 - f.d2(u)).abs() <= 1e-6 * f.d2(u).abs().max(1e-3), "{} d2 at {u}", f.name());
            }
        }
    }

    #[test]
    fn slopes_and_limits() {
        for f in [KahlerPotential::fubini_study(), KahlerPotential::canonical()] {
            assert!((f.measured_slope_gap() - 1.0).abs() < 1e-15);
            assert!(f.limit_plus().abs() < 1e-15);
            assert!(f.limit_minus_offset().abs() < 1e-15);
            assert!(f.deviation_from_max_norm(1, 30.0, 601) <= 0.5 * 2f64.ln() + 1e-12);
        }
    }

    #[test]
    fn reflection_identity() {
        let f = KahlerPotential::fubini_study();
        let r = f.reflect();
        for k in -20..=20 {
            let u = k as f64 * 0.37;
            assert!((r.eval(-u) - (-u + f.eval(u))).abs() < 1e-14);
        }
        let c = KahlerPotential::canonical();
        let rc = c.reflect();
        for k in -20..=20 {
            let u = k as f64 * 0.37;
            assert!((rc.eval(u) - c.eval(u)).abs() < 1e-14);
        }
    }
}
