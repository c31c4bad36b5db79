use std::fmt;
use std::sync::Arc;

use super::pchip::MonotoneCubic;
use crate::error::{Error, Result};

/// `γ_can(x) = 2 min(x, 1 - x)`.
pub fn gamma_can(x: f64) -> f64 {
    2.0 * x.min(1.0 - x)
}

/// `γ_0(x) = 2x(1 - x)`.
pub fn gamma_fs(x: f64) -> f64 {
    2.0 * x * (1.0 - x)
}

/// Smooth bump `height · exp(1 - 1/(1 - r²))`, `r = (y - center)/half_width`,
/// supported on `[center - half_width, center + half_width]` with maximum
/// `height` at the center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mollifier {
    pub center: f64,
    pub half_width: f64,
    pub height: f64,
}

impl Mollifier {
    /// The bump filling `[¼, ¾]` with height `⅛`.
    pub fn standard() -> Self {
        Mollifier {
            center: 0.5,
            half_width: 0.25,
            height: 0.125,
        }
    }

    pub fn zero() -> Self {
        Mollifier {
            height: 0.0,
            ..Self::standard()
        }
    }

    pub fn eval(&self, y: f64) -> f64 {
        if self.height == 0.0 {
            return 0.0;
        }
        let r = (y - self.center) / self.half_width;
        if r.abs() >= 1.0 {
            0.0
        } else {
            self.height * (1.0 - 1.0 / (1.0 - r * r)).exp()
        }
    }

    fn check(&self) -> Result<()> {
        let lo = self.center - self.half_width;
        let hi = self.center + self.half_width;
        if !(self.half_width > 0.0) || lo < 0.25 - 1e-15 || hi > 0.75 + 1e-15 {
            return Err(Error::InvalidProfile(format!(
                "bump support [{lo}, {hi}] is not contained in [1/4, 3/4]"
            )));
        }
        if !(0.0..=0.125).contains(&self.height) {
            return Err(Error::InvalidProfile(format!(
                "bump height {} outside [0, 1/8]",
                self.height
            )));
        }
        Ok(())
    }
}

/// `ḡ_A(x) = 2x(1 - x) + ρ(A(x - ½) + ½)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpProfile {
    pub amplitude_scale: f64,
    pub bump: Mollifier,
}

impl BumpProfile {
    fn eval(&self, x: f64) -> f64 {
        gamma_fs(x) + self.bump.eval(self.amplitude_scale * (x - 0.5) + 0.5)
    }

    fn eval_from_right(&self, t: f64) -> f64 {
        2.0 * t * (1.0 - t) + self.bump.eval(self.amplitude_scale * (0.5 - t) + 0.5)
    }
}

type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A profile given by closures; `right` evaluates `γ(1 - t)` from `t` when
/// supplied.
#[derive(Clone)]
pub struct CustomProfile {
    pub name: String,
    left: ProfileFn,
    right: Option<ProfileFn>,
}

impl fmt::Debug for CustomProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomProfile({})", self.name)
    }
}

/// A symplectic profile `γ` on `[0, 1]`.
#[derive(Debug, Clone)]
pub enum SymplecticProfile {
    FubiniStudy,
    Canonical,
    Bump(BumpProfile),
    /// `γ_ε = (1 - ε) γ_can + ε γ_0`.
    Mixture { epsilon: f64 },
    Sampled(Arc<MonotoneCubic>),
    Reflected(Box<SymplecticProfile>),
    Custom(CustomProfile),
}

impl SymplecticProfile {
    pub fn mixture(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::InvalidProfile(format!(
                "mixture weight {epsilon} outside [0, 1]"
            )));
        }
        Ok(SymplecticProfile::Mixture { epsilon })
    }

    /// Profile interpolated through `[x, γ(x)]` samples covering `[0, 1]`.
    pub fn sampled(points: &[[f64; 2]]) -> Result<Self> {
        let p = MonotoneCubic::new(points)?;
        if p.domain() != (0.0, 1.0) {
            return Err(Error::InvalidProfile(
                "samples must start at x = 0 and end at x = 1".into(),
            ));
        }
        Ok(SymplecticProfile::Sampled(Arc::new(p)))
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SymplecticProfile::Custom(CustomProfile {
            name: name.into(),
            left: Arc::new(f),
            right: None,
        })
    }

    /// Custom profile with a separate evaluation `t ↦ γ(1 - t)` that stays
    /// accurate for `t` below machine epsilon.
    pub fn custom_two_sided(
        name: impl Into<String>,
        left: impl Fn(f64) -> f64 + Send + Sync + 'static,
        right: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SymplecticProfile::Custom(CustomProfile {
            name: name.into(),
            left: Arc::new(left),
            right: Some(Arc::new(right)),
        })
    }

    pub fn name(&self) -> String {
        match self {
            SymplecticProfile::FubiniStudy => "fubini-study".into(),
            SymplecticProfile::Canonical => "canonical".into(),
            SymplecticProfile::Bump(b) => format!("bump(A={})", b.amplitude_scale),
            SymplecticProfile::Mixture { epsilon } => format!("mixture(eps={epsilon})"),
            SymplecticProfile::Sampled(_) => "samples".into(),
            SymplecticProfile::Reflected(inner) => format!("reflect({})", inner.name()),
            SymplecticProfile::Custom(c) => c.name.clone(),
        }
    }

    /// `γ(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            SymplecticProfile::FubiniStudy => gamma_fs(x),
            SymplecticProfile::Canonical => gamma_can(x),
            SymplecticProfile::Bump(b) => b.eval(x),
            SymplecticProfile::Mixture { epsilon } => {
                (1.0 - epsilon) * gamma_can(x) + epsilon * gamma_fs(x)
            }
            SymplecticProfile::Sampled(p) => p.eval(x),
            SymplecticProfile::Reflected(inner) => inner.eval_from_right(x),
            SymplecticProfile::Custom(c) => (c.left)(x),
        }
    }

    /// `γ(1 - t)`.
    pub fn eval_from_right(&self, t: f64) -> f64 {
        match self {
            SymplecticProfile::FubiniStudy => gamma_fs(t),
            SymplecticProfile::Canonical => gamma_can(t),
            SymplecticProfile::Bump(b) => b.eval_from_right(t),
            SymplecticProfile::Mixture { epsilon } => {
                (1.0 - epsilon) * gamma_can(t) + epsilon * gamma_fs(t)
            }
            SymplecticProfile::Sampled(p) => p.eval_from_right(t),
            SymplecticProfile::Reflected(inner) => inner.eval(t),
            SymplecticProfile::Custom(c) => match &c.right {
                Some(r) => r(t),
                None => (c.left)(1.0 - t),
            },
        }
    }

    /// `γ*(x) = γ(1 - x)`. Parametric families map to their mirror images.
    pub fn reflect(&self) -> SymplecticProfile {
        match self {
            SymplecticProfile::FubiniStudy
            | SymplecticProfile::Canonical
            | SymplecticProfile::Mixture { .. } => self.clone(),
            SymplecticProfile::Reflected(inner) => (**inner).clone(),
            other => SymplecticProfile::Reflected(Box::new(other.clone())),
        }
    }

    /// Estimate of `γ'(0)` from `γ(x)/x` at `x = 2^{-30}`.
    pub fn left_slope(&self) -> f64 {
        let x = 2f64.powi(-30);
        self.eval(x) / x
    }

    /// Estimate of `-γ'(1)` from `γ(1 - t)/t` at `t = 2^{-30}`.
    pub fn right_slope(&self) -> f64 {
        let t = 2f64.powi(-30);
        self.eval_from_right(t) / t
    }

    /// Uniform grid with `n + 1` abscissae on `[0, 1]`.
    pub fn sample_grid(n: usize) -> Vec<f64> {
        (0..=n).map(|i| i as f64 / n as f64).collect()
    }
}

/// `(F_0, γ_0)`.
pub fn fs_profile() -> (super::KahlerPotential, SymplecticProfile) {
    (super::KahlerPotential::fubini_study(), SymplecticProfile::FubiniStudy)
}

/// `(F_can, γ_can)`.
pub fn canonical_profile() -> (super::KahlerPotential, SymplecticProfile) {
    (super::KahlerPotential::canonical(), SymplecticProfile::Canonical)
}

/// `G_can(x)`: `-½ log(2x)` on `[0, ½]`, `½ log(2(1 - x))` on `[½, 1]`.
pub fn g_can(x: f64) -> f64 {
    if x <= 0.5 {
        -0.5 * (2.0 * x).ln()
    } else {
        0.5 * (2.0 * (1.0 - x)).ln()
    }
}

/// Closed form of the Legendre–Fenchel transform of `F_can`.
pub fn fcheck_can(x: f64) -> f64 {
    let y = x.min(1.0 - x);
    if y == 0.0 {
        0.0
    } else {
        -0.5 * y * (2.0 * y).ln() + 0.5 * y
    }
}

/// `ḡ_A = γ_0 + ρ(A(x - ½) + ½)` with the bump checked against its support
/// and height constraints.
pub fn bump_profile(amplitude_scale: f64, bump: Mollifier) -> Result<SymplecticProfile> {
    if !(amplitude_scale >= 1.0) || !amplitude_scale.is_finite() {
        return Err(Error::InvalidProfile(format!(
            "amplitude scale {amplitude_scale} must be at least 1"
        )));
    }
    bump.check()?;
    Ok(SymplecticProfile::Bump(BumpProfile {
        amplitude_scale,
        bump,
    }))
}
