use std::fmt;
use std::sync::Arc;

use super::pchip::MonotoneCubic;
use crate::error::{Error, Result};

/// `h̄_{m,∞}(x) = min(1, 2(1 - x))^m`.
pub fn canonical_hermitian(m: u32, x: f64) -> f64 {
    (2.0 * (1.0 - x)).min(1.0).powi(m as i32)
}

fn canonical_hermitian_from_right(m: u32, t: f64) -> f64 {
    (2.0 * t).min(1.0).powi(m as i32)
}

type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum HermitianKind {
    Constant(f64),
    /// `h̄_{m,∞}`.
    Canonical,
    Sampled(Arc<MonotoneCubic>),
    /// `right`, when present, evaluates `h̄(1 - t)` from `t`.
    Custom {
        name: String,
        f: ProfileFn,
        right: Option<ProfileFn>,
    },
}

impl fmt::Debug for HermitianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HermitianKind::Constant(c) => write!(f, "Constant({c})"),
            HermitianKind::Canonical => write!(f, "Canonical"),
            HermitianKind::Sampled(_) => write!(f, "Sampled"),
            HermitianKind::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// Hermitian profile `h̄` on `[0, 1]` for a metric on `O(m)`.
#[derive(Debug, Clone)]
pub struct HermitianProfile {
    degree: u32,
    kind: HermitianKind,
}

impl HermitianProfile {
    /// `h̄ ≡ c`, a metric on the trivial bundle.
    pub fn constant(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidProfile(format!(
                "constant hermitian profile must be positive, got {c}"
            )));
        }
        Ok(HermitianProfile {
            degree: 0,
            kind: HermitianKind::Constant(c),
        })
    }

    /// `h̄_{m,∞}`.
    pub fn canonical(m: u32) -> Self {
        HermitianProfile {
            degree: m,
            kind: HermitianKind::Canonical,
        }
    }

    pub fn sampled(m: u32, points: &[[f64; 2]]) -> Result<Self> {
        let p = MonotoneCubic::new(points)?;
        if p.domain() != (0.0, 1.0) {
            return Err(Error::InvalidProfile(
                "samples must start at x = 0 and end at x = 1".into(),
            ));
        }
        Ok(HermitianProfile {
            degree: m,
            kind: HermitianKind::Sampled(Arc::new(p)),
        })
    }

    pub fn custom(m: u32, name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        HermitianProfile {
            degree: m,
            kind: HermitianKind::Custom {
                name: name.into(),
                f: Arc::new(f),
                right: None,
            },
        }
    }

    /// Custom profile with a separate evaluation `t ↦ h̄(1 - t)`.
    pub fn custom_two_sided(
        m: u32,
        name: impl Into<String>,
        left: impl Fn(f64) -> f64 + Send + Sync + 'static,
        right: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        HermitianProfile {
            degree: m,
            kind: HermitianKind::Custom {
                name: name.into(),
                f: Arc::new(left),
                right: Some(Arc::new(right)),
            },
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn kind(&self) -> &HermitianKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        match &self.kind {
            HermitianKind::Constant(c) if *c == 1.0 => "constant".into(),
            HermitianKind::Constant(c) => format!("constant({c})"),
            HermitianKind::Canonical => format!("canonical(m={})", self.degree),
            HermitianKind::Sampled(_) => "samples".into(),
            HermitianKind::Custom { name, .. } => name.clone(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            HermitianKind::Constant(c) => *c,
            HermitianKind::Canonical => canonical_hermitian(self.degree, x),
            HermitianKind::Sampled(p) => p.eval(x),
            HermitianKind::Custom { f, .. } => f(x),
        }
    }

    /// `h̄(1 - t)`.
    pub fn eval_from_right(&self, t: f64) -> f64 {
        match &self.kind {
            HermitianKind::Constant(c) => *c,
            HermitianKind::Canonical => canonical_hermitian_from_right(self.degree, t),
            HermitianKind::Sampled(p) => p.eval_from_right(t),
            HermitianKind::Custom { f, right, .. } => match right {
                Some(r) => r(t),
                None => f(1.0 - t),
            },
        }
    }
}
