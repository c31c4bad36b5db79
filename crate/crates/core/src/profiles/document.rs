//! JSON profile documents:
//! `{"kind": ..., "m": ..., "params": {...}, "samples": [[x, v], ...]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::hermitian::{HermitianKind, HermitianProfile};
use super::symplectic::{bump_profile, Mollifier, SymplecticProfile};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub params: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<[f64; 2]>,
}

impl ProfileDocument {
    pub fn new(kind: impl Into<String>) -> Self {
        ProfileDocument {
            kind: kind.into(),
            m: None,
            params: Map::new(),
            samples: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), Value::from(value));
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile documents always serialize")
    }

    fn param(&self, key: &str) -> Result<Option<f64>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => v.as_f64().map(Some).ok_or_else(|| {
                Error::InvalidProfile(format!("parameter `{key}` must be a number"))
            }),
        }
    }

    fn param_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.param(key)?.unwrap_or(default))
    }

    fn require_samples(&self) -> Result<&[[f64; 2]]> {
        if self.samples.len() < 2 {
            return Err(Error::InvalidProfile(
                "kind `samples` needs at least two [x, value] pairs".into(),
            ));
        }
        Ok(&self.samples)
    }

    /// Interprets the document as a symplectic profile.
    pub fn to_gamma(&self) -> Result<SymplecticProfile> {
        match self.kind.as_str() {
            "fubini-study" => Ok(SymplecticProfile::FubiniStudy),
            "canonical" => Ok(SymplecticProfile::Canonical),
            "bump" => {
                let std = Mollifier::standard();
                let bump = Mollifier {
                    center: self.param_or("center", std.center)?,
                    half_width: self.param_or("half_width", std.half_width)?,
                    height: self.param_or("height", std.height)?,
                };
                bump_profile(self.param_or("A", 1.0)?, bump)
            }
            "mixture" => {
                let eps = self.param("epsilon")?.ok_or_else(|| {
                    Error::InvalidProfile("kind `mixture` needs params.epsilon".into())
                })?;
                SymplecticProfile::mixture(eps)
            }
            "samples" => SymplecticProfile::sampled(self.require_samples()?),
            other => Err(Error::InvalidProfile(format!("unknown symplectic profile kind `{other}`"))),
        }
    }

    /// Interprets the document as a hermitian profile; `m` defaults to 0.
    pub fn to_hermitian(&self) -> Result<HermitianProfile> {
        let m = self.m.unwrap_or(0);
        match self.kind.as_str() {
            "constant" => {
                if m != 0 {
                    return Err(Error::InvalidProfile(
                        "a constant hermitian profile belongs to m = 0".into(),
                    ));
                }
                HermitianProfile::constant(self.param_or("value", 1.0)?)
            }
            "canonical" => Ok(HermitianProfile::canonical(m)),
            "samples" => HermitianProfile::sampled(m, self.require_samples()?),
            other => Err(Error::InvalidProfile(format!("unknown hermitian profile kind `{other}`"))),
        }
    }

    /// Document describing `gamma`; closure-defined profiles have no
    /// serialized form.
    pub fn from_gamma(gamma: &SymplecticProfile) -> Result<Self> {
        Ok(match gamma {
            SymplecticProfile::FubiniStudy => Self::new("fubini-study"),
            SymplecticProfile::Canonical => Self::new("canonical"),
            SymplecticProfile::Bump(b) => Self::new("bump")
                .with_param("A", b.amplitude_scale)
                .with_param("center", b.bump.center)
                .with_param("half_width", b.bump.half_width)
                .with_param("height", b.bump.height),
            SymplecticProfile::Mixture { epsilon } => Self::new("mixture").with_param("epsilon", *epsilon),
            SymplecticProfile::Sampled(p) => Self {
                samples: p.points(),
                ..Self::new("samples")
            },
            SymplecticProfile::Reflected(inner) => match &**inner {
                SymplecticProfile::Sampled(p) => Self {
                    samples: p.mirrored().points(),
                    ..Self::new("samples")
                },
                SymplecticProfile::Bump(b) => Self::new("bump")
                    .with_param("A", b.amplitude_scale)
                    .with_param("center", 1.0 - b.bump.center)
                    .with_param("half_width", b.bump.half_width)
                    .with_param("height", b.bump.height),
                other => Self::from_gamma(other)?,
            },
            SymplecticProfile::Custom(c) => {
                return Err(Error::InvalidProfile(format!(
                    "profile `{}` is defined by code and cannot be written as JSON",
                    c.name
                )))
            }
        })
    }

    pub fn from_hermitian(h: &HermitianProfile) -> Result<Self> {
        let mut doc = match h.kind() {
            HermitianKind::Constant(c) => Self::new("constant").with_param("value", *c),
            HermitianKind::Canonical => Self::new("canonical"),
            HermitianKind::Sampled(p) => Self {
                samples: p.points(),
                ..Self::new("samples")
            },
            HermitianKind::Custom { name, .. } => {
                return Err(Error::InvalidProfile(format!(
                    "profile `{name}` is defined by code and cannot be written as JSON"
                )))
            }
        };
        doc.m = Some(h.degree());
        Ok(doc)
    }
}
