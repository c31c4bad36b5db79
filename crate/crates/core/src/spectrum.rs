//! Spectrum containers shared by the closed-form and finite-element routes.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::sig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fem,
    Bessel,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Fem => "fem",
            Method::Bessel => "bessel",
        }
    }
}

/// Mesh ladder used to produce a finite-element spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshRecord {
    pub levels: Vec<usize>,
    pub grading: f64,
    /// Unextrapolated raw quotient values on the finest mesh.
    pub finest_raw: Vec<f64>,
}

/// Ordered distinct eigenvalues `λ_0 = 0 < λ_1 < …` with provenance.
///
/// `eigenvalues[j] == raw[j] * normalization` holds exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub raw: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub normalization: f64,
    pub error_estimates: Vec<f64>,
    pub method: Method,
    pub mesh: Option<MeshRecord>,
}

impl SpectrumResult {
    /// Builds a result from raw values, merging entries that agree to relative
    /// `merge_tol`.
    pub fn from_raw(
        raw: &[f64],
        errors: &[f64],
        normalization: f64,
        method: Method,
        merge_tol: f64,
    ) -> Self {
        let mut out_raw: Vec<f64> = Vec::with_capacity(raw.len());
        let mut out_err: Vec<f64> = Vec::with_capacity(raw.len());
        let mut mult: Vec<usize> = Vec::with_capacity(raw.len());
        for (i, &v) in raw.iter().enumerate() {
            let e = errors.get(i).copied().unwrap_or(0.0);
            if let Some(&last) = out_raw.last() {
                let scale = last.abs().max(v.abs());
                if (v - last).abs() <= merge_tol * scale {
                    *mult.last_mut().unwrap() += 1;
                    let le = out_err.last_mut().unwrap();
                    *le = le.max(e);
                    continue;
                }
            }
            out_raw.push(v);
            out_err.push(e);
            mult.push(1);
        }
        let eigenvalues = out_raw.iter().map(|m| m * normalization).collect();
        SpectrumResult {
            eigenvalues,
            raw: out_raw,
            multiplicities: mult,
            normalization,
            error_estimates: out_err,
            method,
            mesh: None,
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// CSV with columns `j,lambda,mu_raw,error_estimate,method`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("j,lambda,mu_raw,error_estimate,method\n");
        for j in 0..self.eigenvalues.len() {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                j,
                sig(self.eigenvalues[j], 15),
                sig(self.raw[j], 15),
                sig(self.error_estimates[j], 15),
                self.method.as_str()
            );
        }
        s
    }

    /// Reads back the CSV written by [`SpectrumResult::to_csv`].
    ///
    /// Multiplicities and mesh metadata are not part of the CSV and come back
    /// as 1 and `None`.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        if header.trim() != "j,lambda,mu_raw,error_estimate,method" {
            return Err(Error::InvalidArgument(format!(
                "unexpected spectrum CSV header `{header}`"
            )));
        }
        let mut eigenvalues = Vec::new();
        let mut raw = Vec::new();
        let mut errs = Vec::new();
        let mut method = Method::Fem;
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 5 {
                return Err(Error::InvalidArgument(format!("bad spectrum row `{line}`")));
            }
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidArgument(format!("bad number `{s}`: {e}")))
            };
            eigenvalues.push(num(cols[1])?);
            raw.push(num(cols[2])?);
            errs.push(num(cols[3])?);
            method = match cols[4].trim() {
                "fem" => Method::Fem,
                "bessel" => Method::Bessel,
                other => {
                    return Err(Error::InvalidArgument(format!("unknown method `{other}`")))
                }
            };
        }
        let normalization = eigenvalues
            .iter()
            .zip(&raw)
            .find(|(_, r)| **r != 0.0)
            .map(|(l, r)| l / r)
            .unwrap_or(0.5);
        Ok(SpectrumResult {
            multiplicities: vec![1; eigenvalues.len()],
            eigenvalues,
            raw,
            normalization,
            error_estimates: errs,
            method,
            mesh: None,
        })
    }
}
