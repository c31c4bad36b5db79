use serde::{Deserialize, Serialize};

use super::assemble::assemble;
use super::mesh::build_mesh;
use super::solve::eigenvalues;
use crate::error::{Error, Result};
use crate::profiles::{HermitianProfile, SymplecticProfile};
use crate::spectrum::{MeshRecord, Method, SpectrumResult};

/// Reported eigenvalues are half the Rayleigh-quotient values.
pub const NORMALIZATION: f64 = 0.5;

/// Controls for [`invariant_spectrum_with`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOptions {
    /// Number of nonzero eigenvalues wanted (`λ_1 … λ_count`).
    pub count: usize,
    /// Relative change of successive extrapolants that ends the ladder.
    pub target_tol: f64,
    pub n_start: usize,
    pub n_max: usize,
    pub grading: f64,
    /// Relative distance below which eigenvalues are merged.
    pub merge_tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            count: 5,
            target_tol: 1e-6,
            n_start: 128,
            n_max: 1 << 15,
            grading: 2.0,
            merge_tol: 1e-9,
        }
    }
}

/// Raw quotient eigenvalues `μ_0 … μ_count` on one mesh of size `n`.
pub fn raw_eigenvalues(
    gamma: &SymplecticProfile,
    h: &HermitianProfile,
    n: usize,
    grading: f64,
    count: usize,
) -> Result<Vec<f64>> {
    let mesh = build_mesh(n, grading)?;
    let forms = assemble(gamma, h, &mesh)?;
    eigenvalues(&forms, count + 1)
}

/// `λ_0 = 0 < λ_1 < … < λ_count` with the default options.
pub fn invariant_spectrum(
    gamma: &SymplecticProfile,
    h: &HermitianProfile,
    count: usize,
    target_tol: f64,
) -> Result<SpectrumResult> {
    invariant_spectrum_with(
        gamma,
        h,
        &SpectrumOptions {
            count,
            target_tol,
            ..SpectrumOptions::default()
        },
    )
}

/// Doubles the mesh from `n_start`, Richardson-extrapolates
/// `E(N) = (4μ(N) - μ(N/2))/3`, and stops once successive extrapolants of
/// every nonzero eigenvalue agree to `target_tol` relative.
pub fn invariant_spectrum_with(
    gamma: &SymplecticProfile,
    h: &HermitianProfile,
    opts: &SpectrumOptions,
) -> Result<SpectrumResult> {
    if opts.count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    if opts.n_start < 16 || !opts.n_start.is_multiple_of(2) || opts.n_start > opts.n_max {
        return Err(Error::InvalidArgument(format!(
            "mesh ladder {}..{} is not valid",
            opts.n_start, opts.n_max
        )));
    }
    let mut levels = Vec::new();
    let mut raws: Vec<Vec<f64>> = Vec::new();
    let mut extrapolants: Vec<Vec<f64>> = Vec::new();
    let mut worst = f64::INFINITY;
    let mut n = opts.n_start;
    while n <= opts.n_max {
        let mu = raw_eigenvalues(gamma, h, n, opts.grading, opts.count)?;
        levels.push(n);
        if let Some(prev) = raws.last() {
            let e: Vec<f64> = mu.iter().zip(prev).map(|(f, c)| (4.0 * f - c) / 3.0).collect();
            if let Some(prev_e) = extrapolants.last() {
                worst = e
                    .iter()
                    .zip(prev_e)
                    .skip(1)
                    .map(|(a, b): (&f64, &f64)| (a - b).abs() / a.abs())
                    .fold(0.0, f64::max);
                let errors: Vec<f64> = e
                    .iter()
                    .zip(prev_e)
                    .map(|(a, b)| (a - b).abs() * NORMALIZATION)
                    .collect();
                if worst < opts.target_tol {
                    let mut result = SpectrumResult::from_raw(&e, &errors, NORMALIZATION, Method::Fem, opts.merge_tol);
                    result.mesh = Some(MeshRecord {
                        levels,
                        grading: opts.grading,
                        finest_raw: mu,
                    });
                    return Ok(result);
                }
            }
            extrapolants.push(e);
        }
        raws.push(mu);
        n *= 2;
    }
    Err(Error::MeshBudget {
        n_max: opts.n_max,
        worst_change: worst,
    })
}
