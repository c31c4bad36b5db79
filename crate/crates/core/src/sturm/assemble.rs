use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mesh::Mesh;
use crate::error::{Error, Result};
use crate::profiles::{HermitianProfile, SymplecticProfile};
use crate::quadrature::rule;

/// Symmetric tridiagonal matrix: `diag[i]` and `off[i] = A[i][i+1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn zeros(n: usize) -> Self {
        SymTridiagonal {
            diag: vec![0.0; n],
            off: vec![0.0; n.saturating_sub(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// `vᵀ A v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

/// Gauss rules used by [`assemble`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRecord {
    pub points_per_element: usize,
    /// Points on the element touching `x = 1` (more when `m ≥ 1`).
    pub endpoint_points: usize,
}

/// Stiffness `∫ h̄γ φ_i'φ_j'` and mass `∫ h̄ φ_iφ_j` for P1 hat functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteForms {
    pub stiffness: SymTridiagonal,
    pub mass: SymTridiagonal,
    pub quadrature: QuadratureRecord,
}

#[derive(Clone, Copy)]
struct Element {
    stiff: f64,
    m00: f64,
    m01: f64,
    m11: f64,
}

fn check(x: f64, v: f64, allow_zero: bool) -> Result<f64> {
    if v.is_finite() && (v > 0.0 || (allow_zero && v == 0.0)) {
        Ok(v)
    } else {
        Err(Error::Evaluation { x, value: v })
    }
}

fn element(gamma: &SymplecticProfile, h: &HermitianProfile, mesh: &Mesh, e: usize, points: usize) -> Result<Element> {
    let g = rule(points);
    let len = mesh.element_length(e);
    let right = mesh.is_right_element(e);
    // local coordinate runs over the element in x on the left half and in
    // t = 1 - x on the right half
    let (a, b) = if right {
        (mesh.dist_right()[e], mesh.dist_right()[e + 1])
    } else {
        (mesh.nodes()[e], mesh.nodes()[e + 1])
    };
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut out = Element {
        stiff: 0.0,
        m00: 0.0,
        m01: 0.0,
        m11: 0.0,
    };
    for (xi, w) in g.nodes.iter().zip(&g.weights) {
        let p = mid + half * xi;
        // phi1 is the hat of node e + 1
        let phi1 = 0.5 * (1.0 + xi);
        let phi0 = 1.0 - phi1;
        let (gv, hv, x) = if right {
            (gamma.eval_from_right(p), h.eval_from_right(p), 1.0 - p)
        } else {
            (gamma.eval(p), h.eval(p), p)
        };
        let gv = check(x, gv, false)?;
        let hv = check(x, hv, true)?;
        let jw = w * 0.5 * len;
        out.stiff += jw * hv * gv;
        out.m00 += jw * hv * phi0 * phi0;
        out.m01 += jw * hv * phi0 * phi1;
        out.m11 += jw * hv * phi1 * phi1;
    }
    out.stiff /= len * len;
    Ok(out)
}

/// Assembles the P1 forms on `mesh`. No boundary conditions are imposed.
pub fn assemble(gamma: &SymplecticProfile, h: &HermitianProfile, mesh: &Mesh) -> Result<DiscreteForms> {
    let n = mesh.size();
    let quadrature = QuadratureRecord {
        points_per_element: 2,
        endpoint_points: if h.degree() >= 1 { 4 } else { 2 },
    };
    let elements: Vec<Element> = (0..n)
        .into_par_iter()
        .map(|e| {
            let pts = if e + 1 == n {
                quadrature.endpoint_points
            } else {
                quadrature.points_per_element
            };
            element(gamma, h, mesh, e, pts)
        })
        .collect::<Result<_>>()?;
    let mut k = SymTridiagonal::zeros(n + 1);
    let mut m = SymTridiagonal::zeros(n + 1);
    for (e, el) in elements.iter().enumerate() {
        k.diag[e] += el.stiff;
        k.diag[e + 1] += el.stiff;
        k.off[e] -= el.stiff;
        m.diag[e] += el.m00;
        m.diag[e + 1] += el.m11;
        m.off[e] += el.m01;
    }
    Ok(DiscreteForms {
        stiffness: k,
        mass: m,
        quadrature,
    })
}
