use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric graded mesh on `[0, 1]`.
///
/// Nodes are stored twice: as `x` and as the distance `1 - x` to the right
/// endpoint, each computed directly so neither loses precision near its end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    nodes: Vec<f64>,
    dist_right: Vec<f64>,
    grading: f64,
}

/// `x_i = ½ (i/(N/2))^grading` on the left half, mirrored on the right.
pub fn build_mesh(n: usize, grading: f64) -> Result<Mesh> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!("mesh size {n} is below 16")));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("mesh size {n} must be even")));
    }
    if !(grading >= 1.0) || !grading.is_finite() {
        return Err(Error::InvalidArgument(format!("grading {grading} must be at least 1")));
    }
    let half = n / 2;
    let left: Vec<f64> = (0..=half)
        .map(|i| 0.5 * (i as f64 / half as f64).powf(grading))
        .collect();
    let mut nodes = Vec::with_capacity(n + 1);
    let mut dist_right = Vec::with_capacity(n + 1);
    for &x in &left {
        nodes.push(x);
        dist_right.push(1.0 - x);
    }
    for i in (0..half).rev() {
        nodes.push(1.0 - left[i]);
        dist_right.push(left[i]);
    }
    Ok(Mesh {
        nodes,
        dist_right,
        grading,
    })
}

impl Mesh {
    /// Number of elements `N`.
    pub fn size(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `1 - x_i` for every node.
    pub fn dist_right(&self) -> &[f64] {
        &self.dist_right
    }

    pub fn grading(&self) -> f64 {
        self.grading
    }

    /// Whether element `e = [x_e, x_{e+1}]` lies in the right half.
    pub fn is_right_element(&self, e: usize) -> bool {
        e >= self.size() / 2
    }

    /// Length of element `e`, taken from the coordinate that is exact there.
    pub fn element_length(&self, e: usize) -> f64 {
        if self.is_right_element(e) {
            self.dist_right[e] - self.dist_right[e + 1]
        } else {
            self.nodes[e + 1] - self.nodes[e]
        }
    }
}
