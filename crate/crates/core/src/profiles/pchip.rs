//! Piecewise-monotone cubic (Fritsch–Carlson) interpolation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(points: &[[f64; 2]]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidProfile(
                "sampled profile needs at least two points".into(),
            ));
        }
        let xs: Vec<f64> = points.iter().map(|p| p[0]).collect();
        let ys: Vec<f64> = points.iter().map(|p| p[1]).collect();
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::InvalidProfile("sample values must be finite".into()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidProfile(
                "sample abscissae must be strictly increasing".into(),
            ));
        }
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut slopes = vec![0.0; n];
        if n == 2 {
            slopes[0] = delta[0];
            slopes[1] = delta[0];
        } else {
            for i in 1..n - 1 {
                if delta[i - 1] * delta[i] <= 0.0 {
                    slopes[i] = 0.0;
                } else {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    slopes[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
                }
            }
            slopes[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            slopes[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        Ok(MonotoneCubic { xs, ys, slopes })
    }

    pub fn points(&self) -> Vec<[f64; 2]> {
        self.xs.iter().zip(&self.ys).map(|(&x, &y)| [x, y]).collect()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    fn segment(&self, x: f64) -> usize {
        let n = self.xs.len();
        match self.xs.partition_point(|&v| v <= x) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.segment(x);
        self.hermite(i, x - self.xs[i], self.xs[i + 1] - x)
    }

    /// Evaluates at `x_last - t` measuring the offset from the right end,
    /// which keeps full relative precision for tiny `t`.
    pub fn eval_from_right(&self, t: f64) -> f64 {
        let last = *self.xs.last().unwrap();
        let x = last - t;
        let i = self.segment(x);
        let to_right = (self.xs[i + 1] - last) + t;
        self.hermite(i, (self.xs[i + 1] - self.xs[i]) - to_right, to_right)
    }

    fn hermite(&self, i: usize, from_left: f64, to_right: f64) -> f64 {
        let h = self.xs[i + 1] - self.xs[i];
        let s = from_left / h;
        let r = to_right / h;
        // Hermite basis written in (s, r) with s + r = 1
        let h00 = r * r * (1.0 + 2.0 * s);
        let h01 = s * s * (1.0 + 2.0 * r);
        let h10 = s * r * r;
        let h11 = -s * s * r;
        h00 * self.ys[i] + h01 * self.ys[i + 1] + h * (h10 * self.slopes[i] + h11 * self.slopes[i + 1])
    }

    /// Mirror image `x ↦ x_first + x_last - x`.
    pub fn mirrored(&self) -> MonotoneCubic {
        let (a, b) = self.domain();
        let pts: Vec<[f64; 2]> = self
            .xs
            .iter()
            .zip(&self.ys)
            .rev()
            .map(|(&x, &y)| [a + (b - x), y])
            .collect();
        let mut m = MonotoneCubic::new(&pts).expect("mirror of a valid interpolant");
        // keep endpoints exact
        m.xs[0] = a;
        *m.xs.last_mut().unwrap() = b;
        m
    }
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if s.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && s.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        s
    }
}
