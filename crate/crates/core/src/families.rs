//! Seeded generators of profile pairs for bound and monotonicity sweeps.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::profiles::{bump_profile, canonical_hermitian, gamma_can, HermitianProfile, Mollifier, SymplecticProfile};

/// `h̄ = h̄_{m,∞} (1 + θ (γ_can/γ - 1))`, which satisfies
/// `h̄_{m,∞} ≤ h̄` and `h̄ γ ≤ h̄_{m,∞} γ_can` whenever `γ ≤ γ_can` and
/// `θ ∈ [0, 1]`.
pub fn between_metric(gamma: &SymplecticProfile, m: u32, theta: f64) -> HermitianProfile {
    fn ratio(g: f64, c: f64) -> f64 {
        if g > 0.0 {
            c / g
        } else {
            1.0
        }
    }
    let gl = gamma.clone();
    let gr = gamma.clone();
    HermitianProfile::custom_two_sided(
        m,
        format!("between({}, m={m}, theta={theta})", gamma.name()),
        move |x| canonical_hermitian(m, x) * (1.0 + theta * (ratio(gl.eval(x), gamma_can(x)) - 1.0)),
        move |t| (2.0 * t).min(1.0).powi(m as i32) * (1.0 + theta * (ratio(gr.eval_from_right(t), gamma_can(t)) - 1.0)),
    )
}

/// A profile pair meant to satisfy the hypothesis `h̄ ≥ h̄_{m,∞}`,
/// `h̄γ ≤ h̄_{m,∞}γ_can`.
#[derive(Debug, Clone)]
pub struct BoundCase {
    pub gamma: SymplecticProfile,
    pub h: HermitianProfile,
    pub m: u32,
    pub theta: f64,
}

fn random_gamma(rng: &mut ChaCha8Rng) -> SymplecticProfile {
    if rng.gen_bool(0.5) {
        let a = rng.gen_range(1.0..=20.0);
        let half_width = rng.gen_range(0.05..=0.25);
        let center = rng.gen_range((0.25 + half_width)..=(0.75 - half_width));
        let bump = Mollifier {
            center,
            half_width,
            height: rng.gen_range(0.02..=0.125),
        };
        bump_profile(a, bump).expect("bump parameters are drawn inside the admissible range")
    } else {
        SymplecticProfile::mixture(rng.gen_range(0.05..=0.9)).expect("weight in [0, 1]")
    }
}

/// `count` bump or mixture profiles with `m ∈ {0, 1, 2}` and metrics from
/// [`between_metric`].
pub fn bound_cases(seed: u64, count: usize) -> Vec<BoundCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let gamma = random_gamma(&mut rng);
            let m = rng.gen_range(0..=2u32);
            let theta = rng.gen_range(0.0..=1.0);
            let h = between_metric(&gamma, m, theta);
            BoundCase { gamma, h, m, theta }
        })
        .collect()
}

/// Two profile pairs on `O(m)` with `γ₁h̄₁ ≤ γ₂h̄₂` and `h̄₁ ≥ h̄₂`.
#[derive(Debug, Clone)]
pub struct OrderedPair {
    pub lower: (SymplecticProfile, HermitianProfile),
    pub upper: (SymplecticProfile, HermitianProfile),
    pub m: u32,
}

#[derive(Debug, Clone, Copy)]
struct Wave {
    amplitude: f64,
    frequency: f64,
    phase: f64,
}

impl Wave {
    fn random(rng: &mut ChaCha8Rng, max_amplitude: f64) -> Self {
        Wave {
            amplitude: rng.gen_range(0.0..=max_amplitude),
            frequency: rng.gen_range(1..=6) as f64,
            phase: rng.gen_range(0.0..2.0 * PI),
        }
    }

    /// A value in `[0, amplitude]`.
    fn eval(&self, x: f64) -> f64 {
        0.5 * self.amplitude * (1.0 + (2.0 * PI * self.frequency * x + self.phase).sin())
    }
}

fn scaled_gamma(g: &SymplecticProfile, f: impl Fn(f64) -> f64 + Send + Sync + Clone + 'static) -> SymplecticProfile {
    let (gl, gr, fl, fr) = (g.clone(), g.clone(), f.clone(), f);
    SymplecticProfile::custom_two_sided(
        format!("scaled({})", g.name()),
        move |x| gl.eval(x) * fl(x),
        move |t| gr.eval_from_right(t) * fr(1.0 - t),
    )
}

fn scaled_hermitian(h: &HermitianProfile, f: impl Fn(f64) -> f64 + Send + Sync + Clone + 'static) -> HermitianProfile {
    let (hl, hr, fl, fr) = (h.clone(), h.clone(), f.clone(), f);
    HermitianProfile::custom_two_sided(
        h.degree(),
        format!("scaled({})", h.name()),
        move |x| hl.eval(x) * fl(x),
        move |t| hr.eval_from_right(t) * fr(1.0 - t),
    )
}

/// `count` ordered pairs. Even indices compare a hypothesis-satisfying pair
/// with the canonical pair; odd indices perturb a random pair by
/// `h̄₁ = h̄₂ r`, `γ₁ = γ₂ s / r` with `r ≥ 1 ≥ s`.
pub fn ordered_pairs(seed: u64, count: usize) -> Vec<OrderedPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let gamma = random_gamma(&mut rng);
            let m = rng.gen_range(0..=2u32);
            let theta = rng.gen_range(0.0..=1.0);
            let h = between_metric(&gamma, m, theta);
            if i % 2 == 0 {
                OrderedPair {
                    lower: (gamma, h),
                    upper: (SymplecticProfile::Canonical, HermitianProfile::canonical(m)),
                    m,
                }
            } else {
                let up = Wave::random(&mut rng, 1.0);
                let down = Wave::random(&mut rng, 0.9);
                let r = move |x: f64| 1.0 + up.eval(x);
                let s = move |x: f64| (1.0 - down.eval(x)) / (1.0 + up.eval(x));
                OrderedPair {
                    lower: (scaled_gamma(&gamma, s), scaled_hermitian(&h, r)),
                    upper: (gamma, h),
                    m,
                }
            }
        })
        .collect()
}
