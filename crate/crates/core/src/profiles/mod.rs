//! One-dimensional descriptions of invariant metrics on the projective
//! line: the potential `F`, its transform `F̌`, the moment-map inverse `G`,
//! the profile `γ`, and hermitian profiles `h̄`.

pub mod construct;
pub mod document;
pub mod hermitian;
pub mod hypothesis;
pub mod legendre;
pub mod pchip;
pub mod potential;
pub mod symplectic;
pub mod validate;

pub use construct::{potential_from_gamma, total_mass, ConstructedPotential};
pub use document::ProfileDocument;
pub use hermitian::{canonical_hermitian, HermitianKind, HermitianProfile};
pub use hypothesis::{check_hypothesis, HypothesisReport};
pub use legendre::{
    density_from_potential, density_limits, double_legendre, gamma_from_potential, legendre_fenchel,
    moment_inverse,
};
pub use pchip::MonotoneCubic;
pub use potential::{KahlerPotential, PotentialFn, DEFAULT_TRUNCATION};
pub use symplectic::{
    bump_profile, canonical_profile, fcheck_can, fs_profile, g_can, gamma_can, gamma_fs, BumpProfile,
    Mollifier, SymplecticProfile,
};
pub use validate::{validate_class_g, validate_hermitian, ClassGReport, HermitianReport};

/// `reflect_potential(F)`: the potential of the pulled-back metric under
/// `z ↦ 1/z`, `F*(u) = u + F(-u)`.
pub fn reflect_potential(f: &KahlerPotential) -> KahlerPotential {
    f.reflect()
}

/// `reflect(γ)`: `γ*(x) = γ(1 - x)`.
pub fn reflect(gamma: &SymplecticProfile) -> SymplecticProfile {
    gamma.reflect()
}
