//! Finite-element min-max for the invariant spectrum: minimize
//! `∫ h̄γ|φ'|² / ∫ h̄φ²` over P1 functions on a graded mesh, with no
//! boundary conditions (the weights vanish at both ends).

pub mod assemble;
pub mod bound;
pub mod ladder;
pub mod mesh;
pub mod solve;

pub use assemble::{assemble, DiscreteForms, QuadratureRecord, SymTridiagonal};
pub use bound::{verify_bound, verify_bound_with_tol, BoundRecord, BoundReport, DEFAULT_BOUND_TOL};
pub use ladder::{invariant_spectrum, invariant_spectrum_with, raw_eigenvalues, SpectrumOptions, NORMALIZATION};
pub use mesh::{build_mesh, Mesh};
pub use solve::{count_below, eigenvalues, solve_generalized, Eigenpairs};
