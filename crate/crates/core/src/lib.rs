//! Invariant spectra of Laplace operators attached to S¹-invariant metrics on
//! the projective line and invariant hermitian metrics on `O(m)`.
//!
//! The crate is organised around four pieces:
//!
//! - [`profiles`]: one-dimensional descriptions of invariant metrics (Kähler
//!   potentials `F(u)`, symplectic profiles `γ(x)`, hermitian profiles `h̄(x)`)
//!   and the transforms between them.
//! - [`bessel`]: integer-order Bessel functions, the `L_{m,n}` family and the
//!   zero ladders giving the spectrum of the canonical pair in closed form.
//! - [`sturm`]: a graded-mesh finite-element solver for the weighted
//!   Sturm–Liouville problem whose min-max values are the invariant eigenvalues.
//! - [`families`]: seeded generators of admissible profile families used for
//!   bound and monotonicity sweeps.

// `!(v > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod error;
pub mod families;
pub mod format;
pub mod profiles;
pub mod quadrature;
pub mod roots;
pub mod spectrum;
pub mod sturm;

pub use error::{Error, Result};
pub use spectrum::{Method, SpectrumResult};
