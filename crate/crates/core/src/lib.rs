//! Combinatorial signature and rho invariants for Hermitian matrices over
//! the group ring of the integers.
//!
//! A square matrix `A` with entries in the Laurent polynomial ring
//! `Q(i)[z, z^-1]` presents a Hermitian form `B = A + A*` whose evaluation
//! at points of the unit circle is an ordinary Hermitian matrix.  The crate
//! computes the resulting signature step function on the circle exactly up
//! to floating point root localisation, and derives from it the spectral
//! invariants of interest: the L2 (mean) signature, signatures twisted by a
//! finite dimensional unitary representation, delocalized signatures
//! attached to nontrivial conjugacy classes, and the center valued
//! refinement that packages all of them.
//!
//! Everything upstream of root localisation is exact rational arithmetic;
//! everything downstream is plain `f64` with explicitly stated tolerances.
//! The crate is `no_std` + `alloc`: all floating point transcendentals go
//! through `libm` via `num-traits`.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod cmatrix;
pub mod error;
pub mod eta;
pub mod induction;
pub mod laurent;
pub mod matrix;
pub(crate) mod poly;
pub mod quadrature;
pub mod rational;
pub mod reports;
pub mod roots;
pub mod snf;
pub mod spectral;
pub mod traces;

pub use error::{Result, RhoError};

/// Default tolerance for accepting a numerical root as lying on the circle
/// and for merging nearby angles.
pub const DEFAULT_ROOT_TOL: f64 = 1e-9;

/// Default relative threshold below which an eigenvalue counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Default relative tolerance for the truncated eta heat integral.
pub const DEFAULT_ETA_REL_TOL: f64 = 1e-6;
