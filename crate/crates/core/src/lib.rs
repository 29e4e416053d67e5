//! Exact symbolic model of the discrete free scalar field on a 1d lattice.
//!
//! Observables are graded-commutative polynomials in field generators
//! `delta[x]` and antifield generators `bdelta[x]` with coefficients in
//! `Q[hbar][alpha, alpha^-1]`. The crate implements the classical and quantum
//! differentials, a certified rewriting to canonical representatives, the
//! factorization product on intervals, and the resulting Weyl algebra.

pub mod cochain;
pub mod complex;
pub mod harness;
pub mod operad;
pub mod reduction;
pub mod scalars;
pub mod weyl;

pub use cochain::{Cochain, LatticeFunction, Monomial, Site};
pub use complex::{dquantum, ModelParams};
pub use operad::Interval;
pub use reduction::{normal_form, relocate, verify_certificate, HomotopyCertificate, Window};
pub use scalars::Scalar;
pub use weyl::{FockVector, H0Class, StarAlgebra, StarGeometry, WeylElement};
