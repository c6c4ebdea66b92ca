//! Exact algebra for Kohn's multiplier-ideal procedure on special domains
//! `Re w + sum |h_j(z)|^2 < 0`.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`]: rational multivariate polynomials, monomial orders, Jacobians.
//! * [`groebner`]: Buchberger bases, normal forms, radical membership,
//!   elimination and radicals of monomial or zero-dimensional ideals.
//! * [`kohn`]: the inductive ideals with subellipticity orders and replayable
//!   certificates.
//! * [`finite_type`]: finite-type order, a curve-based type estimate and the
//!   relations between them.
//! * [`bounds`]: exact effective-bound formulas and a generation-degree
//!   checker for graded monomial rings.

pub mod bounds;
pub mod error;
pub mod finite_type;
pub mod groebner;
pub mod kohn;
#[cfg(feature = "oracles")]
pub mod oracle;
pub mod poly;
pub mod rational;

pub use error::{Error, Result};
pub use groebner::Ideal;
pub use kohn::{Certificate, KohnConfig, Outcome, SpecialDomain};
pub use poly::{Monomial, MonomialOrder, Polynomial};
pub use rational::Rational;
