//! Exact and arbitrary-precision machinery for odd zeta values written as
//! integrals of polynomials against tan(πt/2).
//!
//! The exact layer ([`exactnum`], [`pipoly`], [`expansion`]) works in
//! rational arithmetic with powers of π tracked symbolically. The numeric
//! layer ([`quad`], [`reference`], [`zetarep`], [`gammaderiv`]) evaluates at
//! a caller-chosen binary precision.

pub mod bigreal;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod expansion;
pub mod gammaderiv;
pub mod pipoly;
pub mod precision;
pub mod quad;
pub mod reference;
pub mod zetarep;

pub use bigreal::BigReal;
pub use error::{Error, Result};
pub use exactnum::Rational;
pub use pipoly::{PiLaurent, PiPoly};
pub use precision::Accuracy;
pub use quad::QuadResult;
pub use zetarep::{Representation, ZetaComputation};
