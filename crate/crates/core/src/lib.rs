//! Torus-equivariant Gysin push-forwards for classical homogeneous spaces.
//!
//! The push-forward of a Weyl-symmetric class is computed as an iterated
//! residue at infinity ([`spaces::pushforward`]) and can be checked against
//! fixed-point localization ([`oracle::abbv_pushforward`]).

pub mod oracle;
pub mod poly;
pub mod residue;
pub mod schur;
pub mod spaces;
pub mod text;

pub use poly::{rat, int, Polynomial, Rational, VarBlock, VarId};
