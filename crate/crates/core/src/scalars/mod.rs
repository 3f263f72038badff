//! Exact coefficient arithmetic.
//!
//! Everything downstream is generic over [`Ring`]: Gaussian rationals for
//! numeric work, [`ParamScalar`] for symbolic parameters, and [`Jet`] for
//! first-order expansions in a real curve parameter.

mod expr;
mod gaussian;
mod gcd;
mod jet;
mod param;
mod poly;

pub use expr::{eval, parse_expr, parse_scalar, show_monomial, Expr, ExprValue, ParseError, Registry, VarKind};
pub use gaussian::GaussianRational;
pub use gcd::poly_gcd;
pub use jet::Jet;
pub use param::{Assignment, ParamScalar, ScalarError};
pub use poly::{Poly, PolyMonomial, Var};

use std::fmt::Debug;

/// Commutative ring with a conjugation involution.
///
/// Methods take references so that generic code does not clone big
/// coefficients on every operation.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Antilinear involution: `i -> -i`, parameters to their conjugates.
    fn conj(&self) -> Self;
    /// Multiplicative inverse, if it exists in the ring.
    fn try_inv(&self) -> Option<Self>;
    fn from_gaussian(g: &GaussianRational) -> Self;
    /// Embedding of a symbolic scalar, `None` when the ring cannot hold it.
    fn from_param(p: &ParamScalar) -> Option<Self>;

    /// Invertibility test; fields only need the zero test.
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(k: i64) -> Self {
        Self::from_gaussian(&GaussianRational::from_int(k))
    }

    fn i() -> Self {
        Self::from_gaussian(&GaussianRational::i())
    }
}
