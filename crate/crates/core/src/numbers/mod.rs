//! Exact archimedean scalars.

pub mod algebraic;
pub mod creal;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod rational;

pub use algebraic::{ralg_sign, RealAlgebraic};
pub use creal::{compare, default_precision, set_default_precision, CoefficientReal};
pub use oracle::{creal_approx, OracleReal};
pub use rational::Rational;

use crate::error::{Error, Result};

/// Basis of the rational relations `Σ q_i c_i = 0` among coefficients.
///
/// Decidable when every coefficient is exact. With oracle coefficients only a
/// lone nonzero element is accepted; anything else would need an independence
/// certificate the oracle cannot supply.
pub fn coefficient_relations(cs: &[CoefficientReal], budget: u32) -> Result<Vec<Vec<Rational>>> {
    let exact: Option<Vec<RealAlgebraic>> = cs.iter().map(|c| c.exact()).collect();
    match exact {
        Some(xs) => Ok(field::rational_relations(&xs)),
        None if cs.len() == 1 => Ok(Vec::new()),
        None => Err(Error::ComparisonUndecidedAtPrecision(budget)),
    }
}
