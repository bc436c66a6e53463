//! Valuation-theoretic linear algebra on finite-rank subgroups.

pub mod basis;
pub mod pseudo;

pub use basis::{is_valuation_independent, term_sign, valuation_basis, SpanBasis};
pub use pseudo::{check_pseudo_cauchy, is_pseudo_cauchy_prefix, is_pseudo_limit, pseudo_limit, pseudo_limit_of, PseudoSequence};
