//! Exact Hahn-series models of divisible ordered abelian groups and real
//! closed fields, with cut classification and realization of computable types.

pub mod error;
pub mod numbers;
pub mod hahn;
pub mod valuation;
pub mod formula;
pub mod trees;
pub mod engine;

pub use engine::{realize_type, Budgets, CutClassification, CutOracle, Mode, Realization, Side, Witness};
pub use error::{Error, Result};
pub use formula::{doag_qe, eval, parse_formula, parse_type_file, Env, Formula, PartialType, TypeFile};
pub use hahn::{parse_series, parse_series_list, Exponent, HahnSeries, Value};
pub use numbers::{CoefficientReal, OracleReal, Rational, RealAlgebraic};
pub use trees::{BinString, TreeOracle};
pub use valuation::{valuation_basis, PseudoSequence, SpanBasis};
