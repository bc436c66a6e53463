//! Formulas of ordered groups and ordered fields.

pub mod ast;
pub mod cut;
pub mod enumerate;
pub mod eval;
pub mod parse;
pub mod qe;
pub mod term;
pub mod types;

pub use ast::{Atom, Formula, Rel};
pub use cut::{cut_bounds, is_satisfiable, satisfying_cut, Bound, CutBounds};
pub use enumerate::{enumerate_formulas, formula_index, Enumerator, Signature};
pub use eval::{eval, eval_term, Env};
pub use parse::{parse_formula, parse_term};
pub use qe::doag_qe;
pub use types::{builtin_family, combinations_by_height, parse_type_file, PartialType, TypeFile};
pub use term::{Monomial, Term};
