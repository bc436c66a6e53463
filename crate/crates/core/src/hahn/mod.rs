//! The Hahn-series model over the coefficient reals.

pub mod exponent;
pub mod literal;
pub mod series;

pub use exponent::{Exponent, Value};
pub use literal::{parse_series, parse_series_list, print_series};
pub use series::{arch_ratio, compare_series, compare_series_with, invert, monomial, residue, valuation, HahnSeries};
