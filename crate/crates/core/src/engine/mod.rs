//! Saturation: completing partial types, classifying the cut they determine
//! over the parameter substructure, and building a witness.

mod classify;
mod complete;
mod computable;
mod oracle;
mod pipeline;
mod realize;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use classify::{classify_cut, CutClassification};
pub use complete::{complete_type, Completion};
pub use computable::{sequence_is_computable_in, ComputableSequence, GenStep};
pub use oracle::{height_enumeration, CutOracle, SequenceOracle, Side, TargetOracle, TypeOracle};
pub use pipeline::{realize_type, Realization, Verdict};
pub use realize::{realize_cut_field, realize_cut_group, recognize_algebraic, Witness};

/// Which structure the parameters generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Divisible ordered abelian group: the ℚ-span.
    Group,
    /// Real closed field.
    Field,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "group" | "doag" => Ok(Mode::Group),
            "field" | "rcf" => Ok(Mode::Field),
            _ => Err(Error::Unsupported(format!("unknown mode `{s}` (expected group or field)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Group => "group",
            Mode::Field => "field",
        })
    }
}

/// Search limits. Every result the engine reports is relative to these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Height of the rational coefficients used in side queries.
    pub height: u64,
    /// Largest denominator preferred for a fill exponent.
    pub denom: u64,
    /// Formulas of the type, and of the enumeration, that are examined.
    pub prefix: usize,
    /// Bits of precision for coefficient comparisons and residue cuts.
    pub precision: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { height: 8, denom: 8, prefix: 100, precision: 64 }
    }
}

impl Budgets {
    pub fn validate(&self) -> Result<()> {
        if self.height == 0 || self.denom == 0 || self.prefix == 0 || self.precision == 0 {
            return Err(Error::Unsupported("budgets must be positive".into()));
        }
        Ok(())
    }
}

impl fmt::Display for Budgets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "height {}, denominators {}, prefix {}, precision {}", self.height, self.denom, self.prefix, self.precision)
    }
}
