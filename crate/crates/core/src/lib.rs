pub mod abelian;
pub mod artin_schreier;
pub mod cli;
pub mod code;
pub mod config;
pub mod criterion;
pub mod digit_program;
pub mod error;
pub mod field;
pub mod padic;
pub mod report;
pub mod ramified;
pub mod suites;
pub mod valuation;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldTower, Level, Limits, TraceMap};
pub use padic::{ExponentTuple, WittElement, WittRing};
pub use valuation::{Rational, Valuation};
