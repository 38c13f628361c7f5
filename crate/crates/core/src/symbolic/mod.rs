//! Exact polynomial arithmetic over wedge and jet coordinates.

mod monomial;
mod parse;
mod poly;
mod series;
mod variable;

pub use monomial::Monomial;
pub use parse::{parse_polynomial, VariableTable};
pub use poly::Polynomial;
pub(crate) use poly::{mul_mod, pow_mod};
pub use series::{substitute_truncated, TruncatedSeries};
pub use variable::{wedge_coordinates, Branch, VarKind, Variable};
