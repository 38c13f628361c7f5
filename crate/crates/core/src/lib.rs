//! Truncated wedge schemes and jet schemes of affine schemes.
//!
//! The crate builds the defining ideals of `W_m(X)` and `J_m(X)`, describes
//! the components of wedge schemes of monomial schemes in closed form, and
//! certifies multiplicity one along components of wedge schemes of reduced
//! monomial hypersurfaces. The [`oracle`] module holds the brute-force and
//! Groebner machinery the closed forms are checked against.

pub mod error;
pub mod par;
pub mod scheme;
pub mod symbolic;

pub use error::{Error, Result};
pub use par::Execution;
pub mod components;
pub mod monomial_ideal;
pub mod multiplicity;
pub mod oracle;
