//! Independent checks for the closed forms: exhaustive tuple search,
//! finite-field point sampling, and a small Groebner basis engine.

mod brute;
mod field;
pub mod groebner;

pub use brute::{brute_force_minimal_primes, sample_vanishing, BRUTE_FORCE_CAP};
pub use field::{independent_rows, is_prime, rank_mod, FieldPoint};
pub use groebner::{
    groebner_membership, ideal_quotient, ideals_equal, quotient_witness_search, GroebnerBasis,
    TermOrder, DEFAULT_BUDGET,
};
