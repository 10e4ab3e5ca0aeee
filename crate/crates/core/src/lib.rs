//! Enumeration of non-abelian finite simple groups whose order has all its
//! prime divisors inside a given finite set of primes.
//!
//! The crate is organised in four layers:
//!
//! * [`primes`] — sieving, deterministic primality, multiplicative orders and
//!   smoothness-constrained factorization (the arithmetic kernel);
//! * [`order`] — the catalog of simple-group families: exact order formulas,
//!   admissibility, exceptional-isomorphism aliases and Atlas-style names;
//! * [`enumerate`] — the candidate generator with its field-exponent and rank
//!   bounds, the parallel smoothness filter and the deterministic merge;
//! * [`analytics`] — post-processing of one run: partition by maximal prime,
//!   generic/non-generic classification, spectrum-size strata and extremes.

pub mod analytics;
pub mod enumerate;
mod error;
pub mod order;
pub mod primes;

pub use analytics::{
    classify_generic_primes, extremes, generic_groups, partition_by_max_prime, stratify_kn,
    ExtremesReport, KnStratum, SpectrumClass,
};
pub use enumerate::{
    candidate_stream, compute_bounds, enumerate_simple_groups, CandidateBounds, EnumerateOptions,
};
pub use error::SpectrumError;
pub use order::{
    alias_canonical, aliases, canonical_name, display_name, group_order, is_admissible, spectrum,
    GroupId, GroupRecord, LieFamily, LieId, Sporadic,
};
pub use primes::{
    constrained_factor, is_prime, multiplicative_order, next_prime_above, sieve_primes, t_bound,
    FactoredOrder, PrimeSet,
};
