//! Farey sequence toolkit.
//!
//! The sequence of order m is carried as ordered triples (n, d, s), where s
//! counts the orders remaining until a mediant is created immediately after
//! n/d. Stepping a sequence yields the next order plus the created
//! fractions, and everything else grows out of that recursion:
//!
//! - generation (triple-based and the classic three-term recursion)
//! - structural property checks and the creation-countdown algebra
//! - the neighbor-gap and order-index formulas, and the Franel-Landau
//!   discrepancy with two independently computed index routes
//! - cycle sets: the orders at which a fraction carries a given countdown,
//!   as exact residue classes
//! - prime and twin-prime sieves and recursions built on those sets
//! - deliberately naive brute-force oracles for differential testing
//!
//! # Example
//!
//! ```
//! use farey::{generate, step};
//!
//! let f4 = generate(4).unwrap();
//! let (f5, created) = step(&f4).unwrap();
//! assert_eq!(f5.len(), f4.len() + created.len());
//! assert!(created.iter().all(|c| c.fraction().denominator() == 5));
//! ```

pub mod analysis;
pub mod cycles;
pub mod error;
pub mod fraction;
pub mod io;
pub mod oracle;
pub mod primes;
pub mod registry;
pub mod sequence;
pub mod totient;

pub use analysis::{
    check_property, franel_statistic, franel_table, gap, gap_from_parts, order_index,
    Counterexample, FranelRow, PropertyReport,
};
pub use cycles::{cycle_set, cycle_set_for_denominator, ems, m_c, s_initial, Progression, ResidueClassSet};
pub use error::{FareyError, Result};
pub use fraction::{mediant, Fraction};
pub use primes::{
    is_lesser_twin_farey, is_prime_farey, prime_stream, twin_primes_report, twin_stream,
    FareySieve, TwinPair,
};
pub use registry::CreationRegistry;
pub use sequence::{
    created, generate, generate_classic, initial_sequence, next_term, step, CreatedFraction,
    FareySequence, FareyTriple, Sweep,
};
pub use totient::{totient, totient_summatory};
