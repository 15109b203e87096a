//! Permutations, permutation groups and the standard subgroups.

mod bits;
mod group;
mod homomorphism;
mod permutation;
mod primes;
mod subgroups;

pub use bits::Bits;
pub use group::{CayleyTable, FiniteGroup, TABLE_CAP};
pub use homomorphism::Homomorphism;
pub use permutation::{Permutation, Point, MAX_DEGREE};
pub use primes::{factorize, is_p_power, is_prime, p_part, prime_divisors, PrimeSet};
pub use subgroups::*;

pub use permutation::gcd;
pub(crate) use subgroups::cosets;
