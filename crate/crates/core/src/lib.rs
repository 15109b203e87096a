//! Finite permutation groups, complement searches and verdicts on when
//! every normal embedding that splits locally also splits globally.

pub mod automorphisms;
pub mod catalog;
pub mod complements;
pub mod constructors;
pub mod engine;
pub mod error;
pub mod lattice;
pub mod limits;
pub mod perm;
pub mod witness;

pub use error::{GroupError, Result};
pub use limits::Limits;
pub use perm::{FiniteGroup, Homomorphism, Permutation, PrimeSet};
