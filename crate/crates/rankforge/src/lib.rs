//! Algebraic attacks on the rank decoding (RD) and MinRank problems.
//!
//! The crate is `no_std` and only needs `alloc`. It provides exact
//! arithmetic over prime fields and their extensions, dense and sparse
//! linear algebra (including a Wiedemann kernel solver), random instance
//! generation with planted solutions, the MaxMinors linearization for
//! overdetermined RD instances, the Support Minors linearization for
//! MinRank and underdetermined RD instances, and a bit-complexity
//! estimator for published parameter sets.
#![no_std]

extern crate alloc;

pub mod combin;
mod error;
pub mod estimator;
pub mod ffield;
pub mod instances;
pub mod linalg;
pub mod maxminors;
pub mod supportminors;

pub use error::Error;
pub use ffield::{ExtElement, ExtField, Fq, PrimeField};
pub use instances::{MinRankInstance, RdInstance};
pub use linalg::{DenseMatrix, SparseMatrix};

pub type Result<T> = core::result::Result<T, Error>;

/// Deterministic RNG used throughout the crate.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Build the crate RNG from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}
