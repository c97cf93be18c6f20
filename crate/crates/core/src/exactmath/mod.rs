//! Exact linear algebra and binary-form utilities.
//!
//! Everything here works over `BigInt`/`BigRational`, with two exceptions: the
//! `*_small` routines used by the lattice hot path operate on fixed-width
//! rows whose entries are tiny, and `modp` which works with residues in `u64`.

mod binary;
mod intmat;
mod modp;
mod rational;

pub use binary::{binary_gcd, BinaryForm};
pub use intmat::{hnf, rank_q, rank_q_small, snf_divisors, IntMatrix};
pub use modp::{is_odd_prime, is_prime, nullspace_fp, rank_fp, rank_fp_small, require_odd_prime};
pub use rational::{solve_rational, RatMatrix, RatVector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("gcd of two zero forms is undefined")]
    ZeroGcd,
}
