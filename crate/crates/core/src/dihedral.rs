//! Existence of dihedral covers of order `2p` branched along a quartic and a
//! set of bitangents.
//!
//! A cover exists iff some `sum a_i s_i` with every `a_i` in `1..p` lies in
//! `p` times the lattice. In basis coordinates that is a vector with full
//! support in the mod-`p` kernel of the coordinate matrix.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::exactmath::{is_odd_prime, nullspace_fp, IntMatrix, MathError};
use crate::lattice::{basis, LatticeError, PairIndex, RANK};
use crate::matroid::{subset_rank, Field};

/// Largest kernel (`p^nullity` vectors) the enumeration will walk.
pub const KERNEL_BOUND: u64 = 10_000_000;
/// Largest prime bound accepted by [`cover_primes`].
pub const PRIME_SCAN_BOUND: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DihedralError {
    #[error("p = {0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("kernel has {p}^{nullity} vectors, above the enumeration bound of {KERNEL_BOUND}")]
    KernelTooLarge { p: u64, nullity: usize },
    #[error("prime bound {0} exceeds {PRIME_SCAN_BOUND}")]
    PrimeBoundTooLarge(u64),
    #[error("a cover query needs at least one section")]
    EmptySubset,
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("{signs} signs given for {sections} sections")]
    SignCount { sections: usize, signs: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl From<MathError> for DihedralError {
    fn from(e: MathError) -> Self {
        match e {
            MathError::NotOddPrime(p) => DihedralError::InvalidPrime(p),
            other => unreachable!("unexpected math error {other}"),
        }
    }
}

/// A section `±l_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Section {
    pub pair: PairIndex,
    pub sign: i8,
}

impl Section {
    pub fn positive(pair: PairIndex) -> Self {
        Section { pair, sign: 1 }
    }
}

/// Sections with distinct pairs, together with an odd prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverQuery {
    sections: Vec<Section>,
    p: u64,
}

impl CoverQuery {
    pub fn new(sections: Vec<Section>, p: u64) -> Result<Self, DihedralError> {
        validate_sections(&sections)?;
        if !is_odd_prime(p) {
            return Err(DihedralError::InvalidPrime(p));
        }
        Ok(CoverQuery { sections, p })
    }

    /// All-positive signs.
    pub fn positive(pairs: &[PairIndex], p: u64) -> Result<Self, DihedralError> {
        Self::new(pairs.iter().copied().map(Section::positive).collect(), p)
    }

    pub fn with_signs(pairs: &[PairIndex], signs: &[i8], p: u64) -> Result<Self, DihedralError> {
        if pairs.len() != signs.len() {
            return Err(DihedralError::SignCount {
                sections: pairs.len(),
                signs: signs.len(),
            });
        }
        let sections = pairs
            .iter()
            .zip(signs)
            .map(|(&pair, &sign)| Section { pair, sign })
            .collect();
        Self::new(sections, p)
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn pairs(&self) -> Vec<PairIndex> {
        self.sections.iter().map(|s| s.pair).collect()
    }

    /// `RANK x n` matrix whose columns are the signed basis coordinates.
    fn column_matrix(&self) -> IntMatrix {
        let b = basis();
        let cols: Vec<[i64; RANK]> = self
            .sections
            .iter()
            .map(|s| b.signed_coordinates(s.pair, s.sign))
            .collect();
        IntMatrix::from_rows(&cols).transpose()
    }
}

fn validate_sections(sections: &[Section]) -> Result<(), DihedralError> {
    if sections.is_empty() {
        return Err(DihedralError::EmptySubset);
    }
    let mut seen = BTreeSet::new();
    for s in sections {
        if s.sign != 1 && s.sign != -1 {
            return Err(DihedralError::BadSign(s.sign));
        }
        if !seen.insert(s.pair) {
            return Err(LatticeError::DuplicatePair(s.pair.get()).into());
        }
    }
    Ok(())
}

/// Coefficients `a_i` in `1..p` witnessing a cover, if one exists.
pub fn cover_witness(q: &CoverQuery) -> Result<Option<Vec<u64>>, DihedralError> {
    let p = q.p;
    let kernel = nullspace_fp(&q.column_matrix(), p)?;
    let nullity = kernel.len();
    if nullity == 0 {
        return Ok(None);
    }
    let size = (p as u128).checked_pow(nullity as u32);
    if size.is_none_or(|s| s > KERNEL_BOUND as u128) {
        return Err(DihedralError::KernelTooLarge { p, nullity });
    }
    let n = q.sections.len();
    // Odometer over kernel coefficients; bumping digit j adds kernel[j] once,
    // including on wrap-around since p * kernel[j] = 0.
    let mut digits = vec![0u64; nullity];
    let mut v = vec![0u64; n];
    loop {
        let mut j = 0;
        loop {
            if j == nullity {
                return Ok(None);
            }
            for (x, k) in v.iter_mut().zip(&kernel[j]) {
                *x = (*x + k) % p;
            }
            digits[j] += 1;
            if digits[j] < p {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
        if v.iter().all(|&x| x != 0) {
            return Ok(Some(v));
        }
    }
}

pub fn dcover_exists(q: &CoverQuery) -> Result<bool, DihedralError> {
    Ok(cover_witness(q)?.is_some())
}

/// True when the sections form a circuit over F_p.
///
/// A circuit's dependence is unique up to scalar and has full support, so
/// a cover then exists.
pub fn circuit_implies_cover(q: &CoverQuery) -> Result<bool, DihedralError> {
    let field = Field::Prime(q.p);
    let pairs = q.pairs();
    let n = pairs.len();
    if subset_rank(field, &pairs) == n {
        return Ok(false);
    }
    let circuit = (0..n).all(|skip| {
        let rest: Vec<PairIndex> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &p)| p)
            .collect();
        subset_rank(field, &rest) == n - 1
    });
    debug_assert!(!circuit || dcover_exists(q).unwrap_or(true));
    Ok(circuit)
}

/// Odd primes `p <= p_max` for which a cover exists (all-positive signs).
pub fn cover_primes(pairs: &[PairIndex], p_max: u64) -> Result<Vec<u64>, DihedralError> {
    let signs = vec![1; pairs.len()];
    cover_primes_signed(pairs, &signs, p_max)
}

pub fn cover_primes_signed(pairs: &[PairIndex], signs: &[i8], p_max: u64) -> Result<Vec<u64>, DihedralError> {
    if p_max > PRIME_SCAN_BOUND {
        return Err(DihedralError::PrimeBoundTooLarge(p_max));
    }
    let mut out = Vec::new();
    for p in (3..=p_max).step_by(2).filter(|&p| is_odd_prime(p)) {
        if dcover_exists(&CoverQuery::with_signs(pairs, signs, p)?)? {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(ix: &[usize]) -> Vec<PairIndex> {
        ix.iter().map(|&i| PairIndex::new(i).unwrap()).collect()
    }

    #[test]
    fn query_validation() {
        assert_eq!(CoverQuery::positive(&[], 3), Err(DihedralError::EmptySubset));
        assert_eq!(CoverQuery::positive(&pairs(&[1]), 2), Err(DihedralError::InvalidPrime(2)));
        assert_eq!(CoverQuery::positive(&pairs(&[1]), 15), Err(DihedralError::InvalidPrime(15)));
        assert!(matches!(
            CoverQuery::positive(&pairs(&[3, 3]), 5),
            Err(DihedralError::Lattice(LatticeError::DuplicatePair(3)))
        ));
        assert_eq!(
            CoverQuery::with_signs(&pairs(&[1, 2]), &[1], 5),
            Err(DihedralError::SignCount { sections: 2, signs: 1 })
        );
        assert_eq!(
            CoverQuery::with_signs(&pairs(&[1]), &[2], 5),
            Err(DihedralError::BadSign(2))
        );
    }

    #[test]
    fn singleton_never_covers() {
        for p in [3, 5, 7, 11] {
            assert!(!dcover_exists(&CoverQuery::positive(&pairs(&[9]), p).unwrap()).unwrap());
        }
        assert!(cover_primes(&pairs(&[9]), 200).unwrap().is_empty());
    }

    #[test]
    fn prime_bound_guard() {
        assert_eq!(
            cover_primes(&pairs(&[1]), 10_001),
            Err(DihedralError::PrimeBoundTooLarge(10_001))
        );
    }
}
