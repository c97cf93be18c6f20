//! Linear matroids on sets of pair indices, over Q or F_p.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::colex;
use crate::exactmath::{is_odd_prime, rank_fp_small, rank_q_small, MathError};
use crate::lattice::{basis, BasisCoords, LatticeError, PairIndex, RANK};

pub const CIRCUIT_GUARD: usize = 20;
pub const ISO_GUARD: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("pair {0} is not in the ground set")]
    NotInGround(PairIndex),
    #[error("circuit enumeration limited to {CIRCUIT_GUARD} elements, got {0}")]
    CircuitGuard(usize),
    #[error("isomorphism brute force limited to r <= {ISO_GUARD}, got {0}")]
    IsoGuard(usize),
    #[error("unrecognised field {0:?}; expected \"q\" or \"fp:P\"")]
    BadField(String),
}

/// Field over which independence is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    /// Odd prime characteristic.
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, MatroidError> {
        if is_odd_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(MathError::NotOddPrime(p).into())
        }
    }

    /// Short tag used in file names, e.g. `q` or `fp5`.
    pub fn tag(&self) -> String {
        match self {
            Field::Rational => "q".into(),
            Field::Prime(p) => format!("fp{p}"),
        }
    }

    /// Rank of a handful of coordinate rows (at most 7 distinct directions).
    pub fn rank_rows(&self, rows: &mut [BasisCoords]) -> usize {
        match *self {
            Field::Rational => rank_q_small(rows),
            Field::Prime(p) => rank_fp_small(rows, p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = MatroidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" {
            return Ok(Field::Rational);
        }
        let p = lower
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| MatroidError::BadField(s.to_string()))?;
        Field::prime(p)
    }
}

/// Rank over `field` of the representatives of `subset`.
pub fn subset_rank(field: Field, subset: &[PairIndex]) -> usize {
    let b = basis();
    let mut rows: Vec<BasisCoords> = subset.iter().map(|&i| *b.pair_coordinates(i)).collect();
    field.rank_rows(&mut rows)
}

/// Rank of a subset given as zero-based element indices (hot path).
#[inline]
pub fn rank_zero_based(field: Field, elements: &[u8]) -> usize {
    let b = basis();
    let coords = |e: u8| *b.pair_coordinates(PairIndex::from_zero_based(e as usize));
    if elements.len() <= 8 {
        let mut rows = [[0i64; RANK]; 8];
        for (row, &e) in rows.iter_mut().zip(elements) {
            *row = coords(e);
        }
        field.rank_rows(&mut rows[..elements.len()])
    } else {
        let mut rows: Vec<BasisCoords> = elements.iter().map(|&e| coords(e)).collect();
        field.rank_rows(&mut rows)
    }
}

/// Ordered ground set without repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    elements: Vec<PairIndex>,
    field: Field,
}

impl GroundSet {
    pub fn new(elements: Vec<PairIndex>, field: Field) -> Result<Self, MatroidError> {
        let mut seen = [false; 29];
        for e in &elements {
            if std::mem::replace(&mut seen[e.get()], true) {
                return Err(LatticeError::DuplicatePair(e.get()).into());
            }
        }
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        Ok(GroundSet { elements, field })
    }

    /// All 28 pairs.
    pub fn full(field: Field) -> Result<Self, MatroidError> {
        Self::new(PairIndex::all().collect(), field)
    }

    pub fn elements(&self) -> &[PairIndex] {
        &self.elements
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Matroid represented by the pair representatives; independence comes from
/// the rank oracle and nothing is stored.
#[derive(Debug, Clone)]
pub struct Matroid {
    ground: GroundSet,
}

impl Matroid {
    pub fn new(ground: GroundSet) -> Self {
        Matroid { ground }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn check_members(&self, s: &[PairIndex]) -> Result<(), MatroidError> {
        match s.iter().find(|e| !self.ground.elements.contains(e)) {
            Some(&e) => Err(MatroidError::NotInGround(e)),
            None => Ok(()),
        }
    }

    pub fn rank(&self, s: &[PairIndex]) -> Result<usize, MatroidError> {
        self.check_members(s)?;
        Ok(subset_rank(self.ground.field, s))
    }

    pub fn is_independent(&self, s: &[PairIndex]) -> Result<bool, MatroidError> {
        Ok(self.rank(s)? == s.len())
    }

    /// Minimal dependent subsets of `within`, each rechecked before returning.
    ///
    /// Circuits are listed by size, then in the order their members appear in `within`.
    pub fn circuits(&self, within: &[PairIndex]) -> Result<Vec<Vec<PairIndex>>, MatroidError> {
        if within.len() > CIRCUIT_GUARD {
            return Err(MatroidError::CircuitGuard(within.len()));
        }
        self.check_members(within)?;
        let field = self.ground.field;
        let n = within.len();
        let dependent = |mask: u32| {
            let members: Vec<PairIndex> =
                (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| within[i]).collect();
            subset_rank(field, &members) < members.len()
        };
        let mut masks: Vec<u32> = Vec::new();
        // A circuit in a rank-7 space has at most 8 elements.
        for size in 1..=n.min(RANK + 1) {
            let mut found: Vec<u32> = Vec::new();
            for_each_mask_of_size(n, size, |mask| {
                // Dependent with no known circuit inside means every proper subset is independent.
                if masks.iter().all(|&c| c & mask != c) && dependent(mask) {
                    found.push(mask);
                }
            });
            masks.extend(found);
        }
        let circuits: Vec<Vec<PairIndex>> = masks
            .iter()
            .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| within[i]).collect())
            .collect();
        for c in &circuits {
            assert!(self.is_circuit(c)?, "circuit recheck failed for {c:?}");
        }
        Ok(circuits)
    }

    /// Dependent, and every proper subset independent (checked exhaustively).
    pub fn is_circuit(&self, c: &[PairIndex]) -> Result<bool, MatroidError> {
        if self.is_independent(c)? {
            return Ok(false);
        }
        let n = c.len();
        for mask in 0..(1u32 << n) - 1 {
            let sub: Vec<PairIndex> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| c[i]).collect();
            if !self.is_independent(&sub)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn for_each_mask_of_size(n: usize, k: usize, mut f: impl FnMut(u32)) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(idx.iter().fold(0u32, |m, &i| m | 1 << i));
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Dependent-set family of an `r`-subset as a bitmask over its `2^r` sub-masks.
fn dependence_family(field: Field, elements: &[u8]) -> u64 {
    let r = elements.len();
    let mut family = 0u64;
    let mut buf = [0u8; ISO_GUARD];
    for mask in 1u64..(1 << r) {
        let mut n = 0;
        for (i, &e) in elements.iter().enumerate() {
            if mask >> i & 1 == 1 {
                buf[n] = e;
                n += 1;
            }
        }
        if rank_zero_based(field, &buf[..n]) < n {
            family |= 1 << mask;
        }
    }
    family
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

/// Canonical form of a dependent-set family: the least image over all relabelings.
fn canonical_family(family: u64, mask_maps: &[Vec<u8>]) -> u64 {
    mask_maps
        .iter()
        .map(|map| {
            let mut bits = family;
            let mut image = 0u64;
            while bits != 0 {
                let m = bits.trailing_zeros() as usize;
                image |= 1 << map[m];
                bits &= bits - 1;
            }
            image
        })
        .min()
        .unwrap_or(family)
}

/// Matroid-isomorphism class label of every `r`-subset of the 28 pairs, by colex rank.
///
/// Labels are dense and ordered by canonical form, so they are deterministic.
pub fn iso_class_labels(r: usize, field: Field) -> Result<Vec<u32>, MatroidError> {
    if r > ISO_GUARD {
        return Err(MatroidError::IsoGuard(r));
    }
    if let Field::Prime(p) = field {
        Field::prime(p)?;
    }
    let total = colex::binom(colex::GROUND, r);
    let families: Vec<u64> = (0..total)
        .into_par_iter()
        .map(|rank| {
            let mut e = [0u8; ISO_GUARD];
            colex::unrank(rank, r, &mut e);
            dependence_family(field, &e[..r])
        })
        .collect();

    let mask_maps: Vec<Vec<u8>> = permutations(r)
        .into_iter()
        .map(|perm| {
            (0..1usize << r)
                .map(|m| {
                    (0..r)
                        .filter(|&i| m >> i & 1 == 1)
                        .fold(0u8, |acc, i| acc | 1 << perm[i])
                })
                .collect()
        })
        .collect();
    let mut canon: HashMap<u64, u64> = HashMap::new();
    for &f in &families {
        canon.entry(f).or_insert_with(|| canonical_family(f, &mask_maps));
    }
    let mut classes: Vec<u64> = canon.values().copied().collect();
    classes.sort_unstable();
    classes.dedup();
    Ok(families
        .iter()
        .map(|f| classes.binary_search(&canon[f]).unwrap() as u32)
        .collect())
}

/// Number of matroid-equivalence classes among all `r`-subsets, `r <= 6`.
pub fn brute_force_iso_classes(r: usize, field: Field) -> Result<usize, MatroidError> {
    let labels = iso_class_labels(r, field)?;
    Ok(labels.iter().max().map_or(0, |&m| m as usize + 1))
}
