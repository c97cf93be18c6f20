//! The 56 minimal vectors of E7* in its Q^8 model, grouped into 28 pairs `±l`.
//!
//! Vectors are stored multiplied by 4, so a minimal vector is a permutation of
//! `±(1, 1, 1, 1, 1, 1, -3, -3)` and the height pairing is `dot / 16`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Neg;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exactmath::{hnf, rank_q, snf_divisors, IntMatrix};

pub const PAIR_COUNT: usize = 28;
pub const AMBIENT_DIM: usize = 8;
pub const RANK: usize = 7;

/// Coordinates of a vector in [`LatticeBasis`] terms.
pub type BasisCoords = [i64; RANK];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("not a scaled minimal vector: {0:?}")]
    NotMinimal([i32; AMBIENT_DIM]),
    #[error("pair index {0} out of range 1..=28")]
    BadPairIndex(usize),
    #[error("duplicate pair index {0}")]
    DuplicatePair(usize),
    #[error("subset is dependent over Q (rank {rank} < {size}); every prime drops rank")]
    DependentSubset { rank: usize, size: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalVector {
    coords: [i32; AMBIENT_DIM],
}

impl MinimalVector {
    pub fn new(coords: [i32; AMBIENT_DIM]) -> Result<Self, LatticeError> {
        let sign = if coords.iter().filter(|&&c| c == 1).count() == 6 { 1 } else { -1 };
        let ones = coords.iter().filter(|&&c| c == sign).count();
        let threes = coords.iter().filter(|&&c| c == -3 * sign).count();
        if ones == 6 && threes == 2 {
            Ok(MinimalVector { coords })
        } else {
            Err(LatticeError::NotMinimal(coords))
        }
    }

    pub fn coords(&self) -> &[i32; AMBIENT_DIM] {
        &self.coords
    }

    pub fn coords_i64(&self) -> [i64; AMBIENT_DIM] {
        self.coords.map(i64::from)
    }

    /// True for the representative of its pair (six entries equal to +1).
    pub fn is_representative(&self) -> bool {
        self.coords.iter().filter(|&&c| c == 1).count() == 6
    }

    pub fn dot(&self, other: &MinimalVector) -> i32 {
        self.coords.iter().zip(other.coords.iter()).map(|(a, b)| a * b).sum()
    }
}

impl Neg for MinimalVector {
    type Output = MinimalVector;

    fn neg(self) -> MinimalVector {
        MinimalVector {
            coords: self.coords.map(|c| -c),
        }
    }
}

impl fmt::Debug for MinimalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/4", self.coords)
    }
}

/// Index `1..=28` of a pair `±l`, one per bitangent line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairIndex(u8);

impl PairIndex {
    pub fn new(index: usize) -> Result<Self, LatticeError> {
        if (1..=PAIR_COUNT).contains(&index) {
            Ok(PairIndex(index as u8))
        } else {
            Err(LatticeError::BadPairIndex(index))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn zero_based(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_zero_based(i: usize) -> Self {
        assert!(i < PAIR_COUNT);
        PairIndex(i as u8 + 1)
    }

    pub fn all() -> impl Iterator<Item = PairIndex> {
        (1..=PAIR_COUNT as u8).map(PairIndex)
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses indices, rejecting duplicates.
pub fn pair_set(indices: &[usize]) -> Result<Vec<PairIndex>, LatticeError> {
    let mut seen = BTreeSet::new();
    indices
        .iter()
        .map(|&i| {
            let p = PairIndex::new(i)?;
            if !seen.insert(p) {
                return Err(LatticeError::DuplicatePair(i));
            }
            Ok(p)
        })
        .collect()
}

fn representatives() -> &'static [MinimalVector; PAIR_COUNT] {
    static REPS: OnceLock<[MinimalVector; PAIR_COUNT]> = OnceLock::new();
    REPS.get_or_init(|| {
        let mut all = Vec::with_capacity(PAIR_COUNT);
        for a in 0..AMBIENT_DIM {
            for b in a + 1..AMBIENT_DIM {
                let mut c = [1; AMBIENT_DIM];
                c[a] = -3;
                c[b] = -3;
                all.push(MinimalVector { coords: c });
            }
        }
        all.sort_by(|x, y| y.coords.cmp(&x.coords));
        all.try_into().expect("C(8,2) representatives")
    })
}

/// The 28 pairs in canonical order (descending lexicographic on the representative).
pub fn enumerate_pairs() -> Vec<(PairIndex, MinimalVector)> {
    representatives()
        .iter()
        .enumerate()
        .map(|(i, &v)| (PairIndex::from_zero_based(i), v))
        .collect()
}

pub fn representative(i: PairIndex) -> MinimalVector {
    representatives()[i.zero_based()]
}

/// All 56 minimal vectors: each representative followed by its negative.
pub fn minimal_vectors() -> Vec<MinimalVector> {
    representatives().iter().flat_map(|&v| [v, -v]).collect()
}

/// The pair containing `v`; `pair_of(v) == pair_of(-v)`.
pub fn pair_of(v: &MinimalVector) -> PairIndex {
    let rep = if v.is_representative() { *v } else { -*v };
    let pos = representatives()
        .iter()
        .position(|r| *r == rep)
        .expect("every minimal vector has a representative");
    PairIndex::from_zero_based(pos)
}

/// Height pairing on the Q^8 model: unscaled dot product, i.e. `dot / 16`.
pub fn height_pairing(v: &MinimalVector, w: &MinimalVector) -> Rational64 {
    Rational64::new(v.dot(w) as i64, 16)
}

/// Integral basis of the span of the 28 scaled representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    basis: Vec<[i64; AMBIENT_DIM]>,
    pivots: Vec<usize>,
    pair_coords: [BasisCoords; PAIR_COUNT],
}

impl LatticeBasis {
    pub fn vectors(&self) -> &[[i64; AMBIENT_DIM]] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates of `v`, or `None` if `v` is not in the lattice.
    ///
    /// The basis is in Hermite form, so coordinates are read off pivot by pivot.
    pub fn coordinates(&self, v: &[i64; AMBIENT_DIM]) -> Option<Vec<i64>> {
        let mut rest = *v;
        let mut out = Vec::with_capacity(self.rank());
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            if rest[pc] % b[pc] != 0 {
                return None;
            }
            let x = rest[pc] / b[pc];
            for (r, bc) in rest.iter_mut().zip(b) {
                *r -= x * bc;
            }
            out.push(x);
        }
        rest.iter().all(|&r| r == 0).then_some(out)
    }

    pub fn expand(&self, coords: &[i64]) -> [i64; AMBIENT_DIM] {
        assert_eq!(coords.len(), self.rank());
        let mut v = [0i64; AMBIENT_DIM];
        for (x, b) in coords.iter().zip(&self.basis) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += x * bi;
            }
        }
        v
    }

    pub fn pair_coordinates(&self, i: PairIndex) -> &BasisCoords {
        &self.pair_coords[i.zero_based()]
    }

    /// Basis coordinates of `sign * l_i`.
    pub fn signed_coordinates(&self, i: PairIndex, sign: i8) -> BasisCoords {
        self.pair_coordinates(i).map(|x| x * i64::from(sign))
    }

    /// Coordinate rows of a subset as an integer matrix (one row per element).
    pub fn coordinate_matrix(&self, subset: &[PairIndex]) -> IntMatrix {
        let rows: Vec<BasisCoords> = subset.iter().map(|&i| *self.pair_coordinates(i)).collect();
        if rows.is_empty() {
            return IntMatrix::zeros(0, RANK);
        }
        IntMatrix::from_rows(&rows)
    }
}

pub fn compute_basis() -> LatticeBasis {
    let reps: Vec<[i64; AMBIENT_DIM]> =
        representatives().iter().map(MinimalVector::coords_i64).collect();
    let h = hnf(&IntMatrix::from_rows(&reps));
    let basis: Vec<[i64; AMBIENT_DIM]> = (0..h.rows())
        .map(|r| {
            let row: Vec<i64> = h.row(r).iter().map(|x| x.to_i64().unwrap()).collect();
            row.try_into().unwrap()
        })
        .collect();
    let pivots = basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("HNF rows are nonzero"))
        .collect();
    let mut lb = LatticeBasis {
        basis,
        pivots,
        pair_coords: [[0; RANK]; PAIR_COUNT],
    };
    assert_eq!(lb.rank(), RANK, "the representatives span a rank-7 lattice");
    for (i, rep) in reps.iter().enumerate() {
        let c = lb.coordinates(rep).expect("representative lies in its own span");
        lb.pair_coords[i] = c.try_into().unwrap();
    }
    lb
}

/// Shared, lazily computed basis.
pub fn basis() -> &'static LatticeBasis {
    static BASIS: OnceLock<LatticeBasis> = OnceLock::new();
    BASIS.get_or_init(compute_basis)
}

/// Primes at which a Q-independent subset loses rank.
///
/// These are the primes dividing the Smith divisors of the subset's
/// coordinate matrix in [`LatticeBasis`] terms.
pub fn rank_drop_primes(subset: &[PairIndex]) -> Result<BTreeSet<u64>, LatticeError> {
    let m = basis().coordinate_matrix(subset);
    let rank = rank_q(&m);
    if rank < subset.len() {
        return Err(LatticeError::DependentSubset {
            rank,
            size: subset.len(),
        });
    }
    let mut primes = BTreeSet::new();
    // d_1 | d_2 | ..., so the last divisor carries every prime.
    if let Some(last) = snf_divisors(&m).last() {
        let mut n = last.clone();
        let mut p = BigInt::from(2);
        while &p * &p <= n {
            if (&n % &p).is_zero() {
                primes.insert(p.to_u64().expect("small prime"));
                while (&n % &p).is_zero() {
                    n /= &p;
                }
            }
            p += 1;
        }
        if n > BigInt::from(1) {
            primes.insert(n.to_u64().expect("prime factor fits in u64"));
        }
    }
    Ok(primes)
}
