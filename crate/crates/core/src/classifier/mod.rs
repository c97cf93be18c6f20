//! Inductive signature census over all subsets of the 28 pairs.
//!
//! Level `r` assigns every `r`-subset the tuple `(independent; multiplicities
//! of the level-(r-1) classes among its (r-1)-subsets)`, and `n_r` is the
//! number of distinct tuples. Levels are flat `u32` arrays indexed by colex
//! rank; only the previous level is needed to build the next.

mod checkpoint;

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::colex::{self, GROUND};
use crate::lattice::{LatticeError, PairIndex, RANK};
use crate::matroid::{rank_zero_based, Field, MatroidError};

pub use checkpoint::{checkpoint_path, read_level, write_level, MAGIC};

/// Subsets handled per work unit. Results do not depend on this value.
const CHUNK: usize = 1 << 14;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("inconsistent level table: {0}")]
    Inconsistent(String),
    #[error("subset of size {got} does not extend level {level}")]
    SizeMismatch { level: usize, got: usize },
    #[error("level {0} outside 1..=28")]
    BadLevel(usize),
    #[error("corrupt checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `(i; m_1, .., m_n)` stored sparsely: `counts` holds `(class id, multiplicity)`
/// runs for the nonzero `m_j`, in increasing class order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub independent: bool,
    pub counts: Vec<(u32, u32)>,
}

impl Signature {
    /// Multiplicities as a dense vector of length `n_prev`.
    pub fn dense_counts(&self, n_prev: usize) -> Vec<u32> {
        let mut dense = vec![0; n_prev];
        for &(id, m) in &self.counts {
            dense[id as usize] = m;
        }
        dense
    }

    /// Number of sub-signatures counted (`k + 1` for a `(k+1)`-subset).
    pub fn total(&self) -> u32 {
        self.counts.iter().map(|&(_, m)| m).sum()
    }

    pub fn flag(&self) -> u8 {
        u8::from(self.independent)
    }

    fn from_sorted_ids(independent: bool, ids: &[u32]) -> Signature {
        let mut counts: Vec<(u32, u32)> = Vec::new();
        for &id in ids {
            match counts.last_mut() {
                Some((last, m)) if *last == id => *m += 1,
                _ => counts.push((id, 1)),
            }
        }
        Signature { independent, counts }
    }
}

/// How independent subsets are labelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignatureMode {
    /// The full tuple for every subset.
    #[default]
    Full,
    /// Every independent subset gets one fixed token with no counts.
    CollapsedIndependent,
}

/// Class IDs for every subset of one size, plus the interned signatures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTable {
    level: usize,
    ids: Vec<u32>,
    signatures: Vec<Signature>,
}

impl LevelTable {
    pub fn new(level: usize, ids: Vec<u32>, signatures: Vec<Signature>) -> Result<Self, ClassifyError> {
        if level > GROUND {
            return Err(ClassifyError::BadLevel(level));
        }
        let expected = colex::binom(GROUND, level) as usize;
        if ids.len() != expected {
            return Err(ClassifyError::Inconsistent(format!(
                "level {level} needs {expected} entries, found {}",
                ids.len()
            )));
        }
        if let Some(&bad) = ids.iter().find(|&&id| id as usize >= signatures.len()) {
            return Err(ClassifyError::Inconsistent(format!(
                "class id {bad} out of range for {} signatures",
                signatures.len()
            )));
        }
        if signatures.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ClassifyError::Inconsistent("signatures not strictly sorted".into()));
        }
        Ok(LevelTable {
            level,
            ids,
            signatures,
        })
    }

    /// The empty set alone, as an independent class with no counts.
    pub fn empty_set() -> Self {
        LevelTable {
            level: 0,
            ids: vec![0],
            signatures: vec![Signature {
                independent: true,
                counts: Vec::new(),
            }],
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn signatures(&self) -> &[Signature] {
        &self.signatures
    }

    /// `n_r` for this level.
    pub fn class_count(&self) -> usize {
        self.signatures.len()
    }

    pub fn class_of(&self, subset: &[PairIndex]) -> Result<u32, ClassifyError> {
        if subset.len() != self.level {
            return Err(ClassifyError::SizeMismatch {
                level: self.level,
                got: subset.len(),
            });
        }
        let elements = sorted_zero_based(subset)?;
        Ok(self.ids[colex::rank(&elements) as usize])
    }
}

fn sorted_zero_based(subset: &[PairIndex]) -> Result<Vec<u8>, LatticeError> {
    let mut e: Vec<u8> = subset.iter().map(|p| p.zero_based() as u8).collect();
    e.sort_unstable();
    if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
        return Err(LatticeError::DuplicatePair(w[0] as usize + 1));
    }
    Ok(e)
}

fn independent(field: Field, elements: &[u8]) -> bool {
    // Beyond the rank of the lattice nothing is independent.
    elements.len() <= RANK && rank_zero_based(field, elements) == elements.len()
}

/// Signature of one subset against the previous level (full tuple form).
pub fn signature_of(subset: &[PairIndex], prev: &LevelTable, field: Field) -> Result<Signature, ClassifyError> {
    if subset.len() != prev.level + 1 {
        return Err(ClassifyError::SizeMismatch {
            level: prev.level,
            got: subset.len(),
        });
    }
    let elements = sorted_zero_based(subset)?;
    let mut children = vec![0u64; elements.len()];
    colex::child_ranks(&elements, &mut children);
    let mut ids: Vec<u32> = children.iter().map(|&c| prev.ids[c as usize]).collect();
    ids.sort_unstable();
    Ok(Signature::from_sorted_ids(independent(field, &elements), &ids))
}

/// Fixed-size raw signature used as a hash key inside a work unit.
#[derive(Clone, Copy, PartialEq, Eq)]
struct RawKey {
    independent: bool,
    len: u8,
    ids: [u32; GROUND],
}

impl Hash for RawKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.independent.hash(state);
        self.ids[..self.len as usize].hash(state);
    }
}

impl RawKey {
    fn signature(&self) -> Signature {
        Signature::from_sorted_ids(self.independent, &self.ids[..self.len as usize])
    }
}

/// Computes level `prev.level() + 1`.
pub fn classify_level(prev: &LevelTable, field: Field) -> Result<LevelTable, ClassifyError> {
    classify_level_with(prev, field, SignatureMode::Full)
}

pub fn classify_level_with(
    prev: &LevelTable,
    field: Field,
    mode: SignatureMode,
) -> Result<LevelTable, ClassifyError> {
    let r = prev.level + 1;
    if r > GROUND {
        return Err(ClassifyError::BadLevel(r));
    }
    if let Field::Prime(p) = field {
        Field::prime(p)?;
    }
    let expected_prev = colex::binom(GROUND, prev.level) as usize;
    if prev.ids.len() != expected_prev {
        return Err(ClassifyError::Inconsistent(format!(
            "predecessor for level {r} has {} entries, expected {expected_prev}",
            prev.ids.len()
        )));
    }
    let total = colex::binom(GROUND, r) as usize;
    let mut ids = vec![0u32; total];

    // Phase 1: raw signatures, interned per work unit.
    let local: Vec<Vec<RawKey>> = ids
        .par_chunks_mut(CHUNK)
        .enumerate()
        .map(|(chunk, out)| classify_chunk(prev, field, mode, r, chunk * CHUNK, out))
        .collect();

    // Phase 2: one global sorted dictionary, then rewrite local ids.
    let mut signatures: Vec<Signature> = local.iter().flatten().map(RawKey::signature).collect();
    signatures.sort_unstable();
    signatures.dedup();
    let remaps: Vec<Vec<u32>> = local
        .par_iter()
        .map(|keys| {
            keys.iter()
                .map(|k| signatures.binary_search(&k.signature()).unwrap() as u32)
                .collect()
        })
        .collect();
    ids.par_chunks_mut(CHUNK).zip(remaps.par_iter()).for_each(|(out, remap)| {
        for id in out.iter_mut() {
            *id = remap[*id as usize];
        }
    });

    Ok(LevelTable {
        level: r,
        ids,
        signatures,
    })
}

fn classify_chunk(
    prev: &LevelTable,
    field: Field,
    mode: SignatureMode,
    r: usize,
    start: usize,
    out: &mut [u32],
) -> Vec<RawKey> {
    let mut dict: FxHashMap<RawKey, u32> = FxHashMap::default();
    let mut keys: Vec<RawKey> = Vec::new();
    let mut elements = [0u8; GROUND];
    let elements = &mut elements[..r];
    colex::unrank(start as u64, r, elements);
    let mut children = [0u64; GROUND];
    let prev_ids = &prev.ids[..];

    for slot in out.iter_mut() {
        let indep = r <= RANK && independent(field, elements);
        let mut key = RawKey {
            independent: indep,
            len: 0,
            ids: [0; GROUND],
        };
        if !(indep && mode == SignatureMode::CollapsedIndependent) {
            colex::child_ranks(elements, &mut children[..r]);
            for (dst, &c) in key.ids[..r].iter_mut().zip(&children[..r]) {
                *dst = prev_ids[c as usize];
            }
            key.ids[..r].sort_unstable();
            key.len = r as u8;
        }
        let next_id = keys.len() as u32;
        *slot = *dict.entry(key).or_insert_with(|| {
            keys.push(key);
            next_id
        });
        colex::next(elements);
    }
    keys
}

/// Options for a multi-level run.
#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub max_r: usize,
    pub field: Field,
    /// Per-level checkpoints live in `dir/<field tag>/`.
    pub checkpoint_dir: Option<PathBuf>,
}

/// Per-level progress, passed to the observer of [`run_census_with`].
#[derive(Debug, Clone)]
pub struct LevelReport {
    pub level: usize,
    pub class_count: usize,
    pub resumed: bool,
    pub checkpoint: Option<PathBuf>,
    pub elapsed: std::time::Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub field: Field,
    pub counts: BTreeMap<usize, usize>,
    pub checkpoints: Vec<PathBuf>,
}

pub fn run_census(opts: &CensusOptions) -> Result<Census, ClassifyError> {
    run_census_with(opts, |_| {})
}

/// Runs levels `1..=max_r`, loading any level already checkpointed.
pub fn run_census_with(
    opts: &CensusOptions,
    mut observe: impl FnMut(&LevelReport),
) -> Result<Census, ClassifyError> {
    if !(1..=GROUND).contains(&opts.max_r) {
        return Err(ClassifyError::BadLevel(opts.max_r));
    }
    let dir = match &opts.checkpoint_dir {
        Some(d) => {
            let d = d.join(opts.field.tag());
            std::fs::create_dir_all(&d)?;
            Some(d)
        }
        None => None,
    };
    let mut counts = BTreeMap::new();
    let mut checkpoints = Vec::new();
    let mut prev = LevelTable::empty_set();
    for r in 1..=opts.max_r {
        let started = std::time::Instant::now();
        let path = dir.as_deref().map(|d| checkpoint_path(d, r));
        let (table, resumed) = match path.as_deref() {
            Some(p) if p.exists() => (read_level(p, r)?, true),
            _ => (classify_level(&prev, opts.field)?, false),
        };
        if let (Some(p), false) = (path.as_deref(), resumed) {
            write_level(p, &table)?;
        }
        counts.insert(r, table.class_count());
        if let Some(p) = &path {
            checkpoints.push(p.clone());
        }
        observe(&LevelReport {
            level: r,
            class_count: table.class_count(),
            resumed,
            checkpoint: path,
            elapsed: started.elapsed(),
        });
        prev = table;
    }
    Ok(Census {
        field: opts.field,
        counts,
        checkpoints,
    })
}

/// Convenience for tests and small runs: levels `0..=max_r` kept in memory.
pub fn all_levels(max_r: usize, field: Field, mode: SignatureMode) -> Result<Vec<LevelTable>, ClassifyError> {
    let mut levels = vec![LevelTable::empty_set()];
    for _ in 0..max_r {
        let next = classify_level_with(levels.last().unwrap(), field, mode)?;
        levels.push(next);
    }
    Ok(levels)
}
