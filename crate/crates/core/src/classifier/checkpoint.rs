//! One file per level.
//!
//! ```text
//! "MWL1" | level: u32 LE | entries: u64 LE | entries x class id: u32 LE
//! | signature count: u32 LE | per signature: byte length u32 LE, then bytes
//! ```
//!
//! Signature bytes: independence flag (u8), run count (u32 LE), then each
//! run as class id (u32 LE) and multiplicity (u32 LE).

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::{ClassifyError, LevelTable, Signature};
use crate::colex::{self, GROUND};

pub const MAGIC: &[u8; 4] = b"MWL1";

pub fn checkpoint_path(dir: &Path, level: usize) -> PathBuf {
    dir.join(format!("level_{level:02}.mwl"))
}

fn encode_signature(sig: &Signature) -> Vec<u8> {
    let mut out = Vec::with_capacity(5 + 8 * sig.counts.len());
    out.push(sig.flag());
    out.extend_from_slice(&(sig.counts.len() as u32).to_le_bytes());
    for &(id, m) in &sig.counts {
        out.extend_from_slice(&id.to_le_bytes());
        out.extend_from_slice(&m.to_le_bytes());
    }
    out
}

fn decode_signature(bytes: &[u8]) -> Option<Signature> {
    let (&flag, rest) = bytes.split_first()?;
    if flag > 1 || rest.len() < 4 {
        return None;
    }
    let runs = u32::from_le_bytes(rest[..4].try_into().ok()?) as usize;
    let body = &rest[4..];
    if body.len() != runs.checked_mul(8)? {
        return None;
    }
    let counts = body
        .chunks_exact(8)
        .map(|c| {
            (
                u32::from_le_bytes(c[..4].try_into().unwrap()),
                u32::from_le_bytes(c[4..].try_into().unwrap()),
            )
        })
        .collect();
    Some(Signature {
        independent: flag == 1,
        counts,
    })
}

/// Writes atomically: a temporary sibling file is renamed into place.
pub fn write_level(path: &Path, table: &LevelTable) -> Result<(), ClassifyError> {
    let tmp = path.with_extension("mwl.tmp");
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        w.write_all(MAGIC)?;
        w.write_all(&(table.level() as u32).to_le_bytes())?;
        w.write_all(&(table.ids().len() as u64).to_le_bytes())?;
        for id in table.ids() {
            w.write_all(&id.to_le_bytes())?;
        }
        w.write_all(&(table.signatures().len() as u32).to_le_bytes())?;
        for sig in table.signatures() {
            let bytes = encode_signature(sig);
            w.write_all(&(bytes.len() as u32).to_le_bytes())?;
            w.write_all(&bytes)?;
        }
        w.into_inner().map_err(|e| e.into_error())?.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads and validates a level file; `level` is the level the caller expects.
pub fn read_level(path: &Path, level: usize) -> Result<LevelTable, ClassifyError> {
    let corrupt = |reason: String| ClassifyError::CorruptCheckpoint {
        path: path.to_path_buf(),
        reason,
    };
    let mut bytes = Vec::new();
    BufReader::new(File::open(path)?).read_to_end(&mut bytes)?;
    let mut cur = Cursor { bytes: &bytes, pos: 0 };

    let magic = cur.take(4).ok_or_else(|| corrupt("truncated header".into()))?;
    if magic != MAGIC {
        return Err(corrupt(format!("bad magic {magic:?}")));
    }
    let stored_level = cur.u32().ok_or_else(|| corrupt("truncated header".into()))? as usize;
    if stored_level != level {
        return Err(corrupt(format!("holds level {stored_level}, expected {level}")));
    }
    if level > GROUND {
        return Err(corrupt(format!("level {level} out of range")));
    }
    let entries = cur.u64().ok_or_else(|| corrupt("truncated header".into()))?;
    let expected = colex::binom(GROUND, level);
    if entries != expected {
        return Err(corrupt(format!("{entries} entries, expected {expected}")));
    }
    let body = cur
        .take(entries as usize * 4)
        .ok_or_else(|| corrupt("truncated body".into()))?;
    let ids: Vec<u32> = body
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();

    let n_sigs = cur.u32().ok_or_else(|| corrupt("missing footer".into()))? as usize;
    let mut signatures = Vec::with_capacity(n_sigs.min(1 << 16));
    for i in 0..n_sigs {
        let len = cur.u32().ok_or_else(|| corrupt(format!("truncated signature {i}")))?;
        let raw = cur
            .take(len as usize)
            .ok_or_else(|| corrupt(format!("truncated signature {i}")))?;
        signatures.push(decode_signature(raw).ok_or_else(|| corrupt(format!("malformed signature {i}")))?);
    }
    if cur.pos != bytes.len() {
        return Err(corrupt(format!("{} trailing bytes", bytes.len() - cur.pos)));
    }
    LevelTable::new(level, ids, signatures).map_err(|e| corrupt(e.to_string()))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let end = self.pos.checked_add(n)?;
        let s = self.bytes.get(self.pos..end)?;
        self.pos = end;
        Some(s)
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|b| u32::from_le_bytes(b.try_into().unwrap()))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8).map(|b| u64::from_le_bytes(b.try_into().unwrap()))
    }
}
