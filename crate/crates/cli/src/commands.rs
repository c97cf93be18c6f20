use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mwlattice::bitangents::{self, AronholdInput};
use mwlattice::classifier::{run_census_with, CensusOptions, LevelReport};
use mwlattice::dihedral::{self, CoverQuery};
use mwlattice::lattice::{self, PairIndex};
use mwlattice::matroid::{Field, GroundSet, Matroid};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::json::*;

/// Largest `--max-r` allowed without `--force-full`.
pub const CASUAL_MAX_R: usize = 20;

fn emit<T: Serialize>(doc: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => write_stdout(&text),
    }
}

/// A closed pipe (e.g. `| head`) is not an error.
fn write_stdout(text: &str) -> Result<(), CliError> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
            path: "<stdout>".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn indices(pairs: &[PairIndex]) -> Vec<usize> {
    pairs.iter().map(|p| p.get()).collect()
}

pub fn vectors(json: bool) -> Result<(), CliError> {
    let rows: Vec<VectorRow> = lattice::enumerate_pairs()
        .into_iter()
        .map(|(i, v)| VectorRow {
            index: i.get(),
            coords: *v.coords(),
            scale: 4,
            height: lattice::height_pairing(&v, &v).to_string(),
        })
        .collect();
    if json {
        return emit(&rows, None);
    }
    let mut text = String::from("# coordinates scaled by 4; height = dot / 16\n");
    text += &format!("{:>5}  {:<25}  height\n", "index", "coordinates");
    for r in &rows {
        let c: Vec<String> = r.coords.iter().map(|x| format!("{x:>2}")).collect();
        text += &format!("{:>5}  ({})  {}\n", r.index, c.join(" "), r.height);
    }
    write_stdout(&text)
}

pub struct ClassifyRequest {
    pub max_r: usize,
    pub field: Field,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    pub threads: Option<usize>,
    pub force_full: bool,
    pub timings: bool,
}

pub fn classify(req: ClassifyRequest) -> Result<(), CliError> {
    if req.max_r > CASUAL_MAX_R && !req.force_full {
        return Err(CliError::ResourceGuard(format!(
            "--max-r {} above {CASUAL_MAX_R} needs several hundred MB and minutes of CPU; pass --force-full",
            req.max_r
        )));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = req.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let opts = CensusOptions {
        max_r: req.max_r,
        field: req.field,
        checkpoint_dir: req.checkpoint.clone(),
    };
    let mut seconds = BTreeMap::new();
    let census = pool.install(|| {
        run_census_with(&opts, |r: &LevelReport| {
            let how = if r.resumed { "resumed" } else { "computed" };
            eprintln!(
                "level {:>2}: {:>3} classes ({how}, {:.2} s)",
                r.level,
                r.class_count,
                r.elapsed.as_secs_f64()
            );
            seconds.insert(r.level, r.elapsed.as_secs_f64());
        })
    })?;
    let doc = CensusDoc {
        field: census.field.to_string(),
        max_r: req.max_r,
        n_r: census.counts,
        checkpoints: census.checkpoints.iter().map(|p| p.display().to_string()).collect(),
        seconds: req.timings.then_some(seconds),
        peak_rss_kib: if req.timings { peak_rss_kib() } else { None },
    };
    emit(&doc, req.out.as_deref())
}

/// `VmHWM` from `/proc/self/status` (Linux only).
fn peak_rss_kib() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

pub fn matroid(subset: &[usize], field: Field) -> Result<(), CliError> {
    let pairs = lattice::pair_set(subset)?;
    let m = Matroid::new(GroundSet::new(pairs.clone(), field)?);
    let doc = MatroidDoc {
        field: field.to_string(),
        subset: indices(&pairs),
        rank: m.rank(&pairs)?,
        independent: m.is_independent(&pairs)?,
        circuits: m.circuits(&pairs)?.iter().map(|c| indices(c)).collect(),
    };
    emit(&doc, None)
}

fn parse_sign(s: &str) -> Result<i8, CliError> {
    match s.trim() {
        "+" | "1" | "+1" => Ok(1),
        "-" | "-1" => Ok(-1),
        other => Err(CliError::Usage(format!("bad sign {other:?}; use +, -, 1 or -1"))),
    }
}

pub fn dihedral(
    subset: &[usize],
    signs: Option<&[String]>,
    p: Option<u64>,
    p_max: Option<u64>,
) -> Result<(), CliError> {
    let pairs = lattice::pair_set(subset)?;
    let signs: Vec<i8> = match signs {
        Some(s) => s.iter().map(|x| parse_sign(x)).collect::<Result<_, _>>()?,
        None => vec![1; pairs.len()],
    };
    match (p, p_max) {
        (Some(p), None) => {
            let q = CoverQuery::with_signs(&pairs, &signs, p)?;
            let witness = dihedral::cover_witness(&q)?;
            let doc = CoverDoc {
                subset: indices(&pairs),
                signs,
                p,
                exists: witness.is_some(),
                witness,
                circuit: dihedral::circuit_implies_cover(&q)?,
            };
            emit(&doc, None)
        }
        (None, Some(p_max)) => {
            let primes = dihedral::cover_primes_signed(&pairs, &signs, p_max)?;
            let rank_drop_primes = match lattice::rank_drop_primes(&pairs) {
                Ok(set) => Some(set.into_iter().collect()),
                Err(lattice::LatticeError::DependentSubset { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let doc = CoverScanDoc {
                subset: indices(&pairs),
                signs,
                p_max,
                primes,
                rank_drop_primes,
            };
            emit(&doc, None)
        }
        _ => Err(CliError::Usage("give exactly one of --p and --p-max".into())),
    }
}

fn parse_rational(v: &Value, at: &str) -> Result<BigRational, CliError> {
    let text = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => {
            return Err(CliError::Usage(format!(
                "{at}: expected a rational string \"p/q\" or an integer"
            )))
        }
    };
    BigRational::from_str(&text).map_err(|e| CliError::Usage(format!("{at}: {text:?}: {e}")))
}

/// Parses `{"a": [[..],[..],[..]]}`.
pub fn parse_aronhold(text: &str) -> Result<AronholdInput, CliError> {
    let doc: Value = serde_json::from_str(text)?;
    let rows = doc
        .get("a")
        .and_then(Value::as_array)
        .filter(|rows| rows.len() == 3)
        .ok_or_else(|| CliError::Usage("expected key \"a\" holding a 3x3 array".into()))?;
    let mut a: [[BigRational; 3]; 3] = Default::default();
    for (j, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| CliError::Usage(format!("row {j} of \"a\" must have 3 entries")))?;
        for (i, v) in row.iter().enumerate() {
            a[j][i] = parse_rational(v, &format!("a[{j}][{i}]"))?;
        }
    }
    Ok(AronholdInput::new(a)?)
}

pub fn bitangents(aronhold: Option<&Path>, seed: Option<u64>, out: Option<&Path>) -> Result<(), CliError> {
    let input = match (aronhold, seed) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            parse_aronhold(&text)?
        }
        (None, Some(seed)) => bitangents::sample_input(seed)?,
        (None, None) => return Err(CliError::Usage("give --aronhold FILE or --seed N".into())),
    };
    let report = bitangents::analyze(&input)?;
    let residuals = bitangents::u_equation_residuals(&input, &report.solution.k, &report.solution.u);
    let fourth_zero = residuals[3].is_zero();
    emit(&BitangentDoc::new(&report, fourth_zero), out)
}
