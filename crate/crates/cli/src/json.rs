//! Output documents. Rationals are rendered as `"p/q"` (or `"n"`) strings.

use std::collections::BTreeMap;

use mwlattice::bitangents::{BitangentReport, LinearForm};
use num_rational::BigRational;
use serde::Serialize;

pub fn rat(x: &BigRational) -> String {
    x.to_string()
}

fn rats(xs: &[BigRational]) -> Vec<String> {
    xs.iter().map(rat).collect()
}

fn line(l: &LinearForm) -> Vec<String> {
    rats(l.coeffs())
}

#[derive(Debug, Serialize)]
pub struct VectorRow {
    pub index: usize,
    /// Coordinates multiplied by `scale`.
    pub coords: [i32; 8],
    pub scale: u32,
    pub height: String,
}

#[derive(Debug, Serialize)]
pub struct CensusDoc {
    pub field: String,
    pub max_r: usize,
    pub n_r: BTreeMap<usize, usize>,
    pub checkpoints: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<BTreeMap<usize, f64>>,
    /// Peak resident set size of the process, where the OS reports it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peak_rss_kib: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct MatroidDoc {
    pub field: String,
    pub subset: Vec<usize>,
    pub rank: usize,
    pub independent: bool,
    pub circuits: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub struct CoverDoc {
    pub subset: Vec<usize>,
    pub signs: Vec<i8>,
    pub p: u64,
    pub exists: bool,
    /// Coefficients `a_i` in `1..p`.
    pub witness: Option<Vec<u64>>,
    pub circuit: bool,
}

#[derive(Debug, Serialize)]
pub struct CoverScanDoc {
    pub subset: Vec<usize>,
    pub signs: Vec<i8>,
    pub p_max: u64,
    pub primes: Vec<u64>,
    /// Primes at which the subset loses rank; null if dependent over Q.
    pub rank_drop_primes: Option<Vec<u64>>,
}

#[derive(Debug, Serialize)]
pub struct QuarticDoc {
    pub monomials: Vec<[u32; 3]>,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct LineDoc {
    pub index: usize,
    pub label: String,
    pub coefficients: Vec<String>,
    pub tangency: &'static str,
}

#[derive(Debug, Serialize)]
pub struct BitangentSummary {
    pub lines: usize,
    pub true_bitangents: usize,
    pub hyperflex_lines: usize,
    pub concurrent_triples: usize,
    pub fourth_equation_zero: bool,
}

#[derive(Debug, Serialize)]
pub struct BitangentDoc {
    pub a: Vec<Vec<String>>,
    pub lambda: Vec<String>,
    pub k: Vec<String>,
    pub u: Vec<Vec<String>>,
    pub quartic: QuarticDoc,
    pub lines: Vec<LineDoc>,
    /// 1-based line indices.
    pub concurrent_triples: Vec<[usize; 3]>,
    pub summary: BitangentSummary,
}

impl BitangentDoc {
    pub fn new(r: &BitangentReport, fourth_equation_zero: bool) -> Self {
        use mwlattice::bitangents::{monomials, Tangency};
        let count = |t: Tangency| r.lines.iter().filter(|l| l.tangency == t).count();
        BitangentDoc {
            a: r.input.entries().iter().map(|row| rats(row)).collect(),
            lambda: rats(&r.solution.lambda),
            k: rats(&r.solution.k),
            u: r.solution.u.iter().map(line).collect(),
            quartic: QuarticDoc {
                monomials: monomials(4),
                coefficients: rats(r.quartic.coefficients()),
            },
            lines: r
                .lines
                .iter()
                .enumerate()
                .map(|(i, v)| LineDoc {
                    index: i + 1,
                    label: v.line.label(),
                    coefficients: line(&v.line.form),
                    tangency: v.tangency.as_str(),
                })
                .collect(),
            concurrent_triples: r.concurrent_triples.iter().map(|t| t.map(|i| i + 1)).collect(),
            summary: BitangentSummary {
                lines: r.lines.len(),
                true_bitangents: count(Tangency::TrueBitangent),
                hyperflex_lines: count(Tangency::Hyperflex),
                concurrent_triples: r.concurrent_triples.len(),
                fourth_equation_zero,
            },
        }
    }
}
