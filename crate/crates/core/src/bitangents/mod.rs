//! Reconstruction of a plane quartic and its 28 bitangents from an Aronhold set.
//!
//! Coordinates are chosen so the Aronhold lines are `t0, t1, t2, t0+t1+t2`
//! and `a_{0i} t0 + a_{1i} t1 + a_{2i} t2` for `i = 1, 2, 3`. Linear forms
//! `u0, u1, u2` come out of Riemann's equations, the quartic is the
//! rationalization of `sqrt(t0 u0) + sqrt(t1 u1) + sqrt(t2 u2) = 0`, and the
//! other 21 bitangents are explicit in `u`, `k` and `a`. Every line is then
//! checked against the quartic.

mod forms;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactmath::{binary_gcd, solve_rational, MathError, RatMatrix};

pub use forms::{det3, monomials, LinearForm, TernaryForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitangentError {
    #[error("invalid Aronhold input: {0}")]
    InvalidInput(String),
    #[error("singular {0} system")]
    SingularSystem(&'static str),
    #[error("fourth u-equation fails: residual {0}")]
    InconsistentSystem(String),
    #[error("denominator 1 - k_{i} a a vanishes in family {family}")]
    DegenerateDenominator { family: u8, i: usize },
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(String, String),
    #[error("the zero form does not define a line")]
    ZeroLine,
    #[error("line is a component of the quartic")]
    ZeroRestriction,
    #[error("lines {0} and {1} are proportional")]
    ProportionalLines(usize, usize),
    #[error("line {label} is not a bitangent ({tangency})")]
    VerificationFailed { label: String, tangency: Tangency },
    #[error("no nondegenerate input after {0} draws")]
    SamplingExhausted(usize),
}

/// `a[j][i]` holds `a_{j,i+1}`: column `i` gives the line `L_{5+i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AronholdInput {
    a: [[BigRational; 3]; 3],
}

impl AronholdInput {
    /// Checks that every entry is nonzero and both auxiliary systems are nonsingular.
    pub fn new(a: [[BigRational; 3]; 3]) -> Result<Self, BitangentError> {
        for (j, row) in a.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                if x.is_zero() {
                    return Err(BitangentError::InvalidInput(format!("a_{j}{} is zero", i + 1)));
                }
            }
        }
        let inp = AronholdInput { a };
        if inp.lambda_matrix().det().is_zero() {
            return Err(BitangentError::InvalidInput("lambda system is singular".into()));
        }
        let lambda = inp.solve_lambda()?;
        if inp.k_matrix(&lambda).det().is_zero() {
            return Err(BitangentError::InvalidInput("k system is singular".into()));
        }
        Ok(inp)
    }

    pub fn from_i64(a: [[i64; 3]; 3]) -> Result<Self, BitangentError> {
        Self::new(a.map(|row| row.map(|x| BigRational::from_integer(x.into()))))
    }

    pub fn entries(&self) -> &[[BigRational; 3]; 3] {
        &self.a
    }

    /// `a_{j i}` with `i` in `1..=3`.
    pub fn get(&self, j: usize, i: usize) -> &BigRational {
        &self.a[j][i - 1]
    }

    fn lambda_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(
            (0..3)
                .map(|j| (1..=3).map(|i| self.get(j, i).recip()).collect())
                .collect(),
        )
    }

    fn k_matrix(&self, lambda: &[BigRational; 3]) -> RatMatrix {
        RatMatrix::from_rows(
            (0..3)
                .map(|j| (1..=3).map(|i| &lambda[i - 1] * self.get(j, i)).collect())
                .collect(),
        )
    }

    fn solve_lambda(&self) -> Result<[BigRational; 3], BitangentError> {
        let minus_one = vec![-BigRational::one(); 3];
        let x = solve_rational(&self.lambda_matrix(), &minus_one)
            .map_err(|_| BitangentError::SingularSystem("lambda"))?;
        Ok(x.try_into().unwrap())
    }

    /// The seven given lines `L1..L7`.
    pub fn aronhold_lines(&self) -> [LinearForm; 7] {
        let col = |i: usize| LinearForm::new(std::array::from_fn(|j| self.get(j, i).clone()));
        [
            LinearForm::coordinate(0),
            LinearForm::coordinate(1),
            LinearForm::coordinate(2),
            LinearForm::from_i64([1, 1, 1]),
            col(1),
            col(2),
            col(3),
        ]
    }
}

/// Solved unknowns of Riemann's equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiemannSolution {
    pub lambda: [BigRational; 3],
    pub k: [BigRational; 3],
    pub u: [LinearForm; 3],
}

/// Left-hand sides of the four u-equations, as linear forms in `t`.
///
/// Index 0 is `u0 + u1 + u2 + t0 + t1 + t2`; index `i` is
/// `sum_j u_j / a_{ji} + k_i sum_m a_{mi} t_m`.
pub fn u_equation_residuals(inp: &AronholdInput, k: &[BigRational; 3], u: &[LinearForm; 3]) -> [LinearForm; 4] {
    let t_sum = LinearForm::from_i64([1, 1, 1]);
    let e0 = u[0].add(&u[1]).add(&u[2]).add(&t_sum);
    let ei = |i: usize| {
        let lhs = (0..3).fold(LinearForm::from_i64([0, 0, 0]), |acc, j| {
            acc.add(&u[j].scale(&inp.get(j, i).recip()))
        });
        let t_part = LinearForm::new(std::array::from_fn(|m| &k[i - 1] * inp.get(m, i)));
        lhs.add(&t_part)
    };
    [e0, ei(1), ei(2), ei(3)]
}

/// Solves for `lambda`, then `k`, then `u` from the first three u-equations,
/// and checks that the fourth holds identically.
pub fn solve_riemann(inp: &AronholdInput) -> Result<RiemannSolution, BitangentError> {
    let lambda = inp.solve_lambda()?;
    let minus_one = vec![-BigRational::one(); 3];
    let k: [BigRational; 3] = solve_rational(&inp.k_matrix(&lambda), &minus_one)
        .map_err(|_| BitangentError::SingularSystem("k"))?
        .try_into()
        .unwrap();

    // Unknown x[3 j + m] is the coefficient of t_m in u_j. Equations are indexed
    // by (equation e in 0..3, t-coefficient m).
    let mut a = RatMatrix::zeros(9, 9);
    let mut b = vec![BigRational::zero(); 9];
    for m in 0..3 {
        for j in 0..3 {
            a.set(m, 3 * j + m, BigRational::one());
        }
        b[m] = -BigRational::one();
        for e in 1..=2 {
            let row = 3 * e + m;
            for j in 0..3 {
                a.set(row, 3 * j + m, inp.get(j, e).recip());
            }
            b[row] = -(&k[e - 1] * inp.get(m, e));
        }
    }
    let x = solve_rational(&a, &b).map_err(|e| match e {
        MathError::SingularSystem => BitangentError::SingularSystem("u"),
        other => BitangentError::InvalidInput(other.to_string()),
    })?;
    let u: [LinearForm; 3] =
        std::array::from_fn(|j| LinearForm::new(std::array::from_fn(|m| x[3 * j + m].clone())));

    let residuals = u_equation_residuals(inp, &k, &u);
    if let Some(bad) = residuals.iter().find(|r| !r.is_zero()) {
        return Err(BitangentError::InconsistentSystem(format!("{bad:?}")));
    }
    Ok(RiemannSolution { lambda, k, u })
}

/// Degree-4 form with 15 coefficients in [`monomials`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryQuartic(TernaryForm);

impl TernaryQuartic {
    pub fn new(form: TernaryForm) -> Option<Self> {
        (form.degree() == 4 && !form.is_zero()).then_some(TernaryQuartic(form))
    }

    pub fn form(&self) -> &TernaryForm {
        &self.0
    }

    pub fn coefficients(&self) -> &[BigRational] {
        self.0.coeffs()
    }
}

/// `F = sum (t_i u_i)^2 - 2 sum_{i<j} (t_i u_i)(t_j u_j)`, the product of the
/// four sign choices of `sqrt(t0 u0) ± sqrt(t1 u1) ± sqrt(t2 u2)`.
pub fn build_quartic(u: &[LinearForm; 3]) -> TernaryQuartic {
    let p: Vec<TernaryForm> = (0..3)
        .map(|i| LinearForm::coordinate(i).to_ternary().mul(&u[i].to_ternary()))
        .collect();
    let two = BigRational::from_integer(BigInt::from(2));
    let squares = p[0].mul(&p[0]).add(&p[1].mul(&p[1])).add(&p[2].mul(&p[2]));
    let cross = p[0].mul(&p[1]).add(&p[1].mul(&p[2])).add(&p[2].mul(&p[0]));
    TernaryQuartic::new(squares.sub(&cross.scale(&two))).expect("quartic from nonzero forms")
}

/// Which of the eight groups a line comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineFamily {
    /// One of the seven given lines, numbered 1..=7.
    Aronhold(u8),
    /// Family `1..=7` of the remaining 21 with its index: `j` in 0..3 for
    /// families 1 and 2, `i` in 1..=3 for the rest.
    Riemann { family: u8, index: u8 },
}

impl fmt::Display for LineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineFamily::Aronhold(n) => write!(f, "A{n}"),
            LineFamily::Riemann { family, index } => write!(f, "F{family}[{index}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledLine {
    pub family: LineFamily,
    pub form: LinearForm,
}

impl LabeledLine {
    pub fn label(&self) -> String {
        self.family.to_string()
    }
}

/// The 28 lines: the Aronhold set followed by families 1 to 7.
pub fn all_bitangents(inp: &AronholdInput, sol: &RiemannSolution) -> Result<Vec<LabeledLine>, BitangentError> {
    let mut lines: Vec<LabeledLine> = inp
        .aronhold_lines()
        .into_iter()
        .enumerate()
        .map(|(n, form)| LabeledLine {
            family: LineFamily::Aronhold(n as u8 + 1),
            form,
        })
        .collect();
    let u = &sol.u;
    let k = &sol.k;
    let t = |m: usize| LinearForm::coordinate(m);
    let push = |lines: &mut Vec<LabeledLine>, family: u8, index: u8, form: LinearForm| {
        lines.push(LabeledLine {
            family: LineFamily::Riemann { family, index },
            form,
        })
    };

    // (1) u_j
    for j in 0..3 {
        push(&mut lines, 1, j as u8, u[j].clone());
    }
    // (2) u_j plus the other two coordinates
    for j in 0..3 {
        let form = (0..3).fold(u[j].clone(), |acc, m| if m == j { acc } else { acc.add(&t(m)) });
        push(&mut lines, 2, j as u8, form);
    }
    // (3)-(5) u_j / a_{ji} + k_i (sum over m != j of a_{mi} t_m)
    for j in 0..3 {
        for i in 1..=3 {
            let mut form = u[j].scale(&inp.get(j, i).recip());
            for m in (0..3).filter(|&m| m != j) {
                form = form.add(&t(m).scale(&(&k[i - 1] * inp.get(m, i))));
            }
            push(&mut lines, 3 + j as u8, i as u8, form);
        }
    }
    // d_{ji} = 1 - k_i a_{mi} a_{ni} with {j, m, n} = {0, 1, 2}
    let denom = |family: u8, j: usize, i: usize| -> Result<BigRational, BitangentError> {
        let (m, n) = match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let d = BigRational::one() - &k[i - 1] * inp.get(m, i) * inp.get(n, i);
        if d.is_zero() {
            Err(BitangentError::DegenerateDenominator { family, i })
        } else {
            Ok(d)
        }
    };
    // (6) sum_j t_j / d_{ji}
    for i in 1..=3 {
        let mut form = LinearForm::from_i64([0, 0, 0]);
        for j in 0..3 {
            form = form.add(&t(j).scale(&denom(6, j, i)?.recip()));
        }
        push(&mut lines, 6, i as u8, form);
    }
    // (7) sum_j u_j / (a_{ji} d_{ji})
    for i in 1..=3 {
        let mut form = LinearForm::from_i64([0, 0, 0]);
        for j in 0..3 {
            form = form.add(&u[j].scale(&(inp.get(j, i) * denom(7, j, i)?).recip()));
        }
        push(&mut lines, 7, i as u8, form);
    }

    for (x, line) in lines.iter().enumerate() {
        if line.form.is_zero() {
            return Err(BitangentError::ZeroLine);
        }
        if let Some(other) = lines[..x].iter().find(|o| o.form.is_proportional_to(&line.form)) {
            return Err(BitangentError::DuplicateLine(other.label(), line.label()));
        }
    }
    debug_assert_eq!(lines.len(), 28);
    Ok(lines)
}

/// How a line meets the quartic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tangency {
    /// Tangent at two distinct points.
    TrueBitangent,
    /// Meets the quartic at one point with multiplicity 4.
    Hyperflex,
    NotBitangent,
}

impl Tangency {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tangency::TrueBitangent => "true-bitangent",
            Tangency::Hyperflex => "hyperflex-line",
            Tangency::NotBitangent => "NOT-bitangent",
        }
    }

    pub fn is_bitangent(&self) -> bool {
        !matches!(self, Tangency::NotBitangent)
    }
}

impl fmt::Display for Tangency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies the restriction `b` of a quartic to a line.
///
/// A root of multiplicity `m` contributes `m - 1` to the degree of
/// `gcd(b_s, b_t)`. Degree 2 with distinct roots means two double roots;
/// degree 3 means a fourfold root.
pub fn classify_restriction(b: &crate::exactmath::BinaryForm) -> Result<Tangency, BitangentError> {
    if b.is_zero() {
        return Err(BitangentError::ZeroRestriction);
    }
    let g = binary_gcd(&b.partial_s(), &b.partial_t()).map_err(|_| BitangentError::ZeroRestriction)?;
    Ok(match g.degree() {
        2 if g.discriminant_quadratic().is_some_and(|d| !d.is_zero()) && b.is_proportional_to(&(&g * &g)) => {
            Tangency::TrueBitangent
        }
        3 if b.degree() == 4 => Tangency::Hyperflex,
        _ => Tangency::NotBitangent,
    })
}

pub fn verify_bitangent(line: &LinearForm, f: &TernaryQuartic) -> Result<Tangency, BitangentError> {
    let (p, q) = line.points().ok_or(BitangentError::ZeroLine)?;
    classify_restriction(&f.form().restrict(&p, &q))
}

/// Triples (indices into `lines`, ascending) of concurrent lines.
pub fn concurrency_report(lines: &[LinearForm]) -> Result<Vec<[usize; 3]>, BitangentError> {
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            if lines[a].is_zero() || lines[a].is_proportional_to(&lines[b]) {
                return Err(BitangentError::ProportionalLines(a, b));
            }
        }
    }
    let n = lines.len();
    let triples: Vec<[usize; 3]> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
        .collect();
    Ok(triples
        .into_par_iter()
        .filter(|&[a, b, c]| det3(&lines[a], &lines[b], &lines[c]).is_zero())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedLine {
    pub line: LabeledLine,
    pub tangency: Tangency,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitangentReport {
    pub input: AronholdInput,
    pub solution: RiemannSolution,
    pub quartic: TernaryQuartic,
    pub lines: Vec<VerifiedLine>,
    pub concurrent_triples: Vec<[usize; 3]>,
}

impl BitangentReport {
    pub fn all_true_bitangents(&self) -> bool {
        self.lines.iter().all(|l| l.tangency == Tangency::TrueBitangent)
    }
}

/// Full pipeline. A line that fails verification is a hard error naming it.
pub fn analyze(inp: &AronholdInput) -> Result<BitangentReport, BitangentError> {
    let solution = solve_riemann(inp)?;
    let quartic = build_quartic(&solution.u);
    let lines = all_bitangents(inp, &solution)?;
    let verified: Vec<VerifiedLine> = lines
        .into_par_iter()
        .map(|line| {
            let tangency = verify_bitangent(&line.form, &quartic)?;
            Ok(VerifiedLine { line, tangency })
        })
        .collect::<Result<_, BitangentError>>()?;
    if let Some(bad) = verified.iter().find(|v| !v.tangency.is_bitangent()) {
        return Err(BitangentError::VerificationFailed {
            label: bad.line.label(),
            tangency: bad.tangency,
        });
    }
    let forms: Vec<LinearForm> = verified.iter().map(|v| v.line.form.clone()).collect();
    let concurrent_triples = concurrency_report(&forms)?;
    Ok(BitangentReport {
        input: inp.clone(),
        solution,
        quartic,
        lines: verified,
        concurrent_triples,
    })
}

fn random_entry(rng: &mut ChaCha8Rng) -> BigRational {
    let num = loop {
        let n: i64 = rng.gen_range(-20..=20);
        if n != 0 {
            break n;
        }
    };
    let den: i64 = rng.gen_range(1..=6);
    BigRational::new(num.into(), den.into())
}

/// Draws small random rationals until the input is valid and all 28 lines
/// are well defined and distinct. Tangency and concurrency are not filtered on.
pub fn sample_input(seed: u64) -> Result<AronholdInput, BitangentError> {
    const ATTEMPTS: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let a: [[BigRational; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| random_entry(&mut rng)));
        let Ok(inp) = AronholdInput::new(a) else { continue };
        let Ok(sol) = solve_riemann(&inp) else { continue };
        if all_bitangents(&inp, &sol).is_ok() {
            return Ok(inp);
        }
    }
    Err(BitangentError::SamplingExhausted(ATTEMPTS))
}
