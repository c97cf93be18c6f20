use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MathError;

/// Homogeneous form of degree `d` in `(s, t)`.
///
/// `coeffs[i]` multiplies `s^(d-i) t^i`, so there are always `d + 1` entries.
/// The zero form is allowed and keeps its declared degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<BigRational>,
}

impl BinaryForm {
    /// Panics on an empty coefficient list (degree would be undefined).
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `a s + b t`
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &BigRational) -> BinaryForm {
        BinaryForm::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Derivative with respect to `s`; degree drops by one.
    pub fn partial_s(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::constant(BigRational::zero());
        }
        BinaryForm::new(
            (0..d)
                .map(|i| &self.coeffs[i] * BigRational::from_integer(BigInt::from(d - i)))
                .collect(),
        )
    }

    /// Derivative with respect to `t`; degree drops by one.
    pub fn partial_t(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::constant(BigRational::zero());
        }
        BinaryForm::new(
            (1..=d)
                .map(|i| &self.coeffs[i] * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `b^2 - 4ac` for a quadratic `a s^2 + b s t + c t^2`.
    pub fn discriminant_quadratic(&self) -> Option<BigRational> {
        if self.degree() != 2 {
            return None;
        }
        let [a, b, c] = [&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]];
        Some(b * b - BigRational::from_integer(4.into()) * a * c)
    }

    /// True if `self = c * other` for some nonzero rational `c`.
    pub fn is_proportional_to(&self, other: &BinaryForm) -> bool {
        if self.degree() != other.degree() || self.is_zero() || other.is_zero() {
            return false;
        }
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if other.coeffs[k].is_zero() {
            return false;
        }
        let ratio = &self.coeffs[k] / &other.coeffs[k];
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == b * &ratio)
    }

    /// Scales so the coefficient of the highest surviving power of `t` is 1.
    pub fn monic(&self) -> BinaryForm {
        match self.coeffs.iter().rposition(|c| !c.is_zero()) {
            Some(k) => {
                let inv = self.coeffs[k].recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Multiplicity of `s` as a factor (for a nonzero form).
    fn s_order(&self) -> usize {
        let top = self.coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero form");
        self.degree() - top
    }

    /// `f(1, t)` as an integer polynomial, low degree first, content removed.
    fn dehomogenized_primitive(&self) -> Vec<BigInt> {
        let top = self.coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero form");
        let lcm = self.coeffs[..=top]
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs[..=top]
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        primitive(ints)
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;

    fn mul(self, rhs: &BinaryForm) -> BinaryForm {
        let mut out = vec![BigRational::zero(); self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::new(out)
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}) s^{} t^{i}", d - i))
            .collect();
        if terms.is_empty() {
            write!(f, "0 [deg {d}]")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut p);
    let content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return p;
    }
    let sign = if p.last().unwrap().is_negative() { -1 } else { 1 };
    let content = content * sign;
    p.iter().map(|c| c / &content).collect()
}

fn is_zero_poly(p: &[BigInt]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while !is_zero_poly(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn univariate_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    while !is_zero_poly(&b) {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(r);
    }
    primitive(a)
}

/// Greatest common divisor of two binary forms, normalized by [`BinaryForm::monic`].
pub fn binary_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm, MathError> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(MathError::ZeroGcd),
        (true, false) => return Ok(g.monic()),
        (false, true) => return Ok(f.monic()),
        (false, false) => {}
    }
    let s_power = f.s_order().min(g.s_order());
    let core = univariate_gcd(f.dehomogenized_primitive(), g.dehomogenized_primitive());
    let e = core.len() - 1;
    let mut coeffs: Vec<BigRational> =
        core.into_iter().map(BigRational::from_integer).collect();
    coeffs.resize(e + s_power + 1, BigRational::zero());
    Ok(BinaryForm::new(coeffs).monic())
}
