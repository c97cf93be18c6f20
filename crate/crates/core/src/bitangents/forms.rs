use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactmath::BinaryForm;

/// Exponents `[a, b, c]` of `t0^a t1^b t2^c`, in order: `a` descending, then `b` descending.
pub fn monomials(degree: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push([a, b, degree - a - b]);
        }
    }
    out
}

fn monomial_index(degree: u32, e: [u32; 3]) -> usize {
    let [a, b, _] = e;
    let before: u32 = (a + 1..=degree).map(|x| degree - x + 1).sum();
    (before + (degree - a - b)) as usize
}

/// Homogeneous polynomial in `(t0, t1, t2)` with coefficients in [`monomials`] order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    degree: u32,
    coeffs: Vec<BigRational>,
}

impl TernaryForm {
    pub fn zero(degree: u32) -> Self {
        let n = ((degree + 1) * (degree + 2) / 2) as usize;
        TernaryForm {
            degree,
            coeffs: vec![BigRational::zero(); n],
        }
    }

    pub fn from_coeffs(degree: u32, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), ((degree + 1) * (degree + 2) / 2) as usize);
        TernaryForm { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [u32; 3]) -> &BigRational {
        &self.coeffs[monomial_index(self.degree, e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &TernaryForm) -> TernaryForm {
        assert_eq!(self.degree, other.degree);
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &TernaryForm) -> TernaryForm {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> TernaryForm {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let degree = self.degree + other.degree;
        let mut out = TernaryForm::zero(degree);
        let (ma, mb) = (monomials(self.degree), monomials(other.degree));
        for (ea, ca) in ma.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (eb, cb) in mb.iter().zip(&other.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.coeffs[monomial_index(degree, e)] += ca * cb;
            }
        }
        out
    }

    pub fn eval(&self, point: &[BigRational; 3]) -> BigRational {
        monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// Pull back along `t_m = p_m s + q_m t`.
    pub fn restrict(&self, p: &[BigRational; 3], q: &[BigRational; 3]) -> BinaryForm {
        let d = self.degree as usize;
        // powers[m][k] = (p_m s + q_m t)^k
        let powers: Vec<Vec<BinaryForm>> = (0..3)
            .map(|m| {
                let lin = BinaryForm::linear(p[m].clone(), q[m].clone());
                let mut v = vec![BinaryForm::constant(BigRational::one())];
                for k in 1..=d {
                    let next = &v[k - 1] * &lin;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = BinaryForm::new(vec![BigRational::zero(); d + 1]);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let term = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize]) * &powers[2][e[2] as usize];
            out = out.add(&term.scale(c));
        }
        out
    }
}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| format!("({c}) t0^{} t1^{} t2^{}", e[0], e[1], e[2]))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `c0 t0 + c1 t1 + c2 t2`
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: [BigRational; 3],
}

impl LinearForm {
    pub fn new(coeffs: [BigRational; 3]) -> Self {
        LinearForm { coeffs }
    }

    pub fn from_i64(c: [i64; 3]) -> Self {
        LinearForm::new(c.map(|x| BigRational::from_integer(x.into())))
    }

    /// The coordinate form `t_m`.
    pub fn coordinate(m: usize) -> Self {
        let mut c = [0i64; 3];
        c[m] = 1;
        Self::from_i64(c)
    }

    pub fn coeffs(&self) -> &[BigRational; 3] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: std::array::from_fn(|m| &self.coeffs[m] + &other.coeffs[m]),
        }
    }

    pub fn scale(&self, c: &BigRational) -> LinearForm {
        LinearForm {
            coeffs: std::array::from_fn(|m| &self.coeffs[m] * c),
        }
    }

    pub fn to_ternary(&self) -> TernaryForm {
        TernaryForm::from_coeffs(1, self.coeffs.to_vec())
    }

    /// Same line: nonzero and equal up to a nonzero scalar.
    pub fn is_proportional_to(&self, other: &LinearForm) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        // All 2x2 minors vanish.
        (0..3).all(|i| {
            (i + 1..3).all(|j| {
                &self.coeffs[i] * &other.coeffs[j] == &self.coeffs[j] * &other.coeffs[i]
            })
        })
    }

    /// Two independent points spanning the line `self = 0`.
    pub fn points(&self) -> Option<([BigRational; 3], [BigRational; 3])> {
        let [c0, c1, c2] = &self.coeffs;
        let z = BigRational::zero;
        let one = BigRational::one;
        if !c0.is_zero() {
            Some(([-c1.clone(), c0.clone(), z()], [-c2.clone(), z(), c0.clone()]))
        } else if !c1.is_zero() {
            Some(([one(), z(), z()], [z(), -c2.clone(), c1.clone()]))
        } else if !c2.is_zero() {
            Some(([one(), z(), z()], [z(), one(), z()]))
        } else {
            None
        }
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coeffs;
        write!(f, "({a}) t0 + ({b}) t1 + ({c}) t2")
    }
}

/// 3x3 determinant of three lines' coefficients.
pub fn det3(a: &LinearForm, b: &LinearForm, c: &LinearForm) -> BigRational {
    let [a0, a1, a2] = &a.coeffs;
    let [b0, b1, b2] = &b.coeffs;
    let [c0, c1, c2] = &c.coeffs;
    a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)
}
