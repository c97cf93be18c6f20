use num_rational::BigRational;
use num_traits::{One, Zero};

use super::MathError;

pub type RatVector = Vec<BigRational>;

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    /// Panics on ragged rows.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> RatVector {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(BigRational::zero(), |acc, c| acc + self.get(r, c) * &x[c])
            })
            .collect()
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> =
            (0..n).map(|r| self.data[r * n..(r + 1) * n].to_vec()).collect();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let s = &f * &a[col][c];
                    a[r][c] -= s;
                }
            }
        }
        det
    }
}

/// Unique solution of the square system `a x = b`.
pub fn solve_rational(a: &RatMatrix, b: &[BigRational]) -> Result<RatVector, MathError> {
    let n = a.rows();
    if a.cols() != n || b.len() != n {
        return Err(MathError::Dimension(format!(
            "expected square system, got {}x{} with rhs of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..n).map(|c| a.get(r, c).clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or(MathError::SingularSystem)?;
        aug.swap(col, piv);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, s) in row.iter_mut().zip(pivot_row.iter()) {
                *x -= &f * s;
            }
        }
    }
    Ok(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn identity_solve() {
        let b = vec![r(3), r(-1), r(7)];
        assert_eq!(solve_rational(&RatMatrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn hand_checked_two_by_two() {
        let a = RatMatrix::from_i64_rows(&[[1, 1], [1, -1]]);
        assert_eq!(solve_rational(&a, &[r(2), r(0)]).unwrap(), vec![r(1), r(1)]);
    }

    #[test]
    fn singular_is_reported() {
        let a = RatMatrix::from_i64_rows(&[[1, 2], [2, 4]]);
        assert_eq!(solve_rational(&a, &[r(1), r(1)]), Err(MathError::SingularSystem));
        assert!(a.det().is_zero());
    }

    #[test]
    fn residual_is_exactly_zero() {
        let a = RatMatrix::from_rows(vec![
            vec![BigRational::new(1.into(), 3.into()), r(2), r(-5)],
            vec![r(4), BigRational::new((-7).into(), 2.into()), r(1)],
            vec![r(0), r(1), BigRational::new(9.into(), 11.into())],
        ]);
        let b = vec![r(1), r(-2), BigRational::new(3.into(), 4.into())];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn determinant() {
        let a = RatMatrix::from_i64_rows(&[[2, 0, 1], [1, 3, 2], [1, 1, 2]]);
        assert_eq!(a.det(), r(6));
    }
}
