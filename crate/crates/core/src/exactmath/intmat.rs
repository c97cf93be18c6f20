use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of anything convertible to `BigInt`.
    ///
    /// Panics if the rows are ragged. An empty slice gives a `0 x 0` matrix.
    pub fn from_rows<T, R>(rows: &[R]) -> Self
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn diagonal<T: Clone + Into<BigInt>>(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank over Q by fraction-free (Bareiss) elimination.
pub fn rank_q(m: &IntMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            for c in col + 1..cols {
                let v = &pivot_row[col] * &row[c] - &row[col] * &pivot_row[c];
                // Bareiss: every intermediate value is a minor, so this is exact.
                row[c] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Bareiss rank over Q for short fixed-width rows of small integers.
///
/// Each intermediate value is a minor of the input, so with entries bounded by
/// `B` it is at most `(B * sqrt(N))^N` in absolute value by Hadamard. For the
/// lattice coordinate rows (`N <= 8`, `B <= 8`) that is below `2^45`; products
/// are formed in `i128` and the quotient is checked to fit in debug builds.
pub fn rank_q_small<const N: usize>(rows: &mut [[i64; N]]) -> usize {
    let n = rows.len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..N {
        if rank == n {
            break;
        }
        let Some(piv) = (rank..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let pivot_row = rows[rank];
        for row in rows[rank + 1..].iter_mut() {
            let lead = row[col] as i128;
            for c in col + 1..N {
                let v = pivot_row[col] as i128 * row[c] as i128 - lead * pivot_row[c] as i128;
                debug_assert_eq!(v % prev, 0, "Bareiss division must be exact");
                let q = v / prev;
                debug_assert!(i64::try_from(q).is_ok(), "Bareiss bound exceeded");
                row[c] = q as i64;
            }
            row[col] = 0;
        }
        prev = pivot_row[col] as i128;
        rank += 1;
    }
    rank
}

/// Row-style Hermite normal form.
///
/// Returns the nonzero rows only, so the result has `rank_q(m)` rows. Pivots
/// are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // Smallest nonzero entry in this column at or below row r becomes the pivot.
            let best = (r..rows)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut clean = true;
            for i in r + 1..rows {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                sub_row_multiple(&mut a, i, r, &q);
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            if !q.is_zero() {
                sub_row_multiple(&mut a, i, r, &q);
            }
        }
        r += 1;
    }
    if r == 0 {
        return IntMatrix::zeros(0, cols);
    }
    a.truncate(r);
    IntMatrix::from_rows(&a)
}

fn sub_row_multiple(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    let src_row = a[src].clone();
    for (x, s) in a[target].iter_mut().zip(src_row.iter()) {
        *x -= q * s;
    }
}

/// Nonzero Smith elementary divisors `d_1 | d_2 | ...`, all positive.
pub fn snf_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut divisors = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return divisors;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                sub_row_multiple(&mut a, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let s = row[t].clone();
                    row[j] -= &q * s;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into row t and retry.
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[t].iter_mut().zip(src.iter()) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        divisors.push(a[t][t].abs());
    }
    divisors
}
