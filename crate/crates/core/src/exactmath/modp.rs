use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{IntMatrix, MathError};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_odd_prime(p: u64) -> bool {
    p != 2 && is_prime(p)
}

pub fn require_odd_prime(p: u64) -> Result<(), MathError> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(MathError::NotOddPrime(p))
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so Fermat.
    pow_mod(a, p - 2, p)
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((x % &m) + &m) % &m;
    r.to_u64().expect("residue fits in u64")
}

fn reduce_matrix(m: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| reduce(x, p)).collect())
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][col], p);
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &s) in row.iter_mut().zip(pivot_row.iter()) {
                *x = (*x + p - mul_mod(f, s, p)) % p;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank of `m` reduced mod an odd prime `p`.
pub fn rank_fp(m: &IntMatrix, p: u64) -> Result<usize, MathError> {
    require_odd_prime(p)?;
    let mut a = reduce_matrix(m, p);
    Ok(rref(&mut a, m.cols(), p).len())
}

/// Rank mod `p` for short fixed-width rows. `p` must already be validated.
pub fn rank_fp_small<const N: usize>(rows: &[[i64; N]], p: u64) -> usize {
    debug_assert!(is_odd_prime(p));
    let pi = p as i64;
    let mut a: Vec<[u64; N]> = rows
        .iter()
        .map(|row| row.map(|x| x.rem_euclid(pi) as u64))
        .collect();
    let n = a.len();
    let mut rank = 0;
    for col in 0..N {
        if rank == n {
            break;
        }
        let Some(piv) = (rank..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][col], p);
        let pivot_row = a[rank];
        for row in a[rank + 1..].iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let f = mul_mod(row[col], inv, p);
            for c in col..N {
                row[c] = (row[c] + p - mul_mod(f, pivot_row[c], p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the right null space `{x : m x = 0}` over F_p.
///
/// Vectors have length `m.cols()`, entries in `0..p`. One basis vector per
/// free column, with a 1 in that column.
pub fn nullspace_fp(m: &IntMatrix, p: u64) -> Result<Vec<Vec<u64>>, MathError> {
    require_odd_prime(p)?;
    let cols = m.cols();
    let mut a = reduce_matrix(m, p);
    let pivots = rref(&mut a, cols, p);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[row][free]) % p;
        }
        basis.push(v);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(!is_odd_prime(2));
        assert!(is_odd_prime(3));
    }

    #[test]
    fn rank_mod_p() {
        assert_eq!(rank_fp(&IntMatrix::identity(7), 5), Ok(7));
        let m = IntMatrix::from_rows(&[[1i64, 2], [3, 1]]);
        // det = -5
        assert_eq!(rank_fp(&m, 5), Ok(1));
        assert_eq!(rank_fp(&m, 7), Ok(2));
        assert_eq!(rank_fp(&m, 2), Err(MathError::NotOddPrime(2)));
        assert_eq!(rank_fp(&m, 9), Err(MathError::NotOddPrime(9)));
        assert_eq!(rank_fp_small(&[[1i64, 2], [3, 1]], 5), 1);
        assert_eq!(rank_fp_small(&[[-1i64, 2], [3, 1]], 5), 2);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = IntMatrix::from_rows(&[[1i64, 1, 1, 1], [0, 1, 2, 3]]);
        let ker = nullspace_fp(&m, 7).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for r in 0..m.rows() {
                let s: i64 = m
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, &x)| a.to_i64().unwrap() * x as i64)
                    .sum();
                assert_eq!(s.rem_euclid(7), 0);
            }
        }
    }
}
