//! Colexicographic ranking of subsets of `{0, .., 27}` (combinatorial number system).
//!
//! A subset `c_0 < c_1 < .. < c_{k-1}` has rank `sum_i C(c_i, i + 1)`.

use std::sync::OnceLock;

/// Size of the ground set all level tables index into.
pub const GROUND: usize = 28;

type BinomTable = [[u64; GROUND + 2]; GROUND + 2];

fn table() -> &'static BinomTable {
    static TABLE: OnceLock<BinomTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[0u64; GROUND + 2]; GROUND + 2];
        for n in 0..GROUND + 2 {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            }
        }
        t
    })
}

/// `C(n, k)` for `n <= 29`; zero when `k > n`.
#[inline]
pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else {
        table()[n][k]
    }
}

/// Rank of a strictly increasing sequence of elements.
pub fn rank(elements: &[u8]) -> u64 {
    debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
    elements
        .iter()
        .enumerate()
        .map(|(i, &c)| binom(c as usize, i + 1))
        .sum()
}

/// Inverse of [`rank`] for `k`-subsets; writes the elements in increasing order.
pub fn unrank(mut r: u64, k: usize, out: &mut [u8]) {
    debug_assert!(r < binom(GROUND, k));
    let mut hi = GROUND;
    for i in (0..k).rev() {
        // Largest c with C(c, i+1) <= r.
        let mut c = hi - 1;
        while binom(c, i + 1) > r {
            c -= 1;
        }
        out[i] = c as u8;
        r -= binom(c, i + 1);
        hi = c;
    }
}

/// Advances to the colex successor in place. Returns false past the last subset.
pub fn next(elements: &mut [u8]) -> bool {
    let k = elements.len();
    for i in 0..k {
        let limit = if i + 1 < k {
            elements[i + 1]
        } else {
            GROUND as u8
        };
        if elements[i] + 1 < limit {
            elements[i] += 1;
            for (j, e) in elements[..i].iter_mut().enumerate() {
                *e = j as u8;
            }
            return true;
        }
    }
    false
}

/// Ranks of the `k` subsets obtained by deleting one element, in element order.
#[inline]
pub fn child_ranks(elements: &[u8], out: &mut [u64]) {
    let k = elements.len();
    let t = table();
    // suffix[j] = sum over i > j of C(c_i, i): the shifted tail after deleting c_j.
    let mut suffix = 0u64;
    for j in (0..k).rev() {
        out[j] = suffix;
        suffix += t[elements[j] as usize][j];
    }
    let mut prefix = 0u64;
    for j in 0..k {
        out[j] += prefix;
        prefix += t[elements[j] as usize][j + 1];
    }
}
