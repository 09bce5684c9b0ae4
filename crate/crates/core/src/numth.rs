//! Exact binomial arithmetic, Lucas's theorem, parity tests, threshold
//! functions, and colex ranking of subsets.
//!
//! Colex (colexicographic) order — compare the largest element in which two
//! subsets differ — is the one canonical subset order used throughout the
//! crate: rows and columns of incidence matrices, indicator vectors, and
//! subset scans all follow it, so every matrix and vector is bit-for-bit
//! reproducible. Conveniently, on bitmask representations colex order
//! coincides with numeric order of the masks.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Base-p digit decomposition, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseDigits {
    pub p: u64,
    pub digits: Vec<u64>,
}

impl BaseDigits {
    /// Decomposes `n` in base `p`. `p` must be prime.
    ///
    /// Zero decomposes to the single digit `[0]`; otherwise the most
    /// significant (last) digit is nonzero.
    pub fn decompose(n: u64, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut digits = Vec::new();
        let mut rest = n;
        loop {
            digits.push(rest % p);
            rest /= p;
            if rest == 0 {
                break;
            }
        }
        Ok(BaseDigits { p, digits })
    }

    /// Recomposes the digit string back into the integer it represents.
    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p + d)
    }
}

/// The three interchangeable threshold functions of edge size `h`:
/// `psi = h + 2^floor(log2 h)`, `phi = psi - 1`, and `s = psi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub h: u64,
    pub psi: u64,
    pub phi: u64,
    pub s: u64,
}

/// Trial-division primality test. Exact for every u64, intended for small p.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Exact binomial coefficient C(n, k) as an arbitrary-precision integer.
///
/// Returns 0 when `k < 0` or `k > n`; in particular C(v, -1) = 0, the
/// convention every rank formula below relies on.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut r = BigUint::one();
    for i in 1..=k {
        // Exact at every step: r holds C(n-k+i-1, i-1) times the running
        // numerator, and i divides r * (n-k+i).
        r = r * (n - k + i) / i;
    }
    r
}

/// C(n, k) in a machine word; requires `n <= 64` so the result always fits.
///
/// # Panics
/// Panics when `n > 64`. Use [`binomial`] for larger arguments.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    assert!(n <= 64, "binomial_u64 requires n <= 64, got n = {n}");
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 1..=k as u128 {
        r = r * (n as u128 - k as u128 + i) / i;
    }
    r as u64
}

/// C(n, k) mod p by Lucas's theorem: the product over base-p digit pairs
/// of C(n_i, k_i) mod p, which is 0 as soon as some digit of k exceeds the
/// corresponding digit of n.
pub fn binomial_mod_p_lucas(n: u64, k: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (mut n, mut k) = (n, k);
    let mut acc: u64 = 1;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return Ok(0);
        }
        acc = mulmod(acc, digit_binomial_mod(nd, kd, p), p);
        n /= p;
        k /= p;
    }
    Ok(acc)
}

/// C(a, b) mod p for digits a, b < p, via the Pascal recurrence carried mod p.
fn digit_binomial_mod(a: u64, b: u64, p: u64) -> u64 {
    debug_assert!(b <= a && a < p);
    let b = b.min(a - b);
    let mut row = vec![0u64; b as usize + 1];
    row[0] = 1;
    for _ in 0..a {
        for j in (1..row.len()).rev() {
            row[j] = addmod(row[j], row[j - 1], p);
        }
    }
    row[b as usize]
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Parity of C(n, k) by the digit-domination test: odd iff every set bit of
/// k is also set in n. Correct for every pair, including k > n (even, as
/// C(n, k) = 0).
pub fn binomial_is_odd(n: u64, k: u64) -> bool {
    k & n == k
}

/// True iff C(v, k) is even for every k strictly between 0 and v —
/// equivalently, iff v is a power of two.
pub fn all_inner_binomials_even(v: u64) -> Result<bool> {
    if v < 2 {
        return Err(Error::ValueTooSmall {
            what: "v",
            min: 2,
            got: v,
        });
    }
    Ok((1..v).all(|k| !binomial_is_odd(v, k)))
}

/// Threshold functions of the edge size; `h = 0` is rejected.
pub fn thresholds(h: u64) -> Result<Thresholds> {
    if h == 0 {
        return Err(Error::EdgeSizeZero);
    }
    let psi = h + (1u64 << h.ilog2());
    Ok(Thresholds {
        h,
        psi,
        phi: psi - 1,
        s: psi,
    })
}

/// Best known upper bound on the reconstruction threshold vertex count:
/// `s(h) + h` when h is a power of two or one more than a power of two,
/// unknown (`None`) otherwise.
pub fn v_upper_bound(h: u64) -> Result<Option<u64>> {
    let t = thresholds(h)?;
    let qualifies = h.is_power_of_two() || (h >= 2 && (h - 1).is_power_of_two());
    Ok(if qualifies { Some(t.s + h) } else { None })
}

/// Colex rank of a strictly increasing subset of {0..63}:
/// rank(s_0 < ... < s_{k-1}) = sum of C(s_i, i+1).
pub fn colex_rank(subset: &[usize]) -> Result<u64> {
    for w in subset.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::MalformedSubset(subset.to_vec()));
        }
    }
    if let Some(&last) = subset.last() {
        if last >= 64 {
            return Err(Error::VertexOutOfRange {
                vertex: last,
                v: 64,
            });
        }
    }
    Ok(subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial_u64(s as u64, i as u64 + 1))
        .sum())
}

/// Inverse of [`colex_rank`]: the k-subset of {0..v-1} with the given colex
/// rank, found by peeling off the largest element greedily.
pub fn colex_unrank(rank: u64, k: usize, v: usize) -> Result<Vec<usize>> {
    if v > 64 {
        return Err(Error::TooManyVertices(v));
    }
    if rank >= binomial_u64(v as u64, k as u64) {
        return Err(Error::RankOutOfRange { rank, k, v });
    }
    let mut subset = vec![0; k];
    let mut rest = rank;
    let mut c = v;
    for i in (1..=k).rev() {
        // Largest c with C(c, i) <= rest; elements below position i all fit
        // beneath it, so it is the i-th smallest element of the subset.
        while binomial_u64(c as u64 - 1, i as u64) > rest {
            c -= 1;
        }
        subset[i - 1] = c - 1;
        rest -= binomial_u64(c as u64 - 1, i as u64);
    }
    Ok(subset)
}

/// Colex rank of a subset given as a bitmask.
pub fn colex_rank_mask(mask: u64) -> u64 {
    let mut rank = 0;
    let mut rest = mask;
    let mut i = 0;
    while rest != 0 {
        let s = rest.trailing_zeros() as u64;
        rest &= rest - 1;
        i += 1;
        rank += binomial_u64(s, i);
    }
    rank
}

/// The bitmask of a strictly increasing subset of {0..63}.
pub fn subset_to_mask(subset: &[usize]) -> u64 {
    subset.iter().fold(0, |m, &x| m | 1 << x)
}

/// The strictly increasing subset a bitmask represents.
pub fn mask_to_subset(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// Iterator over all k-subsets of {0..v-1} as bitmasks, in colex order.
///
/// Colex order on subsets is numeric order on masks, so this walks masks
/// ascending (Gosper's hack). The i-th mask yielded has colex rank i.
pub fn colex_masks(v: usize, k: usize) -> ColexMasks {
    assert!(v <= 64, "subset enumeration requires v <= 64, got v = {v}");
    let current = if k > v {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some((1u128 << k) - 1)
    };
    ColexMasks {
        v: v as u32,
        current,
    }
}

#[derive(Debug, Clone)]
pub struct ColexMasks {
    v: u32,
    current: Option<u128>,
}

impl Iterator for ColexMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.current?;
        let item = cur as u64;
        self.current = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let next = (((cur ^ r) >> 2) / c) | r;
            (next >> self.v == 0).then_some(next)
        };
        Some(item)
    }
}
