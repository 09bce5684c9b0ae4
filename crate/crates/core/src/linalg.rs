//! Exact linear algebra on two number systems: GF(2), with rows packed into
//! machine words so elimination XORs 64 columns at a time, and the rationals,
//! with fraction-free (Bareiss) elimination over arbitrary-precision integers
//! so ranks are exact theorems rather than floating-point estimates.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Fixed-length vector over GF(2), packed 64 entries per word.
///
/// Invariant: bits at positions >= len in the last word are zero, so
/// equality and hashing work on the packed words directly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec {
            len,
            words: vec![!0u64; len.div_ceil(64)],
        };
        v.mask_tail();
        v
    }

    /// Unit vectors and other sparse inputs: 1 exactly at the given indices.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    /// In-place XOR with another vector of the same length.
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of different lengths");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// GF(2) inner product: parity of the overlap.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot of different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Indices of the 1 entries, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Debug serialization: '0'/'1' characters, index 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

/// Dense matrix over GF(2), stored one [`BitVec`] per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let data = (0..rows)
            .map(|i| BitVec::from_fn(cols, |j| f(i, j)))
            .collect();
        BitMatrix { rows, cols, data }
    }

    /// Assembles a matrix from row vectors, which must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    left: r.len(),
                    right: cols,
                });
            }
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.data[i]
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.data[i].iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix-vector product over GF(2); `x` must have length `cols`.
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.cols,
            });
        }
        Ok(BitVec::from_fn(self.rows, |i| self.data[i].dot(x)))
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        reduced_echelon(&mut work).len()
    }

    /// Basis of the right kernel {x : self * x = 0}, in reduced echelon form
    /// with one basis vector per free column, free columns ascending. The
    /// output is fully determined by the matrix.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut work = self.data.clone();
        let pivots = reduced_echelon(&mut work);
        let is_pivot = {
            let mut p = vec![false; self.cols];
            for &c in &pivots {
                p[c] = true;
            }
            p
        };
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = BitVec::zeros(self.cols);
            x.set(free, true);
            // In reduced form row r reads: x[pivots[r]] + sum over free
            // columns f of entry(r, f) * x[f] = 0.
            for (r, &pc) in pivots.iter().enumerate() {
                if work[r].get(free) {
                    x.set(pc, true);
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Debug serialization: one row of '0'/'1' characters per line.
    pub fn to_text(&self) -> String {
        self.data
            .iter()
            .map(BitVec::to_bit_string)
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Lifts the 0/1 entries into an exact integer matrix.
    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            if self.get(i, j) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }
}

/// In-place reduction to reduced row echelon form; returns the pivot columns
/// in ascending order (so the rank is the returned length).
fn reduced_echelon(rows: &mut [BitVec]) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        let Some(found) = (next..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && row.get(c) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(c);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

/// True iff `x` is a GF(2) linear combination of `basis`.
pub fn gf2_in_span(basis: &[BitVec], x: &BitVec) -> Result<bool> {
    for b in basis {
        if b.len() != x.len() {
            return Err(Error::LengthMismatch {
                left: b.len(),
                right: x.len(),
            });
        }
    }
    let mut work: Vec<BitVec> = basis.to_vec();
    let pivots = reduced_echelon(&mut work);
    let mut rest = x.clone();
    for (r, &c) in pivots.iter().enumerate() {
        if rest.get(c) {
            rest.xor_assign(&work[r]);
        }
    }
    Ok(rest.is_zero())
}

/// Dense matrix with arbitrary-precision integer entries, used for exact
/// rank computations over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>, // row-major
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
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    /// Exact rank over the rationals by Bareiss fraction-free elimination
    /// with full pivoting. Every division is exact, so no rounding occurs;
    /// the pivot rule (fewest bits, then lowest row, then lowest column)
    /// is deterministic and keeps intermediate entries near the minor bound.
    pub fn rational_rank(&self) -> usize {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let idx = |r: usize, c: usize| r * n + c;
        let mut prev = BigInt::one();
        for step in 0..m.min(n) {
            let mut best: Option<(u64, usize, usize)> = None;
            'search: for r in step..m {
                for c in step..n {
                    let e = &a[idx(r, c)];
                    if !e.is_zero() {
                        let bits = e.magnitude().bits();
                        if best.is_none_or(|(bb, _, _)| bits < bb) {
                            best = Some((bits, r, c));
                            if bits == 1 {
                                break 'search; // a unit entry; no better pivot exists
                            }
                        }
                    }
                }
            }
            let Some((_, pr, pc)) = best else {
                return step; // trailing submatrix is zero
            };
            if pr != step {
                for c in 0..n {
                    a.swap(idx(step, c), idx(pr, c));
                }
            }
            if pc != step {
                for r in 0..m {
                    a.swap(idx(r, step), idx(r, pc));
                }
            }
            let pivot = a[idx(step, step)].clone();
            for r in step + 1..m {
                let lead = std::mem::take(&mut a[idx(r, step)]);
                if lead.is_zero() && pivot == prev {
                    continue; // row update is the identity in this case
                }
                for c in step + 1..n {
                    let num = if lead.is_zero() {
                        &a[idx(r, c)] * &pivot
                    } else {
                        &a[idx(r, c)] * &pivot - &lead * &a[idx(step, c)]
                    };
                    a[idx(r, c)] = num / &prev; // exact by the Bareiss identity
                }
            }
            prev = pivot;
        }
        m.min(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_bit_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
        BitMatrix::from_fn(rows, cols, |_, _| rng.random())
    }

    /// Independent oracle: textbook Gaussian elimination over the rationals.
    fn naive_rational_rank(m: &IntMatrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| BigRational::from_integer(m.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..m.rows()).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = a[rank][c].recip();
            for j in c..m.cols() {
                let scaled = &a[rank][j] * &inv;
                a[rank][j] = scaled;
            }
            for r in 0..m.rows() {
                if r != rank && !a[r][c].is_zero() {
                    let factor = a[r][c].clone();
                    for j in c..m.cols() {
                        let sub = &a[rank][j] * &factor;
                        a[r][j] -= sub;
                    }
                }
            }
            rank += 1;
            if rank == m.rows() {
                break;
            }
        }
        rank
    }

    #[test]
    fn bitvec_basics() {
        let mut v = BitVec::zeros(70);
        v.set(0, true);
        v.set(69, true);
        assert!(v.get(0) && v.get(69) && !v.get(35));
        assert_eq!(v.count_ones(), 2);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 69]);
        let ones = BitVec::ones(70);
        assert_eq!(ones.count_ones(), 70);
        assert!(!ones.dot(&v)); // overlap 2, even
        let e0 = BitVec::from_indices(70, &[0]);
        assert!(ones.dot(&e0));
        assert_eq!(BitVec::zeros(3).to_bit_string(), "000");
    }

    #[test]
    fn gf2_rank_examples() {
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        let all_ones = BitMatrix::from_fn(3, 4, |_, _| true);
        assert_eq!(all_ones.rank(), 1);
        assert_eq!(BitMatrix::zeros(4, 7).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(BitMatrix::identity(6).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_dimension_and_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let rows = rng.random_range(0..=12);
            let cols = rng.random_range(1..=12);
            let m = random_bit_matrix(&mut rng, rows, cols);
            let basis = m.kernel_basis();
            assert_eq!(m.rank() + basis.len(), cols);
            for b in &basis {
                assert!(m.mul_vec(b).unwrap().is_zero(), "kernel vector not annihilated");
                assert!(gf2_in_span(&basis, b).unwrap());
            }
        }
    }

    #[test]
    fn kernel_basis_depends_only_on_row_space() {
        // The reduced echelon form is a row-space invariant, so permuting or
        // re-combining rows must reproduce the identical kernel basis.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = random_bit_matrix(&mut rng, 6, 9);
            let mut shuffled: Vec<BitVec> = (0..6).map(|i| m.row(i).clone()).collect();
            for i in (1..shuffled.len()).rev() {
                shuffled.swap(i, rng.random_range(0..=i));
            }
            let adds = shuffled[0].clone();
            shuffled[5].xor_assign(&adds); // elementary row operation
            let m2 = BitMatrix::from_rows(9, shuffled).unwrap();
            assert_eq!(m2.rank(), m.rank());
            assert_eq!(m2.kernel_basis(), m.kernel_basis());
        }
    }

    #[test]
    fn span_membership_examples() {
        assert!(gf2_in_span(&[], &BitVec::zeros(4)).unwrap());
        let ones = BitVec::ones(15);
        assert!(gf2_in_span(std::slice::from_ref(&ones), &ones).unwrap());
        let e0 = BitVec::from_indices(15, &[0]);
        assert!(!gf2_in_span(std::slice::from_ref(&ones), &e0).unwrap());
        assert!(gf2_in_span(&[ones], &BitVec::zeros(15)).unwrap());
        assert!(matches!(
            gf2_in_span(&[BitVec::zeros(3)], &BitVec::zeros(4)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn transpose_preserves_rank_and_involutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let rows = rng.random_range(0..=10);
            let cols = rng.random_range(1..=10);
            let m = random_bit_matrix(&mut rng, rows, cols);
            assert_eq!(m.transpose().transpose(), m);
            assert_eq!(m.transpose().rank(), m.rank());
        }
    }

    #[test]
    fn rational_rank_small_cases() {
        assert_eq!(IntMatrix::zeros(3, 3).rational_rank(), 0);
        assert_eq!(IntMatrix::identity(5).rational_rank(), 5);
        let singular = IntMatrix::from_fn(2, 2, |i, j| BigInt::from([[2, 4], [1, 2]][i][j]));
        assert_eq!(singular.rational_rank(), 1);
        let full = IntMatrix::from_fn(2, 2, |i, j| BigInt::from([[1, 2], [3, 4]][i][j]));
        assert_eq!(full.rational_rank(), 2);
        // Rank over GF(2) differs here: [[2,0],[0,2]] is invertible over the
        // rationals but zero mod 2.
        let twice = IntMatrix::from_fn(2, 2, |i, j| BigInt::from(if i == j { 2 } else { 0 }));
        assert_eq!(twice.rational_rank(), 2);
    }

    #[test]
    fn rational_rank_matches_naive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let m = IntMatrix::from_fn(6, 6, |_, _| BigInt::from(rng.random_range(-3i64..=3)));
            assert_eq!(m.rational_rank(), naive_rational_rank(&m));
        }
    }

    #[test]
    fn gf2_rank_bounded_by_rational_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..150 {
            let rows = rng.random_range(1..=12);
            let cols = rng.random_range(1..=12);
            let m = random_bit_matrix(&mut rng, rows, cols);
            let lifted = m.to_int_matrix();
            assert!(m.rank() <= lifted.rational_rank());
            assert_eq!(lifted.rational_rank(), naive_rational_rank(&lifted));
        }
    }

    #[test]
    fn debug_serialization_shape() {
        let m = BitMatrix::from_fn(2, 3, |i, j| (i + j) % 2 == 0);
        assert_eq!(m.to_text(), "101\n010");
    }
}
