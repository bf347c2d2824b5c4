//! Boolean row spaces and the counting sequences that bound them.
//!
//! The boolean row space of a 0/1 matrix is the set of all bitwise ORs of
//! subsets of its rows. The empty subset is included, so the all-zero vector
//! is always a member and every space has at least one element. With this
//! convention the boolean cut value of an empty side is exactly `log2 1 = 0`.
//! Some literature leaves the empty union out; results here are one larger
//! in count than under that reading.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::gf2::BitMatrix;
use crate::graphs::{Cut, Graph};

/// Default cap on the number of members enumerated by the union closure.
pub const DEFAULT_SPACE_CAP: u64 = 1 << 20;

/// Largest `n` accepted by [`bell`].
pub const BELL_CAP: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolSpaceError {
    #[error("boolean row space exceeds the cap of {cap} members ({partial} enumerated so far)")]
    Overflow { partial: u64, cap: u64 },
    #[error("cap must be at least 1")]
    ZeroCap,
    #[error("bell({n}) is above the supported maximum {cap}")]
    BellTooLarge { n: usize, cap: usize },
    #[error("gaussian binomial [{r} choose {k}] requires k <= r")]
    BadSubspaceDimension { r: usize, k: usize },
}

/// Exact nonnegative integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// `log2` of the value; `-inf` for zero.
    pub fn log2(&self) -> f64 {
        let bits = self.0.bits();
        if bits == 0 {
            return f64::NEG_INFINITY;
        }
        let shift = bits.saturating_sub(64);
        let top = (&self.0 >> shift).to_u64().expect("at most 64 bits remain");
        (top as f64).log2() + shift as f64
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Size of a boolean row space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BooleanSpaceSize {
    pub count: u64,
    pub log2: f64,
}

impl BooleanSpaceSize {
    fn new(count: u64) -> Self {
        BooleanSpaceSize {
            count,
            log2: (count as f64).log2(),
        }
    }
}

/// Counts distinct ORs of row subsets of `matrix`, including the empty union.
///
/// Starts from `{0}` and ORs each row, in ascending row order, into every
/// member known so far. Fails once the member count would exceed `cap`.
pub fn boolean_row_space_size(matrix: &BitMatrix, cap: u64) -> Result<BooleanSpaceSize, BoolSpaceError> {
    if cap == 0 {
        return Err(BoolSpaceError::ZeroCap);
    }
    if matrix.stride() <= 1 {
        let rows = (0..matrix.rows()).map(|i| matrix.row_words(i).first().copied().unwrap_or(0));
        return union_closure_u64(rows, cap).map(BooleanSpaceSize::new);
    }
    let zero = vec![0u64; matrix.stride()];
    let mut members = vec![zero.clone()];
    let mut seen: HashSet<Vec<u64>> = HashSet::from([zero]);
    for i in 0..matrix.rows() {
        let row = matrix.row_words(i);
        for j in 0..members.len() {
            let joined: Vec<u64> = members[j].iter().zip(row).map(|(a, b)| a | b).collect();
            if !seen.contains(&joined) {
                if members.len() as u64 == cap {
                    return Err(BoolSpaceError::Overflow { partial: cap, cap });
                }
                seen.insert(joined.clone());
                members.push(joined);
            }
        }
    }
    Ok(BooleanSpaceSize::new(members.len() as u64))
}

/// Union closure over rows packed in single words.
pub(crate) fn union_closure_u64(rows: impl IntoIterator<Item = u64>, cap: u64) -> Result<u64, BoolSpaceError> {
    let mut members = vec![0u64];
    let mut seen: HashSet<u64> = HashSet::from([0]);
    for row in rows {
        if row == 0 {
            continue;
        }
        for j in 0..members.len() {
            let joined = members[j] | row;
            if seen.insert(joined) {
                if members.len() as u64 == cap {
                    return Err(BoolSpaceError::Overflow { partial: cap, cap });
                }
                members.push(joined);
            }
        }
    }
    Ok(members.len() as u64)
}

/// Boolean cut value: `log2` of the boolean row space of the cut matrix
/// `A[X, V \ X]`. Zero when either side is empty.
pub fn cut_bool(graph: &Graph, cut: &Cut) -> Result<f64, BoolSpaceError> {
    cut_bool_size(graph, cut, DEFAULT_SPACE_CAP).map(|s| s.log2)
}

/// [`cut_bool`] with an explicit cap, returning the exact count as well.
pub fn cut_bool_size(graph: &Graph, cut: &Cut, cap: u64) -> Result<BooleanSpaceSize, BoolSpaceError> {
    if cap == 0 {
        return Err(BoolSpaceError::ZeroCap);
    }
    if graph.n() <= 64 {
        let side = cut.mask_u64();
        let other = !side & low_bits(graph.n());
        let rows = cut.iter().map(|v| graph.adjacency().row_words(v)[0] & other);
        return union_closure_u64(rows, cap).map(BooleanSpaceSize::new);
    }
    boolean_row_space_size(&graph.cut_matrix(cut), cap)
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Bell number `B_n`, the number of partitions of an `n`-set, via the Bell triangle.
pub fn bell(n: usize) -> Result<BigCount, BoolSpaceError> {
    if n > BELL_CAP {
        return Err(BoolSpaceError::BellTooLarge { n, cap: BELL_CAP });
    }
    // Row i of the triangle starts with B_i; row i+1 starts with the last entry of row i.
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("rows are nonempty").clone());
        for x in &row {
            let v = next.last().expect("just pushed") + x;
            next.push(v);
        }
        row = next;
    }
    Ok(BigCount(row.swap_remove(0)))
}

/// Gaussian binomial `[r choose k]_2`: the number of `k`-dimensional subspaces of GF(2)^r.
pub fn gaussian_binomial(r: usize, k: usize) -> Result<BigCount, BoolSpaceError> {
    if k > r {
        return Err(BoolSpaceError::BadSubspaceDimension { r, k });
    }
    let pow2m1 = |e: usize| (BigUint::one() << e) - BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pow2m1(r - i);
        den *= pow2m1(k - i);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(BigCount(num / den))
}

/// Galois number `G_r`: the total number of subspaces of GF(2)^r.
pub fn galois_number(r: usize) -> BigCount {
    let total = (0..=r)
        .map(|k| gaussian_binomial(r, k).expect("k <= r").0)
        .fold(BigUint::zero(), |acc, x| acc + x);
    BigCount(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_space_examples() {
        let m = BitMatrix::from_rows(&[[1, 0, 0], [0, 1, 0]]);
        assert_eq!(boolean_row_space_size(&m, 100).unwrap().count, 4);
        assert_eq!(boolean_row_space_size(&BitMatrix::identity(3), 100).unwrap().count, 8);
        let m = BitMatrix::from_rows(&[[1, 1, 1], [1, 1, 1], [1, 1, 1]]);
        let s = boolean_row_space_size(&m, 100).unwrap();
        assert_eq!(s.count, 2);
        assert_eq!(s.log2, 1.0);
        assert_eq!(boolean_row_space_size(&BitMatrix::zeros(0, 0), 1).unwrap().count, 1);
    }

    #[test]
    fn row_space_overflow_carries_partial_count() {
        let err = boolean_row_space_size(&BitMatrix::identity(4), 10).unwrap_err();
        assert_eq!(err, BoolSpaceError::Overflow { partial: 10, cap: 10 });
        assert_eq!(boolean_row_space_size(&BitMatrix::identity(4), 16).unwrap().count, 16);
        assert_eq!(
            boolean_row_space_size(&BitMatrix::identity(3), 0).unwrap_err(),
            BoolSpaceError::ZeroCap
        );
    }

    #[test]
    fn wide_rows_use_the_generic_closure() {
        let m = BitMatrix::from_fn(3, 100, |i, j| j == 90 + i || j == 2);
        assert_eq!(boolean_row_space_size(&m, 100).unwrap().count, 8);
        let m = BitMatrix::from_fn(5, 100, |i, j| j >= 50 + i);
        // Nested rows: unions form a chain.
        assert_eq!(boolean_row_space_size(&m, 100).unwrap().count, 6);
        assert!(matches!(
            boolean_row_space_size(&BitMatrix::identity(70), 1000),
            Err(BoolSpaceError::Overflow { .. })
        ));
    }

    #[test]
    fn bell_values() {
        let b: Vec<u64> = (0..=10).map(|n| bell(n).unwrap().to_u64().unwrap()).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]);
        assert!(bell(BELL_CAP).is_ok());
        assert_eq!(
            bell(501).unwrap_err(),
            BoolSpaceError::BellTooLarge { n: 501, cap: 500 }
        );
    }

    #[test]
    fn gaussian_binomial_values() {
        for r in 0..8 {
            assert_eq!(gaussian_binomial(r, 0).unwrap(), BigCount::from(1));
            assert_eq!(gaussian_binomial(r, r).unwrap(), BigCount::from(1));
        }
        assert_eq!(gaussian_binomial(2, 1).unwrap(), BigCount::from(3));
        assert_eq!(gaussian_binomial(4, 2).unwrap(), BigCount::from(35));
        assert_eq!(
            gaussian_binomial(2, 3).unwrap_err(),
            BoolSpaceError::BadSubspaceDimension { r: 2, k: 3 }
        );
    }

    #[test]
    fn galois_values() {
        let g: Vec<u64> = (0..=5).map(|r| galois_number(r).to_u64().unwrap()).collect();
        assert_eq!(g, vec![1, 2, 5, 16, 67, 374]);
    }

    #[test]
    fn big_log2() {
        assert_eq!(BigCount::from(1).log2(), 0.0);
        assert_eq!(BigCount::from(1 << 40).log2(), 40.0);
        assert_eq!(BigCount(BigUint::one() << 300u32).log2(), 300.0);
        assert_eq!(BigCount::from(0).log2(), f64::NEG_INFINITY);
        let b = bell(200).unwrap();
        let direct = b.to_string().len() as f64; // decimal digits bound the magnitude
        assert!((b.log2() / 10f64.log2() - direct).abs() < 1.0);
    }
}
