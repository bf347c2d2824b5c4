//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words, least-significant bit first: entry
//! `(i, j)` lives at bit `j % 64` of word `i * stride + j / 64`. Padding bits
//! past `cols` are always zero, which lets rows be compared and hashed as
//! plain word slices.
//!
//! Empty shapes (`0 x k`, `k x 0`, `0 x 0`) are legal everywhere and have
//! rank 0.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index;
use thiserror::Error;

use crate::rng::{BitStream, RngSeed};

/// Largest `m * n` accepted by [`rank_distribution_oracle`].
pub const RANK_ORACLE_CELL_CAP: usize = 20;

/// Default cap on `C(rows, m) * C(cols, k)` for [`min_submatrix_rank_exhaustive`].
pub const DEFAULT_SUBMATRIX_WORK_CAP: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("{axis} index {index} out of range (bound {bound})")]
    IndexOutOfRange {
        axis: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("submatrix of size {m}x{k} requested from a {rows}x{cols} matrix")]
    SubmatrixTooLarge {
        m: usize,
        k: usize,
        rows: usize,
        cols: usize,
    },
    #[error("rank oracle enumerates 2^(m*n) matrices; m*n = {cells} exceeds the cap of {cap}")]
    OracleTooLarge { cells: usize, cap: usize },
    #[error(
        "exhaustive minimization needs {work} submatrix ranks, above the cap of {cap}; \
         use the sampled variant instead"
    )]
    WorkCapExceeded { work: u128, cap: u128 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Dense matrix over GF(2) with word-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. All rows must have equal length.
    ///
    /// # Panics
    /// Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(
            rows.iter().all(|r| r.as_ref().len() == cols),
            "ragged rows in BitMatrix::from_rows"
        );
        Self::from_fn(rows.len(), cols, |i, j| rows[i].as_ref()[j] != 0)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Words per packed row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of range");
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of range");
        let w = &mut self.data[i * self.stride + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    /// Packed words of row `i`.
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// GF(2) rank by row reduction on a scratch copy.
    ///
    /// Columns are scanned in ascending order; the pivot for a column is the
    /// first remaining row with that bit set.
    pub fn rank(&self) -> usize {
        if self.stride == 0 {
            return 0;
        }
        let mut scratch = self.data.clone();
        let stride = self.stride;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..self.rows).find(|&r| scratch[r * stride + w] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..stride {
                    scratch.swap(pivot * stride + k, rank * stride + k);
                }
            }
            for r in pivot + 1..self.rows {
                if scratch[r * stride + w] & bit != 0 {
                    for k in w..stride {
                        scratch[r * stride + k] ^= scratch[rank * stride + k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Submatrix on the given row and column indices, kept in ascending index
    /// order. The index sets may be discontiguous and are deduplicated.
    pub fn submatrix(&self, rowset: &[usize], colset: &[usize]) -> Result<BitMatrix, Gf2Error> {
        let rows = sorted_unique(rowset, self.rows, "row")?;
        let cols = sorted_unique(colset, self.cols, "column")?;
        Ok(BitMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j])
        }))
    }

    /// Text form: a header line `m n`, then `m` lines of `n` characters in `{0,1}`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<BitMatrix, Gf2Error> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (hline, header) = lines.next().ok_or_else(|| Gf2Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| Gf2Error::Parse {
                line: hline,
                message: format!("bad header: {e}"),
            })?;
        let [rows, cols] = dims[..] else {
            return Err(Gf2Error::Parse {
                line: hline,
                message: "header must be `m n`".into(),
            });
        };
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            let (line, body) = lines.next().ok_or_else(|| Gf2Error::Parse {
                line: hline + i + 1,
                message: format!("expected {rows} rows, found {i}"),
            })?;
            if body.len() != cols {
                return Err(Gf2Error::Parse {
                    line,
                    message: format!("expected {cols} entries, found {}", body.len()),
                });
            }
            for (j, c) in body.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    _ => {
                        return Err(Gf2Error::Parse {
                            line,
                            message: format!("invalid entry {:?} at column {j}", c as char),
                        })
                    }
                }
            }
        }
        if let Some((line, rest)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Gf2Error::Parse {
                line,
                message: format!("trailing content {rest:?}"),
            });
        }
        Ok(m)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix(")?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl FromStr for BitMatrix {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BitMatrix::parse_text(s)
    }
}

fn sorted_unique(set: &[usize], bound: usize, axis: &'static str) -> Result<Vec<usize>, Gf2Error> {
    if let Some(&index) = set.iter().find(|&&i| i >= bound) {
        return Err(Gf2Error::IndexOutOfRange { axis, index, bound });
    }
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Rank of a list of vectors packed into single words.
pub(crate) fn rank_u64(rows: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in rows {
        while v != 0 {
            let b = v.trailing_zeros() as usize;
            if basis[b] == 0 {
                basis[b] = v;
                rank += 1;
                break;
            }
            v ^= basis[b];
        }
    }
    rank
}

/// `m x n` matrix from M(m, n): every entry independently 1 with probability 1/2.
pub fn sample_matrix(m: usize, n: usize, seed: RngSeed) -> BitMatrix {
    let mut bits = BitStream::new(seed.rng());
    BitMatrix::from_fn(m, n, |_, _| bits.next_bit())
}

/// Exact rank distribution of M(m, n), from enumeration of all `2^(m n)` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDistribution {
    pub m: usize,
    pub n: usize,
    /// `counts[r]` = number of matrices of rank `r`.
    pub counts: Vec<u64>,
    /// `2^(m n)`.
    pub total: u64,
}

impl RankDistribution {
    pub fn probabilities(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.total as f64).collect()
    }
}

pub fn rank_distribution_oracle(m: usize, n: usize) -> Result<RankDistribution, Gf2Error> {
    let cells = m * n;
    if cells > RANK_ORACLE_CELL_CAP {
        return Err(Gf2Error::OracleTooLarge {
            cells,
            cap: RANK_ORACLE_CELL_CAP,
        });
    }
    let mut counts = vec![0u64; m.min(n) + 1];
    let total = 1u64 << cells;
    let row_mask = if n == 0 { 0 } else { (1u64 << n) - 1 };
    for code in 0..total {
        let r = rank_u64((0..m).map(|i| (code >> (i * n)) & row_mask));
        counts[r] += 1;
    }
    Ok(RankDistribution { m, n, counts, total })
}

/// Minimum rank found over a family of submatrices, with one witnessing
/// (rowset, colset) in ascending index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmatrixMin {
    pub rank: usize,
    pub rowset: Vec<usize>,
    pub colset: Vec<usize>,
}

fn check_shape(matrix: &BitMatrix, m: usize, k: usize) -> Result<(), Gf2Error> {
    if m > matrix.rows() || k > matrix.cols() {
        return Err(Gf2Error::SubmatrixTooLarge {
            m,
            k,
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    Ok(())
}

/// Number of `m x k` submatrices of a `rows x cols` matrix.
pub fn submatrix_count(rows: usize, cols: usize, m: usize, k: usize) -> u128 {
    binomial(rows, m).saturating_mul(binomial(cols, k))
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Rank of `matrix[rowset, colset]`, using the word-level path when every row fits one word.
fn masked_rank(matrix: &BitMatrix, rowset: &[usize], colset: &[usize]) -> usize {
    if matrix.stride() == 1 {
        let mask = colset.iter().fold(0u64, |acc, &c| acc | 1 << c);
        rank_u64(rowset.iter().map(|&r| matrix.row_words(r)[0] & mask))
    } else {
        matrix
            .submatrix(rowset, colset)
            .expect("indices drawn from the matrix shape")
            .rank()
    }
}

/// Exact minimum rank over all `m x k` submatrices.
///
/// Row sets are enumerated lexicographically in the outer loop and column sets
/// in the inner loop; the first minimizer in that order is returned. Fails
/// when the number of submatrices exceeds `work_cap`.
pub fn min_submatrix_rank_exhaustive(
    matrix: &BitMatrix,
    m: usize,
    k: usize,
    work_cap: u128,
) -> Result<SubmatrixMin, Gf2Error> {
    check_shape(matrix, m, k)?;
    let work = submatrix_count(matrix.rows(), matrix.cols(), m, k);
    if work > work_cap {
        return Err(Gf2Error::WorkCapExceeded { work, cap: work_cap });
    }
    let mut best: Option<SubmatrixMin> = None;
    'rows: for rowset in (0..matrix.rows()).combinations(m) {
        if matrix.stride() == 1 {
            let rows: Vec<u64> = rowset.iter().map(|&r| matrix.row_words(r)[0]).collect();
            for colset in (0..matrix.cols()).combinations(k) {
                let mask = colset.iter().fold(0u64, |acc, &c| acc | 1 << c);
                let rank = rank_u64(rows.iter().map(|&w| w & mask));
                if best.as_ref().is_none_or(|b| rank < b.rank) {
                    best = Some(SubmatrixMin {
                        rank,
                        rowset: rowset.clone(),
                        colset,
                    });
                    if rank == 0 {
                        break 'rows;
                    }
                }
            }
        } else {
            for colset in (0..matrix.cols()).combinations(k) {
                let rank = masked_rank(matrix, &rowset, &colset);
                if best.as_ref().is_none_or(|b| rank < b.rank) {
                    best = Some(SubmatrixMin {
                        rank,
                        rowset: rowset.clone(),
                        colset,
                    });
                    if rank == 0 {
                        break 'rows;
                    }
                }
            }
        }
    }
    Ok(best.expect("at least one submatrix exists when m <= rows and k <= cols"))
}

/// Minimum rank over `trials` uniformly drawn `m x k` submatrices.
///
/// This is an upper bound on the true minimum, never a certificate.
/// `trials` below 1 is treated as 1.
pub fn min_submatrix_rank_sampled(
    matrix: &BitMatrix,
    m: usize,
    k: usize,
    trials: usize,
    seed: RngSeed,
) -> Result<SubmatrixMin, Gf2Error> {
    check_shape(matrix, m, k)?;
    let mut rng = seed.rng();
    let mut best: Option<SubmatrixMin> = None;
    for _ in 0..trials.max(1) {
        let mut rowset = index::sample(&mut rng, matrix.rows(), m).into_vec();
        let mut colset = index::sample(&mut rng, matrix.cols(), k).into_vec();
        rowset.sort_unstable();
        colset.sort_unstable();
        let rank = masked_rank(matrix, &rowset, &colset);
        if best.as_ref().is_none_or(|b| rank < b.rank) {
            best = Some(SubmatrixMin { rank, rowset, colset });
        }
    }
    Ok(best.expect("at least one trial"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small_cases() {
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::from_rows(&[[1, 1], [1, 1]]).rank(), 1);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(BitMatrix::zeros(5, 0).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn rank_across_word_boundary() {
        let m = BitMatrix::from_fn(3, 130, |i, j| j == 64 * i + 1);
        assert_eq!(m.rank(), 3);
        let dup = BitMatrix::from_fn(3, 130, |i, j| j == 129 || (i == 2 && j == 0));
        assert_eq!(dup.rank(), 2);
    }

    #[test]
    fn rank_leaves_input_untouched() {
        let m = BitMatrix::from_rows(&[[1, 1, 0], [1, 0, 1], [0, 1, 1]]);
        let before = m.clone();
        assert_eq!(m.rank(), 2);
        assert_eq!(m, before);
    }

    #[test]
    fn submatrix_read_off() {
        let sub = BitMatrix::identity(4).submatrix(&[0, 2], &[1, 3]).unwrap();
        assert_eq!(sub, BitMatrix::zeros(2, 2));
        let sub = BitMatrix::identity(4).submatrix(&[0, 2], &[1, 2]).unwrap();
        assert_eq!(sub, BitMatrix::from_rows(&[[0, 0], [0, 1]]));

        let m = BitMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]);
        assert_eq!(m.submatrix(&[0, 1], &[2]).unwrap(), BitMatrix::from_rows(&[[1], [1]]));

        let empty = m.submatrix(&[], &[0, 2]).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 2));
    }

    #[test]
    fn submatrix_reports_bad_index() {
        let err = BitMatrix::identity(3).submatrix(&[0, 7], &[1]).unwrap_err();
        assert_eq!(
            err,
            Gf2Error::IndexOutOfRange {
                axis: "row",
                index: 7,
                bound: 3
            }
        );
        let err = BitMatrix::identity(3).submatrix(&[0], &[3]).unwrap_err();
        assert_eq!(
            err,
            Gf2Error::IndexOutOfRange {
                axis: "column",
                index: 3,
                bound: 3
            }
        );
    }

    #[test]
    fn padding_bits_stay_clear() {
        let m = sample_matrix(5, 70, RngSeed(3));
        for i in 0..5 {
            assert_eq!(m.row_words(i)[1] >> 6, 0);
        }
    }

    #[test]
    fn sampler_is_deterministic() {
        assert_eq!(sample_matrix(2, 2, RngSeed(5)), sample_matrix(2, 2, RngSeed(5)));
        let empty = sample_matrix(0, 5, RngSeed(5));
        assert_eq!((empty.rows(), empty.cols()), (0, 5));
        assert_ne!(sample_matrix(8, 8, RngSeed(5)), sample_matrix(8, 8, RngSeed(6)));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let m = BitMatrix::from_rows(&[[1, 0, 1], [0, 1, 1]]);
        assert_eq!(m.to_text(), "2 3\n101\n011\n");
        assert_eq!(BitMatrix::parse_text(&m.to_text()).unwrap(), m);
        assert_eq!("0 4\n".parse::<BitMatrix>().unwrap(), BitMatrix::zeros(0, 4));
        assert!(matches!(
            BitMatrix::parse_text("2 2\n10\n1x\n"),
            Err(Gf2Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            BitMatrix::parse_text("2 2\n10\n"),
            Err(Gf2Error::Parse { .. })
        ));
        assert!(matches!(
            BitMatrix::parse_text("1 2\n101\n"),
            Err(Gf2Error::Parse { line: 2, .. })
        ));
        assert!(BitMatrix::parse_text("").is_err());
    }

    #[test]
    fn oracle_small_shapes() {
        let d = rank_distribution_oracle(1, 1).unwrap();
        assert_eq!(d.counts, vec![1, 1]);
        assert_eq!(d.total, 2);
        let d = rank_distribution_oracle(2, 2).unwrap();
        assert_eq!(d.counts, vec![1, 9, 6]);
        let d = rank_distribution_oracle(2, 3).unwrap();
        assert_eq!(d.counts.iter().sum::<u64>(), d.total);
        assert!(d.counts.iter().all(|&c| c > 0));
        assert_eq!(
            rank_distribution_oracle(3, 7).unwrap_err(),
            Gf2Error::OracleTooLarge { cells: 21, cap: 20 }
        );
    }

    #[test]
    fn exhaustive_minimum_on_structured_matrices() {
        let id = BitMatrix::identity(9);
        let res = min_submatrix_rank_exhaustive(&id, 3, 6, DEFAULT_SUBMATRIX_WORK_CAP).unwrap();
        assert_eq!(res.rank, 0);
        assert_eq!(res.rowset, vec![0, 1, 2]);
        assert_eq!(res.colset, vec![3, 4, 5, 6, 7, 8]);

        let ones = BitMatrix::ones(9, 9);
        let res = min_submatrix_rank_exhaustive(&ones, 3, 6, DEFAULT_SUBMATRIX_WORK_CAP).unwrap();
        assert_eq!(res.rank, 1);
    }

    #[test]
    fn exhaustive_minimum_respects_work_cap() {
        let m = BitMatrix::identity(9);
        let err = min_submatrix_rank_exhaustive(&m, 3, 6, 7055).unwrap_err();
        assert_eq!(err, Gf2Error::WorkCapExceeded { work: 7056, cap: 7055 });
        assert!(err.to_string().contains("sampled"));
        assert!(matches!(
            min_submatrix_rank_exhaustive(&m, 10, 1, 10),
            Err(Gf2Error::SubmatrixTooLarge { .. })
        ));
    }

    #[test]
    fn wide_matrices_take_the_generic_path() {
        let m = BitMatrix::from_fn(4, 70, |i, j| j == 65 + i);
        let res = min_submatrix_rank_exhaustive(&m, 2, 2, u128::MAX).unwrap();
        assert_eq!(res.rank, 0);
        let sampled = min_submatrix_rank_sampled(&m, 4, 70, 1, RngSeed(0)).unwrap();
        assert_eq!(sampled.rank, 4);
    }

    #[test]
    fn sampled_minimum_basics() {
        let ones = BitMatrix::ones(9, 9);
        assert_eq!(min_submatrix_rank_sampled(&ones, 3, 6, 25, RngSeed(1)).unwrap().rank, 1);

        let m = sample_matrix(9, 9, RngSeed(4));
        let one = min_submatrix_rank_sampled(&m, 3, 6, 1, RngSeed(8)).unwrap();
        let direct = m.submatrix(&one.rowset, &one.colset).unwrap().rank();
        assert_eq!(one.rank, direct);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 3), 84);
        assert_eq!(binomial(12, 8), 495);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(submatrix_count(9, 9, 3, 6), 7056);
    }
}
