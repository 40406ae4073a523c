//! Dense exact matrices over an ordered field, with multiplication,
//! fraction-free rank, stochasticity checks and column normalization.
//!
//! Matrices are immutable after construction and all operations are pure.
//! Everything here is exact; the floating-point shadow lives in
//! [`crate::numnmf`].
//!
//! The textual matrix format used by golden files and the CLI is one header
//! line `rows cols` followed by `rows` lines of `cols` whitespace-separated
//! entries in the entry grammar of [`crate::exactnum`].

use std::fmt::Write as _;

use thiserror::Error;

use crate::exactnum::{Field, ParseEntryError, Quad, Rational, Sign};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_rows}x{left_cols} incompatible with {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix dimensions must be positive and match the entry count")]
    InvalidShape,
    #[error("negative entry at ({row},{col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("bad matrix header line `{0}` (expected `rows cols`)")]
    BadHeader(String),
    #[error("row {row} has {got} entries, expected {expected}")]
    BadRowLength { row: usize, got: usize, expected: usize },
    #[error("matrix text has {got} rows, expected {expected}")]
    BadRowCount { got: usize, expected: usize },
    #[error("bad entry at ({row},{col}): {source}")]
    BadEntry {
        row: usize,
        col: usize,
        source: ParseEntryError,
    },
}

/// A dense `rows × cols` matrix over the field `F`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

/// Why a matrix failed the stochasticity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StochasticWitness<F> {
    NegativeEntry { row: usize, col: usize, value: F },
    /// `defect` is the column sum minus one.
    ColumnSumDefect { col: usize, defect: F },
}

/// Result of [`ExactMatrix::normalize_columns`]: zero columns removed, the
/// rest scaled to sum one.  `scales[j]` is the original sum of kept column
/// `kept_columns[j]`, so the input is exactly reconstructible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnNormalization<F: Field> {
    pub stochastic: ExactMatrix<F>,
    pub scales: Vec<F>,
    pub kept_columns: Vec<usize>,
    original_cols: usize,
}

impl<F: Field> ColumnNormalization<F> {
    /// Rebuilds the original matrix (removed columns come back as zeros).
    pub fn reconstruct(&self) -> ExactMatrix<F> {
        let rows = self.stochastic.rows();
        let mut entries = vec![F::zero(); rows * self.original_cols];
        for (k, &orig) in self.kept_columns.iter().enumerate() {
            for i in 0..rows {
                entries[i * self.original_cols + orig] =
                    self.stochastic[(i, k)].clone() * self.scales[k].clone();
            }
        }
        ExactMatrix::new(rows, self.original_cols, entries).expect("shape preserved")
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(LinalgError::InvalidShape);
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::InvalidShape);
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![F::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = F::one();
        }
        ExactMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &F {
        &self.entries[row * self.cols + col]
    }

    /// Returns a copy with one entry replaced; used by mutation tooling.
    pub fn with_entry(&self, row: usize, col: usize, value: F) -> Self {
        let mut out = self.clone();
        out.entries[row * self.cols + col] = value;
        out
    }

    pub fn column(&self, col: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, col)].clone()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ExactMatrix<G> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Column concatenation `(self | right)`.
    pub fn concat_cols(&self, right: &Self) -> Result<Self, LinalgError> {
        if self.rows != right.rows {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: right.rows,
                right_cols: right.cols,
            });
        }
        let cols = self.cols + right.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries.push(self[(i, j)].clone());
            }
            for j in 0..right.cols {
                entries.push(right[(i, j)].clone());
            }
        }
        Self::new(self.rows, cols, entries)
    }

    /// Exact matrix product.
    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
                }
                entries.push(acc);
            }
        }
        Self::new(self.rows, rhs.cols, entries)
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    ///
    /// The one-step Bareiss update divides by the previous pivot, which is an
    /// exact division in any integral domain, so intermediate values never
    /// leave the field and coefficient growth stays polynomial.
    pub fn rank(&self) -> usize {
        let mut a: Vec<F> = self.entries.clone();
        let idx = |i: usize, j: usize| i * self.cols + j;
        let mut prev = F::one();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| !a[idx(r, col)].is_zero())
            else {
                continue;
            };
            if pivot_row != row {
                for j in 0..self.cols {
                    a.swap(idx(row, j), idx(pivot_row, j));
                }
            }
            let pivot = a[idx(row, col)].clone();
            for i in (row + 1)..self.rows {
                let head = a[idx(i, col)].clone();
                for j in (col + 1)..self.cols {
                    let num = a[idx(i, j)].clone() * pivot.clone()
                        - head.clone() * a[idx(row, j)].clone();
                    a[idx(i, j)] = num
                        .checked_div(&prev)
                        .expect("Bareiss previous pivot is nonzero");
                }
                a[idx(i, col)] = F::zero();
            }
            prev = pivot;
            row += 1;
        }
        row
    }

    /// Checks entrywise nonnegativity and exact column sums of one.
    ///
    /// Returns the first offense found (row-major scan for negativity, then
    /// left-to-right column sums), or `None` when the matrix is stochastic.
    pub fn stochastic_witness(&self) -> Option<StochasticWitness<F>> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)].sign() == Sign::Negative {
                    return Some(StochasticWitness::NegativeEntry {
                        row: i,
                        col: j,
                        value: self[(i, j)].clone(),
                    });
                }
            }
        }
        for j in 0..self.cols {
            let mut sum = F::zero();
            for i in 0..self.rows {
                sum = sum + self[(i, j)].clone();
            }
            let defect = sum - F::one();
            if !defect.is_zero() {
                return Some(StochasticWitness::ColumnSumDefect { col: j, defect });
            }
        }
        None
    }

    pub fn is_stochastic(&self) -> bool {
        self.stochastic_witness().is_none()
    }

    /// Removes zero columns and divides the rest by their sums.
    ///
    /// Requires a nonnegative matrix.  Nonnegative rank is unchanged by this
    /// normalization, which is why certificates may assume stochastic inputs.
    pub fn normalize_columns(&self) -> Result<ColumnNormalization<F>, LinalgError> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)].sign() == Sign::Negative {
                    return Err(LinalgError::NegativeEntry { row: i, col: j });
                }
            }
        }
        let mut kept_columns = Vec::new();
        let mut scales = Vec::new();
        for j in 0..self.cols {
            let mut sum = F::zero();
            for i in 0..self.rows {
                sum = sum + self[(i, j)].clone();
            }
            if !sum.is_zero() {
                kept_columns.push(j);
                scales.push(sum);
            }
        }
        let mut entries = Vec::with_capacity(self.rows * kept_columns.len());
        for i in 0..self.rows {
            for (k, &j) in kept_columns.iter().enumerate() {
                entries.push(
                    self[(i, j)]
                        .checked_div(&scales[k])
                        .expect("kept column sums are nonzero"),
                );
            }
        }
        let stochastic = ExactMatrix::new(self.rows, kept_columns.len(), entries)
            .expect("at least one nonzero column");
        Ok(ColumnNormalization {
            stochastic,
            scales,
            kept_columns,
            original_cols: self.cols,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", self[(i, j)]);
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, LinalgError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| LinalgError::BadHeader(String::new()))?;
        let mut parts = header.split_whitespace();
        let (Some(r), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(LinalgError::BadHeader(header.to_string()));
        };
        let rows: usize = r.parse().map_err(|_| LinalgError::BadHeader(header.to_string()))?;
        let cols: usize = c.parse().map_err(|_| LinalgError::BadHeader(header.to_string()))?;
        let mut entries = Vec::with_capacity(rows * cols);
        let mut seen = 0;
        for (i, line) in lines.enumerate() {
            if i >= rows {
                return Err(LinalgError::BadRowCount { got: i + 1, expected: rows });
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != cols {
                return Err(LinalgError::BadRowLength {
                    row: i + 1,
                    got: fields.len(),
                    expected: cols,
                });
            }
            for (j, field) in fields.iter().enumerate() {
                let value: F = field.parse().map_err(|source| LinalgError::BadEntry {
                    row: i + 1,
                    col: j + 1,
                    source,
                })?;
                entries.push(value);
            }
            seen = i + 1;
        }
        if seen != rows {
            return Err(LinalgError::BadRowCount { got: seen, expected: rows });
        }
        Self::new(rows, cols, entries)
    }
}

impl ExactMatrix<Rational> {
    /// Entrywise embedding of a rational matrix into Q(√2).
    pub fn to_quad(&self) -> ExactMatrix<Quad> {
        self.map(|r| Quad::from_rational(r.clone()))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(Rational::to_f64).collect()
    }
}

impl<F> std::ops::Index<(usize, usize)> for ExactMatrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.entries[i * self.cols + j]
    }
}

impl<F: Field> std::fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExactMatrix({}x{})\n{}", self.rows, self.cols, self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{quad, rat};

    fn rational_matrix(text: &str) -> ExactMatrix<Rational> {
        ExactMatrix::from_text(text).unwrap()
    }

    #[test]
    fn identity_multiplication() {
        let a = rational_matrix("3 2\n1 2\n3/4 -5\n0 1/3\n");
        let id = ExactMatrix::<Rational>::identity(3);
        assert_eq!(id.mul(&a).unwrap(), a);
    }

    #[test]
    fn dimension_mismatch_detected() {
        let a = rational_matrix("2 3\n1 0 0\n0 1 0\n");
        let b = rational_matrix("2 2\n1 0\n0 1\n");
        assert!(matches!(
            a.mul(&b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(ExactMatrix::<Rational>::identity(5).rank(), 5);
        let a = rational_matrix("3 3\n1 2 3\n2 4 6\n1 0 1\n");
        assert_eq!(a.rank(), 2);
        let z = rational_matrix("2 2\n0 0\n0 0\n");
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn rank_over_quadratic_field() {
        // Rows (1, √2) and (√2, 2) are proportional.
        let m = ExactMatrix::from_rows(vec![
            vec![quad("1"), quad("0+1s")],
            vec![quad("0+1s"), quad("2")],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn stochastic_witnesses() {
        let zero = rational_matrix("2 1\n0\n0\n");
        assert_eq!(
            zero.stochastic_witness(),
            Some(StochasticWitness::ColumnSumDefect { col: 0, defect: rat("-1") })
        );
        let neg = rational_matrix("2 1\n3/2\n-1/2\n");
        assert!(matches!(
            neg.stochastic_witness(),
            Some(StochasticWitness::NegativeEntry { row: 1, col: 0, .. })
        ));
        let ok = rational_matrix("2 2\n1/3 1\n2/3 0\n");
        assert!(ok.is_stochastic());
    }

    #[test]
    fn normalize_columns_scales_and_reconstructs() {
        let a = rational_matrix("3 1\n1\n1\n2\n");
        let norm = a.normalize_columns().unwrap();
        assert_eq!(norm.stochastic.column(0), vec![rat("1/4"), rat("1/4"), rat("1/2")]);
        assert_eq!(norm.scales, vec![rat("4")]);
        assert_eq!(norm.reconstruct(), a);
    }

    #[test]
    fn normalize_columns_drops_zero_columns() {
        let a = rational_matrix("3 3\n1 0 1\n0 0 1\n1 0 0\n");
        let norm = a.normalize_columns().unwrap();
        assert_eq!(norm.stochastic.cols(), 2);
        assert_eq!(norm.kept_columns, vec![0, 2]);
        assert_eq!(norm.reconstruct(), a);
    }

    #[test]
    fn normalize_columns_is_identity_on_stochastic_input() {
        let a = rational_matrix("2 2\n1/3 1\n2/3 0\n");
        let norm = a.normalize_columns().unwrap();
        assert_eq!(norm.stochastic, a);
        assert_eq!(norm.scales, vec![rat("1"), rat("1")]);
    }

    #[test]
    fn normalize_columns_rejects_negative_input() {
        let a = rational_matrix("2 1\n1\n-1\n");
        assert_eq!(
            a.normalize_columns(),
            Err(LinalgError::NegativeEntry { row: 1, col: 0 })
        );
    }

    #[test]
    fn text_format_round_trip() {
        let a = ExactMatrix::from_rows(vec![
            vec![quad("2-1s"), quad("0")],
            vec![quad("3/4+1/8s"), quad("-1/11+1/11s")],
        ])
        .unwrap();
        let text = a.to_text();
        assert_eq!(ExactMatrix::<Quad>::from_text(&text).unwrap(), a);
        assert!(ExactMatrix::<Rational>::from_text("1 2\n3\n").is_err());
        assert!(ExactMatrix::<Rational>::from_text("junk\n").is_err());
        assert!(ExactMatrix::<Rational>::from_text("2 1\n3\n").is_err());
    }
}
