//! Rectangular matrices with entries in {-1, 0, +1}: Gram verification,
//! Jacobsthal and conference constructions, normal-form decomposition, and
//! block assembly.

use crate::error::{Error, Result};
use crate::field::{factor_prime_power, FiniteField};

/// An immutable (0, ±1)-matrix stored row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

/// First Gram entry that differs from `weight * I`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GramDefect {
    pub row_a: usize,
    pub row_b: usize,
    pub value: i64,
}

/// Row-normalized block decomposition of a weighing matrix.
///
/// `whole` is the input after the row permutation and negations; its first
/// column is 0 on the residual rows and +1 on the derived rows. `residual`
/// and `derived` are the remaining columns of those two row groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormParts {
    pub whole: TernaryMatrix,
    pub residual: TernaryMatrix,
    pub derived: TernaryMatrix,
}

/// Parameters of a symmetric 2-design read off a balanced weighing matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DesignParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
}

impl TernaryMatrix {
    /// Build from explicit rows; every entry must be -1, 0, or 1.
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in &rows {
            if row.len() != n_cols {
                return Err(Error::LengthMismatch(row.len(), n_cols));
            }
            for &x in row {
                if !(-1..=1).contains(&x) {
                    return Err(Error::InvalidEntry(x as i64));
                }
                entries.push(x);
            }
        }
        Ok(TernaryMatrix {
            rows: n_rows,
            cols: n_cols,
            entries,
        })
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i8) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                debug_assert!((-1..=1).contains(&x));
                entries.push(x);
            }
        }
        TernaryMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Single constant column.
    pub fn const_column(len: usize, value: i8) -> Result<Self> {
        if !(-1..=1).contains(&value) {
            return Err(Error::InvalidEntry(value as i64));
        }
        Ok(TernaryMatrix {
            rows: len,
            cols: 1,
            entries: vec![value; len],
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i8::from(i == j))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.cols.max(1))
    }

    /// Number of nonzero entries in row `i`.
    pub fn row_weight(&self, i: usize) -> usize {
        self.row(i).iter().filter(|&&x| x != 0).count()
    }

    fn gram_entry(&self, a: usize, b: usize) -> i64 {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(&x, &y)| x as i64 * y as i64)
            .sum()
    }

    /// First deviation of W W^t from `weight * I`, or None if W is a weighing
    /// matrix of that weight.
    pub fn weighing_defect(&self, weight: i64) -> Result<Option<GramDefect>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for a in 0..self.rows {
            for b in a..self.rows {
                let value = self.gram_entry(a, b);
                let expect = if a == b { weight } else { 0 };
                if value != expect {
                    return Ok(Some(GramDefect {
                        row_a: a,
                        row_b: b,
                        value,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Does W W^t equal `weight * I` exactly?
    pub fn is_weighing(&self, weight: i64) -> Result<bool> {
        Ok(self.weighing_defect(weight)?.is_none())
    }

    /// Jacobsthal matrix of odd prime-power order q: entry (i, j) is
    /// chi(a_j - a_i) under the canonical element order. Zero diagonal,
    /// ±1 off diagonal, all row and column sums zero, Q Q^t = q I - J.
    pub fn jacobsthal(q: u64) -> Result<Self> {
        let pp = factor_prime_power(q).map_err(|_| Error::NotOddPrimePower(q))?;
        if !pp.is_odd() {
            return Err(Error::NotOddPrimePower(q));
        }
        let f = FiniteField::new(q)?;
        let n = q as usize;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f.chi_idx(f.sub_idx(j, i))?);
            }
        }
        Ok(TernaryMatrix {
            rows: n,
            cols: n,
            entries,
        })
    }

    /// Conference matrix W(q+1, q): a Jacobsthal core bordered by a zero
    /// corner and all-ones first row and column. Verified against its Gram
    /// identity before being returned.
    pub fn conference(q: u64) -> Result<Self> {
        let core = Self::jacobsthal(q)?;
        let n = q as usize + 1;
        let m = TernaryMatrix::from_fn(n, n, |i, j| match (i, j) {
            (0, 0) => 0,
            (0, _) | (_, 0) => 1,
            _ => core.get(i - 1, j - 1),
        });
        if let Some(d) = m.weighing_defect(q as i64)? {
            return Err(Error::PropertyCheck(format!(
                "conference({q}) failed its Gram check: gram[{}][{}] = {}",
                d.row_a, d.row_b, d.value
            )));
        }
        Ok(m)
    }

    /// Row-normalize a weighing matrix: rows with zero in the first column
    /// come first (in order), the rest are negated so their first entry is
    /// +1. Columns are never permuted.
    pub fn normal_form(&self, weight: i64) -> Result<NormalFormParts> {
        if let Some(d) = self.weighing_defect(weight)? {
            return Err(Error::NotWeighing {
                weight,
                row_a: d.row_a,
                row_b: d.row_b,
                value: d.value,
            });
        }
        if (0..self.rows).all(|i| self.get(i, 0) == 0) {
            return Err(Error::NoPivotColumn);
        }
        let mut ordered: Vec<Vec<i8>> = Vec::with_capacity(self.rows);
        let mut residual: Vec<Vec<i8>> = Vec::new();
        let mut derived: Vec<Vec<i8>> = Vec::new();
        for i in 0..self.rows {
            if self.get(i, 0) == 0 {
                ordered.push(self.row(i).to_vec());
                residual.push(self.row(i)[1..].to_vec());
            }
        }
        for i in 0..self.rows {
            let pivot = self.get(i, 0);
            if pivot != 0 {
                let row: Vec<i8> = self.row(i).iter().map(|&x| x * pivot).collect();
                derived.push(row[1..].to_vec());
                ordered.push(row);
            }
        }
        Ok(NormalFormParts {
            whole: TernaryMatrix::from_rows(ordered)?,
            residual: TernaryMatrix::from_rows(residual)?,
            derived: TernaryMatrix::from_rows(derived)?,
        })
    }

    /// Kronecker product with a length-q all-ones row vector: each entry is
    /// repeated q times in place. Row weights and pairwise distances scale
    /// exactly by q.
    pub fn kron_ones(&self, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::ConditionViolated(
                "kron_ones needs a repeat count of at least 1".into(),
            ));
        }
        let cols = self
            .cols
            .checked_mul(q)
            .and_then(|c| c.checked_mul(self.rows).map(|_| c))
            .ok_or_else(|| Error::ShapeMismatch("kron_ones size overflow".into()))?;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            for &x in self.row(i) {
                entries.extend(std::iter::repeat(x).take(q));
            }
        }
        Ok(TernaryMatrix {
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// Entry-wise negation.
    pub fn negated(&self) -> Self {
        TernaryMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| -x).collect(),
        }
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vstack column mismatch: {} vs {}",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(TernaryMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hstack row mismatch: {} vs {}",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(TernaryMatrix {
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// Recognize a balanced weighing matrix: W W^t = k I and the absolute
    /// values form the incidence matrix of a symmetric 2-(v, k, lambda)
    /// design with lambda = k(k-1)/(v-1). Returns the design parameters, or
    /// None when any condition fails.
    pub fn is_balanced(&self) -> Result<Option<DesignParams>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let v = self.rows;
        if v < 2 {
            return Ok(None);
        }
        let k = self.row_weight(0);
        if k == 0 || (1..v).any(|i| self.row_weight(i) != k) {
            return Ok(None);
        }
        if (k * (k - 1)) % (v - 1) != 0 {
            return Ok(None);
        }
        let lambda = k * (k - 1) / (v - 1);
        if self.weighing_defect(k as i64)?.is_some() {
            return Ok(None);
        }
        for a in 0..v {
            for b in (a + 1)..v {
                let overlap = self
                    .row(a)
                    .iter()
                    .zip(self.row(b))
                    .filter(|(&x, &y)| x != 0 && y != 0)
                    .count();
                if overlap != lambda {
                    return Ok(None);
                }
            }
        }
        Ok(Some(DesignParams {
            v: v as u64,
            k: k as u64,
            lambda: lambda as u64,
        }))
    }
}
