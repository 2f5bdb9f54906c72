//! Strength-2 orthogonal arrays over q symbols, built from linear
//! functionals evaluated at canonical projective points, plus the
//! symbol-to-row substitution that turns them into ternary matrices.
//!
//! The arrays here always have q^(m+1) rows and (q^(m+1)-1)/(q-1) columns;
//! any two distinct rows agree in exactly (q^m-1)/(q-1) column positions.
//! Agreement means positional agreement: the same symbol in the same column.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::matrix::TernaryMatrix;
use crate::SizeCap;

/// An N x k array over symbols 0..q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalArray {
    symbols: usize,
    m: u32,
    n_rows: usize,
    n_cols: usize,
    grid: Vec<u16>,
}

/// Canonical representatives of the points of PG(m, q): every nonzero vector
/// of GF(q)^(m+1) scaled so its first nonzero coordinate is 1, listed in
/// lexicographic order of the full vector enumeration.
pub fn projective_points(f: &FiniteField, m: u32) -> Result<Vec<Vec<FieldElement>>> {
    if m < 1 {
        return Err(Error::ConditionViolated("projective dimension m must be >= 1".into()));
    }
    let q = f.order() as usize;
    let dim = m as usize + 1;
    let expected = (q.pow(dim as u32) - 1) / (q - 1);
    let mut points = Vec::with_capacity(expected);
    let mut vector = vec![0usize; dim];
    loop {
        if vector.iter().copied().find(|&c| c != 0) == Some(1) {
            let point: Result<Vec<FieldElement>> =
                vector.iter().map(|&c| f.element(c as u64)).collect();
            points.push(point?);
        }
        // lexicographic increment, leftmost coordinate most significant
        let mut i = dim;
        loop {
            if i == 0 {
                debug_assert_eq!(points.len(), expected);
                return Ok(points);
            }
            i -= 1;
            vector[i] += 1;
            if vector[i] < q {
                break;
            }
            vector[i] = 0;
        }
    }
}

/// Build the array: rows are indexed by all vectors x of GF(q)^(m+1) in
/// lexicographic order, columns by the canonical projective points c, and
/// the entry at (x, c) is the index of the dot product <x, c>.
pub fn oa_build(f: &FiniteField, m: u32, cap: SizeCap) -> Result<OrthogonalArray> {
    let points = projective_points(f, m)?;
    let q = f.order() as usize;
    let dim = m as usize + 1;
    let n_rows = q.pow(dim as u32);
    let n_cols = points.len();
    cap.check(n_rows as u64 * n_cols as u64)?;

    // Column representatives as plain index vectors for the inner loop.
    let cols: Vec<Vec<usize>> = points
        .iter()
        .map(|pt| pt.iter().map(|e| e.index() as usize).collect())
        .collect();

    let mut grid = Vec::with_capacity(n_rows * n_cols);
    let mut x = vec![0usize; dim];
    for _ in 0..n_rows {
        for c in &cols {
            let mut acc = 0usize;
            for (&xi, &ci) in x.iter().zip(c) {
                acc = f.add_idx(acc, f.mul_idx(xi, ci));
            }
            grid.push(acc as u16);
        }
        let mut i = dim;
        while i > 0 {
            i -= 1;
            x[i] += 1;
            if x[i] < q {
                break;
            }
            x[i] = 0;
        }
    }
    OrthogonalArray::from_parts(q, m, n_rows, n_cols, grid)
}

/// Everything `verify` measures, with the first offender for each failing
/// check. `pass` is the conjunction of the three component checks.
#[derive(Clone, Debug, Serialize)]
pub struct OaReport {
    pub symbols: usize,
    pub m: u32,
    pub n_rows: usize,
    pub n_cols: usize,
    /// (q^m - 1)/(q - 1)
    pub expected_agreement: usize,
    pub agreement_histogram: BTreeMap<usize, usize>,
    pub agreement_pass: bool,
    /// (row_a, row_b, observed agreement count)
    pub agreement_offender: Option<(usize, usize, usize)>,
    /// q^(m-1); absent in the degenerate single-column case m = 0.
    pub strength2_index: Option<u64>,
    pub strength2_pass: bool,
    pub strength2_offender: Option<Strength2Defect>,
    /// Expected per-column count of every symbol: q^m.
    pub balance_expected: usize,
    pub balance_pass: bool,
    /// (column, symbol, observed count)
    pub balance_offender: Option<(usize, usize, usize)>,
    pub pass: bool,
}

/// An ordered column pair whose symbol-pair count misses the strength-2 index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Strength2Defect {
    pub col_a: usize,
    pub col_b: usize,
    pub sym_a: usize,
    pub sym_b: usize,
    pub count: usize,
    pub expected: usize,
}

impl OrthogonalArray {
    /// Wrap a raw grid. The shape must be q^(m+1) rows by
    /// (q^(m+1)-1)/(q-1) columns for some m >= 0; symbols must be < q.
    /// Agreement and strength checks are `verify`'s job, so imperfect
    /// arrays can be ingested and then reported on.
    pub fn from_grid(symbols: usize, rows: Vec<Vec<u16>>) -> Result<Self> {
        if symbols < 2 {
            return Err(Error::ConditionViolated("need at least 2 symbols".into()));
        }
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut grid = Vec::with_capacity(n_rows * n_cols);
        for row in &rows {
            if row.len() != n_cols {
                return Err(Error::LengthMismatch(row.len(), n_cols));
            }
            for &s in row {
                if s as usize >= symbols {
                    return Err(Error::ConditionViolated(format!(
                        "symbol {s} out of range for q = {symbols}"
                    )));
                }
                grid.push(s);
            }
        }
        let m = infer_m(symbols, n_rows, n_cols)?;
        Self::from_parts(symbols, m, n_rows, n_cols, grid)
    }

    fn from_parts(
        symbols: usize,
        m: u32,
        n_rows: usize,
        n_cols: usize,
        grid: Vec<u16>,
    ) -> Result<Self> {
        debug_assert_eq!(grid.len(), n_rows * n_cols);
        Ok(OrthogonalArray {
            symbols,
            m,
            n_rows,
            n_cols,
            grid,
        })
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, r: usize, c: usize) -> u16 {
        self.grid[r * self.n_cols + c]
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.grid[r * self.n_cols..(r + 1) * self.n_cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u16]> {
        self.grid.chunks(self.n_cols.max(1))
    }

    /// Exhaustive verification: pairwise agreement histogram, strength-2
    /// tuple counts for every ordered column pair, and per-column symbol
    /// balance.
    pub fn verify(&self) -> OaReport {
        let q = self.symbols;
        let expected_agreement = (q.pow(self.m) - 1) / (q - 1);

        let mut histogram = BTreeMap::new();
        let mut agreement_offender = None;
        for a in 0..self.n_rows {
            for b in (a + 1)..self.n_rows {
                let count = self
                    .row(a)
                    .iter()
                    .zip(self.row(b))
                    .filter(|(x, y)| x == y)
                    .count();
                *histogram.entry(count).or_insert(0usize) += 1;
                if count != expected_agreement && agreement_offender.is_none() {
                    agreement_offender = Some((a, b, count));
                }
            }
        }
        let agreement_pass = agreement_offender.is_none();

        let strength2_index = if self.m >= 1 {
            Some(q.pow(self.m - 1) as u64)
        } else {
            None
        };
        let mut strength2_offender = None;
        if let Some(expected) = strength2_index {
            let expected = expected as usize;
            'cols: for ca in 0..self.n_cols {
                for cb in 0..self.n_cols {
                    if ca == cb {
                        continue;
                    }
                    let mut counts = vec![0usize; q * q];
                    for r in 0..self.n_rows {
                        let (sa, sb) = (self.get(r, ca) as usize, self.get(r, cb) as usize);
                        counts[sa * q + sb] += 1;
                    }
                    for sa in 0..q {
                        for sb in 0..q {
                            if counts[sa * q + sb] != expected {
                                strength2_offender = Some(Strength2Defect {
                                    col_a: ca,
                                    col_b: cb,
                                    sym_a: sa,
                                    sym_b: sb,
                                    count: counts[sa * q + sb],
                                    expected,
                                });
                                break 'cols;
                            }
                        }
                    }
                }
            }
        }
        let strength2_pass = strength2_offender.is_none();

        let balance_expected = q.pow(self.m);
        let mut balance_offender = None;
        'bal: for c in 0..self.n_cols {
            let mut counts = vec![0usize; q];
            for r in 0..self.n_rows {
                counts[self.get(r, c) as usize] += 1;
            }
            for (s, &count) in counts.iter().enumerate() {
                if count != balance_expected {
                    balance_offender = Some((c, s, count));
                    break 'bal;
                }
            }
        }
        let balance_pass = balance_offender.is_none();

        OaReport {
            symbols: q,
            m: self.m,
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            expected_agreement,
            agreement_histogram: histogram,
            agreement_pass,
            agreement_offender,
            strength2_index,
            strength2_pass,
            strength2_offender,
            balance_expected,
            balance_pass,
            balance_offender,
            pass: agreement_pass && strength2_pass && balance_pass,
        }
    }

    /// Replace each symbol s by row s of `rows`, concatenating the blocks.
    /// `rows` must be square of order q.
    pub fn substitute(&self, rows: &TernaryMatrix) -> Result<TernaryMatrix> {
        if rows.rows() != self.symbols || rows.cols() != self.symbols {
            return Err(Error::ShapeMismatch(format!(
                "substitution needs a {q}x{q} matrix, got {r}x{c}",
                q = self.symbols,
                r = rows.rows(),
                c = rows.cols()
            )));
        }
        let q = self.symbols;
        let mut out = Vec::with_capacity(self.n_rows);
        for r in 0..self.n_rows {
            let mut word = Vec::with_capacity(self.n_cols * q);
            for &s in self.row(r) {
                word.extend_from_slice(rows.row(s as usize));
            }
            out.push(word);
        }
        TernaryMatrix::from_rows(out)
    }
}

fn infer_m(q: usize, n_rows: usize, n_cols: usize) -> Result<u32> {
    let mut power = q;
    let mut m = 0u32;
    // n_rows = q^(m+1)
    while power < n_rows {
        power = power.checked_mul(q).ok_or_else(|| {
            Error::ShapeMismatch(format!("row count {n_rows} is not a power of {q}"))
        })?;
        m += 1;
    }
    if power != n_rows {
        return Err(Error::ShapeMismatch(format!(
            "row count {n_rows} is not a power of q = {q}"
        )));
    }
    let expected_cols = (power - 1) / (q - 1);
    if n_cols != expected_cols {
        return Err(Error::ShapeMismatch(format!(
            "column count {n_cols} does not match (q^(m+1)-1)/(q-1) = {expected_cols}"
        )));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FiniteField {
        FiniteField::new(q).unwrap()
    }

    #[test]
    fn projective_point_counts_and_order() {
        let f3 = field(3);
        let pts = projective_points(&f3, 1).unwrap();
        let coords: Vec<Vec<u64>> = pts
            .iter()
            .map(|p| p.iter().map(|e| e.index()).collect())
            .collect();
        assert_eq!(coords, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);

        assert_eq!(projective_points(&f3, 2).unwrap().len(), 13);
        assert_eq!(projective_points(&field(5), 1).unwrap().len(), 6);
    }

    #[test]
    fn rejects_m_zero() {
        assert!(matches!(
            projective_points(&field(3), 0).unwrap_err(),
            Error::ConditionViolated(_)
        ));
    }

    #[test]
    fn oa_3_1_shape_and_agreement() {
        let oa = oa_build(&field(3), 1, SizeCap::default()).unwrap();
        assert_eq!((oa.n_rows(), oa.n_cols(), oa.symbols()), (9, 4, 3));
        let report = oa.verify();
        assert!(report.pass);
        assert_eq!(report.expected_agreement, 1);
        assert_eq!(report.agreement_histogram, BTreeMap::from([(1, 36)]));
        assert_eq!(report.strength2_index, Some(1));
        assert_eq!(report.balance_expected, 3);
    }

    #[test]
    fn oa_3_2_agreement_four() {
        let oa = oa_build(&field(3), 2, SizeCap::default()).unwrap();
        assert_eq!((oa.n_rows(), oa.n_cols()), (27, 13));
        let report = oa.verify();
        assert!(report.pass);
        assert_eq!(report.expected_agreement, 4);
        assert_eq!(report.strength2_index, Some(3));
    }

    #[test]
    fn oa_5_1_agreement_one() {
        let oa = oa_build(&field(5), 1, SizeCap::default()).unwrap();
        assert_eq!((oa.n_rows(), oa.n_cols()), (25, 6));
        let report = oa.verify();
        assert!(report.pass);
        assert_eq!(report.expected_agreement, 1);
    }

    #[test]
    fn oa_respects_cap() {
        assert!(matches!(
            oa_build(&field(3), 2, SizeCap(100)).unwrap_err(),
            Error::SizeCapExceeded { .. }
        ));
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let oa = oa_build(&field(3), 1, SizeCap::default()).unwrap();
        let mut rows: Vec<Vec<u16>> = oa.row_iter().map(|r| r.to_vec()).collect();
        rows[4][2] = (rows[4][2] + 1) % 3;
        let bad = OrthogonalArray::from_grid(3, rows).unwrap();
        let report = bad.verify();
        assert!(!report.pass);
        assert!(!report.agreement_pass);
        let (a, b, _) = report.agreement_offender.unwrap();
        assert!(a == 4 || b == 4);
    }

    #[test]
    fn from_grid_validates_shape_and_symbols() {
        assert!(matches!(
            OrthogonalArray::from_grid(3, vec![vec![0, 1], vec![1, 0]]).unwrap_err(),
            Error::ShapeMismatch(_)
        ));
        assert!(matches!(
            OrthogonalArray::from_grid(3, vec![vec![0, 3, 0, 0]; 9]).unwrap_err(),
            Error::ConditionViolated(_)
        ));
    }

    #[test]
    fn degenerate_single_column_substitution() {
        let oa = OrthogonalArray::from_grid(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(oa.m(), 0);
        let q = TernaryMatrix::jacobsthal(3).unwrap();
        assert_eq!(oa.substitute(&q).unwrap(), q);
        // m = 0: any two rows agree nowhere, every symbol appears once.
        let report = oa.verify();
        assert!(report.pass);
        assert_eq!(report.expected_agreement, 0);
        assert_eq!(report.strength2_index, None);
        assert_eq!(report.balance_expected, 1);
    }

    #[test]
    fn substitution_shape_check() {
        let oa = oa_build(&field(3), 1, SizeCap::default()).unwrap();
        assert!(matches!(
            oa.substitute(&TernaryMatrix::identity(4)).unwrap_err(),
            Error::ShapeMismatch(_)
        ));
    }

    #[test]
    fn substitution_of_jacobsthal_rows() {
        let oa = oa_build(&field(3), 1, SizeCap::default()).unwrap();
        let d = oa.substitute(&TernaryMatrix::jacobsthal(3).unwrap()).unwrap();
        assert_eq!((d.rows(), d.cols()), (9, 12));
        for i in 0..9 {
            assert_eq!(d.row_weight(i), 8);
            for j in (i + 1)..9 {
                let dist = d
                    .row(i)
                    .iter()
                    .zip(d.row(j))
                    .filter(|(x, y)| x != y)
                    .count();
                assert_eq!(dist, 9);
                let dot: i64 = d
                    .row(i)
                    .iter()
                    .zip(d.row(j))
                    .map(|(&x, &y)| x as i64 * y as i64)
                    .sum();
                assert_eq!(dot, -1);
            }
        }
    }

    #[test]
    fn substitution_gram_and_distance_laws() {
        for (q, m) in [(3u64, 1u32), (3, 2), (5, 1), (7, 1), (9, 1)] {
            let f = field(q);
            let oa = oa_build(&f, m, SizeCap::default()).unwrap();
            let t = oa.substitute(&TernaryMatrix::jacobsthal(q).unwrap()).unwrap();
            let expected_dist = (q.pow(m) * (q + 3) / 2) as usize;
            for a in 0..t.rows() {
                for b in (a + 1)..t.rows() {
                    let mut dot = 0i64;
                    let mut dist = 0usize;
                    for (&x, &y) in t.row(a).iter().zip(t.row(b)) {
                        dot += x as i64 * y as i64;
                        dist += usize::from(x != y);
                    }
                    assert_eq!(dot, -1, "inner product law at q={q}, m={m}");
                    assert_eq!(dist, expected_dist, "distance law at q={q}, m={m}");
                }
            }
        }
    }
}
