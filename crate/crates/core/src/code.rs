//! Ternary codes: exhaustive weight and distance spectra, plus the
//! row-doubling that pairs a matrix with its negation.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::TernaryMatrix;

/// A set of distinct words over {-1, 0, +1}, all of the same length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryCode {
    n: usize,
    m: usize,
    words: Vec<i8>,
}

/// Exact spectra of a code, computed by exhaustive pair scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeStats {
    /// Word length.
    pub n: usize,
    /// Number of words.
    pub m: usize,
    pub weight_set: BTreeSet<usize>,
    pub distance_set: BTreeSet<usize>,
    /// Absent when the code has a single word.
    pub min_distance: Option<usize>,
}

impl CodeStats {
    pub fn is_constant_weight(&self) -> bool {
        self.weight_set.len() == 1
    }

    pub fn is_equidistant(&self) -> bool {
        self.distance_set.len() == 1
    }
}

/// Number of coordinates in which two equal-length words differ.
pub fn hamming(u: &[i8], v: &[i8]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).filter(|(x, y)| x != y).count())
}

pub fn weight(u: &[i8]) -> usize {
    u.iter().filter(|&&x| x != 0).count()
}

impl TernaryCode {
    /// Build from explicit words. Words must be nonempty, of equal length,
    /// with valid entries and no duplicates.
    pub fn from_words(words: Vec<Vec<i8>>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::ConditionViolated("a code needs at least one word".into()));
        }
        let n = words[0].len();
        let mut seen: HashMap<&[i8], usize> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            if w.len() != n {
                return Err(Error::LengthMismatch(w.len(), n));
            }
            for &x in w {
                if !(-1..=1).contains(&x) {
                    return Err(Error::InvalidEntry(x as i64));
                }
            }
            if let Some(&first) = seen.get(w.as_slice()) {
                return Err(Error::DuplicateRow(first, i));
            }
            seen.insert(w.as_slice(), i);
        }
        let m = words.len();
        let mut flat = Vec::with_capacity(n * m);
        for w in &words {
            flat.extend_from_slice(w);
        }
        Ok(TernaryCode { n, m, words: flat })
    }

    /// The rows of a matrix as a code.
    pub fn from_matrix(mat: &TernaryMatrix) -> Result<Self> {
        Self::from_words(mat.row_iter().map(|r| r.to_vec()).collect())
    }

    /// The words as rows of a matrix.
    pub fn to_matrix(&self) -> TernaryMatrix {
        TernaryMatrix::from_rows(self.words().map(|w| w.to_vec()).collect())
            .expect("code words are valid matrix rows")
    }

    /// Word length n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Word count M.
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn word(&self, i: usize) -> &[i8] {
        &self.words[i * self.n..(i + 1) * self.n]
    }

    pub fn words(&self) -> impl Iterator<Item = &[i8]> {
        self.words.chunks(self.n)
    }

    /// Exact spectra by exhaustive O(M^2 n) scan.
    pub fn analyze(&self) -> CodeStats {
        let mut weight_set = BTreeSet::new();
        let mut distance_set = BTreeSet::new();
        for i in 0..self.m {
            weight_set.insert(weight(self.word(i)));
            for j in (i + 1)..self.m {
                let d = hamming(self.word(i), self.word(j)).expect("equal lengths");
                distance_set.insert(d);
            }
        }
        CodeStats {
            n: self.n,
            m: self.m,
            min_distance: distance_set.iter().next().copied(),
            weight_set,
            distance_set,
        }
    }
}

/// The rows of W followed by the rows of -W as one code.
///
/// A zero row is rejected: it would coincide with its own negation.
pub fn double(w: &TernaryMatrix) -> Result<TernaryCode> {
    for i in 0..w.rows() {
        if w.row(i).iter().all(|&x| x == 0) {
            return Err(Error::ZeroRow(i));
        }
    }
    let mut words: Vec<Vec<i8>> = w.row_iter().map(|r| r.to_vec()).collect();
    words.extend(w.negated().row_iter().map(|r| r.to_vec()));
    TernaryCode::from_words(words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn set(values: &[usize]) -> BTreeSet<usize> {
        values.iter().copied().collect()
    }

    #[test]
    fn hamming_basics() {
        let u = [0i8, 1, -1, 1];
        let v = [1i8, 1, 1, 0];
        assert_eq!(hamming(&u, &v).unwrap(), 3);
        assert_eq!(hamming(&u, &u).unwrap(), 0);
        let neg: Vec<i8> = u.iter().map(|&x| -x).collect();
        assert_eq!(hamming(&u, &neg).unwrap(), weight(&u));
        assert_eq!(hamming(&u, &v[..3]).unwrap_err(), Error::LengthMismatch(4, 3));
    }

    #[test]
    fn single_word_has_no_distance() {
        let c = TernaryCode::from_words(vec![vec![1, 0, -1]]).unwrap();
        let stats = c.analyze();
        assert_eq!(stats.min_distance, None);
        assert!(stats.distance_set.is_empty());
        assert_eq!(stats.weight_set, set(&[2]));
    }

    #[test]
    fn doubled_conference_5() {
        let code = double(&TernaryMatrix::conference(5).unwrap()).unwrap();
        let stats = code.analyze();
        assert_eq!((stats.n, stats.m), (6, 12));
        assert_eq!(stats.weight_set, set(&[5]));
        assert_eq!(stats.distance_set, set(&[4, 5]));
        assert_eq!(stats.min_distance, Some(4));
    }

    #[test]
    fn doubled_conference_3() {
        let code = double(&TernaryMatrix::conference(3).unwrap()).unwrap();
        let stats = code.analyze();
        assert_eq!((stats.n, stats.m), (4, 8));
        assert_eq!(stats.weight_set, set(&[3]));
        assert_eq!(stats.distance_set, set(&[3]));
    }

    #[test]
    fn doubled_jacobsthal_3() {
        // Rows of Q are not pairwise orthogonal (inner products are -1), so
        // the cross distances drop to (q+1)/2 = 2 and the doubled code has
        // minimum distance 2, not 3.
        let code = double(&TernaryMatrix::jacobsthal(3).unwrap()).unwrap();
        let stats = code.analyze();
        assert_eq!((stats.n, stats.m), (3, 6));
        assert_eq!(stats.weight_set, set(&[2]));
        assert_eq!(stats.distance_set, set(&[2, 3]));
        assert_eq!(stats.min_distance, Some(2));
    }

    #[test]
    fn double_rejects_zero_row() {
        let m = TernaryMatrix::from_rows(vec![vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(double(&m).unwrap_err(), Error::ZeroRow(1));
    }

    #[test]
    fn matrix_round_trip() {
        let m = TernaryMatrix::conference(5).unwrap();
        let code = TernaryCode::from_matrix(&m).unwrap();
        assert_eq!(code.to_matrix(), m);
        assert_eq!(code.size(), 6);
    }

    #[test]
    fn duplicate_rows_rejected() {
        let m = TernaryMatrix::from_rows(vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(
            TernaryCode::from_matrix(&m).unwrap_err(),
            Error::DuplicateRow(0, 1)
        );
    }

    #[test]
    fn doubling_min_distance_decomposition() {
        // min distance of the doubled code is attained among within-block
        // and cross-block distances; i-vs-negated-i cross distance is the
        // row weight.
        let w = TernaryMatrix::conference(7).unwrap();
        let code = double(&w).unwrap();
        let stats = code.analyze();
        let n_rows = w.rows();
        let mut candidates = BTreeSet::new();
        for i in 0..n_rows {
            candidates.insert(weight(w.row(i)));
            for j in (i + 1)..n_rows {
                candidates.insert(hamming(w.row(i), w.row(j)).unwrap());
                let neg: Vec<i8> = w.row(j).iter().map(|&x| -x).collect();
                candidates.insert(hamming(w.row(i), &neg).unwrap());
            }
        }
        assert_eq!(stats.min_distance, candidates.iter().next().copied());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_code(max_words: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<i8>>> {
            (1..=max_len).prop_flat_map(move |n| {
                proptest::collection::btree_set(
                    proptest::collection::vec(-1i8..=1, n),
                    1..=max_words,
                )
                .prop_map(|s| s.into_iter().collect::<Vec<_>>())
            })
        }

        proptest! {
            #[test]
            fn analyze_is_permutation_invariant(words in arb_code(12, 8), seed in 0u64..1000) {
                let base = TernaryCode::from_words(words.clone()).unwrap();
                let mut shuffled = words;
                // deterministic Fisher-Yates from the seed
                let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
                for i in (1..shuffled.len()).rev() {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    shuffled.swap(i, (state % (i as u64 + 1)) as usize);
                }
                let perm = TernaryCode::from_words(shuffled).unwrap();
                prop_assert_eq!(base.analyze(), perm.analyze());
            }

            #[test]
            fn hamming_is_symmetric_and_bounded(u in proptest::collection::vec(-1i8..=1, 1..20),
                                                v in proptest::collection::vec(-1i8..=1, 1..20)) {
                if u.len() == v.len() {
                    let d = hamming(&u, &v).unwrap();
                    prop_assert_eq!(d, hamming(&v, &u).unwrap());
                    prop_assert!(d <= u.len());
                    prop_assert_eq!(d == 0, u == v);
                } else {
                    prop_assert!(hamming(&u, &v).is_err());
                }
            }
        }
    }
}
