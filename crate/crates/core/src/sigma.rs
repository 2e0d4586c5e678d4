//! Signature matrices, sparsity patterns, transversals, offsets, permutations
//! and square-block forms.
//!
//! All indices are 0-based. A missing entry of a [`SignatureMatrix`] stands
//! for minus infinity and is never materialised as a number.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::SigmaError;

/// An `n x n` signature matrix stored sparsely by row.
///
/// `get(i, j) == None` means the entry is minus infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureMatrix {
    n: usize,
    rows: Vec<Vec<(usize, i64)>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

pub fn default_row_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("f{i}")).collect()
}

pub fn default_col_labels(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("x{j}")).collect()
}

fn check_labels(n: usize, labels: &[String], what: &'static str) -> Result<(), SigmaError> {
    if labels.len() != n {
        return Err(SigmaError::LabelCount {
            what,
            expected: n,
            found: labels.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(SigmaError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl SignatureMatrix {
    /// Builds a matrix from finite `(i, j, sigma)` triplets with default labels.
    pub fn new(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, SigmaError> {
        if n == 0 {
            return Err(SigmaError::EmptyMatrix);
        }
        let mut map = BTreeMap::new();
        for (i, j, s) in entries {
            if i >= n || j >= n {
                return Err(SigmaError::IndexOutOfRange { i, j, n });
            }
            if map.insert((i, j), s).is_some() {
                return Err(SigmaError::DuplicateEntry { i, j });
            }
        }
        let mut rows = vec![Vec::new(); n];
        for ((i, j), s) in map {
            rows[i].push((j, s));
        }
        Ok(Self {
            n,
            rows,
            row_labels: default_row_labels(n),
            col_labels: default_col_labels(n),
        })
    }

    /// Builds a matrix from a dense row-major table; `None` is minus infinity.
    pub fn from_dense(table: &[Vec<Option<i64>>]) -> Result<Self, SigmaError> {
        let n = table.len();
        let mut entries = Vec::new();
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(SigmaError::NotSquare { row: i, len: row.len(), n });
            }
            entries.extend(row.iter().enumerate().filter_map(|(j, s)| s.map(|s| (i, j, s))));
        }
        Self::new(n, entries)
    }

    pub fn with_labels(
        mut self,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self, SigmaError> {
        check_labels(self.n, &row_labels, "row")?;
        check_labels(self.n, &col_labels, "column")?;
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<i64> {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |&(c, _)| c).ok().map(|k| row[k].1)
    }

    /// Finite entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    /// All finite entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&(j, s)| (i, j, s)))
    }

    pub fn finite_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn max_entry(&self) -> Option<i64> {
        self.entries().map(|(_, _, s)| s).max()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn has_default_labels(&self) -> bool {
        self.row_labels == default_row_labels(self.n) && self.col_labels == default_col_labels(self.n)
    }

    /// The permuted matrix with `out(i, j) = self(rho(i), kappa(j))`; labels travel along.
    pub fn permuted(&self, rho: &Permutation, kappa: &Permutation) -> Result<Self, SigmaError> {
        check_perm_size(self.n, rho)?;
        check_perm_size(self.n, kappa)?;
        let rinv = rho.inverse();
        let kinv = kappa.inverse();
        let m = Self::new(
            self.n,
            self.entries().map(|(i, j, s)| (rinv.apply(i), kinv.apply(j), s)),
        )?;
        let rl = (0..self.n).map(|i| self.row_labels[rho.apply(i)].clone()).collect();
        let cl = (0..self.n).map(|j| self.col_labels[kappa.apply(j)].clone()).collect();
        m.with_labels(rl, cl)
    }

    /// The square sub-matrix on the given rows and columns, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self, SigmaError> {
        if rows.len() != cols.len() {
            return Err(SigmaError::NotSquare { row: 0, len: cols.len(), n: rows.len() });
        }
        let mut col_pos = vec![usize::MAX; self.n];
        for (k, &j) in cols.iter().enumerate() {
            col_pos[j] = k;
        }
        let mut entries = Vec::new();
        for (k, &i) in rows.iter().enumerate() {
            for &(j, s) in self.row(i) {
                if col_pos[j] != usize::MAX {
                    entries.push((k, col_pos[j], s));
                }
            }
        }
        let m = Self::new(rows.len(), entries)?;
        let rl = rows.iter().map(|&i| self.row_labels[i].clone()).collect();
        let cl = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        m.with_labels(rl, cl)
    }
}

impl fmt::Display for SignatureMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self
            .row_labels
            .iter()
            .chain(&self.col_labels)
            .map(String::len)
            .chain(self.entries().map(|(_, _, s)| s.to_string().len()))
            .max()
            .unwrap_or(1);
        write!(f, "{:w$}", "")?;
        for l in &self.col_labels {
            write!(f, " {l:>w$}")?;
        }
        writeln!(f)?;
        for i in 0..self.n {
            write!(f, "{:w$}", self.row_labels[i])?;
            for j in 0..self.n {
                match self.get(i, j) {
                    Some(s) => write!(f, " {s:>w$}")?,
                    None => write!(f, " {:>w$}", "-")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A set of positions of an `n x n` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsityPattern {
    n: usize,
    positions: BTreeSet<(usize, usize)>,
}

impl SparsityPattern {
    pub fn new(
        n: usize,
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, SigmaError> {
        let positions: BTreeSet<_> = positions.into_iter().collect();
        if let Some(&(i, j)) = positions.iter().find(|&&(i, j)| i >= n || j >= n) {
            return Err(SigmaError::IndexOutOfRange { i, j, n });
        }
        Ok(Self { n, positions })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, positions: BTreeSet::new() }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            positions: (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.positions.contains(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.positions.iter().copied()
    }

    pub fn positions(&self) -> &BTreeSet<(usize, usize)> {
        &self.positions
    }

    pub fn is_subset(&self, other: &SparsityPattern) -> bool {
        self.n == other.n && self.positions.is_subset(&other.positions)
    }

    /// Column lists per row, each sorted.
    pub fn row_lists(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.n];
        for &(i, j) in &self.positions {
            rows[i].push(j);
        }
        rows
    }

    pub fn difference(&self, other: &SparsityPattern) -> SparsityPattern {
        Self {
            n: self.n,
            positions: self.positions.difference(&other.positions).copied().collect(),
        }
    }
}

/// Positions where `sigma` is finite.
pub fn pattern_of(sigma: &SignatureMatrix) -> SparsityPattern {
    SparsityPattern {
        n: sigma.n(),
        positions: sigma.entries().map(|(i, j, _)| (i, j)).collect(),
    }
}

/// One position in each row and each column, stored as the column of each row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transversal {
    col_of_row: Vec<usize>,
}

impl Transversal {
    pub fn from_col_of_row(col_of_row: Vec<usize>) -> Result<Self, SigmaError> {
        let n = col_of_row.len();
        let mut seen = vec![false; n];
        for &j in &col_of_row {
            if j >= n || seen[j] {
                return Err(SigmaError::NotATransversal);
            }
            seen[j] = true;
        }
        Ok(Self { col_of_row })
    }

    pub fn from_positions(
        n: usize,
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, SigmaError> {
        let mut col_of_row = vec![usize::MAX; n];
        let mut count = 0;
        for (i, j) in positions {
            if i >= n || col_of_row[i] != usize::MAX {
                return Err(SigmaError::NotATransversal);
            }
            col_of_row[i] = j;
            count += 1;
        }
        if count != n {
            return Err(SigmaError::NotATransversal);
        }
        Self::from_col_of_row(col_of_row)
    }

    pub fn identity(n: usize) -> Self {
        Self { col_of_row: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.col_of_row.len()
    }

    pub fn col_of(&self, row: usize) -> usize {
        self.col_of_row[row]
    }

    pub fn col_of_row(&self) -> &[usize] {
        &self.col_of_row
    }

    pub fn row_of_col(&self) -> Vec<usize> {
        let mut r = vec![0; self.n()];
        for (i, &j) in self.col_of_row.iter().enumerate() {
            r[j] = i;
        }
        r
    }

    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.col_of_row.iter().copied().enumerate()
    }
}

pub fn is_transversal(pattern: &SparsityPattern, t: &Transversal) -> bool {
    pattern.n() == t.n() && t.positions().all(|(i, j)| pattern.contains(i, j))
}

/// True iff the finite entries admit a transversal.
pub fn is_structurally_well_posed(sigma: &SignatureMatrix) -> bool {
    crate::matching::maximum_matching(&pattern_of(sigma)).is_perfect()
}

pub fn transversal_value(sigma: &SignatureMatrix, t: &Transversal) -> Result<i64, SigmaError> {
    t.positions()
        .map(|(i, j)| sigma.get(i, j).ok_or(SigmaError::InfinitePosition { i, j }))
        .sum()
}

/// Equation offsets `c` and variable offsets `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OffsetPair {
    pub c: Vec<i64>,
    pub d: Vec<i64>,
}

impl OffsetPair {
    pub fn new(c: Vec<i64>, d: Vec<i64>) -> Self {
        Self { c, d }
    }

    /// Both vectors shifted by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            c: self.c.iter().map(|x| x + k).collect(),
            d: self.d.iter().map(|x| x + k).collect(),
        }
    }
}

/// A bijection of `0..n`; `apply(i)` is the original index placed at position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    forward: Vec<usize>,
}

impl Permutation {
    pub fn new(forward: Vec<usize>) -> Result<Self, SigmaError> {
        let n = forward.len();
        let mut seen = vec![false; n];
        for &k in &forward {
            if k >= n || seen[k] {
                return Err(SigmaError::NotAPermutation);
            }
            seen[k] = true;
        }
        Ok(Self { forward })
    }

    pub fn identity(n: usize) -> Self {
        Self { forward: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &k) in self.forward.iter().enumerate() {
            inv[k] = i;
        }
        Self { forward: inv }
    }
}

fn check_perm_size(n: usize, p: &Permutation) -> Result<(), SigmaError> {
    if p.len() != n {
        return Err(SigmaError::SizeMismatch { expected: n, found: p.len() });
    }
    Ok(())
}

/// The pattern `B` with `(i, j) in B <=> (rho(i), kappa(j)) in A`.
pub fn permute_pattern(
    a: &SparsityPattern,
    rho: &Permutation,
    kappa: &Permutation,
) -> Result<SparsityPattern, SigmaError> {
    check_perm_size(a.n(), rho)?;
    check_perm_size(a.n(), kappa)?;
    let rinv = rho.inverse();
    let kinv = kappa.inverse();
    Ok(SparsityPattern {
        n: a.n(),
        positions: a.iter().map(|(i, j)| (rinv.apply(i), kinv.apply(j))).collect(),
    })
}

/// Row and column permutations together with a partition into square diagonal blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockForm {
    row_perm: Permutation,
    col_perm: Permutation,
    sizes: Vec<usize>,
}

impl BlockForm {
    pub fn new(
        row_perm: Permutation,
        col_perm: Permutation,
        sizes: Vec<usize>,
    ) -> Result<Self, SigmaError> {
        let n = row_perm.len();
        check_perm_size(n, &col_perm)?;
        if sizes.is_empty() || sizes.contains(&0) || sizes.iter().sum::<usize>() != n {
            return Err(SigmaError::BadBlockSizes);
        }
        Ok(Self { row_perm, col_perm, sizes })
    }

    pub fn n(&self) -> usize {
        self.row_perm.len()
    }

    pub fn row_perm(&self) -> &Permutation {
        &self.row_perm
    }

    pub fn col_perm(&self) -> &Permutation {
        &self.col_perm
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn block_count(&self) -> usize {
        self.sizes.len()
    }

    /// `(rows, cols)` of each block in original indices, in form order.
    pub fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut start = 0;
        for &sz in &self.sizes {
            let rows = self.row_perm.as_slice()[start..start + sz].to_vec();
            let cols = self.col_perm.as_slice()[start..start + sz].to_vec();
            out.push((rows, cols));
            start += sz;
        }
        out
    }

    /// Block index of each original row.
    pub fn row_block_of(&self) -> Vec<usize> {
        self.index_blocks(&self.row_perm)
    }

    /// Block index of each original column.
    pub fn col_block_of(&self) -> Vec<usize> {
        self.index_blocks(&self.col_perm)
    }

    fn index_blocks(&self, perm: &Permutation) -> Vec<usize> {
        let mut of = vec![0; self.n()];
        let mut pos = 0;
        for (b, &sz) in self.sizes.iter().enumerate() {
            for k in pos..pos + sz {
                of[perm.apply(k)] = b;
            }
            pos += sz;
        }
        of
    }

    /// True when no position of `a` lies below the block diagonal.
    pub fn is_upper_btf(&self, a: &SparsityPattern) -> bool {
        let rb = self.row_block_of();
        let cb = self.col_block_of();
        a.iter().all(|(i, j)| rb[i] <= cb[j])
    }
}

/// Order-free identity of a square-block form: a set of `(row set, column set)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Emblem {
    pairs: BTreeSet<(BTreeSet<usize>, BTreeSet<usize>)>,
}

impl Emblem {
    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (BTreeSet<usize>, BTreeSet<usize>)>,
    ) -> Result<Self, SigmaError> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        let mut rows = vec![false; n];
        let mut cols = vec![false; n];
        for (r, c) in &pairs {
            if r.len() != c.len() || r.is_empty() {
                return Err(SigmaError::BadEmblem);
            }
            for (set, seen) in [(r, &mut rows), (c, &mut cols)] {
                for &k in set {
                    if k >= n || seen[k] {
                        return Err(SigmaError::BadEmblem);
                    }
                    seen[k] = true;
                }
            }
        }
        if rows.iter().chain(&cols).any(|&s| !s) {
            return Err(SigmaError::BadEmblem);
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &BTreeSet<(BTreeSet<usize>, BTreeSet<usize>)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The pairs written with labels, each set sorted by index.
    pub fn labelled(&self, row_labels: &[String], col_labels: &[String]) -> Vec<(Vec<String>, Vec<String>)> {
        self.pairs
            .iter()
            .map(|(r, c)| {
                (
                    r.iter().map(|&i| row_labels[i].clone()).collect(),
                    c.iter().map(|&j| col_labels[j].clone()).collect(),
                )
            })
            .collect()
    }
}

pub fn emblem_of(bf: &BlockForm) -> Emblem {
    Emblem {
        pairs: bf
            .blocks()
            .into_iter()
            .map(|(r, c)| (r.into_iter().collect(), c.into_iter().collect()))
            .collect(),
    }
}

pub fn emblems_equal(a: &Emblem, b: &Emblem) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pendulum() -> SignatureMatrix {
        SignatureMatrix::from_dense(&[
            vec![Some(2), None, Some(0)],
            vec![None, Some(2), Some(0)],
            vec![Some(0), Some(0), None],
        ])
        .unwrap()
    }

    fn perm1(v: &[usize]) -> Permutation {
        Permutation::new(v.iter().map(|k| k - 1).collect()).unwrap()
    }

    #[test]
    fn pendulum_pattern() {
        let s = pattern_of(&pendulum());
        let expect: BTreeSet<_> = [(1, 1), (1, 3), (2, 2), (2, 3), (3, 1), (3, 2)]
            .iter()
            .map(|&(i, j)| (i - 1, j - 1))
            .collect();
        assert_eq!(s.positions(), &expect);
    }

    #[test]
    fn all_minus_infinity_has_empty_pattern() {
        let m = SignatureMatrix::new(2, []).unwrap();
        assert!(pattern_of(&m).is_empty());
    }

    #[test]
    fn duplicate_entry_rejected() {
        let err = SignatureMatrix::new(2, [(0, 0, 1), (0, 0, 2)]).unwrap_err();
        assert_eq!(err, SigmaError::DuplicateEntry { i: 0, j: 0 });
    }

    #[test]
    fn duplicate_labels_rejected() {
        let m = SignatureMatrix::new(2, [(0, 0, 1)]).unwrap();
        let err = m
            .with_labels(vec!["a".into(), "a".into()], default_col_labels(2))
            .unwrap_err();
        assert_eq!(err, SigmaError::DuplicateLabel("a".into()));
    }

    #[test]
    fn well_posedness() {
        assert!(is_structurally_well_posed(&pendulum()));
        let m = SignatureMatrix::new(2, [(0, 0, 1), (0, 1, 0)]).unwrap();
        assert!(!is_structurally_well_posed(&m));
    }

    #[test]
    fn transversal_membership() {
        let s = pattern_of(&pendulum());
        let bullet = Transversal::from_positions(3, [(0, 0), (1, 2), (2, 1)]).unwrap();
        assert!(is_transversal(&s, &bullet));
        let bad = Transversal::from_positions(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!is_transversal(&s, &bad));
        let full = SparsityPattern::full(2);
        assert!(is_transversal(&full, &Transversal::identity(2)));
        assert!(is_transversal(&full, &Transversal::from_col_of_row(vec![1, 0]).unwrap()));
    }

    #[test]
    fn transversal_from_positions_rejects_repeats() {
        assert!(Transversal::from_positions(2, [(0, 0), (1, 0)]).is_err());
        assert!(Transversal::from_positions(2, [(0, 0)]).is_err());
        assert!(Transversal::from_positions(2, [(0, 0), (0, 1)]).is_err());
    }

    #[test]
    fn values_of_transversals() {
        let bullet = Transversal::from_positions(3, [(0, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(transversal_value(&pendulum(), &bullet), Ok(2));
        let one = SignatureMatrix::new(1, [(0, 0, 7)]).unwrap();
        assert_eq!(transversal_value(&one, &Transversal::identity(1)), Ok(7));
        assert_eq!(
            transversal_value(&pendulum(), &Transversal::identity(3)),
            Err(SigmaError::InfinitePosition { i: 2, j: 2 })
        );
    }

    #[test]
    fn permuted_pendulum_pattern() {
        let s = pattern_of(&pendulum());
        let rho = perm1(&[3, 1, 2]);
        let kappa = perm1(&[2, 3, 1]);
        let p = permute_pattern(&s, &rho, &kappa).unwrap();
        // rows C, A, B; columns y, lam, x
        let expect = SparsityPattern::new(3, [(0, 0), (0, 2), (1, 1), (1, 2), (2, 0), (2, 1)]).unwrap();
        assert_eq!(p, expect);

        let m = pendulum().permuted(&rho, &kappa).unwrap();
        assert_eq!(pattern_of(&m), expect);
        assert_eq!(m.row_labels(), ["f3", "f1", "f2"]);
        assert_eq!(m.col_labels(), ["x2", "x3", "x1"]);
        assert_eq!(m.get(2, 0), Some(2));
    }

    #[test]
    fn identity_and_swap_permutations() {
        let s = pattern_of(&pendulum());
        let id = Permutation::identity(3);
        assert_eq!(permute_pattern(&s, &id, &id).unwrap(), s);

        let single = SparsityPattern::new(2, [(0, 1)]).unwrap();
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let p = permute_pattern(&single, &swap, &Permutation::identity(2)).unwrap();
        assert_eq!(p, SparsityPattern::new(2, [(1, 1)]).unwrap());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.inverse().inverse(), p);
    }

    // Rows f,g,h,k and columns w,x,y,z as indices 0..4.
    fn form(rows: &[usize], cols: &[usize], sizes: &[usize]) -> BlockForm {
        BlockForm::new(
            Permutation::new(rows.to_vec()).unwrap(),
            Permutation::new(cols.to_vec()).unwrap(),
            sizes.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn block_equivalence_of_forms() {
        let (f, g, h, k) = (0, 1, 2, 3);
        let (w, x, y, z) = (0, 1, 2, 3);
        let form1 = form(&[f, g, h, k], &[w, x, y, z], &[1, 1, 2]);
        let form2 = form(&[g, f, k, h], &[x, w, y, z], &[1, 1, 2]);
        let form3 = form(&[g, f, k, h], &[w, x, y, z], &[1, 1, 2]);
        let form4 = form(&[h, k, f, g], &[z, y, w, x], &[2, 2]);
        let e1 = emblem_of(&form1);
        assert!(emblems_equal(&e1, &emblem_of(&form2)));
        assert!(!emblems_equal(&e1, &emblem_of(&form3)));
        assert!(!emblems_equal(&e1, &emblem_of(&form4)));

        let rl: Vec<String> = ["f", "g", "h", "k"].map(String::from).to_vec();
        let cl: Vec<String> = ["w", "x", "y", "z"].map(String::from).to_vec();
        let mut got = e1.labelled(&rl, &cl);
        got.sort();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(
            got,
            vec![
                (s(&["f"]), s(&["w"])),
                (s(&["g"]), s(&["x"])),
                (s(&["h", "k"]), s(&["y", "z"])),
            ]
        );
    }

    #[test]
    fn single_block_emblem_ignores_row_order() {
        let a = form(&[0, 1, 2], &[0, 1, 2], &[3]);
        let b = form(&[2, 0, 1], &[0, 1, 2], &[3]);
        assert_eq!(emblem_of(&a), emblem_of(&b));
    }

    #[test]
    fn bad_block_forms() {
        let id = Permutation::identity(3);
        assert!(BlockForm::new(id.clone(), id.clone(), vec![1, 1]).is_err());
        assert!(BlockForm::new(id.clone(), id.clone(), vec![]).is_err());
        assert!(BlockForm::new(id.clone(), id, vec![3, 0]).is_err());
        let sets = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert!(Emblem::from_pairs(2, [(sets(&[0]), sets(&[0, 1]))]).is_err());
        assert!(Emblem::from_pairs(2, [(sets(&[0]), sets(&[0]))]).is_err());
    }

    #[test]
    fn submatrix_carries_labels() {
        let m = pendulum();
        let sub = m.submatrix(&[2, 0], &[1, 0]).unwrap();
        assert_eq!(sub.get(0, 0), Some(0));
        assert_eq!(sub.get(1, 1), Some(2));
        assert_eq!(sub.get(1, 0), None);
        assert_eq!(sub.row_labels(), ["f3", "f1"]);
    }
}
