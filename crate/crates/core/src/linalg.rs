//! Exact linear algebra over ℚ.
//!
//! Two tools live here. [`Echelon`] is a sparse row-echelon form with
//! incremental insertion, used by [`QuotientSpace`] to compute
//! `span(relations + candidates) / span(relations)` together with coordinates
//! and traces of linear maps on the quotient. [`Matrix`] is a small dense
//! matrix for structure maps and permutation actions.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Q;

/// Sparse vector: column index to nonzero value.
pub type SparseVec = BTreeMap<usize, Q>;

pub fn sparse_add_scaled(acc: &mut SparseVec, v: &SparseVec, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in v {
        add_entry(acc, k, x * c);
    }
}

pub fn add_entry(acc: &mut SparseVec, k: usize, x: Q) {
    if x.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Row-echelon form over sparse rows. Every stored row has a distinct pivot
/// (its smallest column) normalised to 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Vec<(usize, Q)>>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot(&self, row: usize) -> usize {
        self.rows[row][0].0
    }

    /// Reduces `v` against the stored rows. Returns the remainder and the
    /// multiples of each row that were subtracted.
    pub fn reduce(&self, mut v: SparseVec) -> (SparseVec, Vec<(usize, Q)>) {
        let mut used = Vec::new();
        let mut cursor = 0usize;
        loop {
            let Some((&col, _)) = v.range(cursor..).next() else {
                break;
            };
            cursor = col + 1;
            let Some(&r) = self.pivot_row.get(&col) else {
                continue;
            };
            let c = v.remove(&col).unwrap();
            for (k, x) in &self.rows[r][1..] {
                add_entry(&mut v, *k, -(x * &c));
            }
            used.push((r, c));
        }
        (v, used)
    }

    /// Inserts `v` if it is independent of the stored rows; returns the new
    /// row index.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let (rem, _) = self.reduce(v);
        self.push_reduced(rem)
    }

    fn push_reduced(&mut self, rem: SparseVec) -> Option<usize> {
        let (&pivot, lead) = rem.iter().next()?;
        let inv = lead.recip();
        let row: Vec<(usize, Q)> = rem.iter().map(|(&k, x)| (k, x * &inv)).collect();
        let idx = self.rows.len();
        self.rows.push(row);
        self.pivot_row.insert(pivot, idx);
        Some(idx)
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// `span(R ∪ C) / span(R)` for a relation set `R` and candidates `C`.
///
/// Relations must all be added before the first candidate. Each accepted
/// candidate contributes one quotient basis vector, namely its remainder
/// after reduction; coordinates and traces refer to that basis.
#[derive(Clone, Debug, Default)]
pub struct QuotientSpace {
    echelon: Echelon,
    relation_rank: usize,
    /// Echelon row index to quotient coordinate.
    coord_of_row: HashMap<usize, usize>,
    /// Quotient basis vectors as ambient vectors: normalised remainders.
    basis: Vec<SparseVec>,
    /// Index into the candidate stream of each accepted candidate.
    accepted: Vec<usize>,
    candidates_seen: usize,
}

impl QuotientSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_relation(&mut self, v: SparseVec) {
        assert!(self.basis.is_empty(), "relations must precede candidates");
        if self.echelon.insert(v).is_some() {
            self.relation_rank += 1;
        }
    }

    /// Adds a candidate; returns `true` if it is independent modulo the
    /// relations and earlier candidates.
    pub fn add_candidate(&mut self, v: SparseVec) -> bool {
        let seen = self.candidates_seen;
        self.candidates_seen += 1;
        let (rem, _) = self.echelon.reduce(v);
        match self.echelon.push_reduced(rem) {
            Some(row) => {
                self.coord_of_row.insert(row, self.basis.len());
                self.basis.push(self.echelon.rows[row].iter().cloned().collect());
                self.accepted.push(seen);
                true
            }
            None => false,
        }
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Positions (in insertion order) of the candidates that were accepted.
    pub fn accepted(&self) -> &[usize] {
        &self.accepted
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Coordinates of `v` modulo the relations.
    pub fn coordinates(&self, v: SparseVec) -> Result<Vec<Q>> {
        let (rem, used) = self.echelon.reduce(v);
        if !rem.is_empty() {
            return Err(Error::NotInSpan(format!(
                "{} nonzero entries remain after reduction",
                rem.len()
            )));
        }
        let mut out = vec![Q::zero(); self.basis.len()];
        for (row, c) in used {
            if let Some(&j) = self.coord_of_row.get(&row) {
                out[j] += c;
            }
        }
        Ok(out)
    }

    /// Trace of the linear map induced on the quotient by `f`, which must
    /// preserve both the relation span and the full span.
    pub fn trace(&self, mut f: impl FnMut(&SparseVec) -> SparseVec) -> Result<Q> {
        let mut t = Q::zero();
        for (i, b) in self.basis.iter().enumerate() {
            let image = f(b);
            let coords = self.coordinates(image)?;
            t += &coords[i];
        }
        Ok(t)
    }
}

/// Small dense matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    #[serde(with = "crate::exact::rational_matrix")]
    pub data: Vec<Vec<Q>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Q::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<Q>>, cols: usize) -> Result<Self> {
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::Schema("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::RankMismatch(self.cols, other.rows));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i][i].clone())
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for row in &self.data {
            e.insert(dense_to_sparse(row));
        }
        e.rank()
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        let mut v = SparseVec::new();
        for i in 0..self.rows {
            add_entry(&mut v, i, self.data[i][j].clone());
        }
        v
    }
}

pub fn dense_to_sparse(row: &[Q]) -> SparseVec {
    row.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, q(x))).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, 1), (1, 2)])).is_some());
        assert!(e.insert(sv(&[(1, 1), (2, 1)])).is_some());
        assert!(e.insert(sv(&[(0, 2), (1, 5), (2, 1)])).is_none());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(sv(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(sv(&[(2, 1)])));
    }

    #[test]
    fn quotient_dimension_and_coordinates() {
        // ℚ³ modulo the line spanned by e0 - e1.
        let mut qs = QuotientSpace::new();
        qs.add_relation(sv(&[(0, 1), (1, -1)]));
        assert!(qs.add_candidate(sv(&[(0, 1)])));
        assert!(!qs.add_candidate(sv(&[(1, 1)])));
        assert!(qs.add_candidate(sv(&[(2, 1)])));
        assert_eq!(qs.dim(), 2);
        assert_eq!(qs.accepted(), &[0, 2]);
        let c = qs.coordinates(sv(&[(1, 3), (2, -1)])).unwrap();
        assert_eq!(c, vec![q(3), q(-1)]);
        assert!(qs.coordinates(sv(&[(3, 1)])).is_err());
    }

    #[test]
    fn quotient_trace_of_swap() {
        // Swap e0 <-> e1 and fix e2, modulo e0 + e1: acts by -1 on the
        // class of e0 and by +1 on e2.
        let mut qs = QuotientSpace::new();
        qs.add_relation(sv(&[(0, 1), (1, 1)]));
        for i in 0..3 {
            qs.add_candidate(sv(&[(i, 1)]));
        }
        let swap = |v: &SparseVec| -> SparseVec {
            v.iter()
                .map(|(&k, x)| (match k { 0 => 1, 1 => 0, k => k }, x.clone()))
                .collect()
        };
        assert_eq!(qs.dim(), 2);
        assert_eq!(qs.trace(swap).unwrap(), q(0));
    }

    #[test]
    fn dense_matrix_basics() {
        let a = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]], 2).unwrap();
        assert_eq!(a.rank(), 1);
        assert_eq!(a.trace(), q(5));
        let i = Matrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        assert!(i.is_identity());
        assert!(Matrix::from_rows(vec![vec![q(1)], vec![]], 1).is_err());
    }
}
