//! Dense exact linear algebra over a [`Field`].
//!
//! Everything is stored row-major in the packed element encoding. The
//! operations here are deliberately plain Gaussian elimination: the matrices
//! this crate handles top out at a few thousand rows, where exactness and
//! reproducibility matter far more than asymptotics.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{El, Field, FieldDescriptor};

/// A rows x cols matrix over a fixed field.
#[derive(Clone)]
pub struct FMatrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    entries: Vec<El>,
    /// Set only by constructors whose output is non-singular by columns for
    /// structural reasons; lets very wide matrices skip the exhaustive
    /// minor check.
    nsc_certified: bool,
}

/// Witness that a square matrix is monomial: M = D * P with D the given
/// diagonal and P the permutation matrix of `permutation` (row i has its
/// single nonzero entry, `diagonal[i]`, in column `permutation[i]`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialWitness {
    pub permutation: Vec<usize>,
    pub diagonal: Vec<El>,
}

/// Serializable matrix form; entries are enumeration indices so the payload
/// is meaningful independent of the packed encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDescriptor {
    pub field: FieldDescriptor,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

impl PartialEq for FMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl Eq for FMatrix {}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Display for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// In-place reduced row echelon form; returns (rank, pivot columns).
pub(crate) fn rref_in_place(field: &Field, rows: &mut [Vec<El>]) -> (usize, Vec<usize>) {
    let nrows = rows.len();
    if nrows == 0 {
        return (0, Vec::new());
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let iv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(iv, *x);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    (r, pivots)
}

pub(crate) fn rank_rows(field: &Field, rows: &[Vec<El>]) -> usize {
    let mut work: Vec<Vec<El>> = rows.to_vec();
    rref_in_place(field, &mut work).0
}

impl FMatrix {
    pub fn new(field: Arc<Field>, rows: usize, cols: usize, entries: Vec<El>) -> Result<Self> {
        if cols == 0 {
            return Err(Error::ShapeMismatch(
                "matrix needs at least one column".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|&e| (e as usize) >= field.q()) {
            return Err(Error::ShapeMismatch(
                "entry outside the field's packed range".into(),
            ));
        }
        Ok(FMatrix {
            field,
            rows,
            cols,
            entries,
            nsc_certified: false,
        })
    }

    pub fn from_rows(field: Arc<Field>, rows: &[Vec<El>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let entries: Vec<El> = rows.iter().flatten().copied().collect();
        FMatrix::new(field, nrows, ncols, entries)
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Self {
        let mut entries = vec![0 as El; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        FMatrix {
            field,
            rows: n,
            cols: n,
            entries,
            nsc_certified: false,
        }
    }

    pub fn zero(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        FMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
            nsc_certified: false,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[El] {
        &self.entries
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> El {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: El) {
        self.nsc_certified = false;
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[El] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<El>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// The first `k` rows as a new matrix.
    pub fn top_rows(&self, k: usize) -> Result<FMatrix> {
        if k > self.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot take {k} rows of a {}-row matrix",
                self.rows
            )));
        }
        Ok(FMatrix {
            field: self.field.clone(),
            rows: k,
            cols: self.cols,
            entries: self.entries[..k * self.cols].to_vec(),
            // the certificate survives: a prefix checks a subset of the minors
            nsc_certified: self.nsc_certified,
        })
    }

    pub fn nsc_certified(&self) -> bool {
        self.nsc_certified
    }

    /// Marks the matrix as structurally non-singular by columns. Callers
    /// must hold a proof; constructors in this crate cross-check the claim
    /// exhaustively at small sizes in tests.
    pub(crate) fn certify_nsc(&mut self) {
        self.nsc_certified = true;
    }

    // -- elimination ---------------------------------------------------------

    /// Reduced row echelon form with rank and pivot columns (0-based).
    pub fn rref(&self) -> (FMatrix, usize, Vec<usize>) {
        let mut work = self.row_vecs();
        let (rank, pivots) = rref_in_place(&self.field, &mut work);
        work.truncate(rank);
        let reduced = if rank == 0 {
            FMatrix::zero(self.field.clone(), 0, self.cols)
        } else {
            FMatrix::from_rows(self.field.clone(), &work).expect("rref preserves shape")
        };
        (reduced, rank, pivots)
    }

    pub fn rank(&self) -> usize {
        rank_rows(&self.field, &self.row_vecs())
    }

    /// Basis of the right kernel {x : self * x^T = 0}, one vector per row.
    pub fn nullspace(&self) -> FMatrix {
        let f = &self.field;
        let mut work = self.row_vecs();
        let (rank, pivots) = rref_in_place(f, &mut work);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0 as El; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(work[i][fc]);
            }
            basis.push(v);
        }
        if basis.is_empty() {
            FMatrix::zero(self.field.clone(), 0, self.cols)
        } else {
            FMatrix::from_rows(self.field.clone(), &basis).expect("kernel basis shape")
        }
    }

    pub fn invert(&self) -> Result<FMatrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug: Vec<Vec<El>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { 1 } else { 0 }));
                r
            })
            .collect();
        let (_, pivots) = rref_in_place(f, &mut aug);
        if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return Err(Error::Singular);
        }
        let inv_rows: Vec<Vec<El>> = aug.iter().map(|r| r[n..].to_vec()).collect();
        FMatrix::from_rows(self.field.clone(), &inv_rows)
    }

    // -- products ------------------------------------------------------------

    pub fn matmul(&self, rhs: &FMatrix) -> Result<FMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![0 as El; self.rows * rhs.cols];
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.at(i, t);
                if a == 0 {
                    continue;
                }
                let out_row = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
                let rhs_row = rhs.row(t);
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    if b != 0 {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        FMatrix::new(self.field.clone(), self.rows, rhs.cols, out)
    }

    pub fn transpose(&self) -> FMatrix {
        let mut out = vec![0 as El; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[j * self.rows + i] = self.at(i, j);
            }
        }
        FMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            entries: out,
            nsc_certified: false,
        }
    }

    /// Entrywise conjugation x -> x^sqrt(q).
    pub fn frobenius(&self) -> Result<FMatrix> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.entries.len());
        for &e in &self.entries {
            out.push(f.conjugate(e)?);
        }
        FMatrix::new(self.field.clone(), self.rows, self.cols, out)
    }

    pub fn conj_transpose(&self) -> Result<FMatrix> {
        Ok(self.frobenius()?.transpose())
    }

    /// self * self^T.
    pub fn gram_euclidean(&self) -> FMatrix {
        self.matmul(&self.transpose()).expect("square by shape")
    }

    /// conj(self) * self^T: entry (i,j) = Σ_l a_il^sqrt(q) * a_jl.
    pub fn gram_hermitian(&self) -> Result<FMatrix> {
        self.frobenius()?.matmul(&self.transpose())
    }

    // -- structure tests -------------------------------------------------------

    /// Exhaustive non-singular-by-columns test: every i-column minor of the
    /// first i rows must be invertible, for each i up to the row count.
    pub fn is_nsc(&self) -> Result<bool> {
        let s = self.rows;
        let h = self.cols;
        if self.rank() != s {
            return Err(Error::NotFullRank);
        }
        let f = &self.field;
        for i in 1..=s {
            let mut ok = true;
            for_each_combination(h, i, &mut |cols| {
                let sub: Vec<Vec<El>> = (0..i)
                    .map(|r| cols.iter().map(|&c| self.at(r, c)).collect())
                    .collect();
                if rank_rows(f, &sub) != i {
                    ok = false;
                    return false;
                }
                true
            });
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact monomial-matrix recognition on square matrices.
    pub fn monomial_decompose(&self) -> Option<MonomialWitness> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut permutation = vec![0usize; n];
        let mut diagonal = vec![0 as El; n];
        let mut col_used = vec![false; n];
        for i in 0..n {
            let nonzero: Vec<usize> = (0..n).filter(|&j| self.at(i, j) != 0).collect();
            if nonzero.len() != 1 {
                return None;
            }
            let j = nonzero[0];
            if col_used[j] {
                return None;
            }
            col_used[j] = true;
            permutation[i] = j;
            diagonal[i] = self.at(i, j);
        }
        Some(MonomialWitness {
            permutation,
            diagonal,
        })
    }

    /// Deterministic extension of a full-rank s x h matrix to an invertible
    /// h x h matrix: standard basis vectors are appended in index order,
    /// keeping exactly those that grow the rank.
    pub fn complete_to_invertible(&self) -> Result<FMatrix> {
        let s = self.rows;
        let h = self.cols;
        if s > h || self.rank() != s {
            return Err(Error::NotFullRank);
        }
        if s == h {
            return Ok(self.clone());
        }
        let f = &self.field;
        let mut rows = self.row_vecs();
        for i in 0..h {
            if rows.len() == h {
                break;
            }
            let mut e = vec![0 as El; h];
            e[i] = 1;
            let cur = rank_rows(f, &rows);
            rows.push(e);
            if rank_rows(f, &rows) == cur {
                rows.pop();
            }
        }
        debug_assert_eq!(rows.len(), h);
        let out = FMatrix::from_rows(self.field.clone(), &rows)?;
        debug_assert_eq!(out.rank(), h);
        Ok(out)
    }

    // -- serialization -----------------------------------------------------------

    pub fn descriptor(&self) -> MatrixDescriptor {
        MatrixDescriptor {
            field: self.field.descriptor(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|&e| self.field.index_of(e) as u32)
                .collect(),
        }
    }

    pub fn from_descriptor(d: &MatrixDescriptor) -> Result<FMatrix> {
        let field = d.field.realize()?;
        let mut entries = Vec::with_capacity(d.entries.len());
        for &idx in &d.entries {
            entries.push(field.element_at(idx as usize)?);
        }
        FMatrix::new(field, d.rows, d.cols, entries)
    }
}

impl MonomialWitness {
    /// Rebuilds the monomial matrix this witness describes.
    pub fn reconstruct(&self, field: Arc<Field>) -> FMatrix {
        let n = self.permutation.len();
        let mut m = FMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, self.permutation[i], self.diagonal[i]);
        }
        m
    }
}

/// Calls `f` on each size-k subset of 0..n in lexicographic order; `f`
/// returning false stops the walk early.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;

    fn f3() -> Arc<Field> {
        make_field(3, 1).unwrap()
    }

    fn f9() -> Arc<Field> {
        make_field(3, 2).unwrap()
    }

    fn w_matrix() -> FMatrix {
        FMatrix::from_rows(f3(), &[vec![1, 1, 1], vec![0, 1, 2], vec![0, 1, 1]]).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = FMatrix::identity(f3(), 3);
        let (r, rank, piv) = id.rref();
        assert_eq!((rank, piv), (3, vec![0, 1, 2]));
        assert_eq!(r, id);
        let z = FMatrix::zero(f3(), 2, 3);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn w_matrix_has_full_rank() {
        assert_eq!(w_matrix().rank(), 3);
    }

    #[test]
    fn invert_round_trips() {
        let a = FMatrix::from_rows(f3(), &[vec![1, 1, 1], vec![0, 1, 2], vec![1, 2, 2]]).unwrap();
        let ai = a.invert().unwrap();
        assert_eq!(a.matmul(&ai).unwrap(), FMatrix::identity(f3(), 3));
        let singular = FMatrix::from_rows(f3(), &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(singular.invert().unwrap_err(), Error::Singular);
    }

    #[test]
    fn nullspace_is_orthogonal_complement() {
        let a = w_matrix().top_rows(2).unwrap();
        let ns = a.nullspace();
        assert_eq!(ns.rows(), 1);
        let prod = a.matmul(&ns.transpose()).unwrap();
        assert!(prod.entries().iter().all(|&e| e == 0));
    }

    #[test]
    fn conj_transpose_prime_subfield_is_plain_transpose() {
        let m = FMatrix::from_rows(f9(), &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.conj_transpose().unwrap(), m.transpose());
        let m3 = w_matrix();
        assert_eq!(m3.conj_transpose().unwrap_err(), Error::NonSquareOrder);
    }

    #[test]
    fn nsc_examples() {
        let f = f3();
        // Vandermonde rows on the three field elements
        let vand =
            FMatrix::from_rows(f.clone(), &[vec![1, 1, 1], vec![0, 1, 2], vec![0, 1, 1]]).unwrap();
        assert!(vand.is_nsc().unwrap());
        let dup = FMatrix::from_rows(f.clone(), &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(dup.is_nsc().unwrap_err(), Error::NotFullRank);
        let rank_ok_not_nsc = FMatrix::from_rows(f, &[vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        assert!(!rank_ok_not_nsc.is_nsc().unwrap());
    }

    #[test]
    fn monomial_recognition() {
        let id = FMatrix::identity(f3(), 3);
        let w = id.monomial_decompose().unwrap();
        assert_eq!(w.permutation, vec![0, 1, 2]);
        assert_eq!(w.diagonal, vec![1, 1, 1]);

        let anti =
            FMatrix::from_rows(f3(), &[vec![0, 0, 2], vec![0, 2, 0], vec![2, 0, 0]]).unwrap();
        let w = anti.monomial_decompose().unwrap();
        assert_eq!(w.permutation, vec![2, 1, 0]);
        assert_eq!(w.diagonal, vec![2, 2, 2]);
        assert_eq!(w.reconstruct(f3()), anti);

        assert!(w_matrix().monomial_decompose().is_none());
    }

    #[test]
    fn completion_postconditions() {
        let a = w_matrix().top_rows(2).unwrap();
        let b = a.complete_to_invertible().unwrap();
        assert_eq!(b.rows(), 3);
        assert_eq!(b.rank(), 3);
        assert_eq!(b.top_rows(2).unwrap(), a);

        let square = w_matrix();
        assert_eq!(square.complete_to_invertible().unwrap(), square);

        let deficient = FMatrix::from_rows(f3(), &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(
            deficient.complete_to_invertible().unwrap_err(),
            Error::NotFullRank
        );
    }

    #[test]
    fn combinations_enumerate_binomially() {
        let mut count = 0;
        for_each_combination(6, 3, &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count, 20);
        let mut first = None;
        for_each_combination(4, 2, &mut |c| {
            first.get_or_insert_with(|| c.to_vec());
            false
        });
        assert_eq!(first.unwrap(), vec![0, 1]);
    }

    #[test]
    fn descriptor_round_trip() {
        let m = FMatrix::from_rows(f9(), &[vec![0, 3, 4], vec![2, 1, 8]]).unwrap();
        let d = m.descriptor();
        let back = FMatrix::from_descriptor(&d).unwrap();
        assert_eq!(back, m);
        let json = serde_json::to_string(&d).unwrap();
        let d2: MatrixDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(d2, d);
    }

    fn small_matrix(q: usize, rows: usize, cols: usize) -> impl Strategy<Value = Vec<El>> {
        proptest::collection::vec((0..q).prop_map(|v| v as El), rows * cols)
    }

    proptest! {
        #[test]
        fn conj_transpose_is_involutive(entries in small_matrix(9, 3, 4)) {
            let m = FMatrix::new(f9(), 3, 4, entries).unwrap();
            prop_assert_eq!(m.conj_transpose().unwrap().conj_transpose().unwrap(), m);
        }

        #[test]
        fn invert_is_involutive(entries in small_matrix(9, 3, 3)) {
            let m = FMatrix::new(f9(), 3, 3, entries).unwrap();
            if let Ok(inv) = m.invert() {
                prop_assert_eq!(inv.invert().unwrap(), m.clone());
                prop_assert_eq!(m.matmul(&inv).unwrap(), FMatrix::identity(f9(), 3));
            }
        }

        #[test]
        fn monomial_witness_reconstructs(perm_seed in 0usize..6, diag in small_matrix(3, 1, 3)) {
            if diag.iter().all(|&d| d != 0) {
                let perms = [[0,1,2],[0,2,1],[1,0,2],[1,2,0],[2,0,1],[2,1,0]];
                let w = MonomialWitness {
                    permutation: perms[perm_seed].to_vec(),
                    diagonal: diag.clone(),
                };
                let m = w.reconstruct(f3());
                prop_assert_eq!(m.monomial_decompose().unwrap(), w);
            }
        }
    }
}
