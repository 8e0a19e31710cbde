//! Exact dense linear algebra over a [`Scalar`] field.
//!
//! All bases handed out by this module are in reduced row echelon form, so
//! two subspaces are equal as sets exactly when their basis matrices are
//! equal. There are no tolerances anywhere; arithmetic is exact.

use std::fmt;

use crate::scalar::Scalar;

/// Dense matrix, entries in row-major order.
#[derive(Clone, PartialEq)]
pub struct Mat<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> fmt::Debug for Mat<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<K: Scalar> Mat<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose j-th column is `cols[j]`; this is the usual way to build
    /// a linear map from its values on basis vectors.
    pub fn from_cols(cols: Vec<Vec<K>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: K) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[K] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<K> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[K] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat<K> {
        Mat::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Mat<K>) -> Mat<K> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() + other.get(r, c).clone()
        })
    }

    pub fn sub(&self, other: &Mat<K>) -> Mat<K> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() - other.get(r, c).clone()
        })
    }

    pub fn scale(&self, x: &K) -> Mat<K> {
        Mat::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() * x.clone()
        })
    }

    pub fn mul(&self, other: &Mat<K>) -> Mat<K> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out: Mat<K> = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).clone() + a.clone() * b.clone();
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        let mut out = vec![K::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                out[r] = out[r].clone() + a.clone() * v[c].clone();
            }
        }
        out
    }

    /// Kronecker product; row-major tensor index `(i1, i2) -> i1 * n2 + i2`.
    pub fn kron(&self, other: &Mat<K>) -> Mat<K> {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(
                            r1 * other.rows + r2,
                            c1 * other.cols + c2,
                            a.clone() * b.clone(),
                        );
                    }
                }
            }
        }
        out
    }

    /// In-place reduction to RREF; returns the pivot columns in order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow >= self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(prow, sel);
            let inv = self.get(prow, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.get(prow, c).clone() * inv.clone();
                self.set(prow, c, v);
            }
            for r in 0..self.rows {
                if r == prow || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c).clone() - f.clone() * self.get(prow, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Null space as a canonical RREF subspace; `dim = cols - rank`.
    pub fn kernel(&self) -> Subspace<K> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut gens = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![K::zero(); self.cols];
            v[free] = K::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, free).clone();
            }
            gens.push(v);
        }
        Subspace::from_generators(self.cols, gens)
    }

    /// Solve `self * x = b`. `None` when inconsistent; otherwise the
    /// particular solution with all free variables zero, plus the kernel.
    pub fn solve_affine(&self, b: &[K]) -> Option<(Vec<K>, Subspace<K>)> {
        assert_eq!(b.len(), self.rows, "dimension mismatch in solve_affine");
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some((x, self.kernel()))
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Mat<K>> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, K::one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Mat::from_fn(n, n, |r, c| aug.get(r, n + c).clone()))
    }

    /// Determinant by fraction-producing elimination.
    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = K::one();
        for col in 0..n {
            let Some(sel) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return K::zero();
            };
            if sel != col {
                m.swap_rows(col, sel);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone() * inv.clone();
                for c in col..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

/// Linear subspace of `K^ambient` with a canonical RREF basis.
#[derive(Clone, PartialEq)]
pub struct Subspace<K> {
    ambient: usize,
    basis: Mat<K>,
}

impl<K: Scalar> fmt::Debug for Subspace<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}) {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

impl<K: Scalar> Subspace<K> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
        }
    }

    pub fn from_generators(ambient: usize, gens: Vec<Vec<K>>) -> Self {
        let mut span = SpanBuilder::new(ambient);
        for g in gens {
            assert_eq!(g.len(), ambient, "generator length mismatch");
            span.insert_dense(&g);
        }
        span.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Mat<K> {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[K]> {
        (0..self.basis.rows()).map(|r| self.basis.row(r))
    }

    /// Membership test; true iff `v` is a combination of the basis rows.
    pub fn contains(&self, v: &[K]) -> bool {
        assert_eq!(v.len(), self.ambient, "dimension mismatch in contains");
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[K]) -> Vec<K> {
        let mut v = v.to_vec();
        for r in 0..self.basis.rows() {
            let p = leading(self.basis.row(r))
                .expect("basis rows are nonzero")
                .0;
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for c in p..self.ambient {
                let x = self.basis.get(r, c);
                if x.is_zero() {
                    continue;
                }
                v[c] = v[c].clone() - f.clone() * x.clone();
            }
        }
        v
    }

    /// Coordinates of `v` in the basis, `None` when `v` is outside.
    pub fn coordinates(&self, v: &[K]) -> Option<Vec<K>> {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        let mut coords = vec![K::zero(); self.dim()];
        for r in 0..self.basis.rows() {
            let p = leading(self.basis.row(r))
                .expect("basis rows are nonzero")
                .0;
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            coords[r] = f.clone();
            for c in p..self.ambient {
                let x = self.basis.get(r, c);
                if x.is_zero() {
                    continue;
                }
                v[c] = v[c].clone() - f.clone() * x.clone();
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Smallest subspace containing both; canonical again.
    pub fn sum(&self, other: &Subspace<K>) -> Subspace<K> {
        assert_eq!(self.ambient, other.ambient);
        let mut gens: Vec<Vec<K>> = self.basis_rows().map(|r| r.to_vec()).collect();
        gens.extend(other.basis_rows().map(|r| r.to_vec()));
        Subspace::from_generators(self.ambient, gens)
    }

    pub fn is_subspace_of(&self, other: &Subspace<K>) -> bool {
        self.basis_rows().all(|r| other.contains(r))
    }
}

fn leading<K: Scalar>(v: &[K]) -> Option<(usize, K)> {
    v.iter()
        .enumerate()
        .find(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
}

/// Sparse row: sorted `(column, coefficient)` pairs, coefficients nonzero.
pub type SparseVec<K> = Vec<(usize, K)>;

pub fn sparsify<K: Scalar>(v: &[K]) -> SparseVec<K> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn densify<K: Scalar>(v: &SparseVec<K>, len: usize) -> Vec<K> {
    let mut out = vec![K::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a - f * b` on sparse rows.
fn sparse_axpy<K: Scalar>(a: &SparseVec<K>, f: &K, b: &SparseVec<K>) -> SparseVec<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = -(f.clone() * b[j].1.clone());
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.clone() - f.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental RREF accumulator over sparse rows.
///
/// Maintains the full-reduction invariant: every stored row has coefficient 1
/// at its pivot column and zeros at every other pivot column. Designed for
/// the large, very sparse relation spans of balanced tensor products.
pub struct SpanBuilder<K> {
    cols: usize,
    rows: Vec<SparseVec<K>>,
    pivot_row: Vec<Option<usize>>,
}

impl<K: Scalar> SpanBuilder<K> {
    pub fn new(cols: usize) -> Self {
        SpanBuilder {
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the accumulated rows.
    pub fn reduce(&self, v: SparseVec<K>) -> SparseVec<K> {
        let mut v = v;
        loop {
            let Some(&(c, ref x)) = v.iter().find(|(c, _)| self.pivot_row[*c].is_some()) else {
                return v;
            };
            let r = self.pivot_row[c].unwrap();
            let f = x.clone();
            v = sparse_axpy(&v, &f, &self.rows[r]);
        }
    }

    /// Insert a row; returns true when the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let v = self.reduce(v);
        let Some((pcol, pval)) = v.first().cloned() else {
            return false;
        };
        let inv = pval.inv().expect("nonzero leading coefficient");
        let norm: SparseVec<K> = v.into_iter().map(|(c, x)| (c, x * inv.clone())).collect();
        // Back-substitute into existing rows to keep full reduction.
        let new_idx = self.rows.len();
        for row in self.rows.iter_mut() {
            if let Some(pos) = row.iter().position(|(c, _)| *c == pcol) {
                let f = row[pos].1.clone();
                *row = sparse_axpy(row, &f, &norm);
            }
        }
        self.rows.push(norm);
        self.pivot_row[pcol] = Some(new_idx);
        true
    }

    pub fn insert_dense(&mut self, v: &[K]) -> bool {
        assert_eq!(v.len(), self.cols);
        self.insert(sparsify(v))
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn contains_dense(&self, v: &[K]) -> bool {
        self.contains(&sparsify(v))
    }

    /// Non-pivot columns in increasing order.
    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| self.pivot_row[c].is_none())
            .collect()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| self.pivot_row[c].is_some())
            .collect()
    }

    pub fn into_subspace(self) -> Subspace<K> {
        self.to_subspace()
    }

    pub fn to_subspace(&self) -> Subspace<K> {
        let mut idx: Vec<(usize, &SparseVec<K>)> = self
            .rows
            .iter()
            .map(|r| (r.first().expect("nonempty row").0, r))
            .collect();
        idx.sort_by_key(|(p, _)| *p);
        let rows: Vec<Vec<K>> = idx.iter().map(|(_, r)| densify(r, self.cols)).collect();
        Subspace {
            ambient: self.cols,
            basis: Mat::from_rows(rows),
        }
    }
}

/// Solve a large sparse affine system `M x = b` given row by row as
/// `(sparse row, rhs)` pairs; returns the particular solution with free
/// variables zero, or `None` when inconsistent. Only the RREF of the rows
/// is ever held in memory.
pub fn solve_affine_sparse<K: Scalar>(
    cols: usize,
    rows: impl IntoIterator<Item = (SparseVec<K>, K)>,
) -> Option<Vec<K>> {
    let mut span = SpanBuilder::new(cols + 1);
    for (mut row, rhs) in rows {
        if !rhs.is_zero() {
            row.push((cols, rhs));
        }
        span.insert(row);
    }
    let mut x = vec![K::zero(); cols];
    for row in &span.rows {
        let (p, _) = row.first().expect("rows are nonzero");
        if *p == cols {
            return None;
        }
        if let Some((c, v)) = row.last() {
            if *c == cols {
                // Fully reduced RREF: the pivot has coefficient 1 and no
                // other pivot column appears, so x[pivot] = rhs.
                x[*p] = v.clone();
            }
        }
    }
    Some(x)
}

/// Vector addition helpers used throughout the crate.
pub fn vec_add<K: Scalar>(a: &[K], b: &[K]) -> Vec<K> {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub fn vec_sub<K: Scalar>(a: &[K], b: &[K]) -> Vec<K> {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn vec_scale<K: Scalar>(a: &[K], f: &K) -> Vec<K> {
    a.iter().map(|x| x.clone() * f.clone()).collect()
}

pub fn vec_is_zero<K: Scalar>(a: &[K]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Standard basis vector.
pub fn unit_vec<K: Scalar>(len: usize, i: usize) -> Vec<K> {
    let mut v = vec![K::zero(); len];
    v[i] = K::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;
    use crate::Rat;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn qmat(rows: Vec<Vec<i64>>) -> Mat<Rat> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(q).collect())
                .collect(),
        )
    }

    #[test]
    fn kernel_rank_one_symmetric() {
        let m = qmat(vec![vec![1, 1], vec![1, 1]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row(0), &[q(1), q(-1)][..]);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = Mat::<Rat>::identity(3).kernel();
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn kernel_mod_5() {
        let m = Mat::from_rows(vec![vec![Fp::new(2, 5), Fp::new(4, 5)]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        // 2x + 4y = 0 over F_5 has canonical solution (1, 2).
        assert_eq!(k.basis().row(0), &[Fp::new(1, 5), Fp::new(2, 5)][..]);
    }

    #[test]
    fn solve_affine_examples() {
        let m = qmat(vec![vec![1, 0]]);
        let (x, k) = m.solve_affine(&[q(1)]).unwrap();
        assert_eq!(x, vec![q(1), q(0)]);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row(0), &[q(0), q(1)][..]);

        let zero = qmat(vec![vec![0]]);
        assert!(zero.solve_affine(&[q(1)]).is_none());

        // Invertible system: unique solution, cross-checked with the inverse.
        let m = qmat(vec![vec![2, 1], vec![1, 1]]);
        let b = [q(3), q(2)];
        let (x, k) = m.solve_affine(&b).unwrap();
        assert_eq!(k.dim(), 0);
        let xi = m.inverse().unwrap().mul_vec(&b);
        assert_eq!(x, xi);
        assert_eq!(m.mul_vec(&x), b.to_vec());
    }

    #[test]
    fn span_contains_examples() {
        let s = Subspace::from_generators(2, vec![vec![q(1), q(-1)]]);
        assert!(s.contains(&[q(2), q(-2)]));
        let s2 = Subspace::from_generators(2, vec![vec![q(1), q(0)]]);
        assert!(!s2.contains(&[q(0), q(1)]));
    }

    #[test]
    fn span_contains_combination_of_basis_rows() {
        let gens = vec![
            vec![q(1), q(2), q(0), q(1), q(3)],
            vec![q(0), q(1), q(1), q(0), q(2)],
            vec![q(2), q(0), q(1), q(1), q(0)],
        ];
        let s = Subspace::from_generators(5, gens);
        assert_eq!(s.dim(), 3);
        let v = vec_add(s.basis().row(0), s.basis().row(2));
        assert!(s.contains(&v));
    }

    #[test]
    fn rref_canonical_under_generator_shuffle() {
        let a = Subspace::from_generators(3, vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(7)]]);
        let b = Subspace::from_generators(
            3,
            vec![
                vec![q(2), q(4), q(7)],
                vec![q(3), q(6), q(10)],
                vec![q(1), q(2), q(3)],
            ],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn solve_affine_postcondition() {
        let m = qmat(vec![vec![1, 2, 3], vec![0, 1, 1]]);
        let b = [q(6), q(2)];
        let (x, k) = m.solve_affine(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b.to_vec());
        for row in k.basis_rows() {
            assert!(vec_is_zero(&m.mul_vec(row)));
        }
    }

    #[test]
    fn span_builder_matches_subspace() {
        let gens = vec![
            vec![q(0), q(2), q(4), q(2)],
            vec![q(1), q(1), q(0), q(0)],
            vec![q(1), q(3), q(4), q(2)],
        ];
        let s = Subspace::from_generators(4, gens.clone());
        let mut b = SpanBuilder::new(4);
        for g in &gens {
            b.insert_dense(g);
        }
        assert_eq!(b.rank(), 2);
        assert_eq!(b.to_subspace(), s);
        assert!(b.contains_dense(&vec_add(&gens[0], &gens[1])));
        assert!(!b.contains_dense(&[q(0), q(0), q(0), q(1)]));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = qmat(vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(m.det(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        let s = qmat(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(s.det(), q(0));
        assert!(s.inverse().is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        prop_compose! {
            fn small_mat()
                (rows in 1usize..5, cols in 1usize..5)
                (entries in proptest::collection::vec(-4i64..5, rows * cols),
                 rows in Just(rows), cols in Just(cols))
                -> Mat<Rat>
            {
                Mat::from_fn(rows, cols, |r, c| q(entries[r * cols + c]))
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn rank_nullity(m in small_mat()) {
                prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
            }

            #[test]
            fn kernel_vectors_are_in_kernel(m in small_mat()) {
                let k = m.kernel();
                for row in k.basis_rows() {
                    prop_assert!(vec_is_zero(&m.mul_vec(row)));
                }
            }

            #[test]
            fn subspace_equality_is_set_equality(m in small_mat()) {
                // Scaling and recombining generators does not change the RREF basis.
                let gens: Vec<Vec<Rat>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
                let mut shuffled: Vec<Vec<Rat>> = gens.iter().rev().cloned().collect();
                if shuffled.len() >= 2 {
                    let c = vec_add(&shuffled[0], &shuffled[1]);
                    shuffled.push(vec_scale(&c, &q(3)));
                }
                let a = Subspace::from_generators(m.cols(), gens);
                let b = Subspace::from_generators(m.cols(), shuffled);
                prop_assert_eq!(a, b);
            }
        }
    }
}
