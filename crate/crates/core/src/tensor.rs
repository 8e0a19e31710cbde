//! Balanced tensor products `A ⊗_B A` as explicit quotients of `A ⊗_k A`.
//!
//! The base algebra acts on the total algebra through the source and target
//! maps in four ways; a balanced tensor product is the quotient of the full
//! tensor square by the span of `(x·b) ⊗ y − x ⊗ (b·y)`. Nothing is ever
//! assumed well defined on a quotient: maps are pushed through
//! [`descend_map`], which verifies that relations land in relations before
//! producing the induced matrix.

use std::fmt;

use crate::algebra::{AlgMap, FinAlgebra};
use crate::linalg::{sparsify, unit_vec, Mat, SpanBuilder, SparseVec, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum TensorError {
    /// `s(b) t(b') != t(b') s(b)` at the witness pair.
    RangesDoNotCommute(usize, usize),
    /// A relation basis vector (by index) is not mapped into the target
    /// relations.
    DoesNotDescend(usize),
    ShapeMismatch(String),
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::RangesDoNotCommute(i, j) => {
                write!(
                    f,
                    "source/target ranges do not commute at base pair ({i}, {j})"
                )
            }
            TensorError::DoesNotDescend(i) => {
                write!(
                    f,
                    "map does not descend: relation {i} escapes the target relations"
                )
            }
            TensorError::ShapeMismatch(s) => write!(f, "shape mismatch: {s}"),
        }
    }
}

impl std::error::Error for TensorError {}

/// The four base-module structures on the total algebra `A` induced by the
/// source map `s` and target map `t`:
///
/// * `LowerLeft`  — `_B A`:  `b · a = s(b) a`
/// * `LowerRight` — `A_B`:   `a · b = t(b) a`
/// * `UpperRight` — `A^B`:   `a · b = a s(b)`
/// * `UpperLeft`  — `^B A`:  `b · a = a t(b)`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModKind {
    LowerLeft,
    LowerRight,
    UpperRight,
    UpperLeft,
}

impl ModKind {
    /// Matrix by which the base basis element `b` acts on `A`.
    pub fn action<K: Scalar>(
        self,
        a: &FinAlgebra<K>,
        s: &AlgMap<K>,
        t: &AlgMap<K>,
        b: &[K],
    ) -> Mat<K> {
        match self {
            ModKind::LowerLeft => a.left_mult(&s.apply(b)),
            ModKind::LowerRight => a.left_mult(&t.apply(b)),
            ModKind::UpperRight => a.right_mult(&s.apply(b)),
            ModKind::UpperLeft => a.right_mult(&t.apply(b)),
        }
    }
}

/// Quotient of a coordinate space by the span of a set of relations, with a
/// canonical section: quotient coordinates are the non-pivot columns of the
/// RREF of the relation span.
pub struct Quotient<K: Scalar> {
    ambient: usize,
    rels: SpanBuilder<K>,
    free_cols: Vec<usize>,
}

impl<K: Scalar> fmt::Debug for Quotient<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quotient(dim {} of {})", self.dim(), self.ambient)
    }
}

impl<K: Scalar> Quotient<K> {
    pub fn from_relations(ambient: usize, gens: impl IntoIterator<Item = SparseVec<K>>) -> Self {
        let mut rels = SpanBuilder::new(ambient);
        for g in gens {
            rels.insert(g);
        }
        let free_cols = rels.free_cols();
        Quotient {
            ambient,
            rels,
            free_cols,
        }
    }

    pub fn trivial(ambient: usize) -> Self {
        Quotient::from_relations(ambient, std::iter::empty())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.free_cols.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.rels.rank()
    }

    pub fn relations(&self) -> Subspace<K> {
        self.rels.to_subspace()
    }

    pub fn contains_relation(&self, v: &[K]) -> bool {
        self.rels.contains_dense(v)
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.ambient, "project: ambient mismatch");
        let red = self.rels.reduce(sparsify(v));
        let mut out = vec![K::zero(); self.free_cols.len()];
        for (c, x) in red {
            let pos = self
                .free_cols
                .binary_search(&c)
                .expect("reduced vector is supported on free columns");
            out[pos] = x;
        }
        out
    }

    /// Canonical ambient representative of quotient coordinates.
    pub fn section(&self, coords: &[K]) -> Vec<K> {
        assert_eq!(coords.len(), self.free_cols.len(), "section: dim mismatch");
        let mut out = vec![K::zero(); self.ambient];
        for (pos, c) in self.free_cols.iter().enumerate() {
            out[*c] = coords[pos].clone();
        }
        out
    }

    /// Canonical ambient representative (`section ∘ project`).
    pub fn reduce(&self, v: &[K]) -> Vec<K> {
        self.section(&self.project(v))
    }

    /// Project every column of an ambient-valued map.
    pub fn project_map(&self, cols: Vec<Vec<K>>) -> Mat<K> {
        Mat::from_cols(cols.into_iter().map(|v| self.project(&v)).collect())
    }
}

/// A balanced tensor product `A ⊗_B A`: the quotient of the tensor square by
/// `(x·b) ⊗ y − x ⊗ (b·y)` for the declared pair of module structures.
pub struct BalancedTensor<K: Scalar> {
    dim_a: usize,
    first: ModKind,
    second: ModKind,
    quotient: Quotient<K>,
}

impl<K: Scalar> fmt::Debug for BalancedTensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BalancedTensor({:?} ⊗ {:?}, dim {} of {})",
            self.first,
            self.second,
            self.dim(),
            self.quotient.ambient_dim()
        )
    }
}

impl<K: Scalar> BalancedTensor<K> {
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn first_kind(&self) -> ModKind {
        self.first
    }

    pub fn second_kind(&self) -> ModKind {
        self.second
    }

    pub fn quotient(&self) -> &Quotient<K> {
        &self.quotient
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn project(&self, v: &[K]) -> Vec<K> {
        self.quotient.project(v)
    }

    pub fn section(&self, coords: &[K]) -> Vec<K> {
        self.quotient.section(coords)
    }
}

/// Relation generators `(x·b) ⊗ y − x ⊗ (b·y)` for arbitrary factor spaces,
/// given the action matrices of each base basis element on the two factors.
pub fn bimodule_relations<K: Scalar>(
    dim_u: usize,
    dim_v: usize,
    acts_u: &[Mat<K>],
    acts_v: &[Mat<K>],
) -> Vec<SparseVec<K>> {
    assert_eq!(acts_u.len(), acts_v.len());
    let mut gens = Vec::new();
    for (au, av) in acts_u.iter().zip(acts_v) {
        for i in 0..dim_u {
            let ui = au.col(i);
            for j in 0..dim_v {
                let vj = av.col(j);
                let mut g: SparseVec<K> = Vec::new();
                for (k, x) in ui.iter().enumerate() {
                    if !x.is_zero() {
                        g.push((k * dim_v + j, x.clone()));
                    }
                }
                for (l, x) in vj.iter().enumerate() {
                    if !x.is_zero() {
                        let col = i * dim_v + l;
                        match g.binary_search_by_key(&col, |(c, _)| *c) {
                            Ok(pos) => {
                                g[pos].1 = g[pos].1.clone() - x.clone();
                                if g[pos].1.is_zero() {
                                    g.remove(pos);
                                }
                            }
                            Err(pos) => g.insert(pos, (col, -x.clone())),
                        }
                    }
                }
                if !g.is_empty() {
                    gens.push(g);
                }
            }
        }
    }
    gens
}

/// Quotient of `U ⊗ V` by bimodule relations given by action matrices.
pub fn balanced_quotient<K: Scalar>(
    dim_u: usize,
    dim_v: usize,
    acts_u: &[Mat<K>],
    acts_v: &[Mat<K>],
) -> Quotient<K> {
    Quotient::from_relations(
        dim_u * dim_v,
        bimodule_relations(dim_u, dim_v, acts_u, acts_v),
    )
}

/// Build `A ⊗_B A` for the declared module-structure pair. The first kind is
/// used as the right structure on the first factor, the second as the left
/// structure on the second factor; base elements are pushed through `s`/`t`
/// into `A` when forming the relations.
pub fn balanced_tensor<K: Scalar>(
    a: &FinAlgebra<K>,
    b: &FinAlgebra<K>,
    s: &AlgMap<K>,
    t: &AlgMap<K>,
    first: ModKind,
    second: ModKind,
) -> Result<BalancedTensor<K>, TensorError> {
    if s.target_dim() != a.dim() || t.target_dim() != a.dim() {
        return Err(TensorError::ShapeMismatch(
            "source/target maps must land in A".into(),
        ));
    }
    for i in 0..b.dim() {
        let si = s.apply(&unit_vec(b.dim(), i));
        for j in 0..b.dim() {
            let tj = t.apply(&unit_vec(b.dim(), j));
            if a.mul_vec(&si, &tj) != a.mul_vec(&tj, &si) {
                return Err(TensorError::RangesDoNotCommute(i, j));
            }
        }
    }
    let acts: Vec<(Mat<K>, Mat<K>)> = (0..b.dim())
        .map(|i| {
            let e = unit_vec(b.dim(), i);
            (first.action(a, s, t, &e), second.action(a, s, t, &e))
        })
        .collect();
    let acts_u: Vec<Mat<K>> = acts.iter().map(|(u, _)| u.clone()).collect();
    let acts_v: Vec<Mat<K>> = acts.iter().map(|(_, v)| v.clone()).collect();
    Ok(BalancedTensor {
        dim_a: a.dim(),
        first,
        second,
        quotient: balanced_quotient(a.dim(), a.dim(), &acts_u, &acts_v),
    })
}

/// Where a descended map lands: a quotient or a plain coordinate space.
pub enum DescendTarget<'a, K: Scalar> {
    Quotient(&'a Quotient<K>),
    Plain(usize),
}

/// Push a linear map on ambient coordinates down to the quotients.
///
/// `f` sends source-ambient vectors to target-ambient vectors. The map
/// descends iff every source relation lands in the target relations (in the
/// zero space, for a plain target); the induced matrix is
/// `proj_tgt ∘ f ∘ sect_src` computed after that check.
pub fn descend_with<K: Scalar>(
    f: impl Fn(&[K]) -> Vec<K>,
    src: &Quotient<K>,
    tgt: &DescendTarget<'_, K>,
) -> Result<Mat<K>, TensorError> {
    let rels = src.relations();
    for (i, row) in rels.basis_rows().enumerate() {
        let image = f(row);
        let ok = match tgt {
            DescendTarget::Quotient(q) => q.contains_relation(&image),
            DescendTarget::Plain(_) => image.iter().all(|x| x.is_zero()),
        };
        if !ok {
            return Err(TensorError::DoesNotDescend(i));
        }
    }
    let cols: Vec<Vec<K>> = (0..src.dim())
        .map(|j| {
            let lift = src.section(&unit_vec(src.dim(), j));
            f(&lift)
        })
        .collect();
    Ok(match tgt {
        DescendTarget::Quotient(q) => q.project_map(cols),
        DescendTarget::Plain(_) => Mat::from_cols(cols),
    })
}

/// Matrix form of [`descend_with`].
pub fn descend_map<K: Scalar>(
    f: &Mat<K>,
    src: &Quotient<K>,
    tgt: &DescendTarget<'_, K>,
) -> Result<Mat<K>, TensorError> {
    if f.cols() != src.ambient_dim() {
        return Err(TensorError::ShapeMismatch(format!(
            "map has {} columns, source ambient is {}",
            f.cols(),
            src.ambient_dim()
        )));
    }
    descend_with(|v| f.mul_vec(v), src, tgt)
}

/// Quotient of `U ⊗ V ⊗ W` by relations supported on the (1,2) and (2,3)
/// slots. The relation span is the sum `R12 ⊗ W + U ⊗ R23`.
pub fn iterated_quotient<K: Scalar>(
    dims: (usize, usize, usize),
    rel12: &Quotient<K>,
    rel23: &Quotient<K>,
) -> Quotient<K> {
    let (n1, n2, n3) = dims;
    assert_eq!(rel12.ambient_dim(), n1 * n2);
    assert_eq!(rel23.ambient_dim(), n2 * n3);
    let r12 = rel12.relations();
    let r23 = rel23.relations();
    let mut gens: Vec<SparseVec<K>> = Vec::new();
    for row in r12.basis_rows() {
        // (i, j)-supported row becomes (i, j, k) for each k.
        for k in 0..n3 {
            let g: SparseVec<K> = sparsify(row)
                .into_iter()
                .map(|(c, x)| (c * n3 + k, x))
                .collect();
            gens.push(g);
        }
    }
    for i in 0..n1 {
        for row in r23.basis_rows() {
            let g: SparseVec<K> = sparsify(row)
                .into_iter()
                .map(|(c, x)| (i * n2 * n3 + c, x))
                .collect();
            gens.push(g);
        }
    }
    Quotient::from_relations(n1 * n2 * n3, gens)
}

/// Apply a linear map to one slot of a tensor-coordinate vector without
/// materializing the Kronecker matrix.
pub fn apply_to_slot<K: Scalar>(v: &[K], dims: &[usize], slot: usize, f: &Mat<K>) -> Vec<K> {
    let total: usize = dims.iter().product();
    assert_eq!(v.len(), total);
    assert_eq!(f.cols(), dims[slot]);
    let stride: usize = dims[slot + 1..].iter().product();
    let block = dims[slot] * stride;
    let mut out_dims = dims.to_vec();
    out_dims[slot] = f.rows();
    let out_total: usize = out_dims.iter().product();
    let out_block = f.rows() * stride;
    let mut out = vec![K::zero(); out_total];
    for (idx, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let outer = idx / block;
        let rem = idx % block;
        let i_slot = rem / stride;
        let inner = rem % stride;
        for r in 0..f.rows() {
            let c = f.get(r, i_slot);
            if c.is_zero() {
                continue;
            }
            let oidx = outer * out_block + r * stride + inner;
            out[oidx] = out[oidx].clone() + c.clone() * x.clone();
        }
    }
    out
}

/// Transposition operator `U ⊗ V -> V ⊗ U` on row-major coordinates.
pub fn flip_mat<K: Scalar>(n1: usize, n2: usize) -> Mat<K> {
    let mut m = Mat::zeros(n1 * n2, n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            m.set(j * n1 + i, i * n2 + j, K::one());
        }
    }
    m
}

/// Flip a tensor-square vector without building the matrix.
pub fn flip_vec<K: Scalar>(v: &[K], n1: usize, n2: usize) -> Vec<K> {
    assert_eq!(v.len(), n1 * n2);
    let mut out = vec![K::zero(); n1 * n2];
    for i in 0..n1 {
        for j in 0..n2 {
            out[j * n1 + i] = v[i * n2 + j].clone();
        }
    }
    out
}

/// Componentwise product `(x ⊗ y)(x' ⊗ y') = xx' ⊗ yy'` of two tensor-square
/// vectors; only meaningful on quotients once the Takeuchi condition holds.
pub fn pair_product<K: Scalar>(a: &FinAlgebra<K>, v: &[K], w: &[K]) -> Vec<K> {
    let n = a.dim();
    assert_eq!(v.len(), n * n);
    assert_eq!(w.len(), n * n);
    let mut out = vec![K::zero(); n * n];
    for (vi, vx) in v.iter().enumerate() {
        if vx.is_zero() {
            continue;
        }
        let (i1, i2) = (vi / n, vi % n);
        for (wj, wx) in w.iter().enumerate() {
            if wx.is_zero() {
                continue;
            }
            let (j1, j2) = (wj / n, wj % n);
            let c = vx.clone() * wx.clone();
            let p1 = &a.mult_table()[i1][j1];
            let p2 = &a.mult_table()[i2][j2];
            for (k1, y1) in p1.iter().enumerate() {
                if y1.is_zero() {
                    continue;
                }
                for (k2, y2) in p2.iter().enumerate() {
                    if y2.is_zero() {
                        continue;
                    }
                    let idx = k1 * n + k2;
                    out[idx] = out[idx].clone() + c.clone() * y1.clone() * y2.clone();
                }
            }
        }
    }
    out
}

/// `x ⊗ y` on plain coordinates.
pub fn tensor_vec<K: Scalar>(x: &[K], y: &[K]) -> Vec<K> {
    let mut out = vec![K::zero(); x.len() * y.len()];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            out[i * y.len() + j] = a.clone() * b.clone();
        }
    }
    out
}

/// Multiplication `A ⊗ A -> A` as a function on tensor-square coordinates.
pub fn mult_map<K: Scalar>(a: &FinAlgebra<K>, v: &[K]) -> Vec<K> {
    let n = a.dim();
    assert_eq!(v.len(), n * n);
    let mut out = vec![K::zero(); n];
    for (idx, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (i, j) = (idx / n, idx % n);
        for (k, c) in a.mult_table()[i][j].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[k] = out[k].clone() + x.clone() * c.clone();
        }
    }
    out
}
