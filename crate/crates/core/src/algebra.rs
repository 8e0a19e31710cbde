//! Finite-dimensional unital associative algebras by structure constants.
//!
//! An algebra is a basis-indexed multiplication table `mult[i][j]` (the
//! coordinate vector of `e_i · e_j`) together with the coordinates of the
//! unit. Construction verifies associativity and the unit laws and fails
//! with a witness otherwise.

use std::fmt;

use crate::linalg::{unit_vec, vec_add, vec_scale, Mat, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraError {
    /// `(e_i e_j) e_k != e_i (e_j e_k)` at the witness triple.
    NotAssociative(usize, usize, usize),
    /// `1 · e_i != e_i` or `e_i · 1 != e_i` at the witness index.
    UnitLawFails(usize),
    ShapeMismatch(String),
    FieldMismatch,
    /// A map failed multiplicativity at the witness basis pair.
    NotMultiplicative(usize, usize),
    UnitNotPreserved,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NotAssociative(i, j, k) => {
                write!(f, "associativity fails at basis triple ({i}, {j}, {k})")
            }
            AlgebraError::UnitLawFails(i) => write!(f, "unit law fails at basis index {i}"),
            AlgebraError::ShapeMismatch(s) => write!(f, "shape mismatch: {s}"),
            AlgebraError::FieldMismatch => write!(f, "operands live over different fields"),
            AlgebraError::NotMultiplicative(i, j) => {
                write!(
                    f,
                    "map is not (anti)multiplicative at basis pair ({i}, {j})"
                )
            }
            AlgebraError::UnitNotPreserved => write!(f, "map does not preserve the unit"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Finite-dimensional unital associative algebra over an exact field.
#[derive(Clone, PartialEq)]
pub struct FinAlgebra<K> {
    dim: usize,
    /// `mult[i][j]` is the coordinate vector of `e_i · e_j`.
    mult: Vec<Vec<Vec<K>>>,
    unit: Vec<K>,
}

impl<K: Scalar> fmt::Debug for FinAlgebra<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAlgebra(dim {})", self.dim)
    }
}

impl<K: Scalar> FinAlgebra<K> {
    /// Verified constructor: checks the unit laws and all associativity
    /// triples (witnessing the lexicographically first failure).
    pub fn new(dim: usize, mult: Vec<Vec<Vec<K>>>, unit: Vec<K>) -> Result<Self, AlgebraError> {
        if mult.len() != dim
            || mult.iter().any(|row| row.len() != dim)
            || mult.iter().any(|row| row.iter().any(|v| v.len() != dim))
            || unit.len() != dim
        {
            return Err(AlgebraError::ShapeMismatch(format!(
                "expected {dim}^3 structure constants and a length-{dim} unit"
            )));
        }
        let a = FinAlgebra { dim, mult, unit };
        for i in 0..dim {
            let e = unit_vec(dim, i);
            if a.mul_vec(&a.unit, &e) != e || a.mul_vec(&e, &a.unit) != e {
                return Err(AlgebraError::UnitLawFails(i));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = a.mult[i][j].clone();
                for k in 0..dim {
                    let jk = &a.mult[j][k];
                    let lhs = a.mul_vec(&ij, &unit_vec(dim, k));
                    let rhs = a.mul_vec(&unit_vec(dim, i), jk);
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(a)
    }

    /// The one-dimensional algebra `k`.
    pub fn base_field() -> Self {
        FinAlgebra {
            dim: 1,
            mult: vec![vec![vec![K::one()]]],
            unit: vec![K::one()],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[K] {
        &self.unit
    }

    pub fn mult_table(&self) -> &Vec<Vec<Vec<K>>> {
        &self.mult
    }

    /// Product of two coordinate vectors.
    pub fn mul_vec(&self, x: &[K], y: &[K]) -> Vec<K> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![K::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].clone() * y[j].clone();
                out = vec_add(&out, &vec_scale(&self.mult[i][j], &c));
            }
        }
        out
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult(&self, x: &[K]) -> Mat<K> {
        Mat::from_cols(
            (0..self.dim)
                .map(|j| self.mul_vec(x, &unit_vec(self.dim, j)))
                .collect(),
        )
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_mult(&self, x: &[K]) -> Mat<K> {
        Mat::from_cols(
            (0..self.dim)
                .map(|j| self.mul_vec(&unit_vec(self.dim, j), x))
                .collect(),
        )
    }

    /// Opposite algebra: `mult'[i][j] = mult[j][i]`, same unit.
    pub fn opposite(&self) -> FinAlgebra<K> {
        let mult = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.mult[j][i].clone()).collect())
            .collect();
        FinAlgebra {
            dim: self.dim,
            mult,
            unit: self.unit.clone(),
        }
    }

    /// Tensor product algebra with componentwise product. Basis ordering is
    /// row-major with the left factor as the major index:
    /// `e_{(i,j)} = a_i ⊗ b_j  ->  i * dim(b) + j`.
    pub fn tensor(&self, other: &FinAlgebra<K>) -> FinAlgebra<K> {
        let n = self.dim * other.dim;
        let idx = |i: usize, j: usize| i * other.dim + j;
        let mut mult = vec![vec![vec![K::zero(); n]; n]; n];
        for i1 in 0..self.dim {
            for j1 in 0..other.dim {
                for i2 in 0..self.dim {
                    for j2 in 0..other.dim {
                        let a = &self.mult[i1][i2];
                        let b = &other.mult[j1][j2];
                        let target = &mut mult[idx(i1, j1)][idx(i2, j2)];
                        for (p, ap) in a.iter().enumerate() {
                            if ap.is_zero() {
                                continue;
                            }
                            for (q, bq) in b.iter().enumerate() {
                                if bq.is_zero() {
                                    continue;
                                }
                                target[idx(p, q)] =
                                    target[idx(p, q)].clone() + ap.clone() * bq.clone();
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![K::zero(); n];
        for (i, ui) in self.unit.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in other.unit.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                unit[idx(i, j)] = ui.clone() * vj.clone();
            }
        }
        FinAlgebra { dim: n, mult, unit }
    }

    /// Embed `x ⊗ y` into the row-major tensor basis.
    pub fn tensor_elem(&self, other: &FinAlgebra<K>, x: &[K], y: &[K]) -> Vec<K> {
        let mut v = vec![K::zero(); self.dim * other.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..other.dim {
                if y[j].is_zero() {
                    continue;
                }
                v[i * other.dim + j] = x[i].clone() * y[j].clone();
            }
        }
        v
    }

    /// Center `{z : z e_i = e_i z for all i}` as a canonical subspace.
    pub fn center(&self) -> Subspace<K> {
        let mut rows: Vec<Vec<K>> = Vec::new();
        for i in 0..self.dim {
            let e = unit_vec(self.dim, i);
            let diff = self.left_mult(&e).sub(&self.right_mult(&e));
            for r in 0..diff.rows() {
                rows.push(diff.row(r).to_vec());
            }
        }
        Mat::from_rows(rows).kernel()
    }
}

/// Whether a linear map respects or anti-respects multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Homomorphism,
    AntiHomomorphism,
}

/// A verified unital (anti)homomorphism of algebras, stored as the matrix
/// taking source coordinates to target coordinates.
#[derive(Clone, Debug)]
pub struct AlgMap<K: Scalar> {
    matrix: Mat<K>,
    variance: Variance,
    source_dim: usize,
    target_dim: usize,
}

impl<K: Scalar> AlgMap<K> {
    /// Verify that `matrix` is a unital (anti)homomorphism `source -> target`.
    pub fn new(
        matrix: Mat<K>,
        source: &FinAlgebra<K>,
        target: &FinAlgebra<K>,
        variance: Variance,
    ) -> Result<Self, AlgebraError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "map must be {}x{}, got {}x{}",
                target.dim(),
                source.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.mul_vec(source.unit()) != target.unit() {
            return Err(AlgebraError::UnitNotPreserved);
        }
        for i in 0..source.dim() {
            let fi = matrix.col(i);
            for j in 0..source.dim() {
                let fj = matrix.col(j);
                let lhs = matrix.mul_vec(&source.mult_table()[i][j]);
                let rhs = match variance {
                    Variance::Homomorphism => target.mul_vec(&fi, &fj),
                    Variance::AntiHomomorphism => target.mul_vec(&fj, &fi),
                };
                if lhs != rhs {
                    return Err(AlgebraError::NotMultiplicative(i, j));
                }
            }
        }
        Ok(AlgMap {
            matrix,
            variance,
            source_dim: source.dim(),
            target_dim: target.dim(),
        })
    }

    pub fn matrix(&self) -> &Mat<K> {
        &self.matrix
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn apply(&self, x: &[K]) -> Vec<K> {
        self.matrix.mul_vec(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_traits::Zero;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn qv(v: Vec<i64>) -> Vec<Rat> {
        v.into_iter().map(q).collect()
    }

    /// `Q[x]/(x^2)`: basis {1, x}.
    fn dual_numbers() -> FinAlgebra<Rat> {
        FinAlgebra::new(
            2,
            vec![
                vec![qv(vec![1, 0]), qv(vec![0, 1])],
                vec![qv(vec![0, 1]), qv(vec![0, 0])],
            ],
            qv(vec![1, 0]),
        )
        .unwrap()
    }

    /// Group algebra `Q C_2`: basis {1, g}, `g^2 = 1`.
    fn qc2() -> FinAlgebra<Rat> {
        FinAlgebra::new(
            2,
            vec![
                vec![qv(vec![1, 0]), qv(vec![0, 1])],
                vec![qv(vec![0, 1]), qv(vec![1, 0])],
            ],
            qv(vec![1, 0]),
        )
        .unwrap()
    }

    /// Upper triangular 2x2 matrices: basis {E11, E12, E22}.
    fn ut2() -> FinAlgebra<Rat> {
        let z = || qv(vec![0, 0, 0]);
        FinAlgebra::new(
            3,
            vec![
                vec![qv(vec![1, 0, 0]), qv(vec![0, 1, 0]), z()],
                vec![z(), z(), qv(vec![0, 1, 0])],
                vec![z(), z(), qv(vec![0, 0, 1])],
            ],
            qv(vec![1, 0, 1]),
        )
        .unwrap()
    }

    /// Full 2x2 matrices: basis {E11, E12, E21, E22}.
    fn m2() -> FinAlgebra<Rat> {
        let dim = 4;
        // E_{ab} E_{cd} = delta_{bc} E_{ad}, with (a,b) -> index 2a + b.
        let mut mult = vec![vec![vec![q(0); dim]; dim]; dim];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        if b == c {
                            mult[2 * a + b][2 * c + d][2 * a + d] = q(1);
                        }
                    }
                }
            }
        }
        FinAlgebra::new(dim, mult, qv(vec![1, 0, 0, 1])).unwrap()
    }

    #[test]
    fn dual_numbers_accepted() {
        assert_eq!(dual_numbers().dim(), 2);
    }

    #[test]
    fn missing_unit_rejected() {
        // e1 e1 = e2, e2 e2 = e1, e1 e2 = e2 e1 = 0: the declared unit
        // vector satisfies no unit law.
        let err = FinAlgebra::new(
            2,
            vec![
                vec![qv(vec![0, 1]), qv(vec![0, 0])],
                vec![qv(vec![0, 0]), qv(vec![1, 0])],
            ],
            qv(vec![1, 0]),
        )
        .unwrap_err();
        assert!(matches!(err, AlgebraError::UnitLawFails(_)));
    }

    #[test]
    fn qc2_accepted_and_commutative() {
        let a = qc2();
        let op = a.opposite();
        assert_eq!(a, op);
    }

    #[test]
    fn opposite_is_involutive() {
        let a = ut2();
        assert_eq!(a.opposite().opposite(), a);
    }

    #[test]
    fn opposite_of_ut2_products() {
        let a = ut2();
        let op = a.opposite();
        let e11 = unit_vec(3, 0);
        let e12 = unit_vec(3, 1);
        assert_eq!(a.mul_vec(&e11, &e12), unit_vec(3, 1));
        assert!(op.mul_vec(&e11, &e12).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn tensor_with_base_field_is_identity() {
        let k = FinAlgebra::<Rat>::base_field();
        let b = ut2();
        let t = k.tensor(&b);
        assert_eq!(t, b);
    }

    #[test]
    fn tensor_dims_and_commuting_factors() {
        let b = ut2();
        let t = b.tensor(&b.opposite());
        assert_eq!(t.dim(), 9);
        // (E11 ⊗ 1)(1 ⊗ E22) = E11 ⊗ E22 = (1 ⊗ E22)(E11 ⊗ 1).
        let bop = b.opposite();
        let one = qv(vec![1, 0, 1]);
        let e11 = unit_vec(3, 0);
        let e22 = unit_vec(3, 2);
        let lhs = t.mul_vec(
            &b.tensor_elem(&bop, &e11, &one),
            &b.tensor_elem(&bop, &one, &e22),
        );
        let rhs = t.mul_vec(
            &b.tensor_elem(&bop, &one, &e22),
            &b.tensor_elem(&bop, &e11, &one),
        );
        assert_eq!(lhs, b.tensor_elem(&bop, &e11, &e22));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_is_a_homomorphism() {
        let a = qc2();
        AlgMap::new(Mat::identity(2), &a, &a, Variance::Homomorphism).unwrap();
    }

    #[test]
    fn flip_on_enveloping_algebra_is_anti() {
        let b = ut2();
        let t = b.tensor(&b.opposite());
        // flip: b1 ⊗ b2 -> b2 ⊗ b1.
        let n = 3;
        let mut flip = Mat::zeros(9, 9);
        for i in 0..n {
            for j in 0..n {
                flip.set(j * n + i, i * n + j, q(1));
            }
        }
        AlgMap::new(flip, &t, &t, Variance::AntiHomomorphism).unwrap();
    }

    #[test]
    fn sign_character_of_c2() {
        let a = qc2();
        let f = Mat::from_rows(vec![qv(vec![1, 0]), qv(vec![0, -1])]);
        AlgMap::new(f, &a, &a, Variance::Homomorphism).unwrap();
    }

    #[test]
    fn non_multiplicative_map_rejected() {
        let a = qc2();
        let f = Mat::from_rows(vec![qv(vec![1, 0]), qv(vec![0, 2])]);
        let err = AlgMap::new(f, &a, &a, Variance::Homomorphism).unwrap_err();
        assert!(matches!(err, AlgebraError::NotMultiplicative(1, 1)));
    }

    #[test]
    fn centers() {
        assert_eq!(qc2().center().dim(), 2);
        let c = ut2().center();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&qv(vec![1, 0, 1])));
        let c = m2().center();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&qv(vec![1, 0, 0, 1])));
    }

    #[test]
    fn center_contains_unit_and_tensor_centers() {
        for a in [qc2(), ut2(), m2(), dual_numbers()] {
            assert!(a.center().contains(a.unit()));
        }
        let a = ut2();
        let b = m2();
        let t = a.tensor(&b);
        let tc = t.center();
        for za in a.center().basis_rows() {
            for zb in b.center().basis_rows() {
                assert!(tc.contains(&a.tensor_elem(&b, za, zb)));
            }
        }
    }

    #[test]
    fn mk_accepts_iff_opposite_accepts() {
        let a = ut2();
        let op = a.opposite();
        FinAlgebra::new(op.dim(), op.mult_table().clone(), op.unit().to_vec()).unwrap();
    }

    #[test]
    fn homomorphisms_compose() {
        let a = qc2();
        let id = Mat::identity(2);
        let sign = Mat::from_rows(vec![qv(vec![1, 0]), qv(vec![0, -1])]);
        for f in [&id, &sign] {
            for g in [&id, &sign] {
                let fg = f.mul(g);
                AlgMap::new(fg, &a, &a, Variance::Homomorphism).unwrap();
            }
        }
    }
}
