//! Shared test fixtures: small algebras and the enveloping-algebra maps.

use crate::algebra::{AlgMap, FinAlgebra, Variance};
use crate::linalg::{unit_vec, Mat};
use crate::Rat;

pub fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn qv(v: Vec<i64>) -> Vec<Rat> {
    v.into_iter().map(q).collect()
}

/// Group algebra `Q C_2`: basis {1, g}, `g^2 = 1`.
pub fn qc2() -> FinAlgebra<Rat> {
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

/// `Q[x]/(x^2)`: basis {1, x}.
pub fn dual_numbers() -> FinAlgebra<Rat> {
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

/// Upper triangular 2x2 matrices: basis {E11, E12, E22}.
pub fn ut2() -> FinAlgebra<Rat> {
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
pub fn m2() -> FinAlgebra<Rat> {
    let dim = 4;
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

/// `A = B ⊗ B^op` with `s(b) = b ⊗ 1` and `t(b) = 1 ⊗ b`.
pub fn enveloping(b: &FinAlgebra<Rat>) -> (FinAlgebra<Rat>, AlgMap<Rat>, AlgMap<Rat>) {
    let bop = b.opposite();
    let a = b.tensor(&bop);
    let n = b.dim();
    let smat = Mat::from_cols(
        (0..n)
            .map(|i| b.tensor_elem(&bop, &unit_vec(n, i), b.unit()))
            .collect(),
    );
    let tmat = Mat::from_cols(
        (0..n)
            .map(|i| b.tensor_elem(&bop, b.unit(), &unit_vec(n, i)))
            .collect(),
    );
    let s = AlgMap::new(smat, b, &a, Variance::Homomorphism).unwrap();
    let t = AlgMap::new(tmat, b, &a, Variance::AntiHomomorphism).unwrap();
    (a, s, t)
}

/// Unit inclusions `k -> A` as source and target maps.
pub fn unit_maps(a: &FinAlgebra<Rat>) -> (AlgMap<Rat>, AlgMap<Rat>) {
    let k = FinAlgebra::<Rat>::base_field();
    let m = Mat::from_cols(vec![a.unit().to_vec()]);
    (
        AlgMap::new(m.clone(), &k, a, Variance::Homomorphism).unwrap(),
        AlgMap::new(m, &k, a, Variance::AntiHomomorphism).unwrap(),
    )
}

/// Coproduct lift with every basis vector grouplike (group algebras).
pub fn grouplike_gamma(n: usize) -> Mat<Rat> {
    let mut m = Mat::zeros(n * n, n);
    for i in 0..n {
        m.set(i * n + i, i, q(1));
    }
    m
}

/// Counit of a group algebra: every group element maps to 1.
pub fn group_counit(n: usize) -> Mat<Rat> {
    Mat::from_rows(vec![vec![q(1); n]])
}

/// All structure matrices of the Lu algebroid over a base `B`:
/// `A = B ⊗ B^op`, left side over `B`, right side over `B^op`,
/// antipode = flip.
pub struct LuData {
    pub a: FinAlgebra<Rat>,
    pub base_l: FinAlgebra<Rat>,
    pub s_l: Mat<Rat>,
    pub t_l: Mat<Rat>,
    pub gamma_l: Mat<Rat>,
    pub pi_l: Mat<Rat>,
    pub base_r: FinAlgebra<Rat>,
    pub s_r: Mat<Rat>,
    pub t_r: Mat<Rat>,
    pub gamma_r: Mat<Rat>,
    pub pi_r: Mat<Rat>,
    pub antipode: Mat<Rat>,
}

pub fn lu_data(b: &FinAlgebra<Rat>) -> LuData {
    let bop = b.opposite();
    let a = b.tensor(&bop);
    let n = b.dim();
    let na = a.dim();
    let s_l = Mat::from_cols(
        (0..n)
            .map(|i| b.tensor_elem(&bop, &unit_vec(n, i), b.unit()))
            .collect(),
    );
    let t_l = Mat::from_cols(
        (0..n)
            .map(|i| b.tensor_elem(&bop, b.unit(), &unit_vec(n, i)))
            .collect(),
    );
    let gamma_l = Mat::from_cols(
        (0..na)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                crate::tensor::tensor_vec(
                    &b.tensor_elem(&bop, &unit_vec(n, i), b.unit()),
                    &b.tensor_elem(&bop, b.unit(), &unit_vec(n, j)),
                )
            })
            .collect(),
    );
    let pi_l = Mat::from_cols(
        (0..na)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                b.mul_vec(&unit_vec(n, i), &unit_vec(n, j))
            })
            .collect(),
    );
    // Antipode = flip of the tensor factors.
    let mut antipode = Mat::zeros(na, na);
    for i in 0..n {
        for j in 0..n {
            antipode.set(j * n + i, i * n + j, q(1));
        }
    }
    // Right structure: s_R = S ∘ s_L, t_R = S ∘ t_L,
    // γ_R = (S ⊗ S) ∘ γ_L^op ∘ S, π_R = π_L ∘ S.
    let s_r = antipode.mul(&s_l);
    let t_r = antipode.mul(&t_l);
    let gamma_r = Mat::from_cols(
        (0..na)
            .map(|idx| {
                let sa = antipode.mul_vec(&unit_vec(na, idx));
                let g = gamma_l.mul_vec(&sa);
                let flipped = crate::tensor::flip_vec(&g, na, na);
                let both = crate::tensor::apply_to_slot(
                    &crate::tensor::apply_to_slot(&flipped, &[na, na], 0, &antipode),
                    &[na, na],
                    1,
                    &antipode,
                );
                both
            })
            .collect(),
    );
    let pi_r = pi_l.mul(&antipode);
    LuData {
        a,
        base_l: b.clone(),
        s_l,
        t_l,
        gamma_l,
        pi_l,
        base_r: bop,
        s_r,
        t_r,
        gamma_r,
        pi_r,
        antipode,
    }
}
