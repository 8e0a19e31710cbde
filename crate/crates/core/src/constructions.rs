//! Built-in example factories: the Lu algebroid over any finite-dimensional
//! base algebra, Hopf algebras embedded as base-field Hopf algebroids, and
//! the named catalog used by the command line and the test suites.

use std::fmt;

use crate::algebra::FinAlgebra;
use crate::bialgebroid::{LeftBialgebroid, RightBialgebroid};
use crate::hopfalgebroid::{HopfAlgebroid, HopfError};
use crate::linalg::{unit_vec, Mat};
use crate::scalar::{Fp, Scalar};
use crate::tensor::{apply_to_slot, flip_vec, tensor_vec};
use crate::Rat;

/// The one-dimensional base algebra with a concrete field unit (this keeps
/// prime-field constants carrying their modulus).
pub fn base_field_like<K: Scalar>(one: &K) -> FinAlgebra<K> {
    FinAlgebra::new(1, vec![vec![vec![one.clone()]]], vec![one.clone()])
        .expect("the base field is an algebra")
}

/// Group algebra of the cyclic group of the given order; basis `{g^i}`.
pub fn cyclic_group_algebra<K: Scalar>(order: usize, one: &K) -> FinAlgebra<K> {
    let zero = K::embed_int(0, one);
    let mut mult = vec![vec![vec![zero.clone(); order]; order]; order];
    for i in 0..order {
        for j in 0..order {
            mult[i][j][(i + j) % order] = one.clone();
        }
    }
    let mut unit = vec![zero; order];
    unit[0] = one.clone();
    FinAlgebra::new(order, mult, unit).expect("group algebras are associative")
}

/// Upper triangular 2x2 matrices, basis `{E11, E12, E22}`.
pub fn ut2_algebra<K: Scalar>(one: &K) -> FinAlgebra<K> {
    let z = K::embed_int(0, one);
    let zv = || vec![z.clone(), z.clone(), z.clone()];
    let v = |a: i64, b: i64, c: i64| {
        vec![
            K::embed_int(a, one),
            K::embed_int(b, one),
            K::embed_int(c, one),
        ]
    };
    FinAlgebra::new(
        3,
        vec![
            vec![v(1, 0, 0), v(0, 1, 0), zv()],
            vec![zv(), zv(), v(0, 1, 0)],
            vec![zv(), zv(), v(0, 0, 1)],
        ],
        v(1, 0, 1),
    )
    .expect("UT(2) is an algebra")
}

/// Full 2x2 matrix algebra, basis `{E11, E12, E21, E22}` (row-major).
pub fn m2_algebra<K: Scalar>(one: &K) -> FinAlgebra<K> {
    let z = K::embed_int(0, one);
    let mut mult = vec![vec![vec![z.clone(); 4]; 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    if b == c {
                        mult[2 * a + b][2 * c + d][2 * a + d] = one.clone();
                    }
                }
            }
        }
    }
    let mut unit = vec![z; 4];
    unit[0] = one.clone();
    unit[3] = one.clone();
    FinAlgebra::new(4, mult, unit).expect("M_2 is an algebra")
}

/// The dual numbers `k[x]/(x^2)`, basis `{1, x}`.
pub fn dual_numbers_algebra<K: Scalar>(one: &K) -> FinAlgebra<K> {
    let z = K::embed_int(0, one);
    FinAlgebra::new(
        2,
        vec![
            vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]],
            vec![vec![z.clone(), one.clone()], vec![z.clone(), z.clone()]],
        ],
        vec![one.clone(), z],
    )
    .expect("dual numbers form an algebra")
}

/// Embed a Hopf algebra `(H, γ, ε, S)` over the field as a Hopf algebroid
/// with both bases equal to `k`. Everything is verified by the same axiom
/// machinery with `B = k` on both sides.
pub fn hopf_algebra_embed<K: Scalar>(
    h: &FinAlgebra<K>,
    gamma: &Mat<K>,
    eps: &Mat<K>,
    antipode: &Mat<K>,
) -> Result<HopfAlgebroid<K>, HopfError> {
    let c = h
        .unit()
        .iter()
        .find(|x| !x.is_zero())
        .expect("unit is nonzero")
        .clone();
    let one = c.clone() * c.inv().expect("unit coordinate is invertible");
    let k = base_field_like(&one);
    let unit_incl = Mat::from_cols(vec![h.unit().to_vec()]);
    let left = LeftBialgebroid::new(h, &k, &unit_incl, &unit_incl, gamma, eps)?;
    let right = RightBialgebroid::new(h, &k, &unit_incl, &unit_incl, gamma, eps)?;
    HopfAlgebroid::new(left, right, antipode.clone())
}

/// Grouplike coproduct (each basis vector is grouplike) for group algebras.
pub fn grouplike_gamma<K: Scalar>(n: usize, one: &K) -> Mat<K> {
    let mut m = Mat::zeros(n * n, n);
    for i in 0..n {
        m.set(i * n + i, i, one.clone());
    }
    m
}

/// Group algebra of C_n as a Hopf algebroid over the base field.
pub fn group_algebra_hopf<K: Scalar>(order: usize, one: &K) -> Result<HopfAlgebroid<K>, HopfError> {
    let h = cyclic_group_algebra(order, one);
    let gamma = grouplike_gamma(order, one);
    let eps = Mat::from_rows(vec![vec![one.clone(); order]]);
    // S(g^i) = g^{-i}.
    let mut s = Mat::zeros(order, order);
    for i in 0..order {
        s.set((order - i) % order, i, one.clone());
    }
    hopf_algebra_embed(&h, &gamma, &eps, &s)
}

/// Sweedler's four-dimensional Hopf algebra over a field of characteristic
/// different from 2, basis `{1, g, x, gx}`.
///
/// Structure constants (from `g^2 = 1`, `x^2 = 0`, `x g = -g x`):
///   g·g = 1,  g·x = gx,  g·gx = x,
///   x·g = -gx,  x·x = 0,  x·gx = xgx = (-gx)x = 0,
///   gx·g = g(xg) = -x,  gx·x = gxx = 0,  gx·gx = g(xg)x = -x·x·... = 0.
/// Coproduct: γ(g) = g⊗g, γ(x) = x⊗1 + g⊗x, hence
///   γ(gx) = (g⊗g)(x⊗1 + g⊗x) = gx⊗g + 1⊗gx.
/// Counit: ε(1) = ε(g) = 1, ε(x) = ε(gx) = 0.
/// Antipode: S(g) = g, S(x) = -gx, S(gx) = S(x)S(g) = -gx·g = x.
pub fn sweedler_h4<K: Scalar>(one: &K) -> (FinAlgebra<K>, Mat<K>, Mat<K>, Mat<K>) {
    let e = |i: i64| K::embed_int(i, one);
    let v = |a: i64, b: i64, c: i64, d: i64| vec![e(a), e(b), e(c), e(d)];
    let z = || v(0, 0, 0, 0);
    let mult = vec![
        // 1 · {1, g, x, gx}
        vec![v(1, 0, 0, 0), v(0, 1, 0, 0), v(0, 0, 1, 0), v(0, 0, 0, 1)],
        // g · {1, g, x, gx}
        vec![v(0, 1, 0, 0), v(1, 0, 0, 0), v(0, 0, 0, 1), v(0, 0, 1, 0)],
        // x · {1, g, x, gx}
        vec![v(0, 0, 1, 0), v(0, 0, 0, -1), z(), z()],
        // gx · {1, g, x, gx}
        vec![v(0, 0, 0, 1), v(0, 0, -1, 0), z(), z()],
    ];
    let h = FinAlgebra::new(4, mult, v(1, 0, 0, 0)).expect("Sweedler H4 is an algebra");

    let n = 4;
    let mut gamma = Mat::zeros(n * n, n);
    let put = |m: &mut Mat<K>, i: usize, j: usize, col: usize, val: i64| {
        m.set(i * n + j, col, e(val));
    };
    // γ(1) = 1 ⊗ 1
    put(&mut gamma, 0, 0, 0, 1);
    // γ(g) = g ⊗ g
    put(&mut gamma, 1, 1, 1, 1);
    // γ(x) = x ⊗ 1 + g ⊗ x
    put(&mut gamma, 2, 0, 2, 1);
    put(&mut gamma, 1, 2, 2, 1);
    // γ(gx) = gx ⊗ g + 1 ⊗ gx
    put(&mut gamma, 3, 1, 3, 1);
    put(&mut gamma, 0, 3, 3, 1);

    let eps = Mat::from_rows(vec![v(1, 1, 0, 0)]);

    let mut s = Mat::zeros(n, n);
    s.set(0, 0, e(1));
    s.set(1, 1, e(1));
    s.set(3, 2, e(-1)); // S(x) = -gx
    s.set(2, 3, e(1)); // S(gx) = x
    (h, gamma, eps, s)
}

/// The Lu Hopf algebroid on `A = B ⊗ B^op`:
/// left structure `s_L(b) = b ⊗ 1`, `t_L(b) = 1 ⊗ b`,
/// `γ_L(b1 ⊗ b2) = (b1 ⊗ 1) ⊗ (1 ⊗ b2)`, `π_L(b1 ⊗ b2) = b1 b2`,
/// antipode the flip, and right structure
/// `(A, B^op, S∘s_L, S∘t_L, (S⊗S)∘γ_L^op∘S, π_L∘S)`. Fully verified.
pub fn lu_algebroid<K: Scalar>(b: &FinAlgebra<K>) -> Result<HopfAlgebroid<K>, HopfError> {
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
                tensor_vec(
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
    let mut antipode = Mat::zeros(na, na);
    for i in 0..n {
        for j in 0..n {
            antipode.set(j * n + i, i * n + j, K::one());
        }
    }
    let s_r = antipode.mul(&s_l);
    let t_r = antipode.mul(&t_l);
    let gamma_r = Mat::from_cols(
        (0..na)
            .map(|idx| {
                let sa = antipode.mul_vec(&unit_vec(na, idx));
                let flipped = flip_vec(&gamma_l.mul_vec(&sa), na, na);
                apply_to_slot(
                    &apply_to_slot(&flipped, &[na, na], 0, &antipode),
                    &[na, na],
                    1,
                    &antipode,
                )
            })
            .collect(),
    );
    let pi_r = pi_l.mul(&antipode);

    let left = LeftBialgebroid::new(&a, b, &s_l, &t_l, &gamma_l, &pi_l)?;
    let right = RightBialgebroid::new(&a, &bop, &s_r, &t_r, &gamma_r, &pi_r)?;
    HopfAlgebroid::new(left, right, antipode)
}

/// A catalog entry: either a full Hopf algebroid or a bare algebra, over
/// the rationals or over a prime field.
pub enum Builtin {
    AlgebroidQ(HopfAlgebroid<Rat>),
    AlgebraQ(FinAlgebra<Rat>),
    AlgebroidFp(HopfAlgebroid<Fp>),
    AlgebraFp(FinAlgebra<Fp>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownName(pub String);

impl fmt::Display for UnknownName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown builtin name: {}", self.0)
    }
}

impl std::error::Error for UnknownName {}

pub const BUILTIN_NAMES: [&str; 9] = [
    "lu-ut2-q",
    "lu-m2-q",
    "lu-m2-f5",
    "lu-dualnumbers-q",
    "qc2",
    "f5c5",
    "sweedler-h4",
    "ut2-q",
    "m2-q",
];

/// Fetch a verified catalog object by name.
pub fn builtin(name: &str) -> Result<Builtin, UnknownName> {
    let one_q = || <Rat as num_traits::One>::one();
    let one_f5 = || Fp::new(1, 5);
    let verified = |r: Result<HopfAlgebroid<Rat>, HopfError>| {
        Builtin::AlgebroidQ(r.expect("catalog entries pass their axiom suites"))
    };
    match name {
        "lu-ut2-q" => Ok(verified(lu_algebroid(&ut2_algebra(&one_q())))),
        "lu-m2-q" => Ok(verified(lu_algebroid(&m2_algebra(&one_q())))),
        "lu-dualnumbers-q" => Ok(verified(lu_algebroid(&dual_numbers_algebra(&one_q())))),
        "lu-m2-f5" => Ok(Builtin::AlgebroidFp(
            lu_algebroid(&m2_algebra(&one_f5())).expect("catalog entries pass"),
        )),
        "qc2" => Ok(verified(group_algebra_hopf(2, &one_q()))),
        "f5c5" => Ok(Builtin::AlgebroidFp(
            group_algebra_hopf(5, &one_f5()).expect("catalog entries pass"),
        )),
        "sweedler-h4" => {
            let (h, gamma, eps, s) = sweedler_h4(&one_q());
            Ok(verified(hopf_algebra_embed(&h, &gamma, &eps, &s)))
        }
        "ut2-q" => Ok(Builtin::AlgebraQ(ut2_algebra(&one_q()))),
        "m2-q" => Ok(Builtin::AlgebraQ(m2_algebra(&one_q()))),
        other => Err(UnknownName(other.to_string())),
    }
}
