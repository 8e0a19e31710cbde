//! Integrals in and on a Hopf algebroid, and the decision procedures built
//! from them: the Maschke and dual Maschke equivalence suites, the Hopf
//! module on the dual with the fundamental isomorphisms, the Frobenius
//! decision with certificates, and the quasi-Frobenius decision by span
//! criteria.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::FinAlgebra;
use crate::hopfalgebroid::HopfAlgebroid;
use crate::linalg::{unit_vec, vec_is_zero, vec_sub, Mat, Subspace};
use crate::scalar::Scalar;

/// The six integral spaces of a Hopf algebroid.
///
/// * `LeftIn`   — `L(A)`: left integrals in the left bialgebroid,
///   `a ℓ = s_L(π_L(a)) ℓ`;
/// * `RightIn`  — `R(A)`: right integrals in the right bialgebroid,
///   `℘ a = ℘ s_R(π_R(a))`;
/// * `SOnRight` — s-integrals on the right bialgebroid (`L(A^*)`),
///   `φ ⇀ a = s_R(φ(a))`;
/// * `TOnRight` — t-integrals on the right bialgebroid (`L(^*A)`),
///   `φ ⇁ a = t_R(φ(a))`;
/// * `SOnLeft`  — s-integrals on the left bialgebroid (`R(_*A)`),
///   `a ↽ φ = s_L(φ(a))`;
/// * `TOnLeft`  — t-integrals on the left bialgebroid (`R(A_*)`),
///   `a ↼ φ = t_L(φ(a))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegralKind {
    LeftIn,
    RightIn,
    SOnRight,
    TOnRight,
    SOnLeft,
    TOnLeft,
}

impl IntegralKind {
    pub const ALL: [IntegralKind; 6] = [
        IntegralKind::LeftIn,
        IntegralKind::RightIn,
        IntegralKind::SOnRight,
        IntegralKind::TOnRight,
        IntegralKind::SOnLeft,
        IntegralKind::TOnLeft,
    ];

    pub fn label(self) -> &'static str {
        match self {
            IntegralKind::LeftIn => "left integrals in the Hopf algebroid",
            IntegralKind::RightIn => "right integrals in the Hopf algebroid",
            IntegralKind::SOnRight => "s-integrals on the right bialgebroid",
            IntegralKind::TOnRight => "t-integrals on the right bialgebroid",
            IntegralKind::SOnLeft => "s-integrals on the left bialgebroid",
            IntegralKind::TOnLeft => "t-integrals on the left bialgebroid",
        }
    }
}

/// Canonical basis of one integral space. Elements of the two `*In` kinds
/// are total-algebra vectors; the four dual kinds are functionals into the
/// respective base, flattened row-major into vectors of length
/// `dim(base) * dim(A)`.
pub struct IntegralSpace<K: Scalar> {
    pub kind: IntegralKind,
    pub basis: Subspace<K>,
    /// Base dimension for functional kinds (1 row per base coordinate).
    pub base_dim: usize,
    pub total_dim: usize,
}

impl<K: Scalar> fmt::Debug for IntegralSpace<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IntegralSpace({:?}, dim {})",
            self.kind,
            self.basis.dim()
        )
    }
}

impl<K: Scalar> IntegralSpace<K> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Materialize the i-th basis element of a functional kind as a matrix.
    pub fn basis_functional(&self, i: usize) -> Mat<K> {
        assert!(self.base_dim > 0, "not a functional kind");
        crate::bialgebroid::unflatten_functional(
            self.basis.basis().row(i),
            self.base_dim,
            self.total_dim,
        )
    }
}

/// Build the matrix of a linear condition on functionals by evaluating it
/// on the elementary functionals `E_rc`, then return its kernel.
pub(crate) fn functional_kernel<K: Scalar>(
    total_dim: usize,
    base_dim: usize,
    condition: impl Fn(&Mat<K>) -> Vec<K>,
) -> Subspace<K> {
    let unknowns = base_dim * total_dim;
    let mut cols: Vec<Vec<K>> = Vec::with_capacity(unknowns);
    for r in 0..base_dim {
        for c in 0..total_dim {
            let mut e = Mat::zeros(base_dim, total_dim);
            e.set(r, c, K::one());
            cols.push(condition(&e));
        }
    }
    Mat::from_cols(cols).kernel()
}

/// Compute one of the six integral spaces as the solution space of its
/// defining linear system, conditions imposed per total-algebra basis
/// element; the four functional kinds include the base-linearity
/// constraint of the ambient dual.
pub fn integral_space<K: Scalar>(h: &HopfAlgebroid<K>, kind: IntegralKind) -> IntegralSpace<K> {
    let a = h.total();
    let n = a.dim();
    match kind {
        IntegralKind::LeftIn => {
            let spl = h.left().s_pi();
            let mut rows = Vec::new();
            for i in 0..n {
                let e = unit_vec(n, i);
                let diff = a.left_mult(&e).sub(&a.left_mult(&spl.mul_vec(&e)));
                for r in 0..n {
                    rows.push(diff.row(r).to_vec());
                }
            }
            IntegralSpace {
                kind,
                basis: Mat::from_rows(rows).kernel(),
                base_dim: 0,
                total_dim: n,
            }
        }
        IntegralKind::RightIn => {
            let spr = h.right().s_pi();
            let mut rows = Vec::new();
            for i in 0..n {
                let e = unit_vec(n, i);
                let diff = a.right_mult(&e).sub(&a.right_mult(&spr.mul_vec(&e)));
                for r in 0..n {
                    rows.push(diff.row(r).to_vec());
                }
            }
            IntegralSpace {
                kind,
                basis: Mat::from_rows(rows).kernel(),
                base_dim: 0,
                total_dim: n,
            }
        }
        IntegralKind::SOnRight | IntegralKind::TOnRight => {
            let r = h.right();
            let base = r.base();
            let nb = base.dim();
            let basis = functional_kernel(n, nb, |phi: &Mat<K>| {
                let mut out = Vec::new();
                for bi in 0..nb {
                    let eb = unit_vec(nb, bi);
                    let (m, nop) = match kind {
                        IntegralKind::SOnRight => {
                            (a.right_mult(&r.s().apply(&eb)), base.right_mult(&eb))
                        }
                        _ => (a.right_mult(&r.t().apply(&eb)), base.left_mult(&eb)),
                    };
                    out.extend(phi.mul(&m).sub(&nop.mul(phi)).entries().to_vec());
                }
                for i in 0..n {
                    let e = unit_vec(n, i);
                    let diff = match kind {
                        IntegralKind::SOnRight => {
                            vec_sub(&r.act_element_t(phi, &e), &r.s().apply(&phi.mul_vec(&e)))
                        }
                        _ => vec_sub(&r.act_element_s(phi, &e), &r.t().apply(&phi.mul_vec(&e))),
                    };
                    out.extend(diff);
                }
                out
            });
            IntegralSpace {
                kind,
                basis,
                base_dim: nb,
                total_dim: n,
            }
        }
        IntegralKind::SOnLeft | IntegralKind::TOnLeft => {
            let l = h.left();
            let base = l.base();
            let nb = base.dim();
            let basis = functional_kernel(n, nb, |phi: &Mat<K>| {
                let mut out = Vec::new();
                for bi in 0..nb {
                    let eb = unit_vec(nb, bi);
                    let (m, nop) = match kind {
                        IntegralKind::SOnLeft => {
                            (a.left_mult(&l.s().apply(&eb)), base.left_mult(&eb))
                        }
                        _ => (a.left_mult(&l.t().apply(&eb)), base.right_mult(&eb)),
                    };
                    out.extend(phi.mul(&m).sub(&nop.mul(phi)).entries().to_vec());
                }
                for i in 0..n {
                    let e = unit_vec(n, i);
                    let diff = match kind {
                        IntegralKind::SOnLeft => {
                            vec_sub(&l.act_element_t(phi, &e), &l.s().apply(&phi.mul_vec(&e)))
                        }
                        _ => vec_sub(&l.act_element_s(phi, &e), &l.t().apply(&phi.mul_vec(&e))),
                    };
                    out.extend(diff);
                }
                out
            });
            IntegralSpace {
                kind,
                basis,
                base_dim: nb,
                total_dim: n,
            }
        }
    }
}

/// `S` maps `L(A)` into `R(A)` and `R(A)` into `L(A)` (span containment).
pub fn antipode_swaps_integrals<K: Scalar>(h: &HopfAlgebroid<K>) -> bool {
    let li = integral_space(h, IntegralKind::LeftIn);
    let ri = integral_space(h, IntegralKind::RightIn);
    li.basis
        .basis_rows()
        .all(|row| ri.basis.contains(&h.antipode().mul_vec(row)))
        && ri
            .basis
            .basis_rows()
            .all(|row| li.basis.contains(&h.antipode().mul_vec(row)))
}

/// Check that a vector satisfies the defining condition of its kind.
pub fn satisfies_integral_condition<K: Scalar>(
    h: &HopfAlgebroid<K>,
    kind: IntegralKind,
    v: &[K],
) -> bool {
    let a = h.total();
    let n = a.dim();
    match kind {
        IntegralKind::LeftIn => {
            let spl = h.left().s_pi();
            (0..n).all(|i| {
                let e = unit_vec(n, i);
                a.mul_vec(&e, v) == a.mul_vec(&spl.mul_vec(&e), v)
            })
        }
        IntegralKind::RightIn => {
            let spr = h.right().s_pi();
            (0..n).all(|i| {
                let e = unit_vec(n, i);
                a.mul_vec(v, &e) == a.mul_vec(v, &spr.mul_vec(&e))
            })
        }
        _ => {
            let nb = match kind {
                IntegralKind::SOnRight | IntegralKind::TOnRight => h.right().base().dim(),
                _ => h.left().base().dim(),
            };
            let phi = crate::bialgebroid::unflatten_functional(v, nb, n);
            (0..n).all(|i| {
                let e = unit_vec(n, i);
                let diff = match kind {
                    IntegralKind::SOnRight => vec_sub(
                        &h.right().act_element_t(&phi, &e),
                        &h.right().s().apply(&phi.mul_vec(&e)),
                    ),
                    IntegralKind::TOnRight => vec_sub(
                        &h.right().act_element_s(&phi, &e),
                        &h.right().t().apply(&phi.mul_vec(&e)),
                    ),
                    IntegralKind::SOnLeft => vec_sub(
                        &h.left().act_element_t(&phi, &e),
                        &h.left().s().apply(&phi.mul_vec(&e)),
                    ),
                    _ => vec_sub(
                        &h.left().act_element_s(&phi, &e),
                        &h.left().t().apply(&phi.mul_vec(&e)),
                    ),
                };
                vec_is_zero(&diff)
            })
        }
    }
}

use crate::linalg::{solve_affine_sparse, sparsify, vec_add};
use crate::report::{AxiomReport, Check, ConditionReport};
use crate::tensor::{
    apply_to_slot, balanced_quotient, descend_with, mult_map, tensor_vec, DescendTarget, Quotient,
};

/// The four base-to-total algebra extensions of a Hopf algebroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionKind {
    /// `s_R : R -> A`
    SR,
    /// `t_L : L^op -> A`
    TL,
    /// `s_L : L -> A`
    SL,
    /// `t_R : R^op -> A`
    TR,
}

impl ExtensionKind {
    pub const ALL: [ExtensionKind; 4] = [
        ExtensionKind::SR,
        ExtensionKind::TL,
        ExtensionKind::SL,
        ExtensionKind::TR,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ExtensionKind::SR => "s_R: R -> A",
            ExtensionKind::TL => "t_L: L^op -> A",
            ExtensionKind::SL => "s_L: L -> A",
            ExtensionKind::TR => "t_R: R^op -> A",
        }
    }
}

/// Base algebra (opposites for the target extensions) and the matrix of the
/// inclusion, so all four extensions share one code path.
pub(crate) fn extension_base_sigma<K: Scalar>(
    h: &HopfAlgebroid<K>,
    ext: ExtensionKind,
) -> (FinAlgebra<K>, Mat<K>) {
    match ext {
        ExtensionKind::SR => (h.right().base().clone(), h.right().s().matrix().clone()),
        ExtensionKind::TL => (h.left().base().opposite(), h.left().t().matrix().clone()),
        ExtensionKind::SL => (h.left().base().clone(), h.left().s().matrix().clone()),
        ExtensionKind::TR => (h.right().base().opposite(), h.right().t().matrix().clone()),
    }
}

/// The separability tensor `A ⊗_B A` of an extension, with relations
/// `x σ(b) ⊗ y − x ⊗ σ(b) y`.
pub fn extension_sep_tensor<K: Scalar>(h: &HopfAlgebroid<K>, ext: ExtensionKind) -> Quotient<K> {
    let a = h.total();
    let (base, sigma) = extension_base_sigma(h, ext);
    let nb = base.dim();
    let acts_u: Vec<Mat<K>> = (0..nb)
        .map(|i| a.right_mult(&sigma.mul_vec(&unit_vec(nb, i))))
        .collect();
    let acts_v: Vec<Mat<K>> = (0..nb)
        .map(|i| a.left_mult(&sigma.mul_vec(&unit_vec(nb, i))))
        .collect();
    balanced_quotient(a.dim(), a.dim(), &acts_u, &acts_v)
}

// ---------------------------------------------------------------------
// Equivalent characterizations of integrals
// ---------------------------------------------------------------------

/// Per-element check of the equivalent characterizations of a left
/// integral: `S(a) ℓ^(1) ⊗ ℓ^(2) = ℓ^(1) ⊗ a ℓ^(2)` in `A^R ⊗ ^R A` and
/// `a ℓ^(1) ⊗ S(ℓ^(2)) = ℓ^(1) ⊗ S(ℓ^(2)) a` in `A^R ⊗ _R A`.
pub fn left_integral_characterizations<K: Scalar>(
    h: &HopfAlgebroid<K>,
    sep_sr: &Quotient<K>,
    ell: &[K],
) -> bool {
    let a = h.total();
    let n = a.dim();
    let g = h.right().gamma(ell);
    let quot = h.right().tensor().quotient();
    let with_s = apply_to_slot(&g, &[n, n], 1, h.antipode());
    for i in 0..n {
        let e = unit_vec(n, i);
        // 1.b
        let lhs = apply_to_slot(&g, &[n, n], 0, &a.left_mult(&h.apply_antipode(&e)));
        let rhs = apply_to_slot(&g, &[n, n], 1, &a.left_mult(&e));
        if !vec_is_zero(&quot.project(&vec_sub(&lhs, &rhs))) {
            return false;
        }
        // 1.c
        let lhs = apply_to_slot(&with_s, &[n, n], 0, &a.left_mult(&e));
        let rhs = apply_to_slot(&with_s, &[n, n], 1, &a.right_mult(&e));
        if !vec_is_zero(&sep_sr.project(&vec_sub(&lhs, &rhs))) {
            return false;
        }
    }
    true
}

/// Mirror for right integrals: `℘_(1) ⊗ ℘_(2) S(a) = ℘_(1) a ⊗ ℘_(2)` in
/// `A_L ⊗ _L A` and `S(℘_(1)) ⊗ ℘_(2) a = a S(℘_(1)) ⊗ ℘_(2)` in
/// `A^L ⊗ _L A`.
pub fn right_integral_characterizations<K: Scalar>(
    h: &HopfAlgebroid<K>,
    sep_sl: &Quotient<K>,
    p: &[K],
) -> bool {
    let a = h.total();
    let n = a.dim();
    let g = h.left().gamma(p);
    let quot = h.left().tensor().quotient();
    let with_s = apply_to_slot(&g, &[n, n], 0, h.antipode());
    for i in 0..n {
        let e = unit_vec(n, i);
        // 2.b
        let lhs = apply_to_slot(&g, &[n, n], 1, &a.right_mult(&h.apply_antipode(&e)));
        let rhs = apply_to_slot(&g, &[n, n], 0, &a.right_mult(&e));
        if !vec_is_zero(&quot.project(&vec_sub(&lhs, &rhs))) {
            return false;
        }
        // 2.c
        let lhs = apply_to_slot(&with_s, &[n, n], 1, &a.right_mult(&e));
        let rhs = apply_to_slot(&with_s, &[n, n], 0, &a.left_mult(&e));
        if !vec_is_zero(&sep_sl.project(&vec_sub(&lhs, &rhs))) {
            return false;
        }
    }
    true
}

/// Per-element checks of the equivalent characterizations for one dual-kind
/// integral: the transfer membership and the two-argument identity, both
/// quantified over all basis pairs.
pub fn dual_integral_characterizations<K: Scalar>(
    h: &HopfAlgebroid<K>,
    kind: IntegralKind,
    spaces: &IntegralSpaces<K>,
    phi: &Mat<K>,
) -> bool {
    let a = h.total();
    let n = a.dim();
    let s = h.antipode();
    let l = h.left();
    let r = h.right();
    match kind {
        IntegralKind::SOnLeft => {
            // 1.b: π_R ∘ s_L ∘ ρ ∈ L(^*A)
            let f = r.pi_mat().mul(&l.s().matrix().mul(phi));
            if !spaces.t_on_right.basis.contains(f.entries()) {
                return false;
            }
            // transfer: ρ ∘ S ∈ R(A_*)
            let f = phi.mul(s);
            if !spaces.t_on_left.basis.contains(f.entries()) {
                return false;
            }
            // 1.c: s_L(ρ(a S(b_(1)))) b_(2) = t_L(ρ(a_(2) S(b))) a_(1)
            for ai in 0..n {
                let ea = unit_vec(n, ai);
                let ga = l.gamma(&ea);
                for bi in 0..n {
                    let eb = unit_vec(n, bi);
                    let gb = l.gamma(&eb);
                    let mut lhs = vec![K::zero(); n];
                    for (idx, c) in gb.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (b1, b2) = (idx / n, idx % n);
                        let arg = a.mul_vec(&ea, &s.col(b1));
                        let v = a.mul_vec(&l.s().apply(&phi.mul_vec(&arg)), &unit_vec(n, b2));
                        lhs = vec_add(&lhs, &crate::linalg::vec_scale(&v, c));
                    }
                    let mut rhs = vec![K::zero(); n];
                    for (idx, c) in ga.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (a1, a2) = (idx / n, idx % n);
                        let arg = a.mul_vec(&unit_vec(n, a2), &s.col(bi));
                        let v = a.mul_vec(&l.t().apply(&phi.mul_vec(&arg)), &unit_vec(n, a1));
                        rhs = vec_add(&rhs, &crate::linalg::vec_scale(&v, c));
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            true
        }
        IntegralKind::TOnLeft => {
            // 2.b: π_R ∘ t_L ∘ ρ ∈ L(A^*)
            let f = r.pi_mat().mul(&l.t().matrix().mul(phi));
            if !spaces.s_on_right.basis.contains(f.entries()) {
                return false;
            }
            // 2.c: t_L(ρ(a b^(1))) S(b^(2)) = s_L(ρ(a_(1) b)) a_(2)
            for ai in 0..n {
                let ea = unit_vec(n, ai);
                let ga = l.gamma(&ea);
                for bi in 0..n {
                    let eb = unit_vec(n, bi);
                    let gb = r.gamma(&eb);
                    let mut lhs = vec![K::zero(); n];
                    for (idx, c) in gb.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (b1, b2) = (idx / n, idx % n);
                        let arg = a.mul_vec(&ea, &unit_vec(n, b1));
                        let v = a.mul_vec(&l.t().apply(&phi.mul_vec(&arg)), &s.col(b2));
                        lhs = vec_add(&lhs, &crate::linalg::vec_scale(&v, c));
                    }
                    let mut rhs = vec![K::zero(); n];
                    for (idx, c) in ga.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (a1, a2) = (idx / n, idx % n);
                        let arg = a.mul_vec(&unit_vec(n, a1), &eb);
                        let v = a.mul_vec(&l.s().apply(&phi.mul_vec(&arg)), &unit_vec(n, a2));
                        rhs = vec_add(&rhs, &crate::linalg::vec_scale(&v, c));
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            true
        }
        IntegralKind::SOnRight => {
            // 3.b: π_L ∘ s_R ∘ λ ∈ R(A_*)
            let f = l.pi_mat().mul(&r.s().matrix().mul(phi));
            if !spaces.t_on_left.basis.contains(f.entries()) {
                return false;
            }
            // transfer: λ ∘ S ∈ L(^*A)
            let f = phi.mul(s);
            if !spaces.t_on_right.basis.contains(f.entries()) {
                return false;
            }
            // 3.c: a^(1) s_R(λ(S(a^(2)) b)) = b^(2) t_R(λ(S(a) b^(1)))
            for ai in 0..n {
                let ea = unit_vec(n, ai);
                let ga = r.gamma(&ea);
                for bi in 0..n {
                    let eb = unit_vec(n, bi);
                    let gb = r.gamma(&eb);
                    let mut lhs = vec![K::zero(); n];
                    for (idx, c) in ga.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (a1, a2) = (idx / n, idx % n);
                        let arg = a.mul_vec(&s.col(a2), &eb);
                        let v = a.mul_vec(&unit_vec(n, a1), &r.s().apply(&phi.mul_vec(&arg)));
                        lhs = vec_add(&lhs, &crate::linalg::vec_scale(&v, c));
                    }
                    let mut rhs = vec![K::zero(); n];
                    for (idx, c) in gb.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (b1, b2) = (idx / n, idx % n);
                        let arg = a.mul_vec(&s.col(ai), &unit_vec(n, b1));
                        let v = a.mul_vec(&unit_vec(n, b2), &r.t().apply(&phi.mul_vec(&arg)));
                        rhs = vec_add(&rhs, &crate::linalg::vec_scale(&v, c));
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            true
        }
        IntegralKind::TOnRight => {
            // 4.b: π_L ∘ t_R ∘ λ ∈ R(_*A)
            let f = l.pi_mat().mul(&r.t().matrix().mul(phi));
            if !spaces.s_on_left.basis.contains(f.entries()) {
                return false;
            }
            // 4.c: S(a_(1)) t_R(λ(a_(2) b)) = b^(1) s_R(λ(a b^(2)))
            for ai in 0..n {
                let ea = unit_vec(n, ai);
                let ga = l.gamma(&ea);
                for bi in 0..n {
                    let eb = unit_vec(n, bi);
                    let gb = r.gamma(&eb);
                    let mut lhs = vec![K::zero(); n];
                    for (idx, c) in ga.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (a1, a2) = (idx / n, idx % n);
                        let arg = a.mul_vec(&unit_vec(n, a2), &eb);
                        let v = a.mul_vec(&s.col(a1), &r.t().apply(&phi.mul_vec(&arg)));
                        lhs = vec_add(&lhs, &crate::linalg::vec_scale(&v, c));
                    }
                    let mut rhs = vec![K::zero(); n];
                    for (idx, c) in gb.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (b1, b2) = (idx / n, idx % n);
                        let arg = a.mul_vec(&ea, &unit_vec(n, b2));
                        let v = a.mul_vec(&unit_vec(n, b1), &r.s().apply(&phi.mul_vec(&arg)));
                        rhs = vec_add(&rhs, &crate::linalg::vec_scale(&v, c));
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            true
        }
        _ => panic!("dual_integral_characterizations is for the functional kinds"),
    }
}

/// All six integral spaces, computed once.
pub struct IntegralSpaces<K: Scalar> {
    pub left_in: IntegralSpace<K>,
    pub right_in: IntegralSpace<K>,
    pub s_on_right: IntegralSpace<K>,
    pub t_on_right: IntegralSpace<K>,
    pub s_on_left: IntegralSpace<K>,
    pub t_on_left: IntegralSpace<K>,
}

pub fn all_integral_spaces<K: Scalar>(h: &HopfAlgebroid<K>) -> IntegralSpaces<K> {
    IntegralSpaces {
        left_in: integral_space(h, IntegralKind::LeftIn),
        right_in: integral_space(h, IntegralKind::RightIn),
        s_on_right: integral_space(h, IntegralKind::SOnRight),
        t_on_right: integral_space(h, IntegralKind::TOnRight),
        s_on_left: integral_space(h, IntegralKind::SOnLeft),
        t_on_left: integral_space(h, IntegralKind::TOnLeft),
    }
}

/// Re-verify the equivalent characterizations: every basis vector of every computed integral
/// space satisfies each equivalent characterization, and conversely the
/// alternative characterizations, solved directly as linear systems, cut
/// out the same subspaces.
pub fn characterization_check<K: Scalar>(h: &HopfAlgebroid<K>) -> AxiomReport {
    let mut checks = Vec::new();
    let spaces = all_integral_spaces(h);
    let a = h.total();
    let n = a.dim();
    let sep_sr = extension_sep_tensor(h, ExtensionKind::SR);
    let sep_sl = extension_sep_tensor(h, ExtensionKind::SL);

    // Forward: each basis vector satisfies the equivalent conditions.
    let ok = spaces
        .left_in
        .basis
        .basis_rows()
        .all(|row| left_integral_characterizations(h, &sep_sr, row));
    checks.push(if ok {
        Check::pass("left-integrals-satisfy-1b-1c")
    } else {
        Check::fail("left-integrals-satisfy-1b-1c", vec![])
    });
    let ok = spaces
        .right_in
        .basis
        .basis_rows()
        .all(|row| right_integral_characterizations(h, &sep_sl, row));
    checks.push(if ok {
        Check::pass("right-integrals-satisfy-2b-2c")
    } else {
        Check::fail("right-integrals-satisfy-2b-2c", vec![])
    });

    for (kind, space, name) in [
        (
            IntegralKind::SOnLeft,
            &spaces.s_on_left,
            "s-on-left-transfers-and-identity",
        ),
        (
            IntegralKind::TOnLeft,
            &spaces.t_on_left,
            "t-on-left-transfers-and-identity",
        ),
        (
            IntegralKind::SOnRight,
            &spaces.s_on_right,
            "s-on-right-transfers-and-identity",
        ),
        (
            IntegralKind::TOnRight,
            &spaces.t_on_right,
            "t-on-right-transfers-and-identity",
        ),
    ] {
        let ok = (0..space.dim())
            .all(|i| dual_integral_characterizations(h, kind, &spaces, &space.basis_functional(i)));
        checks.push(if ok {
            Check::pass(name)
        } else {
            Check::fail(name, vec![])
        });
    }

    // Converse: solving 1.b directly recovers L(A).
    let quot_r = h.right().tensor().quotient();
    let cond_1b = Mat::from_cols(
        (0..n)
            .map(|j| {
                let g = h.right().gamma(&unit_vec(n, j));
                let mut out = Vec::new();
                for i in 0..n {
                    let e = unit_vec(n, i);
                    let lhs = apply_to_slot(&g, &[n, n], 0, &a.left_mult(&h.apply_antipode(&e)));
                    let rhs = apply_to_slot(&g, &[n, n], 1, &a.left_mult(&e));
                    out.extend(quot_r.project(&vec_sub(&lhs, &rhs)));
                }
                out
            })
            .collect(),
    );
    checks.push(if cond_1b.kernel() == spaces.left_in.basis {
        Check::pass("condition-1b-cuts-out-left-integrals")
    } else {
        Check::fail("condition-1b-cuts-out-left-integrals", vec![])
    });

    // Converse: solving 1.c directly recovers L(A).
    let cond_1c = Mat::from_cols(
        (0..n)
            .map(|j| {
                let g = h.right().gamma(&unit_vec(n, j));
                let with_s = apply_to_slot(&g, &[n, n], 1, h.antipode());
                let mut out = Vec::new();
                for i in 0..n {
                    let e = unit_vec(n, i);
                    let lhs = apply_to_slot(&with_s, &[n, n], 0, &a.left_mult(&e));
                    let rhs = apply_to_slot(&with_s, &[n, n], 1, &a.right_mult(&e));
                    out.extend(sep_sr.project(&vec_sub(&lhs, &rhs)));
                }
                out
            })
            .collect(),
    );
    checks.push(if cond_1c.kernel() == spaces.left_in.basis {
        Check::pass("condition-1c-cuts-out-left-integrals")
    } else {
        Check::fail("condition-1c-cuts-out-left-integrals", vec![])
    });

    // Converse for the dual characterizations: the two-argument identities, solved inside each
    // ambient dual, recover the integral spaces.
    for (kind, space, name) in [
        (
            IntegralKind::SOnRight,
            &spaces.s_on_right,
            "condition-3c-cuts-out-s-integrals",
        ),
        (
            IntegralKind::TOnRight,
            &spaces.t_on_right,
            "condition-4c-cuts-out-t-integrals",
        ),
    ] {
        let nb = h.right().base().dim();
        let sol = functional_kernel(n, nb, |phi: &Mat<K>| {
            // ambient linearity rows
            let mut out = Vec::new();
            for bi in 0..nb {
                let eb = unit_vec(nb, bi);
                let (m, nop) = match kind {
                    IntegralKind::SOnRight => (
                        a.right_mult(&h.right().s().apply(&eb)),
                        h.right().base().right_mult(&eb),
                    ),
                    _ => (
                        a.right_mult(&h.right().t().apply(&eb)),
                        h.right().base().left_mult(&eb),
                    ),
                };
                out.extend(phi.mul(&m).sub(&nop.mul(phi)).entries().to_vec());
            }
            // the c-identity rows over all pairs
            let s = h.antipode();
            for ai in 0..n {
                let ea = unit_vec(n, ai);
                for bi in 0..n {
                    let eb = unit_vec(n, bi);
                    let (ga, gb) = (h.right().gamma(&ea), h.right().gamma(&eb));
                    let mut lhs = vec![K::zero(); n];
                    let mut rhs = vec![K::zero(); n];
                    match kind {
                        IntegralKind::SOnRight => {
                            for (idx, c) in ga.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let (a1, a2) = (idx / n, idx % n);
                                let arg = a.mul_vec(&s.col(a2), &eb);
                                let v = a.mul_vec(
                                    &unit_vec(n, a1),
                                    &h.right().s().apply(&phi.mul_vec(&arg)),
                                );
                                lhs = vec_add(&lhs, &crate::linalg::vec_scale(&v, c));
                            }
                            for (idx, c) in gb.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let (b1, b2) = (idx / n, idx % n);
                                let arg = a.mul_vec(&s.col(ai), &unit_vec(n, b1));
                                let v = a.mul_vec(
                                    &unit_vec(n, b2),
                                    &h.right().t().apply(&phi.mul_vec(&arg)),
                                );
                                rhs = vec_add(&rhs, &crate::linalg::vec_scale(&v, c));
                            }
                        }
                        _ => {
                            let gal = h.left().gamma(&ea);
                            for (idx, c) in gal.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let (a1, a2) = (idx / n, idx % n);
                                let arg = a.mul_vec(&unit_vec(n, a2), &eb);
                                let v =
                                    a.mul_vec(&s.col(a1), &h.right().t().apply(&phi.mul_vec(&arg)));
                                lhs = vec_add(&lhs, &crate::linalg::vec_scale(&v, c));
                            }
                            for (idx, c) in gb.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let (b1, b2) = (idx / n, idx % n);
                                let arg = a.mul_vec(&ea, &unit_vec(n, b2));
                                let v = a.mul_vec(
                                    &unit_vec(n, b1),
                                    &h.right().s().apply(&phi.mul_vec(&arg)),
                                );
                                rhs = vec_add(&rhs, &crate::linalg::vec_scale(&v, c));
                            }
                        }
                    }
                    out.extend(vec_sub(&lhs, &rhs));
                }
            }
            out
        });
        checks.push(if sol == space.basis {
            Check::pass(name)
        } else {
            Check::fail(name, vec![])
        });
    }

    AxiomReport::new("integral-characterizations", checks)
}

// ---------------------------------------------------------------------
// Maschke theorem suite
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceViolated(pub String);

impl fmt::Display for EquivalenceViolated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "independently computed theorem conditions disagree (library bug): {}",
            self.0
        )
    }
}

impl std::error::Error for EquivalenceViolated {}

/// Outcome of the Maschke equivalence suite: all twelve conditions with
/// their independent verdicts, the common verdict, normalized integrals
/// and the verified separability certificates in the positive case.
pub struct MaschkeReport<K: Scalar> {
    pub conditions: Vec<ConditionReport>,
    pub separable: bool,
    pub normalized_left: Option<Vec<K>>,
    pub normalized_right: Option<Vec<K>>,
    pub certificate: Option<AxiomReport>,
}

/// Solve for a normalized integral: an element of the space with
/// `pi(x) = 1`; the solve runs on the integral subspace, not on all of A.
fn normalized_integral<K: Scalar>(
    space: &IntegralSpace<K>,
    pi: &Mat<K>,
    unit: &[K],
) -> Option<Vec<K>> {
    let cols: Vec<Vec<K>> = space
        .basis
        .basis_rows()
        .map(|row| pi.mul_vec(row))
        .collect();
    if cols.is_empty() {
        return if vec_is_zero(unit) {
            Some(vec![])
        } else {
            None
        };
    }
    let m = Mat::from_cols(cols);
    let (coeff, _) = m.solve_affine(unit)?;
    let mut out = vec![K::zero(); space.basis.ambient_dim()];
    for (c, row) in coeff.iter().zip(space.basis.basis_rows()) {
        out = vec_add(&out, &crate::linalg::vec_scale(row, c));
    }
    Some(out)
}

/// Separability of one extension: an A-A bimodular element of `A ⊗_B A`
/// with `m(e) = 1`, found by a direct linear solve on the quotient.
fn separability_idempotent<K: Scalar>(h: &HopfAlgebroid<K>, ext: ExtensionKind) -> Option<Vec<K>> {
    let a = h.total();
    let n = a.dim();
    let quot = extension_sep_tensor(h, ext);
    let q = quot.dim();
    let mut rows: Vec<Vec<K>> = Vec::new();
    let mut rhs: Vec<K> = Vec::new();
    for i in 0..n {
        let e = unit_vec(n, i);
        let la = a.left_mult(&e);
        let ra = a.right_mult(&e);
        let diff = descend_with(
            |v| {
                let x = apply_to_slot(v, &[n, n], 0, &la);
                let y = apply_to_slot(v, &[n, n], 1, &ra);
                vec_sub(&x, &y)
            },
            &quot,
            &DescendTarget::Quotient(&quot),
        )
        .expect("the A-A bimodule action descends to the extension tensor");
        for r in 0..diff.rows() {
            rows.push(diff.row(r).to_vec());
            rhs.push(K::zero());
        }
    }
    // m(e) = 1_A.
    let mult_on_quot = Mat::from_cols(
        (0..q)
            .map(|j| mult_map(a, &quot.section(&unit_vec(q, j))))
            .collect(),
    );
    for r in 0..n {
        rows.push(mult_on_quot.row(r).to_vec());
        rhs.push(a.unit()[r].clone());
    }
    let stacked = Mat::from_rows(rows);
    let (sol, _) = stacked.solve_affine(&rhs)?;
    Some(sol)
}

/// Splitting of the counit as a module map (theorem conditions 4.a/4.b):
/// for `right = true` solve a right A-linear `ν: R -> A` with
/// `π_R ∘ ν = id` (module structure `r · a = π(σ(r) a)`), mirrored on the
/// left for `π_L`.
fn counit_splitting<K: Scalar>(
    a: &FinAlgebra<K>,
    base: &FinAlgebra<K>,
    sigma: &Mat<K>,
    pi: &Mat<K>,
    right_side: bool,
) -> Option<Mat<K>> {
    let n = a.dim();
    let nb = base.dim();
    // Unknown ν is n x nb; x[r * nb + c] = ν[r][c].
    let unknowns = n * nb;
    let mut rows: Vec<Vec<K>> = Vec::new();
    let mut rhs: Vec<K> = Vec::new();
    // Module action of a basis element on the base.
    let act = |bi: usize, ai: usize| -> Vec<K> {
        if right_side {
            pi.mul_vec(&a.mul_vec(&sigma.col(bi), &unit_vec(n, ai)))
        } else {
            pi.mul_vec(&a.mul_vec(&unit_vec(n, ai), &sigma.col(bi)))
        }
    };
    // A-linearity: ν(b · a) = ν(b) a (right) or a ν(b) (left).
    for bi in 0..nb {
        for ai in 0..n {
            let acted = act(bi, ai);
            let outer = if right_side {
                a.right_mult(&unit_vec(n, ai))
            } else {
                a.left_mult(&unit_vec(n, ai))
            };
            // Row block: ν(acted) - outer ∘ ν(e_bi) = 0, n scalar rows.
            for out_r in 0..n {
                let mut row = vec![K::zero(); unknowns];
                for (b2, c) in acted.iter().enumerate() {
                    if !c.is_zero() {
                        row[out_r * nb + b2] = row[out_r * nb + b2].clone() + c.clone();
                    }
                }
                for k in 0..n {
                    let c = outer.get(out_r, k);
                    if !c.is_zero() {
                        row[k * nb + bi] = row[k * nb + bi].clone() - c.clone();
                    }
                }
                if !vec_is_zero(&row) {
                    rows.push(row);
                    rhs.push(K::zero());
                }
            }
        }
    }
    // π ∘ ν = id.
    for bi in 0..nb {
        for out_r in 0..nb {
            let mut row = vec![K::zero(); unknowns];
            for k in 0..n {
                let c = pi.get(out_r, k);
                if !c.is_zero() {
                    row[k * nb + bi] = c.clone();
                }
            }
            rows.push(row);
            rhs.push(if out_r == bi { K::one() } else { K::zero() });
        }
    }
    let (sol, _) = Mat::from_rows(rows).solve_affine(&rhs)?;
    Some(Mat::from_fn(n, nb, |r, c| sol[r * nb + c].clone()))
}

/// Relative projectivity of the unit module (theorem conditions 2.a-2.d):
/// an A-linear splitting of the canonical epimorphism `M ⊗_B A -> M`
/// (right side) or `A ⊗_B M -> M` (left side), for `M` the base with the
/// named unit-module structure. This is the single-module instance through
/// which the theorem uses relative semisimplicity.
fn unit_module_rel_projective<K: Scalar>(
    a: &FinAlgebra<K>,
    base: &FinAlgebra<K>,
    sigma: &Mat<K>,
    pi: &Mat<K>,
    right_side: bool,
) -> bool {
    let n = a.dim();
    let nb = base.dim();
    // Unit-module action matrices ρ(e_a): M -> M.
    let rho: Vec<Mat<K>> = (0..n)
        .map(|ai| {
            Mat::from_cols(
                (0..nb)
                    .map(|bi| {
                        if right_side {
                            pi.mul_vec(&a.mul_vec(&sigma.col(bi), &unit_vec(n, ai)))
                        } else {
                            pi.mul_vec(&a.mul_vec(&unit_vec(n, ai), &sigma.col(bi)))
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    let rho_elem = |x: &[K]| -> Mat<K> {
        let mut m = Mat::zeros(nb, nb);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&rho[i].scale(c));
            }
        }
        m
    };
    // Balanced tensor M ⊗_B A (right) or A ⊗_B M (left).
    let acts_m: Vec<Mat<K>> = (0..nb).map(|bi| rho_elem(&sigma.col(bi))).collect();
    let acts_a: Vec<Mat<K>> = (0..nb)
        .map(|bi| {
            if right_side {
                a.left_mult(&sigma.col(bi))
            } else {
                a.right_mult(&sigma.col(bi))
            }
        })
        .collect();
    let quot = if right_side {
        balanced_quotient(nb, n, &acts_m, &acts_a)
    } else {
        balanced_quotient(n, nb, &acts_a, &acts_m)
    };
    let q = quot.dim();

    // μ: the canonical epimorphism onto M, and the A-action on the tensor.
    let mu = |v: &[K]| -> Vec<K> {
        let mut out = vec![K::zero(); nb];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (mi, ai) = if right_side {
                (idx / n, idx % n)
            } else {
                (idx % nb, idx / nb)
            };
            let acted = rho[ai].mul_vec(&unit_vec(nb, mi));
            out = vec_add(&out, &crate::linalg::vec_scale(&acted, c));
        }
        out
    };
    let act_on_tensor: Vec<Mat<K>> = (0..n)
        .map(|ai| {
            let f = if right_side {
                a.right_mult(&unit_vec(n, ai))
            } else {
                a.left_mult(&unit_vec(n, ai))
            };
            let (dims, slot) = if right_side {
                ([nb, n], 1usize)
            } else {
                ([n, nb], 0usize)
            };
            descend_with(
                |v| apply_to_slot(v, &dims, slot, &f),
                &quot,
                &DescendTarget::Quotient(&quot),
            )
            .expect("outer multiplication descends to the induced module")
        })
        .collect();

    // Solve σ: M -> Q with μ ∘ σ = id and σ(m · a) = σ(m) · a.
    let unknowns = q * nb; // σ[r][c] at r * nb + c
    let mut rows: Vec<Vec<K>> = Vec::new();
    let mut rhs: Vec<K> = Vec::new();
    for bi in 0..nb {
        for ai in 0..n {
            let acted = rho[ai].mul_vec(&unit_vec(nb, bi));
            for out_r in 0..q {
                let mut row = vec![K::zero(); unknowns];
                for (b2, c) in acted.iter().enumerate() {
                    if !c.is_zero() {
                        row[out_r * nb + b2] = row[out_r * nb + b2].clone() + c.clone();
                    }
                }
                for k in 0..q {
                    let c = act_on_tensor[ai].get(out_r, k);
                    if !c.is_zero() {
                        row[k * nb + bi] = row[k * nb + bi].clone() - c.clone();
                    }
                }
                if !vec_is_zero(&row) {
                    rows.push(row);
                    rhs.push(K::zero());
                }
            }
        }
    }
    let mu_mat = Mat::from_cols((0..q).map(|j| mu(&quot.section(&unit_vec(q, j)))).collect());
    for bi in 0..nb {
        for out_r in 0..nb {
            let mut row = vec![K::zero(); unknowns];
            for k in 0..q {
                let c = mu_mat.get(out_r, k);
                if !c.is_zero() {
                    row[k * nb + bi] = c.clone();
                }
            }
            rows.push(row);
            rhs.push(if out_r == bi { K::one() } else { K::zero() });
        }
    }
    solve_affine_sparse(
        unknowns,
        rows.into_iter().zip(rhs).map(|(r, b)| (sparsify(&r), b)),
    )
    .is_some()
}

/// The twelve-condition Maschke suite. Every condition is decided by its
/// own linear solve; the verdicts must agree, and in the positive case the
/// separability element built from the normalized integral is verified.
pub fn maschke_report<K: Scalar>(
    h: &HopfAlgebroid<K>,
) -> Result<MaschkeReport<K>, EquivalenceViolated> {
    let a = h.total();
    let n = a.dim();
    let li = integral_space(h, IntegralKind::LeftIn);
    let ri = integral_space(h, IntegralKind::RightIn);

    let mut conditions = Vec::new();

    // 1.a-1.d: separability of the four extensions by direct Casimir solve.
    let mut seps = Vec::new();
    for (name, ext) in [
        ("1.a separability of s_R", ExtensionKind::SR),
        ("1.b separability of t_R", ExtensionKind::TR),
        ("1.c separability of s_L", ExtensionKind::SL),
        ("1.d separability of t_L", ExtensionKind::TL),
    ] {
        let e = separability_idempotent(h, ext);
        conditions.push(ConditionReport::new(name, e.is_some()));
        seps.push(e);
    }

    // 2.a-2.d: relative projectivity of the unit modules (the instance the
    // theorem reduces semisimplicity to).
    let combos: [(&str, &FinAlgebra<K>, Mat<K>, &Mat<K>, bool); 4] = [
        (
            "2.a right semisimplicity of s_R (unit-module instance)",
            h.right().base(),
            h.right().s().matrix().clone(),
            h.right().pi_mat(),
            true,
        ),
        (
            "2.b right semisimplicity of t_R (unit-module instance)",
            h.right().base(),
            h.right().t().matrix().clone(),
            h.right().pi_mat(),
            true,
        ),
        (
            "2.c left semisimplicity of s_L (unit-module instance)",
            h.left().base(),
            h.left().s().matrix().clone(),
            h.left().pi_mat(),
            false,
        ),
        (
            "2.d left semisimplicity of t_L (unit-module instance)",
            h.left().base(),
            h.left().t().matrix().clone(),
            h.left().pi_mat(),
            false,
        ),
    ];
    for (name, base, sigma, pi, right_side) in combos {
        let ok = unit_module_rel_projective(a, base, &sigma, pi, right_side);
        conditions.push(ConditionReport::new(name, ok));
    }

    // 3.a/3.b: normalized integrals, solved on the integral subspaces.
    let nl_int = normalized_integral(&li, h.left().pi_mat(), h.left().base().unit());
    conditions.push(ConditionReport::new(
        "3.a normalized left integral",
        nl_int.is_some(),
    ));
    let nr_int = normalized_integral(&ri, h.right().pi_mat(), h.right().base().unit());
    conditions.push(ConditionReport::new(
        "3.b normalized right integral",
        nr_int.is_some(),
    ));

    // 4.a/4.b: module splittings of the counits.
    let split_r = counit_splitting(
        a,
        h.right().base(),
        h.right().s().matrix(),
        h.right().pi_mat(),
        true,
    );
    conditions.push(ConditionReport::new(
        "4.a right A-linear splitting of pi_R",
        split_r.is_some(),
    ));
    let split_l = counit_splitting(
        a,
        h.left().base(),
        h.left().s().matrix(),
        h.left().pi_mat(),
        false,
    );
    conditions.push(ConditionReport::new(
        "4.b left A-linear splitting of pi_L",
        split_l.is_some(),
    ));

    let verdict = conditions[0].holds;
    if conditions.iter().any(|c| c.holds != verdict) {
        return Err(EquivalenceViolated(format!(
            "Maschke conditions disagree: {:?}",
            conditions
                .iter()
                .map(|c| (c.condition.clone(), c.holds))
                .collect::<Vec<_>>()
        )));
    }

    // Positive case: verify the proof's separability element
    // a -> a ℓ^(1) ⊗ S(ℓ^(2)) for the normalized left integral.
    let certificate = nl_int.as_ref().map(|ell| {
        let mut checks = Vec::new();
        let sep = extension_sep_tensor(h, ExtensionKind::SR);
        let e_lift = apply_to_slot(&h.right().gamma(ell), &[n, n], 1, h.antipode());
        let mult_is_unit = mult_map(a, &e_lift) == a.unit().to_vec();
        checks.push(if mult_is_unit {
            Check::pass("separability-element-multiplies-to-unit")
        } else {
            Check::fail("separability-element-multiplies-to-unit", vec![])
        });
        let mut central = true;
        for i in 0..n {
            let e = unit_vec(n, i);
            let lhs = apply_to_slot(&e_lift, &[n, n], 0, &a.left_mult(&e));
            let rhs = apply_to_slot(&e_lift, &[n, n], 1, &a.right_mult(&e));
            if !vec_is_zero(&sep.project(&vec_sub(&lhs, &rhs))) {
                central = false;
                break;
            }
        }
        checks.push(if central {
            Check::pass("separability-element-is-casimir")
        } else {
            Check::fail("separability-element-is-casimir", vec![])
        });
        AxiomReport::new("maschke-certificate", checks)
    });

    Ok(MaschkeReport {
        conditions,
        separable: verdict,
        normalized_left: nl_int,
        normalized_right: nr_int,
        certificate,
    })
}

// ---------------------------------------------------------------------
// Dual Maschke theorem suite
// ---------------------------------------------------------------------

pub struct DualMaschkeReport<K: Scalar> {
    pub conditions: Vec<ConditionReport>,
    pub coseparable: bool,
    /// Normalized integrals on the Hopf algebroid, one per functional kind
    /// (s/t on the right, s/t on the left), when they exist.
    pub normalized: Vec<Option<Mat<K>>>,
    pub certificate: Option<AxiomReport>,
}

/// Solve for an element of a functional integral space with a prescribed
/// composite: `φ ∘ inc = id` (`inc` the source/target inclusion), or the
/// weaker normalization `φ(1) = 1`.
fn functional_with<K: Scalar>(
    space: &IntegralSpace<K>,
    condition: impl Fn(&Mat<K>) -> Vec<K>,
    rhs: &[K],
) -> Option<Mat<K>> {
    let cols: Vec<Vec<K>> = (0..space.dim())
        .map(|i| condition(&space.basis_functional(i)))
        .collect();
    if cols.is_empty() {
        return if vec_is_zero(rhs) {
            Some(Mat::zeros(space.base_dim, space.total_dim))
        } else {
            None
        };
    }
    let (coeff, _) = Mat::from_cols(cols).solve_affine(rhs)?;
    let mut flat = vec![K::zero(); space.base_dim * space.total_dim];
    for (c, row) in coeff.iter().zip(space.basis.basis_rows()) {
        flat = vec_add(&flat, &crate::linalg::vec_scale(row, c));
    }
    Some(crate::bialgebroid::unflatten_functional(
        &flat,
        space.base_dim,
        space.total_dim,
    ))
}

/// Transpose sparse columns into rows and run the sparse affine solver.
fn solve_from_columns<K: Scalar>(
    num_rows: usize,
    cols: Vec<crate::linalg::SparseVec<K>>,
    b: &[K],
) -> Option<Vec<K>> {
    assert_eq!(b.len(), num_rows);
    let mut rows: Vec<crate::linalg::SparseVec<K>> = vec![Vec::new(); num_rows];
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col {
            rows[*r].push((c, x.clone()));
        }
    }
    solve_affine_sparse(
        cols.len(),
        rows.into_iter()
            .enumerate()
            .map(|(r, row)| (row, b[r].clone())),
    )
}

/// Solve for a bicomodule retraction of a coproduct: `θ: A ⊗_B A -> A`
/// with `θ ∘ γ = id` commuting with both coactions. Returns the matrix on
/// quotient coordinates when coseparable.
fn coseparability_retraction<K: Scalar>(
    a: &FinAlgebra<K>,
    gamma: &Mat<K>,
    quot: &Quotient<K>,
) -> Option<Mat<K>> {
    let n = a.dim();
    let q = quot.dim();
    // Projections of all elementary tensors, reused when re-projecting.
    let proj_elem: Vec<Vec<K>> = (0..n * n)
        .map(|idx| quot.project(&unit_vec(n * n, idx)))
        .collect();
    let gamma_proj: Vec<Vec<K>> = (0..n)
        .map(|i| quot.project(&gamma.mul_vec(&unit_vec(n, i))))
        .collect();

    // F(θ) = [θ(γ(e_i)) ; left-comodule residuals ; right-comodule residuals]
    let rows_affine = n * n;
    let rows_side = q * q;
    let total_rows = rows_affine + 2 * rows_side;
    let eval = |theta: &Mat<K>| -> Vec<K> {
        let mut out = vec![K::zero(); total_rows];
        // θ ∘ γ on each basis vector.
        for i in 0..n {
            let v = theta.mul_vec(&gamma_proj[i]);
            for (r, x) in v.iter().enumerate() {
                out[r * n + i] = x.clone();
            }
        }
        // Comodule residuals per quotient basis vector.
        for j in 0..q {
            let lift = quot.section(&unit_vec(q, j));
            let lhs = quot.project(&gamma.mul_vec(&theta.mul_vec(&unit_vec(q, j))));
            // left: Σ_i e_i ⊗ θ([w_i]) for w = (γ ⊗ id)(lift)
            let w = apply_to_slot(&lift, &[n, n], 0, gamma);
            let mut rhs_l = vec![K::zero(); q];
            let mut rhs_r = vec![K::zero(); q];
            for i in 0..n {
                // w viewed as Σ_i e_i ⊗ w_i with w_i on slots (2,3)
                let wi: Vec<K> = w[i * n * n..(i + 1) * n * n].to_vec();
                let th = theta.mul_vec(&quot.project(&wi));
                for (a2, x) in th.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let pe = &proj_elem[i * n + a2];
                    for (r, y) in pe.iter().enumerate() {
                        rhs_l[r] = rhs_l[r].clone() + x.clone() * y.clone();
                    }
                }
            }
            // right: Σ_k θ([w'_k]) ⊗ e_k for w' = (id ⊗ γ)(lift)
            let wird = apply_to_slot(&lift, &[n, n], 1, gamma);
            for k in 0..n {
                let mut pair = vec![K::zero(); n * n];
                for x1 in 0..n {
                    for x2 in 0..n {
                        pair[x1 * n + x2] = wird[(x1 * n + x2) * n + k].clone();
                    }
                }
                let th = theta.mul_vec(&quot.project(&pair));
                for (a1, x) in th.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let pe = &proj_elem[a1 * n + k];
                    for (r, y) in pe.iter().enumerate() {
                        rhs_r[r] = rhs_r[r].clone() + x.clone() * y.clone();
                    }
                }
            }
            for r in 0..q {
                out[rows_affine + j * q + r] = lhs[r].clone() - rhs_l[r].clone();
                out[rows_affine + rows_side + j * q + r] = lhs[r].clone() - rhs_r[r].clone();
            }
        }
        out
    };

    let mut b = vec![K::zero(); total_rows];
    for i in 0..n {
        b[i * n + i] = K::one();
    }
    let cols: Vec<crate::linalg::SparseVec<K>> = (0..n * q)
        .map(|u| {
            let mut e = Mat::zeros(n, q);
            e.set(u / q, u % q, K::one());
            sparsify(&eval(&e))
        })
        .collect();
    let sol = solve_from_columns(total_rows, cols, &b)?;
    Some(Mat::from_fn(n, q, |r, c| sol[r * q + c].clone()))
}

/// The dual Maschke suite: normalized integrals on the Hopf algebroid,
/// coseparability of both corings, and the comodule splittings of the four
/// base inclusions. All verdicts must agree.
pub fn dual_maschke_report<K: Scalar>(
    h: &HopfAlgebroid<K>,
) -> Result<DualMaschkeReport<K>, EquivalenceViolated> {
    let a = h.total();
    let n = a.dim();
    let spaces = all_integral_spaces(h);
    let mut conditions = Vec::new();

    // 1.a / 1.b: coseparability of the two corings.
    let theta_r =
        coseparability_retraction(a, h.right().gamma_lift(), h.right().tensor().quotient());
    conditions.push(ConditionReport::new(
        "1.a coseparability of the R-coring",
        theta_r.is_some(),
    ));
    let theta_l = coseparability_retraction(a, h.left().gamma_lift(), h.left().tensor().quotient());
    conditions.push(ConditionReport::new(
        "1.b coseparability of the L-coring",
        theta_l.is_some(),
    ));

    // 3.a-3.d: normalized integrals on A.
    let norm_sr = functional_with(
        &spaces.s_on_right,
        |phi| phi.mul_vec(a.unit()),
        h.right().base().unit(),
    );
    conditions.push(ConditionReport::new(
        "3.a normalized s-integral on the right bialgebroid",
        norm_sr.is_some(),
    ));
    let norm_tr = functional_with(
        &spaces.t_on_right,
        |phi| phi.mul_vec(a.unit()),
        h.right().base().unit(),
    );
    conditions.push(ConditionReport::new(
        "3.b normalized t-integral on the right bialgebroid",
        norm_tr.is_some(),
    ));
    let norm_sl = functional_with(
        &spaces.s_on_left,
        |phi| phi.mul_vec(a.unit()),
        h.left().base().unit(),
    );
    conditions.push(ConditionReport::new(
        "3.c normalized s-integral on the left bialgebroid",
        norm_sl.is_some(),
    ));
    let norm_tl = functional_with(
        &spaces.t_on_left,
        |phi| phi.mul_vec(a.unit()),
        h.left().base().unit(),
    );
    conditions.push(ConditionReport::new(
        "3.d normalized t-integral on the left bialgebroid",
        norm_tl.is_some(),
    ));

    // 4.a-4.d: the base inclusions split as comodule maps; a comodule
    // retraction of an inclusion is exactly an integral composing with it
    // to the identity.
    let id_r = Mat::identity(h.right().base().dim());
    let id_l = Mat::identity(h.left().base().dim());
    let split = |space: &IntegralSpace<K>, inc: &Mat<K>, idm: &Mat<K>| {
        functional_with(space, |phi| phi.mul(inc).entries().to_vec(), idm.entries())
    };
    conditions.push(ConditionReport::new(
        "4.a s_R splits as a right comodule map",
        split(&spaces.s_on_right, h.right().s().matrix(), &id_r).is_some(),
    ));
    conditions.push(ConditionReport::new(
        "4.b t_R splits as a left comodule map",
        split(&spaces.t_on_right, h.right().t().matrix(), &id_r).is_some(),
    ));
    conditions.push(ConditionReport::new(
        "4.c s_L splits as a left comodule map",
        split(&spaces.s_on_left, h.left().s().matrix(), &id_l).is_some(),
    ));
    conditions.push(ConditionReport::new(
        "4.d t_L splits as a right comodule map",
        split(&spaces.t_on_left, h.left().t().matrix(), &id_l).is_some(),
    ));

    let verdict = conditions[0].holds;
    if conditions.iter().any(|c| c.holds != verdict) {
        return Err(EquivalenceViolated(format!(
            "dual Maschke conditions disagree: {:?}",
            conditions
                .iter()
                .map(|c| (c.condition.clone(), c.holds))
                .collect::<Vec<_>>()
        )));
    }

    // Positive case: verify the proof's retraction
    // a ⊗ b -> t_R(*λ(a S(b_(1)))) b_(2) built from a normalized t-integral.
    let certificate = norm_tr.as_ref().map(|lam| {
        let mut checks = Vec::new();
        let quot = h.right().tensor().quotient();
        let s = h.antipode();
        let theta_fn = |lift: &[K]| -> Vec<K> {
            let mut out = vec![K::zero(); n];
            for (idx, c) in lift.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (x, y) = (idx / n, idx % n);
                let gy = h.left().gamma(&unit_vec(n, y));
                for (gidx, d) in gy.iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    let (y1, y2) = (gidx / n, gidx % n);
                    let arg = a.mul_vec(&unit_vec(n, x), &s.col(y1));
                    let v = a.mul_vec(&h.right().t().apply(&lam.mul_vec(&arg)), &unit_vec(n, y2));
                    for (r, z) in v.iter().enumerate() {
                        out[r] = out[r].clone() + c.clone() * d.clone() * z.clone();
                    }
                }
            }
            out
        };
        // θ ∘ γ_R = id.
        let mut ok = true;
        for i in 0..n {
            let e = unit_vec(n, i);
            if theta_fn(&h.right().gamma(&e)) != e {
                ok = false;
                break;
            }
        }
        checks.push(if ok {
            Check::pass("retraction-splits-coproduct")
        } else {
            Check::fail("retraction-splits-coproduct", vec![])
        });
        // θ is well defined on the quotient.
        let ok = quot
            .relations()
            .basis_rows()
            .all(|row| vec_is_zero(&theta_fn(row)));
        checks.push(if ok {
            Check::pass("retraction-descends")
        } else {
            Check::fail("retraction-descends", vec![])
        });
        // Bicomodule property on quotient basis lifts.
        let gamma = h.right().gamma_lift();
        let mut ok = true;
        'bico: for j in 0..quot.dim() {
            let lift = quot.section(&unit_vec(quot.dim(), j));
            let lhs = quot.project(&gamma.mul_vec(&theta_fn(&lift)));
            let w = apply_to_slot(&lift, &[n, n], 0, gamma);
            let mut rhs = vec![K::zero(); quot.dim()];
            for i in 0..n {
                let wi: Vec<K> = w[i * n * n..(i + 1) * n * n].to_vec();
                let th = theta_fn(&quot.reduce(&wi));
                let mut emb = vec![K::zero(); n * n];
                for (a2, x) in th.iter().enumerate() {
                    emb[i * n + a2] = x.clone();
                }
                rhs = vec_add(&rhs, &quot.project(&emb));
            }
            if lhs != rhs {
                ok = false;
                break 'bico;
            }
            let wird = apply_to_slot(&lift, &[n, n], 1, gamma);
            let mut rhs = vec![K::zero(); quot.dim()];
            for k in 0..n {
                let mut pair = vec![K::zero(); n * n];
                for x1 in 0..n {
                    for x2 in 0..n {
                        pair[x1 * n + x2] = wird[(x1 * n + x2) * n + k].clone();
                    }
                }
                let th = theta_fn(&quot.reduce(&pair));
                let mut emb = vec![K::zero(); n * n];
                for (a1, x) in th.iter().enumerate() {
                    emb[a1 * n + k] = x.clone();
                }
                rhs = vec_add(&rhs, &quot.project(&emb));
            }
            if lhs != rhs {
                ok = false;
                break 'bico;
            }
        }
        checks.push(if ok {
            Check::pass("retraction-is-bicomodule-map")
        } else {
            Check::fail("retraction-is-bicomodule-map", vec![])
        });
        AxiomReport::new("dual-maschke-certificate", checks)
    });

    Ok(DualMaschkeReport {
        conditions,
        coseparable: verdict,
        normalized: vec![norm_sr, norm_tr, norm_sl, norm_tl],
        certificate,
    })
}


// ---------------------------------------------------------------------
// The Hopf module on the dual and the fundamental isomorphisms
// ---------------------------------------------------------------------

use crate::bialgebroid::{dual_algebra_left, dual_algebra_right, DualAlgebra, DualKind};

/// Dual bases for a module structure on `A` with generators the standard
/// basis: functionals `β^i` in the given dual space with
/// `Σ_i act(β^i(a)) e_i = a` for all `a`. Returns the chosen solution and
/// the solution kernel (for basis-independence tests); `None` when the
/// module is not projective.
pub fn dual_bases<K: Scalar>(
    a: &FinAlgebra<K>,
    space: &Subspace<K>,
    base_dim: usize,
    act: impl Fn(&[K]) -> Vec<K>,
) -> Option<(Vec<Mat<K>>, Vec<Vec<Mat<K>>>)> {
    let n = a.dim();
    let d = space.dim();
    let fns: Vec<Mat<K>> = (0..d)
        .map(|j| {
            crate::bialgebroid::unflatten_functional(space.basis().row(j), base_dim, n)
        })
        .collect();
    // Unknown c[(i, j)]: β^i = Σ_j c[(i,j)] fns[j].
    let mut cols: Vec<Vec<K>> = Vec::with_capacity(n * d);
    for i in 0..n {
        for j in 0..d {
            let mut col = Vec::with_capacity(n * n);
            for ai in 0..n {
                let contrib = a.mul_vec(&act(&fns[j].col(ai)), &unit_vec(n, i));
                col.extend(contrib);
            }
            cols.push(col);
        }
    }
    let mut rhs = Vec::with_capacity(n * n);
    for ai in 0..n {
        rhs.extend(unit_vec::<K>(n, ai));
    }
    let (sol, kernel) = Mat::from_cols(cols).solve_affine(&rhs)?;
    let materialize = |coeffs: &[K]| -> Vec<Mat<K>> {
        (0..n)
            .map(|i| {
                let mut m = Mat::zeros(base_dim, n);
                for j in 0..d {
                    let c = &coeffs[i * d + j];
                    if !c.is_zero() {
                        m = m.add(&fns[j].scale(c));
                    }
                }
                m
            })
            .collect()
    };
    let betas = materialize(&sol);
    let kernel_betas: Vec<Vec<Mat<K>>> = kernel.basis_rows().map(materialize).collect();
    Some((betas, kernel_betas))
}

/// The left-left Hopf module structure on `A^*` and its coinvariants.
pub struct DualHopfModule<K: Scalar> {
    /// The dual `A^*` with its canonical basis.
    pub dual: DualAlgebra<K>,
    /// Dual bases `{e_i, β^i}` for the module `A_L`.
    pub betas: Vec<Mat<K>>,
    /// Left coaction lift `A^*-coords -> A ⊗ A^*-coords`.
    pub tau_l: Mat<K>,
    /// Right coaction lift `A^*-coords -> A^*-coords ⊗ A`.
    pub tau_r: Mat<K>,
    /// The projection `E` onto the coinvariants, on `A^*`-coordinates.
    pub e_proj: Mat<K>,
    /// Coinvariants of `τ_L` inside `A^*`-coordinates.
    pub coinv: Subspace<K>,
    /// `L(A^*)` expressed in `A^*`-coordinates.
    pub integrals_in_dual: Subspace<K>,
    /// The quotient `A_L ⊗ _L A^*` housing `τ_L`.
    pub quotient_l: Quotient<K>,
    pub checks: AxiomReport,
}

/// Build the Hopf module `(A^*, τ_L, τ_R)`, the projection `E` onto the
/// coinvariants, and verify the module laws, idempotency, the coinvariant
/// identification with `L(A^*)`, and independence of the dual-basis choice.
pub fn hopf_module_on_dual<K: Scalar>(h: &HopfAlgebroid<K>) -> DualHopfModule<K> {
    let a = h.total();
    let n = a.dim();
    let nl = h.left().base().dim();
    let s = h.antipode();
    let dual = dual_algebra_right(h.right(), DualKind::AUpperStar);
    let a_star = dual_algebra_left(h.left(), DualKind::AStar);
    let d = dual.dim();
    let mut checks = Vec::new();

    // Dual bases for A_L: a = Σ t_L(β^i(a)) e_i.
    let (betas, beta_kernel) = dual_bases(a, a_star.space(), nl, |v| h.left().t().apply(v))
        .expect("A_L is finitely generated projective over the corpus");
    let psis: Vec<Mat<K>> = betas.iter().map(|b| h.chi_inv(b)).collect();
    let psi_coords: Vec<Vec<K>> = psis
        .iter()
        .map(|p| dual.coords_of(p).expect("χ^{-1} lands in the s-side dual"))
        .collect();
    let _ = &psi_coords;

    let tau_l_from = |betas: &[Mat<K>]| -> Mat<K> {
        Mat::from_cols(
            (0..d)
                .map(|j| {
                    let phi = dual.basis_functional(j);
                    let mut out = vec![K::zero(); n * d];
                    for (i, beta) in betas.iter().enumerate() {
                        let prod = crate::bialgebroid::dual_product_right(
                            h.right(),
                            DualKind::AUpperStar,
                            &h.chi_inv(beta),
                            &phi,
                        );
                        let coords = dual
                            .coords_of(&prod)
                            .expect("dual products stay in the dual");
                        for (r, x) in coords.iter().enumerate() {
                            out[i * d + r] = out[i * d + r].clone() + x.clone();
                        }
                    }
                    out
                })
                .collect(),
        )
    };
    let tau_l = tau_l_from(&betas);

    // The quotient A_L ⊗ _L A^*: the L-action on A^* is l·φ = φ ↼ S(s_L(l)).
    let acts_u: Vec<Mat<K>> = (0..nl)
        .map(|i| a.left_mult(&h.left().t().apply(&unit_vec(nl, i))))
        .collect();
    let acts_v: Vec<Mat<K>> = (0..nl)
        .map(|i| {
            let op = a.left_mult(&s.mul_vec(&h.left().s().apply(&unit_vec(nl, i))));
            Mat::from_cols(
                (0..d)
                    .map(|j| {
                        dual.coords_of(&dual.basis_functional(j).mul(&op))
                            .expect("L-action restricts to the dual")
                    })
                    .collect(),
            )
        })
        .collect();
    let quotient_l = balanced_quotient(n, d, &acts_u, &acts_v);

    // A acts on A^* by a·φ = φ ↼ S(a).
    let act_dual: Vec<Mat<K>> = (0..n)
        .map(|i| {
            let op = a.left_mult(&s.mul_vec(&unit_vec(n, i)));
            Mat::from_cols(
                (0..d)
                    .map(|j| {
                        dual.coords_of(&dual.basis_functional(j).mul(&op))
                            .expect("A-action restricts to the dual")
                    })
                    .collect(),
            )
        })
        .collect();

    // τ_L is a left A-module map (the Hopf module law).
    let mut ok = true;
    'module_law: for ai in 0..n {
        let ga = h.left().gamma(&unit_vec(n, ai));
        for j in 0..d {
            let lhs = tau_l.mul_vec(&act_dual[ai].mul_vec(&unit_vec(d, j)));
            let base_lift = tau_l.mul_vec(&unit_vec(d, j));
            let mut rhs = vec![K::zero(); n * d];
            for (idx, c) in ga.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (a1, a2) = (idx / n, idx % n);
                let term = apply_to_slot(
                    &apply_to_slot(&base_lift, &[n, d], 0, &a.left_mult(&unit_vec(n, a1))),
                    &[n, d],
                    1,
                    &act_dual[a2],
                );
                rhs = vec_add(&rhs, &crate::linalg::vec_scale(&term, c));
            }
            if !vec_is_zero(&quotient_l.project(&vec_sub(&lhs, &rhs))) {
                ok = false;
                break 'module_law;
            }
        }
    }
    checks.push(if ok {
        Check::pass("left-coaction-is-module-map")
    } else {
        Check::fail("left-coaction-is-module-map", vec![])
    });

    // Independence of the dual-basis choice: perturbing by any solution of
    // the homogeneous dual-basis system leaves τ_L unchanged modulo the
    // quotient relations.
    let mut ok = true;
    'indep: for kernel_elt in &beta_kernel {
        let perturbed: Vec<Mat<K>> = betas
            .iter()
            .zip(kernel_elt)
            .map(|(b, k)| b.add(k))
            .collect();
        let tau_alt = tau_l_from(&perturbed);
        for j in 0..d {
            let diff = vec_sub(&tau_alt.col(j), &tau_l.col(j));
            if !vec_is_zero(&quotient_l.project(&diff)) {
                ok = false;
                break 'indep;
            }
        }
    }
    checks.push(if ok {
        Check::pass("coaction-independent-of-dual-basis")
    } else {
        Check::fail("coaction-independent-of-dual-basis", vec![])
    });

    // E(φ) = Σ_i χ^{-1}(β^i) φ ↼ S²(b_i).
    let s2 = s.mul(s);
    let e_proj = {
        let mut m = Mat::zeros(d, d);
        for j in 0..d {
            let phi = dual.basis_functional(j);
            let mut acc = vec![K::zero(); d];
            for (i, beta) in betas.iter().enumerate() {
                let prod = crate::bialgebroid::dual_product_right(
                    h.right(),
                    DualKind::AUpperStar,
                    &h.chi_inv(beta),
                    &phi,
                );
                let shifted = prod.mul(&a.left_mult(&s2.col(i)));
                let coords = dual.coords_of(&shifted).expect("E stays in the dual");
                acc = vec_add(&acc, &coords);
            }
            for (r, x) in acc.iter().enumerate() {
                m.set(r, j, x.clone());
            }
        }
        m
    };

    // L(A^*) in dual coordinates.
    let upper = integral_space(h, IntegralKind::SOnRight);
    let integrals_in_dual = Subspace::from_generators(
        d,
        (0..upper.dim())
            .map(|i| {
                dual.coords_of(&upper.basis_functional(i))
                    .expect("integrals lie in the dual")
            })
            .collect(),
    );

    checks.push(if e_proj.mul(&e_proj) == e_proj {
        Check::pass("projection-idempotent")
    } else {
        Check::fail("projection-idempotent", vec![])
    });
    let image = Subspace::from_generators(d, (0..d).map(|j| e_proj.col(j)).collect());
    checks.push(if image == integrals_in_dual {
        Check::pass("projection-image-is-integral-space")
    } else {
        Check::fail("projection-image-is-integral-space", vec![])
    });
    let fixes = integrals_in_dual
        .basis_rows()
        .all(|row| e_proj.mul_vec(row) == row.to_vec());
    checks.push(if fixes {
        Check::pass("projection-fixes-integrals")
    } else {
        Check::fail("projection-fixes-integrals", vec![])
    });
    let pi_r_coords = dual
        .coords_of(h.right().pi_mat())
        .expect("π_R lies in its dual");
    checks.push(
        if integrals_in_dual.contains(&e_proj.mul_vec(&pi_r_coords)) {
            Check::pass("projection-of-counit-is-integral")
        } else {
            Check::fail("projection-of-counit-is-integral", vec![])
        },
    );

    // Coinvariants: τ_L(φ) = 1 ⊗ φ.
    let coinv = Mat::from_cols(
        (0..d)
            .map(|j| {
                let lhs = tau_l.mul_vec(&unit_vec(d, j));
                let one_phi = tensor_vec(a.unit(), &unit_vec(d, j));
                quotient_l.project(&vec_sub(&lhs, &one_phi))
            })
            .collect(),
    )
    .kernel();
    checks.push(if coinv == integrals_in_dual {
        Check::pass("coinvariants-are-integrals")
    } else {
        Check::fail("coinvariants-are-integrals", vec![])
    });

    // τ_R via dual bases {k_j, κ^j} for ^R A (a = Σ k_j t_R(κ^j(a))).
    let upper_star = dual_algebra_right(h.right(), DualKind::UpperStarA);
    let nr = h.right().base().dim();
    let (kappas, _) = dual_bases(a, upper_star.space(), nr, |v| h.right().t().apply(v))
        .expect("^R A is finitely generated projective over the corpus");
    let pltr = h.left().pi_mat().mul(h.right().t().matrix());
    let tau_r = Mat::from_cols(
        (0..d)
            .map(|j| {
                let phi = dual.basis_functional(j);
                let mut out = vec![K::zero(); d * n];
                for (jj, kappa) in kappas.iter().enumerate() {
                    let f = pltr.mul(&kappa.mul(s));
                    let prod = crate::bialgebroid::dual_product_right(
                        h.right(),
                        DualKind::AUpperStar,
                        &h.chi_inv(&f),
                        &phi,
                    );
                    let coords = dual.coords_of(&prod).expect("τ_R lands in the dual");
                    for (r, x) in coords.iter().enumerate() {
                        out[r * n + jj] = out[r * n + jj].clone() + x.clone();
                    }
                }
                out
            })
            .collect(),
    );

    // Alternative form when both modules are f.g. projective:
    // τ_R(φ) = Σ_i χ^{-1}(β^i) φ ⊗ S(b_i), modulo the right quotient.
    let acts_u_r: Vec<Mat<K>> = (0..nr)
        .map(|i| {
            let op = a.left_mult(&h.right().s().apply(&unit_vec(nr, i)));
            Mat::from_cols(
                (0..d)
                    .map(|j| {
                        dual.coords_of(&dual.basis_functional(j).mul(&op))
                            .expect("R-action restricts to the dual")
                    })
                    .collect(),
            )
        })
        .collect();
    let acts_v_r: Vec<Mat<K>> = (0..nr)
        .map(|i| a.right_mult(&h.right().t().apply(&unit_vec(nr, i))))
        .collect();
    let quotient_r = balanced_quotient(d, n, &acts_u_r, &acts_v_r);
    let mut ok = true;
    for j in 0..d {
        let phi = dual.basis_functional(j);
        let mut alt = vec![K::zero(); d * n];
        for (i, beta) in betas.iter().enumerate() {
            let prod = crate::bialgebroid::dual_product_right(
                h.right(),
                DualKind::AUpperStar,
                &h.chi_inv(beta),
                &phi,
            );
            let coords = dual.coords_of(&prod).expect("stays in the dual");
            let sb = s.col(i);
            for (r, x) in coords.iter().enumerate() {
                for (c, y) in sb.iter().enumerate() {
                    if !x.is_zero() && !y.is_zero() {
                        let o = r * n + c;
                        alt[o] = alt[o].clone() + x.clone() * y.clone();
                    }
                }
            }
        }
        if !vec_is_zero(&quotient_r.project(&vec_sub(&tau_r.col(j), &alt))) {
            ok = false;
            break;
        }
    }
    checks.push(if ok {
        Check::pass("right-coaction-alternative-form")
    } else {
        Check::fail("right-coaction-alternative-form", vec![])
    });

    // τ_R is a right A-module map: τ_R(φ ↼ a) = (φ ↼ a^(1)) ⊗ (k a^(2)).
    let act_dual_right: Vec<Mat<K>> = (0..n)
        .map(|i| {
            let op = a.left_mult(&unit_vec(n, i));
            Mat::from_cols(
                (0..d)
                    .map(|j| {
                        dual.coords_of(&dual.basis_functional(j).mul(&op))
                            .expect("right action restricts to the dual")
                    })
                    .collect(),
            )
        })
        .collect();
    let mut ok = true;
    'right_law: for ai in 0..n {
        let ga = h.right().gamma(&unit_vec(n, ai));
        for j in 0..d {
            let lhs = tau_r.mul_vec(&act_dual_right[ai].mul_vec(&unit_vec(d, j)));
            let base_lift = tau_r.mul_vec(&unit_vec(d, j));
            let mut rhs = vec![K::zero(); d * n];
            for (idx, c) in ga.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (a1, a2) = (idx / n, idx % n);
                let term = apply_to_slot(
                    &apply_to_slot(&base_lift, &[d, n], 0, &act_dual_right[a1]),
                    &[d, n],
                    1,
                    &a.right_mult(&unit_vec(n, a2)),
                );
                rhs = vec_add(&rhs, &crate::linalg::vec_scale(&term, c));
            }
            if !vec_is_zero(&quotient_r.project(&vec_sub(&lhs, &rhs))) {
                ok = false;
                break 'right_law;
            }
        }
    }
    checks.push(if ok {
        Check::pass("right-coaction-is-module-map")
    } else {
        Check::fail("right-coaction-is-module-map", vec![])
    });

    DualHopfModule {
        dual,
        betas,
        tau_l,
        tau_r,
        e_proj,
        coinv,
        integrals_in_dual,
        quotient_l,
        checks: AxiomReport::new("hopf-module-on-dual", checks),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoError {
    /// One of the fundamental maps is not an isomorphism; this is a genuine
    /// counter-scenario and is surfaced, never swallowed.
    NotIso(&'static str),
    ActionDoesNotRestrict(&'static str),
}

impl fmt::Display for IsoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoError::NotIso(which) => write!(f, "{which} is not an isomorphism"),
            IsoError::ActionDoesNotRestrict(which) => {
                write!(
                    f,
                    "{which}: base action does not restrict to the integral space"
                )
            }
        }
    }
}

impl std::error::Error for IsoError {}

/// The two fundamental isomorphisms on balanced tensors with the integral
/// space, with verified two-sided inverses.
pub struct FundamentalIso<K: Scalar> {
    pub alpha_l: Mat<K>,
    pub alpha_l_inv: Mat<K>,
    pub alpha_r: Mat<K>,
    pub alpha_r_inv: Mat<K>,
    pub src_l: Quotient<K>,
    pub src_r: Quotient<K>,
    /// The dual `A^*` both maps land in.
    pub dual: DualAlgebra<K>,
    /// `L(A^*)` as a subspace of the ambient functional coordinates.
    pub integrals: IntegralSpace<K>,
}

/// Build `α_L: ^L A ⊗ L(A^*)^L -> A^*`, `a ⊗ λ -> λ ↼ S(a)` and
/// `α_R: ^R L(A^*) ⊗ A_R -> A^*`, `λ ⊗ a -> λ ↼ a`; verify bijectivity and
/// invert them exactly.
pub fn fundamental_iso<K: Scalar>(h: &HopfAlgebroid<K>) -> Result<FundamentalIso<K>, IsoError> {
    let a = h.total();
    let n = a.dim();
    let nl = h.left().base().dim();
    let nr = h.right().base().dim();
    let s = h.antipode();
    let dual = dual_algebra_right(h.right(), DualKind::AUpperStar);
    let upper = integral_space(h, IntegralKind::SOnRight);
    let dd = upper.dim();

    let coords_in =
        |f: &Mat<K>| -> Option<Vec<K>> { upper.basis.coordinates(f.entries()) };

    // ^L A ⊗ L(A^*)^L: relations a t_L(l) ⊗ λ − a ⊗ λ ↼ s_L(l).
    let acts_u: Vec<Mat<K>> = (0..nl)
        .map(|i| a.right_mult(&h.left().t().apply(&unit_vec(nl, i))))
        .collect();
    let mut acts_v = Vec::new();
    for i in 0..nl {
        let op = a.left_mult(&h.left().s().apply(&unit_vec(nl, i)));
        let mut cols = Vec::new();
        for j in 0..dd {
            let f = upper.basis_functional(j).mul(&op);
            match coords_in(&f) {
                Some(c) => cols.push(c),
                None => return Err(IsoError::ActionDoesNotRestrict("alpha_l")),
            }
        }
        acts_v.push(Mat::from_cols(cols));
    }
    let src_l = balanced_quotient(n, dd, &acts_u, &acts_v);
    if src_l.dim() != dual.dim() {
        return Err(IsoError::NotIso("alpha_l (dimension mismatch)"));
    }
    let alpha_l = Mat::from_cols(
        (0..src_l.dim())
            .map(|j| {
                let lift = src_l.section(&unit_vec(src_l.dim(), j));
                let mut f = Mat::zeros(nr, n);
                for (idx, c) in lift.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (i, lam) = (idx / dd, idx % dd);
                    let term = upper.basis_functional(lam).mul(&a.left_mult(&s.col(i)));
                    f = f.add(&term.scale(c));
                }
                dual.coords_of(&f).expect("α_L lands in the dual")
            })
            .collect(),
    );
    let alpha_l_inv = alpha_l.inverse().ok_or(IsoError::NotIso("alpha_l"))?;

    // ^R L(A^*) ⊗ A_R: relations λ ↼ t_R(r) ⊗ a − λ ⊗ t_R(r) a.
    let mut acts_u_r = Vec::new();
    for i in 0..nr {
        let op = a.left_mult(&h.right().t().apply(&unit_vec(nr, i)));
        let mut cols = Vec::new();
        for j in 0..dd {
            let f = upper.basis_functional(j).mul(&op);
            match coords_in(&f) {
                Some(c) => cols.push(c),
                None => return Err(IsoError::ActionDoesNotRestrict("alpha_r")),
            }
        }
        acts_u_r.push(Mat::from_cols(cols));
    }
    let acts_v_r: Vec<Mat<K>> = (0..nr)
        .map(|i| a.left_mult(&h.right().t().apply(&unit_vec(nr, i))))
        .collect();
    let src_r = balanced_quotient(dd, n, &acts_u_r, &acts_v_r);
    if src_r.dim() != dual.dim() {
        return Err(IsoError::NotIso("alpha_r (dimension mismatch)"));
    }
    let alpha_r = Mat::from_cols(
        (0..src_r.dim())
            .map(|j| {
                let lift = src_r.section(&unit_vec(src_r.dim(), j));
                let mut f = Mat::zeros(nr, n);
                for (idx, c) in lift.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (lam, i) = (idx / n, idx % n);
                    let term = upper
                        .basis_functional(lam)
                        .mul(&a.left_mult(&unit_vec(n, i)));
                    f = f.add(&term.scale(c));
                }
                dual.coords_of(&f).expect("α_R lands in the dual")
            })
            .collect(),
    );
    let alpha_r_inv = alpha_r.inverse().ok_or(IsoError::NotIso("alpha_r"))?;

    Ok(FundamentalIso {
        alpha_l,
        alpha_l_inv,
        alpha_r,
        alpha_r_inv,
        src_l,
        src_r,
        dual,
        integrals: upper,
    })
}

#[cfg(test)]
mod tests_hopf_module_smoke {
    use super::*;
    use crate::constructions::{group_algebra_hopf, lu_algebroid, ut2_algebra};
    use crate::Rat;
    use num_traits::One;

    #[test]
    fn hopf_module_on_dual_verifies() {
        for h in [
            group_algebra_hopf(2, &Rat::one()).unwrap(),
            lu_algebroid(&ut2_algebra(&Rat::one())).unwrap(),
        ] {
            let m = hopf_module_on_dual(&h);
            assert!(m.checks.pass, "hopf module checks failed: {:?}", m.checks);
        }
    }

    #[test]
    fn qc2_coinvariants_are_the_classical_dual_integral_line() {
        let h = group_algebra_hopf(2, &Rat::one()).unwrap();
        let m = hopf_module_on_dual(&h);
        assert_eq!(m.coinv.dim(), 1);
    }

    #[test]
    fn fundamental_iso_bijective() {
        for h in [
            group_algebra_hopf(2, &Rat::one()).unwrap(),
            lu_algebroid(&ut2_algebra(&Rat::one())).unwrap(),
        ] {
            let iso = fundamental_iso(&h).unwrap();
            assert_eq!(
                iso.alpha_l.mul(&iso.alpha_l_inv),
                Mat::identity(iso.alpha_l.rows())
            );
            assert_eq!(
                iso.alpha_r.mul(&iso.alpha_r_inv),
                Mat::identity(iso.alpha_r.rows())
            );
        }
    }

    #[test]
    fn qc2_alpha_l_dimensions() {
        let h = group_algebra_hopf(2, &Rat::one()).unwrap();
        let iso = fundamental_iso(&h).unwrap();
        // dim ^L A ⊗ L(A^*)^L = 2 · 1 = 2 = dim A^*.
        assert_eq!(iso.src_l.dim(), 2);
        assert_eq!(iso.integrals.dim(), 1);
    }
}

// ---------------------------------------------------------------------
// Frobenius decision
// ---------------------------------------------------------------------

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A verified Frobenius system `(ψ, Σ u_i ⊗ v_i)` for one extension.
pub struct FrobeniusSystem<K: Scalar> {
    pub extension: ExtensionKind,
    pub psi: Mat<K>,
    pub casimir_lift: Vec<K>,
    pub casimir_coords: Vec<K>,
}

pub enum FrobeniusOutcome<K: Scalar> {
    Frobenius {
        /// A non-degenerate left integral.
        integral: Vec<K>,
        /// `λ* = (F*)^{-1}(1_A)`, itself an s-integral on the Hopf algebroid.
        dual_integral: Mat<K>,
        /// Verified Frobenius systems for all four extensions.
        systems: Vec<FrobeniusSystem<K>>,
        /// Generator witnessing that `L(A^*)^L` is free of rank one.
        rank_one_generator: Mat<K>,
        checks: AxiomReport,
    },
    NotFrobenius {
        integral_dim: usize,
        detail: String,
    },
    Undecided {
        integral_dim: usize,
        trials: usize,
    },
}

/// Verify the Frobenius-system identity and bimodularity of `ψ` for the
/// extension `σ: B -> A` on every basis element.
fn verify_frobenius_system<K: Scalar>(
    a: &FinAlgebra<K>,
    base: &FinAlgebra<K>,
    sigma: &Mat<K>,
    psi: &Mat<K>,
    casimir_lift: &[K],
) -> bool {
    let n = a.dim();
    let nb = base.dim();
    // ψ(σ(b) x σ(b')) = b ψ(x) b'.
    for b in 0..nb {
        let sb = sigma.col(b);
        for b2 in 0..nb {
            let sb2 = sigma.col(b2);
            let lhs = psi.mul(&a.left_mult(&sb)).mul(&a.right_mult(&sb2));
            let rhs = base
                .left_mult(&unit_vec(nb, b))
                .mul(&base.right_mult(&unit_vec(nb, b2)))
                .mul(psi);
            if lhs != rhs {
                return false;
            }
        }
    }
    // Σ σψ(x u_i) v_i = x = Σ u_i σψ(v_i x).
    for x in 0..n {
        let ex = unit_vec(n, x);
        let mut left = vec![K::zero(); n];
        let mut right = vec![K::zero(); n];
        for (idx, c) in casimir_lift.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (u, v) = (idx / n, idx % n);
            let t1 = a.mul_vec(
                &sigma.mul_vec(&psi.mul_vec(&a.mul_vec(&ex, &unit_vec(n, u)))),
                &unit_vec(n, v),
            );
            left = vec_add(&left, &crate::linalg::vec_scale(&t1, c));
            let t2 = a.mul_vec(
                &unit_vec(n, u),
                &sigma.mul_vec(&psi.mul_vec(&a.mul_vec(&unit_vec(n, v), &ex))),
            );
            right = vec_add(&right, &crate::linalg::vec_scale(&t2, c));
        }
        if left != ex || right != ex {
            return false;
        }
    }
    true
}

/// Decide the Frobenius property through non-degenerate integrals
/// (`F*: A^* -> A`, `φ -> φ ⇀ ℓ` and `*F: ^*A -> A`, `φ -> φ ⇁ ℓ` both
/// bijective for some `ℓ`).
///
/// With `d = dim L(A)`, the determinant of `F*` is a homogeneous
/// polynomial of degree `dim A` in the `d` coefficients. For `d <= 2` over
/// the rationals it is decided by interpolation on a `(n+1)^d` grid; over a
/// finite field with few enough points the quantifier is exhausted
/// directly; otherwise seeded random trials are used and an all-zero run
/// is reported as undecided rather than as a negative.
pub fn frobenius_decide<K: Scalar>(
    h: &HopfAlgebroid<K>,
    seed: u64,
    trials: usize,
) -> FrobeniusOutcome<K> {
    let a = h.total();
    let n = a.dim();
    let li = integral_space(h, IntegralKind::LeftIn);
    let d = li.dim();
    if d == 0 {
        return FrobeniusOutcome::NotFrobenius {
            integral_dim: 0,
            detail: "the left integral space is zero".into(),
        };
    }
    let upper = dual_algebra_right(h.right(), DualKind::AUpperStar);
    let upper_star = dual_algebra_right(h.right(), DualKind::UpperStarA);
    if upper.dim() != n {
        return FrobeniusOutcome::NotFrobenius {
            integral_dim: d,
            detail: format!(
                "dim A^* = {} differs from dim A = {}; no pairing map can be bijective",
                upper.dim(),
                n
            ),
        };
    }

    let ell_of = |coeffs: &[K]| -> Vec<K> {
        let mut out = vec![K::zero(); n];
        for (c, row) in coeffs.iter().zip(li.basis.basis_rows()) {
            out = vec_add(&out, &crate::linalg::vec_scale(row, c));
        }
        out
    };
    let fstar = |ell: &[K]| -> Mat<K> {
        Mat::from_cols(
            (0..upper.dim())
                .map(|j| h.right().act_element_t(&upper.basis_functional(j), ell))
                .collect(),
        )
    };
    let starf = |ell: &[K]| -> Mat<K> {
        Mat::from_cols(
            (0..upper_star.dim())
                .map(|j| {
                    h.right()
                        .act_element_s(&upper_star.basis_functional(j), ell)
                })
                .collect(),
        )
    };

    let one = K::one();
    let order = K::field_order(&li.basis.basis().get(0, 0).clone());
    // Candidate search: grid for small d (a deterministic decision over Q,
    // exhaustive over small finite fields), else seeded random trials.
    let mut candidates: Vec<Vec<K>> = Vec::new();
    let mut deterministic = false;
    match order {
        Some(p) if (p as u128).pow(d as u32) <= 1 << 14 => {
            deterministic = true;
            let total = (p as usize).pow(d as u32);
            for t in 0..total {
                let mut c = Vec::with_capacity(d);
                let mut rem = t;
                for _ in 0..d {
                    c.push(K::embed_int((rem % p as usize) as i64, &one));
                    rem /= p as usize;
                }
                candidates.push(c);
            }
        }
        _ if d <= 2 => {
            deterministic = true;
            // Grid {0..n}^d decides vanishing of the degree-n determinant.
            let side = n + 1;
            let total = side.pow(d as u32);
            for t in 0..total {
                let mut c = Vec::with_capacity(d);
                let mut rem = t;
                for _ in 0..d {
                    c.push(K::embed_int((rem % side) as i64, &one));
                    rem /= side;
                }
                candidates.push(c);
            }
        }
        _ => {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..trials {
                let c: Vec<K> = (0..d)
                    .map(|_| K::embed_int(rng.gen_range(-(n as i64)..=n as i64), &one))
                    .collect();
                candidates.push(c);
            }
        }
    }

    let mut found: Option<(Vec<K>, Mat<K>)> = None;
    let mut fstar_hit = false;
    for c in &candidates {
        let ell = ell_of(c);
        let f = fstar(&ell);
        if let Some(finv) = f.inverse() {
            fstar_hit = true;
            if starf(&ell).inverse().is_some() {
                found = Some((ell, finv));
                break;
            }
        }
    }
    let Some((ell, finv)) = found else {
        if deterministic && !fstar_hit {
            return FrobeniusOutcome::NotFrobenius {
                integral_dim: d,
                detail: format!(
                    "det F* vanishes at all {} interpolation points, hence identically on L(A)",
                    candidates.len()
                ),
            };
        }
        return FrobeniusOutcome::Undecided {
            integral_dim: d,
            trials: candidates.len(),
        };
    };

    // λ* = (F*)^{-1}(1_A).
    let lam_coords = finv.mul_vec(a.unit());
    let lam = upper.functional(&lam_coords);
    let mut checks = Vec::new();
    let s_integrals = integral_space(h, IntegralKind::SOnRight);
    checks.push(if s_integrals.basis.contains(lam.entries()) {
        Check::pass("dual-integral-is-s-integral")
    } else {
        Check::fail("dual-integral-is-s-integral", vec![])
    });

    // (F*)^{-1}(a) = λ* ↼ S(a).
    let s = h.antipode();
    let mut ok = true;
    for i in 0..n {
        let f = lam.mul(&a.left_mult(&s.col(i)));
        if upper.coords_of(&f) != Some(finv.col(i)) {
            ok = false;
            break;
        }
    }
    checks.push(if ok {
        Check::pass("pairing-inverse-formula")
    } else {
        Check::fail("pairing-inverse-formula", vec![])
    });

    // Frobenius systems for the four extensions, from the theorem's proof.
    let sinv = s
        .inverse()
        .expect("a Frobenius Hopf algebroid has bijective antipode");
    let e_sr = apply_to_slot(&h.right().gamma(&ell), &[n, n], 1, s);
    let pls_r = h.left().pi_mat().mul(h.right().s().matrix());
    let prs_l = h.right().pi_mat().mul(h.left().s().matrix());
    let psi_tl = pls_r.mul(&lam);
    let psi_sl = psi_tl.mul(&sinv);
    let psi_tr = prs_l.mul(&psi_sl);
    let e_sl = {
        let flipped = crate::tensor::flip_vec(&e_sr, n, n);
        apply_to_slot(&apply_to_slot(&flipped, &[n, n], 0, s), &[n, n], 1, s)
    };
    let specs: [(ExtensionKind, Mat<K>, Vec<K>); 4] = [
        (ExtensionKind::SR, lam.clone(), e_sr.clone()),
        (ExtensionKind::TL, psi_tl, e_sr.clone()),
        (ExtensionKind::SL, psi_sl, e_sl.clone()),
        (ExtensionKind::TR, psi_tr, e_sl),
    ];
    let mut systems = Vec::new();
    for (ext, psi, e_lift) in specs {
        let (base, sigma) = extension_base_sigma(h, ext);
        let ok = verify_frobenius_system(a, &base, &sigma, &psi, &e_lift);
        let name = format!("frobenius-system-{:?}", ext).to_lowercase();
        checks.push(if ok {
            Check::pass(&name)
        } else {
            Check::fail(&name, vec![])
        });
        let quot = extension_sep_tensor(h, ext);
        let casimir_coords = quot.project(&e_lift);
        systems.push(FrobeniusSystem {
            extension: ext,
            psi,
            casimir_lift: e_lift,
            casimir_coords,
        });
    }

    // Rank-one cross-check: κ(λ) = π_L(Σ s_R(λ(u_i)) v_i) is an isomorphism
    // L(A^*)^L -> L; its preimage of 1_L generates freely via
    // l -> λ° ↼ s_L(l).
    let nl = h.left().base().dim();
    let kappa = Mat::from_cols(
        (0..s_integrals.dim())
            .map(|j| {
                let f = s_integrals.basis_functional(j);
                let mut acc = vec![K::zero(); n];
                for (idx, c) in e_sr.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (u, v) = (idx / n, idx % n);
                    let t = a.mul_vec(
                        &h.right().s().apply(&f.mul_vec(&unit_vec(n, u))),
                        &unit_vec(n, v),
                    );
                    acc = vec_add(&acc, &crate::linalg::vec_scale(&t, c));
                }
                h.left().pi(&acc)
            })
            .collect(),
    );
    let rank_one = kappa
        .solve_affine(h.left().base().unit())
        .map(|(coeff, _)| {
            let mut flat = vec![K::zero(); s_integrals.base_dim * n];
            for (c, row) in coeff.iter().zip(s_integrals.basis.basis_rows()) {
                flat = vec_add(&flat, &crate::linalg::vec_scale(row, c));
            }
            crate::bialgebroid::unflatten_functional(&flat, s_integrals.base_dim, n)
        });
    let rank_one_generator = match rank_one {
        Some(lam0) => {
            // l -> λ° ↼ s_L(l) must be a bijection L -> L(A^*).
            let map = Mat::from_cols(
                (0..nl)
                    .map(|i| {
                        let f = lam0.mul(&a.left_mult(&h.left().s().apply(&unit_vec(nl, i))));
                        s_integrals
                            .basis
                            .coordinates(f.entries())
                            .unwrap_or_else(|| vec![K::zero(); s_integrals.dim()])
                    })
                    .collect(),
            );
            let bij = s_integrals.dim() == nl && map.inverse().is_some();
            checks.push(if bij {
                Check::pass("integral-space-free-of-rank-one")
            } else {
                Check::fail("integral-space-free-of-rank-one", vec![])
            });
            lam0
        }
        None => {
            checks.push(Check::fail("integral-space-free-of-rank-one", vec![]));
            lam.clone()
        }
    };

    FrobeniusOutcome::Frobenius {
        integral: ell,
        dual_integral: lam,
        systems,
        rank_one_generator,
        checks: AxiomReport::new("frobenius-certificate", checks),
    }
}

// ---------------------------------------------------------------------
// Quasi-Frobenius decision
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QFSide {
    Left,
    Right,
}

/// Certificate attached to a quasi-Frobenius verdict.
pub enum QFCertificate<K: Scalar> {
    Positive {
        /// Pairs `(ℓ_k, λ*_k)` with `Σ λ*_k(S^{±1}(ℓ_k)) = 1` in the base.
        integral_pairs: Vec<(Vec<K>, Mat<K>)>,
        /// A QF-system `{(ψ_k, Σ u ⊗ v)}` for the extension.
        qf_system: Vec<(Mat<K>, Vec<K>)>,
    },
    Negative {
        /// Dimension of the span of the bilinear integral values.
        integral_span_dim: Option<usize>,
        /// Dimension of the span of the extension-level pairings.
        lemma_span_dim: usize,
    },
}

pub struct QFVerdict<K: Scalar> {
    pub side: QFSide,
    pub extension: ExtensionKind,
    pub result: bool,
    /// Theorem-level span criterion through the integrals; `None` when the
    /// antipode is not bijective and the mirrored class is unreachable.
    pub integral_criterion: Option<bool>,
    /// Raw QF-system span criterion on the extension itself.
    pub lemma_criterion: bool,
    pub certificate: QFCertificate<K>,
}

/// Decide the (left or right) quasi-Frobenius property of one extension by
/// two independent span criteria: the theorem's bilinear integral span and
/// the extension-level QF-system span. Over a field, finite families of
/// integrals reduce to spans because scalars absorb into either slot.
pub fn qf_decide<K: Scalar>(
    h: &HopfAlgebroid<K>,
    side: QFSide,
    extension: ExtensionKind,
) -> Result<QFVerdict<K>, EquivalenceViolated> {
    let a = h.total();
    let n = a.dim();

    // Integral-side criterion: which class of integrals pairs with which
    // map (the mirrored classes need S^{-1}).
    let (in_kind, on_kind, use_inverse, unit): (IntegralKind, IntegralKind, bool, Vec<K>) =
        match (side, extension) {
            (QFSide::Left, ExtensionKind::SR) | (QFSide::Left, ExtensionKind::TL) => (
                IntegralKind::LeftIn,
                IntegralKind::SOnRight,
                false,
                h.right().base().unit().to_vec(),
            ),
            (QFSide::Right, ExtensionKind::SL) | (QFSide::Right, ExtensionKind::TR) => (
                IntegralKind::RightIn,
                IntegralKind::SOnLeft,
                false,
                h.left().base().unit().to_vec(),
            ),
            (QFSide::Right, ExtensionKind::SR) | (QFSide::Right, ExtensionKind::TL) => (
                IntegralKind::RightIn,
                IntegralKind::TOnLeft,
                true,
                h.left().base().unit().to_vec(),
            ),
            (QFSide::Left, ExtensionKind::SL) | (QFSide::Left, ExtensionKind::TR) => (
                IntegralKind::LeftIn,
                IntegralKind::TOnRight,
                true,
                h.right().base().unit().to_vec(),
            ),
        };
    let mapper: Option<Mat<K>> = if use_inverse {
        h.antipode().inverse()
    } else {
        Some(h.antipode().clone())
    };

    let ins = integral_space(h, in_kind);
    let ons = integral_space(h, on_kind);
    let mut integral_criterion = None;
    let mut integral_pairs = Vec::new();
    let mut integral_span_dim = None;
    if let Some(m) = &mapper {
        let mut values = Vec::new();
        let mut tags = Vec::new();
        for k in 0..ins.dim() {
            let img = m.mul_vec(ins.basis.basis_rows().nth(k).unwrap());
            for j in 0..ons.dim() {
                values.push(ons.basis_functional(j).mul_vec(&img));
                tags.push((k, j));
            }
        }
        let span = Subspace::from_generators(unit.len(), values.clone());
        integral_span_dim = Some(span.dim());
        let hit = if values.is_empty() {
            None
        } else {
            Mat::from_cols(values.clone())
                .solve_affine(&unit)
                .map(|x| x.0)
        };
        integral_criterion = Some(hit.is_some());
        if let Some(coeffs) = hit {
            for (c, (k, j)) in coeffs.iter().zip(&tags) {
                if c.is_zero() {
                    continue;
                }
                let ell = ins.basis.basis_rows().nth(*k).unwrap().to_vec();
                let lam = ons.basis_functional(*j).scale(c);
                integral_pairs.push((ell, lam));
            }
            // Verify the certificate exactly.
            let mut total = vec![K::zero(); unit.len()];
            for (ell, lam) in &integral_pairs {
                total = vec_add(&total, &lam.mul_vec(&m.mul_vec(ell)));
            }
            if total != unit {
                return Err(EquivalenceViolated(
                    "integral QF certificate does not sum to the unit".into(),
                ));
            }
        }
    }

    // Extension-level criterion: spans of QF-system pairings.
    let (base, sigma) = extension_base_sigma(h, extension);
    let nb = base.dim();
    let quot = extension_sep_tensor(h, extension);
    let q = quot.dim();
    // B-B bimodular functionals A -> B.
    let bimod = functional_kernel(n, nb, |phi: &Mat<K>| {
        let mut out = Vec::new();
        for b in 0..nb {
            let sb = sigma.col(b);
            out.extend(
                phi.mul(&a.left_mult(&sb))
                    .sub(&base.left_mult(&unit_vec(nb, b)).mul(phi))
                    .entries()
                    .to_vec(),
            );
            out.extend(
                phi.mul(&a.right_mult(&sb))
                    .sub(&base.right_mult(&unit_vec(nb, b)).mul(phi))
                    .entries()
                    .to_vec(),
            );
        }
        out
    });
    // A-central elements of A ⊗_B A.
    let central = {
        let mut rows: Vec<Vec<K>> = Vec::new();
        for i in 0..n {
            let e = unit_vec(n, i);
            let la = a.left_mult(&e);
            let ra = a.right_mult(&e);
            let diff = descend_with(
                |v| {
                    let x = apply_to_slot(v, &[n, n], 0, &la);
                    let y = apply_to_slot(v, &[n, n], 1, &ra);
                    vec_sub(&x, &y)
                },
                &quot,
                &DescendTarget::Quotient(&quot),
            )
            .expect("bimodule action descends");
            for r in 0..diff.rows() {
                rows.push(diff.row(r).to_vec());
            }
        }
        Mat::from_rows(rows).kernel()
    };
    let val = |psi: &Mat<K>, lift: &[K]| -> Vec<K> {
        let mut out = vec![K::zero(); n];
        for (idx, c) in lift.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (u, v) = (idx / n, idx % n);
            let t = match side {
                QFSide::Left => a.mul_vec(
                    &unit_vec(n, u),
                    &sigma.mul_vec(&psi.mul_vec(&unit_vec(n, v))),
                ),
                QFSide::Right => a.mul_vec(
                    &sigma.mul_vec(&psi.mul_vec(&unit_vec(n, u))),
                    &unit_vec(n, v),
                ),
            };
            out = vec_add(&out, &crate::linalg::vec_scale(&t, c));
        }
        out
    };
    let psis: Vec<Mat<K>> = (0..bimod.dim())
        .map(|j| crate::bialgebroid::unflatten_functional(bimod.basis().row(j), nb, n))
        .collect();
    let casimirs: Vec<Vec<K>> = central.basis_rows().map(|row| quot.section(row)).collect();
    let mut lemma_values = Vec::new();
    let mut lemma_tags = Vec::new();
    for (p, psi) in psis.iter().enumerate() {
        for (qq, cas) in casimirs.iter().enumerate() {
            lemma_values.push(val(psi, cas));
            lemma_tags.push((p, qq));
        }
    }
    let lemma_span = Subspace::from_generators(n, lemma_values.clone());
    let lemma_hit = if lemma_values.is_empty() {
        None
    } else {
        Mat::from_cols(lemma_values.clone())
            .solve_affine(a.unit())
            .map(|x| x.0)
    };
    let lemma_criterion = lemma_hit.is_some();

    if let Some(exp) = integral_criterion {
        if exp != lemma_criterion {
            return Err(EquivalenceViolated(format!(
                "QF criteria disagree for {:?} {:?}: integrals say {}, QF-system span says {}",
                side,
                extension.label(),
                exp,
                lemma_criterion
            )));
        }
    }

    let certificate = if lemma_criterion {
        let coeffs = lemma_hit.unwrap();
        // Collapse the bilinear combination into pairs (ψ_p, Σ_q c e_q).
        let mut per_psi: Vec<Vec<K>> = vec![vec![K::zero(); n * n]; psis.len()];
        for (c, (p, qq)) in coeffs.iter().zip(&lemma_tags) {
            if c.is_zero() {
                continue;
            }
            per_psi[*p] = vec_add(&per_psi[*p], &crate::linalg::vec_scale(&casimirs[*qq], c));
        }
        let qf_system: Vec<(Mat<K>, Vec<K>)> = psis
            .iter()
            .zip(per_psi)
            .filter(|(_, e)| !vec_is_zero(e))
            .map(|(p, e)| (p.clone(), e))
            .collect();
        // Verify: Casimirs are central, and the unit identity holds.
        let mut total = vec![K::zero(); n];
        for (psi, e) in &qf_system {
            if !central.contains(&quot.project(e)) {
                return Err(EquivalenceViolated(
                    "QF-system Casimir is not central".into(),
                ));
            }
            total = vec_add(&total, &val(psi, e));
        }
        if total != a.unit().to_vec() {
            return Err(EquivalenceViolated(
                "QF-system does not sum to the unit".into(),
            ));
        }
        QFCertificate::Positive {
            integral_pairs,
            qf_system,
        }
    } else {
        QFCertificate::Negative {
            integral_span_dim,
            lemma_span_dim: lemma_span.dim(),
        }
    };
    let _ = q;

    Ok(QFVerdict {
        side,
        extension,
        result: lemma_criterion,
        integral_criterion,
        lemma_criterion,
        certificate,
    })
}

#[cfg(test)]
mod tests_frobenius_qf {
    use super::*;
    use crate::constructions::{
        group_algebra_hopf, hopf_algebra_embed, lu_algebroid, m2_algebra, sweedler_h4, ut2_algebra,
    };
    use crate::Rat;
    use num_traits::One;

    #[test]
    fn qc2_is_frobenius() {
        let h = group_algebra_hopf(2, &Rat::one()).unwrap();
        match frobenius_decide(&h, 1, 64) {
            FrobeniusOutcome::Frobenius { checks, .. } => {
                assert!(checks.pass, "{checks:?}");
            }
            _ => panic!("QC2 must be Frobenius"),
        }
    }

    #[test]
    fn sweedler_is_frobenius_though_not_separable() {
        let (hh, gamma, eps, s) = sweedler_h4(&Rat::one());
        let h = hopf_algebra_embed(&hh, &gamma, &eps, &s).unwrap();
        match frobenius_decide(&h, 1, 64) {
            FrobeniusOutcome::Frobenius { checks, .. } => assert!(checks.pass, "{checks:?}"),
            _ => panic!("Sweedler H4 must be Frobenius"),
        }
    }

    #[test]
    fn lu_m2_is_frobenius() {
        let h = lu_algebroid(&m2_algebra(&Rat::one())).unwrap();
        match frobenius_decide(&h, 1, 64) {
            FrobeniusOutcome::Frobenius { checks, .. } => assert!(checks.pass, "{checks:?}"),
            other => {
                let tag = match other {
                    FrobeniusOutcome::NotFrobenius { detail, .. } => detail,
                    FrobeniusOutcome::Undecided { .. } => "undecided".into(),
                    _ => unreachable!(),
                };
                panic!("Lu(M2) must be Frobenius: {tag}");
            }
        }
    }

    #[test]
    fn lu_ut2_is_not_left_or_right_qf() {
        let h = lu_algebroid(&ut2_algebra(&Rat::one())).unwrap();
        for side in [QFSide::Left, QFSide::Right] {
            for ext in ExtensionKind::ALL {
                let v = qf_decide(&h, side, ext).unwrap();
                assert!(!v.result, "{side:?} {ext:?} unexpectedly QF");
                assert_eq!(v.integral_criterion, Some(false));
            }
        }
    }

    #[test]
    fn lu_m2_is_qf_on_both_sides() {
        let h = lu_algebroid(&m2_algebra(&Rat::one())).unwrap();
        for side in [QFSide::Left, QFSide::Right] {
            for ext in ExtensionKind::ALL {
                let v = qf_decide(&h, side, ext).unwrap();
                assert!(v.result, "{side:?} {ext:?} unexpectedly not QF");
            }
        }
    }

    #[test]
    fn frobenius_implies_qf() {
        let h = group_algebra_hopf(2, &Rat::one()).unwrap();
        assert!(matches!(
            frobenius_decide(&h, 1, 16),
            FrobeniusOutcome::Frobenius { .. }
        ));
        for side in [QFSide::Left, QFSide::Right] {
            for ext in ExtensionKind::ALL {
                assert!(qf_decide(&h, side, ext).unwrap().result);
            }
        }
    }
}

#[cfg(test)]
mod tests_cross_checks {
    use super::*;
    use crate::bialgebroid::invariants_of_module;
    use crate::constructions::{
        base_field_like, group_algebra_hopf, hopf_algebra_embed, lu_algebroid, ut2_algebra,
    };
    use crate::Rat;
    use num_traits::One;

    #[test]
    fn invariants_of_left_regular_module_match_left_integrals() {
        let h = lu_algebroid(&ut2_algebra(&Rat::one())).unwrap();
        let n = h.total().dim();
        let regular: Vec<Mat<Rat>> = (0..n)
            .map(|i| h.total().left_mult(&unit_vec(n, i)))
            .collect();
        let inv = invariants_of_module(h.left(), &regular).unwrap();
        let li = integral_space(&h, IntegralKind::LeftIn);
        assert_eq!(inv, li.basis);
    }

    #[test]
    fn trivial_algebroid_over_the_base_field() {
        // A = k: every space is one dimensional and everything is trivially
        // separable, coseparable and Frobenius.
        let k = base_field_like(&Rat::one());
        let gamma = Mat::identity(1);
        let eps = Mat::identity(1);
        let s = Mat::identity(1);
        let h = hopf_algebra_embed(&k, &gamma, &eps, &s).unwrap();
        let li = integral_space(&h, IntegralKind::LeftIn);
        assert_eq!(li.dim(), 1);
        assert!(li.basis.contains(&[Rat::one()]));
        assert!(maschke_report(&h).unwrap().separable);
        let dm = dual_maschke_report(&h).unwrap();
        assert!(dm.coseparable);
        let iso = fundamental_iso(&h).unwrap();
        assert_eq!(iso.alpha_l, Mat::identity(1));
        assert!(matches!(
            frobenius_decide(&h, 1, 4),
            FrobeniusOutcome::Frobenius { .. }
        ));
    }

    #[test]
    fn antipode_maps_left_integrals_into_right_integrals() {
        for h in [
            group_algebra_hopf(2, &Rat::one()).unwrap(),
            lu_algebroid(&ut2_algebra(&Rat::one())).unwrap(),
        ] {
            assert!(antipode_swaps_integrals(&h));
        }
    }

    #[test]
    fn dual_basis_transfer_along_the_antipode() {
        // From dual bases {e_i, β^i} of A_L, the pairs
        // {S^{-1}(e_i), π_R ∘ t_L ∘ β^i ∘ S} are dual bases of ^R A:
        // a = Σ_j k_j t_R(κ^j(a)).
        let h = lu_algebroid(&ut2_algebra(&Rat::one())).unwrap();
        let a = h.total();
        let n = a.dim();
        let a_star = crate::bialgebroid::dual_algebra_left(h.left(), DualKind::AStar);
        let (betas, _) = dual_bases(a, a_star.space(), h.left().base().dim(), |v| {
            h.left().t().apply(v)
        })
        .unwrap();
        let sinv = h.antipode().inverse().unwrap();
        let prtl = h.right().pi_mat().mul(h.left().t().matrix());
        for ai in 0..n {
            let ea = unit_vec(n, ai);
            let mut acc = vec![Rat::from_integer(0.into()); n];
            for (i, beta) in betas.iter().enumerate() {
                let kappa = prtl.mul(&beta.mul(h.antipode()));
                let kj = sinv.col(i);
                let t = a.mul_vec(&kj, &h.right().t().apply(&kappa.mul_vec(&ea)));
                acc = vec_add(&acc, &t);
            }
            assert_eq!(acc, ea);
        }
    }

    #[test]
    fn normalized_integral_of_qc2_is_half_the_sum() {
        let h = group_algebra_hopf(2, &Rat::one()).unwrap();
        let rep = maschke_report(&h).unwrap();
        let half = Rat::new(1.into(), 2.into());
        assert_eq!(rep.normalized_left.unwrap(), vec![half.clone(), half]);
    }
}

#[cfg(test)]
mod tests_oracles {
    use super::*;
    use crate::constructions::{builtin, lu_algebroid, m2_algebra, Builtin, BUILTIN_NAMES};
    use crate::tensor::tensor_vec;
    use crate::Rat;
    use num_traits::One;

    #[test]
    fn classical_matrix_casimir_is_a_separability_element_for_lu_m2() {
        // Independent oracle: e = Σ_j (E_j1 ⊗ 1) ⊗ (E_1j ⊗ 1) multiplies to
        // the unit and is A-central in A ⊗_R A for the extension s_R of the
        // enveloping algebroid of M2.
        let b = m2_algebra(&Rat::one());
        let h = lu_algebroid(&b).unwrap();
        let a = h.total();
        let n = a.dim();
        let bop = b.opposite();
        let quot = extension_sep_tensor(&h, ExtensionKind::SR);
        // E_j1 has index 2j, E_1j has index j (row-major pairs (r, c) -> 2r + c).
        let mut e_lift = vec![Rat::from_integer(0.into()); n * n];
        for j in 0..2 {
            let u = b.tensor_elem(&bop, &unit_vec(4, 2 * j), b.unit());
            let v = b.tensor_elem(&bop, &unit_vec(4, j), b.unit());
            e_lift = vec_add(&e_lift, &tensor_vec(&u, &v));
        }
        assert_eq!(mult_map(a, &e_lift), a.unit().to_vec());
        for i in 0..n {
            let ei = unit_vec(n, i);
            let lhs = apply_to_slot(&e_lift, &[n, n], 0, &a.left_mult(&ei));
            let rhs = apply_to_slot(&e_lift, &[n, n], 1, &a.right_mult(&ei));
            assert!(vec_is_zero(&quot.project(&vec_sub(&lhs, &rhs))));
        }
        // The direct Maschke solve agrees that the extension is separable.
        assert!(maschke_report(&h).unwrap().separable);
    }

    #[test]
    fn every_catalog_entry_is_verified() {
        for name in BUILTIN_NAMES {
            match builtin(name).unwrap() {
                Builtin::AlgebroidQ(h) => assert!(h.total().dim() > 0),
                Builtin::AlgebroidFp(h) => assert!(h.total().dim() > 0),
                Builtin::AlgebraQ(a) => assert!(a.dim() > 0),
                Builtin::AlgebraFp(a) => assert!(a.dim() > 0),
            }
        }
    }
}
