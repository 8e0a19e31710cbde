//! Corings over a (noncommutative) base algebra, and their comodules.
//!
//! A coring here is a coproduct lift `γ: A -> A ⊗_k A` and a counit
//! `π: A -> B` that descend to a comonoid on the declared balanced tensor
//! `A ⊗_B A`. All axioms — bimodularity of `γ` and `π`, coassociativity in
//! the iterated quotient, both counit laws — are verified at construction
//! with lexicographically first witnesses.

use std::fmt;

use crate::algebra::{AlgMap, FinAlgebra};
use crate::linalg::{unit_vec, vec_add, vec_sub, Mat};
use crate::scalar::Scalar;
use crate::tensor::{
    apply_to_slot, balanced_quotient, balanced_tensor, iterated_quotient, tensor_vec,
    BalancedTensor, ModKind, Quotient, TensorError,
};

#[derive(Debug, Clone, PartialEq)]
pub enum CoringError {
    /// `γ` or `π` is not a bimodule map; side 0 = left, 1 = right.
    NotBalanced(&'static str, usize, usize),
    NotCoassociative(usize),
    /// Counit law fails; side 0 = `(π ⊗ A) γ`, 1 = `(A ⊗ π) γ`.
    CounitFails(usize, usize),
    Tensor(TensorError),
}

impl fmt::Display for CoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoringError::NotBalanced(map, side, i) => {
                write!(f, "{map} is not bimodular on side {side} at witness ({i})")
            }
            CoringError::NotCoassociative(i) => {
                write!(f, "coassociativity fails at basis index {i}")
            }
            CoringError::CounitFails(side, i) => {
                write!(f, "counit law {side} fails at basis index {i}")
            }
            CoringError::Tensor(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CoringError {}

impl From<TensorError> for CoringError {
    fn from(e: TensorError) -> Self {
        CoringError::Tensor(e)
    }
}

/// A verified coring `(_B A _B, γ, π)` over the base `B`.
pub struct CoringData<K: Scalar> {
    carrier: FinAlgebra<K>,
    base: FinAlgebra<K>,
    s: AlgMap<K>,
    t: AlgMap<K>,
    left_kind: ModKind,
    right_kind: ModKind,
    gamma_lift: Mat<K>,
    pi: Mat<K>,
    tensor: BalancedTensor<K>,
}

impl<K: Scalar> fmt::Debug for CoringData<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CoringData(dim {} over base dim {})",
            self.carrier.dim(),
            self.base.dim()
        )
    }
}

impl<K: Scalar> CoringData<K> {
    /// Verify a coring. `left_kind`/`right_kind` declare the `B`-bimodule
    /// structure of the carrier; the coproduct lands in the balanced tensor
    /// formed from `(right_kind, left_kind)`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        carrier: FinAlgebra<K>,
        base: FinAlgebra<K>,
        s: AlgMap<K>,
        t: AlgMap<K>,
        left_kind: ModKind,
        right_kind: ModKind,
        gamma_lift: Mat<K>,
        pi: Mat<K>,
    ) -> Result<Self, CoringError> {
        let n = carrier.dim();
        let nb = base.dim();
        if gamma_lift.rows() != n * n || gamma_lift.cols() != n {
            return Err(CoringError::Tensor(TensorError::ShapeMismatch(
                "gamma lift must be n^2 x n".into(),
            )));
        }
        if pi.rows() != nb || pi.cols() != n {
            return Err(CoringError::Tensor(TensorError::ShapeMismatch(
                "counit must be dim(B) x dim(A)".into(),
            )));
        }
        let tensor = balanced_tensor(&carrier, &base, &s, &t, right_kind, left_kind)?;
        let coring = CoringData {
            carrier,
            base,
            s,
            t,
            left_kind,
            right_kind,
            gamma_lift,
            pi,
            tensor,
        };
        coring.check_axioms()?;
        Ok(coring)
    }

    fn check_axioms(&self) -> Result<(), CoringError> {
        let n = self.carrier.dim();
        let nb = self.base.dim();

        // π is a B-B bimodule map.
        for b in 0..nb {
            let eb = unit_vec(nb, b);
            let lact = self.left_action(&eb);
            let ract = self.right_action(&eb);
            for i in 0..n {
                let ei = unit_vec(n, i);
                let lhs = self.pi.mul_vec(&lact.mul_vec(&ei));
                let rhs = self.base.mul_vec(&eb, &self.pi.mul_vec(&ei));
                if lhs != rhs {
                    return Err(CoringError::NotBalanced("counit", 0, i));
                }
                let lhs = self.pi.mul_vec(&ract.mul_vec(&ei));
                let rhs = self.base.mul_vec(&self.pi.mul_vec(&ei), &eb);
                if lhs != rhs {
                    return Err(CoringError::NotBalanced("counit", 1, i));
                }
            }
        }

        // γ is a B-B bimodule map into the balanced tensor: the left action
        // hits the first factor, the right action the second.
        let quot = self.tensor.quotient();
        for b in 0..nb {
            let eb = unit_vec(nb, b);
            let lact = self.left_action(&eb);
            let ract = self.right_action(&eb);
            for i in 0..n {
                let ei = unit_vec(n, i);
                let g = self.gamma_lift.mul_vec(&ei);
                let lhs = self.gamma_lift.mul_vec(&lact.mul_vec(&ei));
                let rhs = apply_to_slot(&g, &[n, n], 0, &lact);
                if quot.project(&lhs) != quot.project(&rhs) {
                    return Err(CoringError::NotBalanced("coproduct", 0, i));
                }
                let lhs = self.gamma_lift.mul_vec(&ract.mul_vec(&ei));
                let rhs = apply_to_slot(&g, &[n, n], 1, &ract);
                if quot.project(&lhs) != quot.project(&rhs) {
                    return Err(CoringError::NotBalanced("coproduct", 1, i));
                }
            }
        }

        // Counit laws on the lift (well defined once π is bimodular).
        for i in 0..n {
            let ei = unit_vec(n, i);
            if self.counit_left(&self.gamma_lift.mul_vec(&ei)) != ei {
                return Err(CoringError::CounitFails(0, i));
            }
            if self.counit_right(&self.gamma_lift.mul_vec(&ei)) != ei {
                return Err(CoringError::CounitFails(1, i));
            }
        }

        // Coassociativity in the iterated quotient.
        let triple = self.triple_quotient();
        for i in 0..n {
            let g = self.gamma_lift.mul_vec(&unit_vec(n, i));
            let lhs = apply_to_slot(&g, &[n, n], 0, &self.gamma_lift);
            let rhs = apply_to_slot(&g, &[n, n], 1, &self.gamma_lift);
            if triple.project(&lhs) != triple.project(&rhs) {
                return Err(CoringError::NotCoassociative(i));
            }
        }
        Ok(())
    }

    /// `(π ⊗ A) γ` computed on a tensor-square lift, with `B ⊗_B A`
    /// identified with `A` through the declared left structure.
    pub fn counit_left(&self, lift: &[K]) -> Vec<K> {
        let n = self.carrier.dim();
        let mut out = vec![K::zero(); n];
        for (idx, x) in lift.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (i, j) = (idx / n, idx % n);
            let pb = self.pi.mul_vec(&unit_vec(n, i));
            let acted = self.left_action(&pb).mul_vec(&unit_vec(n, j));
            out = vec_add(
                &out,
                &acted
                    .iter()
                    .map(|y| y.clone() * x.clone())
                    .collect::<Vec<_>>(),
            );
        }
        out
    }

    /// `(A ⊗ π) γ` on a lift, identifying `A ⊗_B B` with `A` through the
    /// declared right structure.
    pub fn counit_right(&self, lift: &[K]) -> Vec<K> {
        let n = self.carrier.dim();
        let mut out = vec![K::zero(); n];
        for (idx, x) in lift.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (i, j) = (idx / n, idx % n);
            let pb = self.pi.mul_vec(&unit_vec(n, j));
            let acted = self.right_action(&pb).mul_vec(&unit_vec(n, i));
            out = vec_add(
                &out,
                &acted
                    .iter()
                    .map(|y| y.clone() * x.clone())
                    .collect::<Vec<_>>(),
            );
        }
        out
    }

    /// Left action operator of a base element on the carrier.
    pub fn left_action(&self, b: &[K]) -> Mat<K> {
        self.left_kind.action(&self.carrier, &self.s, &self.t, b)
    }

    /// Right action operator of a base element on the carrier.
    pub fn right_action(&self, b: &[K]) -> Mat<K> {
        self.right_kind.action(&self.carrier, &self.s, &self.t, b)
    }

    /// The iterated quotient `A ⊗_B A ⊗_B A` housing coassociativity.
    pub fn triple_quotient(&self) -> Quotient<K> {
        let n = self.carrier.dim();
        iterated_quotient((n, n, n), self.tensor.quotient(), self.tensor.quotient())
    }

    pub fn carrier(&self) -> &FinAlgebra<K> {
        &self.carrier
    }

    pub fn base(&self) -> &FinAlgebra<K> {
        &self.base
    }

    pub fn source(&self) -> &AlgMap<K> {
        &self.s
    }

    pub fn target(&self) -> &AlgMap<K> {
        &self.t
    }

    pub fn left_kind(&self) -> ModKind {
        self.left_kind
    }

    pub fn right_kind(&self) -> ModKind {
        self.right_kind
    }

    pub fn gamma_lift(&self) -> &Mat<K> {
        &self.gamma_lift
    }

    pub fn pi(&self) -> &Mat<K> {
        &self.pi
    }

    pub fn tensor(&self) -> &BalancedTensor<K> {
        &self.tensor
    }

    /// True iff `γ(g) = g ⊗ g` in the quotient and `π(g) = 1_B`.
    pub fn is_grouplike(&self, g: &[K]) -> bool {
        let quot = self.tensor.quotient();
        let lhs = quot.project(&self.gamma_lift.mul_vec(g));
        let rhs = quot.project(&tensor_vec(g, g));
        lhs == rhs && self.pi.mul_vec(g) == self.base.unit()
    }
}

/// Which side a comodule coacts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComodSide {
    Left,
    Right,
}

/// A comodule candidate: a space with a `B`-action and a coaction lift
/// (`M -> A ⊗_k M` for left comodules, `M -> M ⊗_k A` for right ones).
pub struct Comodule<K: Scalar> {
    pub dim: usize,
    pub side: ComodSide,
    pub coaction_lift: Mat<K>,
    /// Action of each base basis element on the comodule (a left action for
    /// left comodules, a right action for right ones).
    pub action: Vec<Mat<K>>,
}

/// Verify the comodule axioms over a verified coring.
pub fn check_comodule<K: Scalar>(
    coring: &CoringData<K>,
    m: &Comodule<K>,
) -> Result<(), CoringError> {
    let n = coring.carrier().dim();
    let nb = coring.base().dim();
    let md = m.dim;
    assert_eq!(
        m.action.len(),
        nb,
        "one action matrix per base basis element"
    );

    // The balanced tensor housing the coaction.
    let acts_a: Vec<Mat<K>> = (0..nb)
        .map(|b| match m.side {
            ComodSide::Left => coring.right_action(&unit_vec(nb, b)),
            ComodSide::Right => coring.left_action(&unit_vec(nb, b)),
        })
        .collect();
    let quot = match m.side {
        ComodSide::Left => balanced_quotient(n, md, &acts_a, &m.action),
        ComodSide::Right => balanced_quotient(md, n, &m.action, &acts_a),
    };

    let expected_rows = match m.side {
        ComodSide::Left => n * md,
        ComodSide::Right => md * n,
    };
    if m.coaction_lift.rows() != expected_rows || m.coaction_lift.cols() != md {
        return Err(CoringError::Tensor(TensorError::ShapeMismatch(
            "coaction lift shape".into(),
        )));
    }

    // B-linearity of the coaction (descends to the balanced tensor).
    for b in 0..nb {
        let eb = unit_vec(nb, b);
        for i in 0..md {
            let ei = unit_vec(md, i);
            let lhs = m.coaction_lift.mul_vec(&m.action[b].mul_vec(&ei));
            let co = m.coaction_lift.mul_vec(&ei);
            let rhs = match m.side {
                ComodSide::Left => apply_to_slot(&co, &[n, md], 0, &coring.left_action(&eb)),
                ComodSide::Right => apply_to_slot(&co, &[md, n], 1, &coring.right_action(&eb)),
            };
            if quot
                .project(&vec_sub(&lhs, &rhs))
                .iter()
                .any(|x| !x.is_zero())
            {
                return Err(CoringError::NotBalanced("coaction", 0, i));
            }
        }
    }

    // Counit law: applying π to the A-slot and acting on the M-slot
    // recovers the element.
    for i in 0..md {
        let ei = unit_vec(md, i);
        let co = m.coaction_lift.mul_vec(&ei);
        let mut out = vec![K::zero(); md];
        for (idx, x) in co.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (ai, mi) = match m.side {
                ComodSide::Left => (idx / md, idx % md),
                ComodSide::Right => (idx % n, idx / n),
            };
            let pb = coring.pi().mul_vec(&unit_vec(n, ai));
            for (b, c) in pb.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let acted = m.action[b].mul_vec(&unit_vec(md, mi));
                for (r, y) in acted.iter().enumerate() {
                    out[r] = out[r].clone() + x.clone() * c.clone() * y.clone();
                }
            }
        }
        if out != ei {
            return Err(CoringError::CounitFails(0, i));
        }
    }

    // Coassociativity in the appropriate triple quotient.
    let gamma = coring.gamma_lift();
    match m.side {
        ComodSide::Left => {
            let triple = iterated_quotient((n, n, md), coring.tensor().quotient(), &quot);
            for i in 0..md {
                let co = m.coaction_lift.mul_vec(&unit_vec(md, i));
                let lhs = apply_to_slot(&co, &[n, md], 0, gamma);
                let rhs = apply_to_slot(&co, &[n, md], 1, &m.coaction_lift);
                if triple
                    .project(&vec_sub(&lhs, &rhs))
                    .iter()
                    .any(|x| !x.is_zero())
                {
                    return Err(CoringError::NotCoassociative(i));
                }
            }
        }
        ComodSide::Right => {
            let triple = iterated_quotient((md, n, n), &quot, coring.tensor().quotient());
            for i in 0..md {
                let co = m.coaction_lift.mul_vec(&unit_vec(md, i));
                let lhs = apply_to_slot(&co, &[md, n], 0, &m.coaction_lift);
                let rhs = apply_to_slot(&co, &[md, n], 1, gamma);
                if triple
                    .project(&vec_sub(&lhs, &rhs))
                    .iter()
                    .any(|x| !x.is_zero())
                {
                    return Err(CoringError::NotCoassociative(i));
                }
            }
        }
    }
    Ok(())
}

/// The regular left comodule `(_B A, γ)`.
pub fn regular_left_comodule<K: Scalar>(coring: &CoringData<K>) -> Comodule<K> {
    let nb = coring.base().dim();
    Comodule {
        dim: coring.carrier().dim(),
        side: ComodSide::Left,
        coaction_lift: coring.gamma_lift().clone(),
        action: (0..nb)
            .map(|b| coring.left_action(&unit_vec(nb, b)))
            .collect(),
    }
}

/// The regular right comodule `(A_B, γ)`.
pub fn regular_right_comodule<K: Scalar>(coring: &CoringData<K>) -> Comodule<K> {
    let nb = coring.base().dim();
    Comodule {
        dim: coring.carrier().dim(),
        side: ComodSide::Right,
        coaction_lift: coring.gamma_lift().clone(),
        action: (0..nb)
            .map(|b| coring.right_action(&unit_vec(nb, b)))
            .collect(),
    }
}

/// The base as a left comodule through a grouplike element: `b -> (b·g) ⊗ 1_B`.
pub fn base_left_comodule<K: Scalar>(coring: &CoringData<K>, g: &[K]) -> Comodule<K> {
    let nb = coring.base().dim();
    let cols: Vec<Vec<K>> = (0..nb)
        .map(|i| {
            let bg = coring.left_action(&unit_vec(nb, i)).mul_vec(g);
            tensor_vec(&bg, coring.base().unit())
        })
        .collect();
    Comodule {
        dim: nb,
        side: ComodSide::Left,
        coaction_lift: Mat::from_cols(cols),
        action: (0..nb)
            .map(|b| coring.base().left_mult(&unit_vec(nb, b)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Variance;
    use crate::Rat;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn qv(v: Vec<i64>) -> Vec<Rat> {
        v.into_iter().map(q).collect()
    }

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

    fn unit_maps(a: &FinAlgebra<Rat>) -> (AlgMap<Rat>, AlgMap<Rat>) {
        let k = FinAlgebra::<Rat>::base_field();
        let m = Mat::from_cols(vec![a.unit().to_vec()]);
        (
            AlgMap::new(m.clone(), &k, a, Variance::Homomorphism).unwrap(),
            AlgMap::new(m, &k, a, Variance::AntiHomomorphism).unwrap(),
        )
    }

    /// Group-like coalgebra on QC2 over the base field.
    fn qc2_coring() -> CoringData<Rat> {
        let a = qc2();
        let k = FinAlgebra::<Rat>::base_field();
        let (s, t) = unit_maps(&a);
        // γ(1) = 1⊗1 (index 0), γ(g) = g⊗g (index 3).
        let gamma = Mat::from_cols(vec![qv(vec![1, 0, 0, 0]), qv(vec![0, 0, 0, 1])]);
        let pi = Mat::from_rows(vec![qv(vec![1, 1])]);
        CoringData::new(
            a,
            k,
            s,
            t,
            ModKind::LowerLeft,
            ModKind::LowerRight,
            gamma,
            pi,
        )
        .unwrap()
    }

    /// The left coring of the Lu bialgebroid over B = UT(2).
    fn lu_coring() -> CoringData<Rat> {
        let b = ut2();
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
        let s = AlgMap::new(smat, &b, &a, Variance::Homomorphism).unwrap();
        let t = AlgMap::new(tmat, &b, &a, Variance::AntiHomomorphism).unwrap();
        // γ(b1 ⊗ b2) = (b1 ⊗ 1) ⊗ (1 ⊗ b2), π(b1 ⊗ b2) = b1 b2.
        let na = a.dim();
        let gamma = Mat::from_cols(
            (0..na)
                .map(|idx| {
                    let (i, j) = (idx / n, idx % n);
                    let x = b.tensor_elem(&bop, &unit_vec(n, i), b.unit());
                    let y = b.tensor_elem(&bop, b.unit(), &unit_vec(n, j));
                    tensor_vec(&x, &y)
                })
                .collect(),
        );
        let pi = Mat::from_cols(
            (0..na)
                .map(|idx| {
                    let (i, j) = (idx / n, idx % n);
                    b.mul_vec(&unit_vec(n, i), &unit_vec(n, j))
                })
                .collect(),
        );
        CoringData::new(
            a,
            b,
            s,
            t,
            ModKind::LowerLeft,
            ModKind::LowerRight,
            gamma,
            pi,
        )
        .unwrap()
    }

    #[test]
    fn grouplike_coalgebra_accepted() {
        let c = qc2_coring();
        assert_eq!(c.tensor().dim(), 4);
    }

    #[test]
    fn broken_counit_rejected() {
        let a = qc2();
        let k = FinAlgebra::<Rat>::base_field();
        let (s, t) = unit_maps(&a);
        // γ(g) = 1 ⊗ g breaks the right counit law.
        let gamma = Mat::from_cols(vec![qv(vec![1, 0, 0, 0]), qv(vec![0, 1, 0, 0])]);
        let pi = Mat::from_rows(vec![qv(vec![1, 1])]);
        let err = CoringData::new(
            a,
            k,
            s,
            t,
            ModKind::LowerLeft,
            ModKind::LowerRight,
            gamma,
            pi,
        )
        .unwrap_err();
        assert!(matches!(err, CoringError::CounitFails(_, 1)));
    }

    #[test]
    fn lu_coring_accepted() {
        let c = lu_coring();
        assert_eq!(c.tensor().dim(), 27);
    }

    #[test]
    fn grouplike_checks() {
        let lu = lu_coring();
        assert!(lu.is_grouplike(lu.carrier().unit()));

        let c = qc2_coring();
        assert!(c.is_grouplike(&qv(vec![0, 1])));
        // π(1 + g) = 2 ≠ 1.
        assert!(!c.is_grouplike(&qv(vec![1, 1])));
    }

    #[test]
    fn regular_comodules_pass() {
        for c in [qc2_coring(), lu_coring()] {
            check_comodule(&c, &regular_left_comodule(&c)).unwrap();
            check_comodule(&c, &regular_right_comodule(&c)).unwrap();
        }
    }

    #[test]
    fn base_comodule_via_grouplike_passes() {
        let c = lu_coring();
        let m = base_left_comodule(&c, c.carrier().unit());
        check_comodule(&c, &m).unwrap();
    }

    #[test]
    fn zero_coaction_fails_counit() {
        let c = qc2_coring();
        let m = Comodule {
            dim: 2,
            side: ComodSide::Left,
            coaction_lift: Mat::zeros(4, 2),
            action: vec![Mat::identity(2)],
        };
        let err = check_comodule(&c, &m).unwrap_err();
        assert!(matches!(err, CoringError::CounitFails(_, _)));
    }

    #[test]
    fn grouplike_induces_comodule_map() {
        // b -> b · g is a comodule map (B, via g) -> (A, γ):
        // γ(b·g) = (b·g) ⊗ g in the quotient.
        let c = lu_coring();
        let g = c.carrier().unit().to_vec();
        let nb = c.base().dim();
        let quot = c.tensor().quotient();
        for i in 0..nb {
            let bg = c.left_action(&unit_vec(nb, i)).mul_vec(&g);
            let lhs = quot.project(&c.gamma_lift().mul_vec(&bg));
            let rhs = quot.project(&tensor_vec(&bg, &g));
            assert_eq!(lhs, rhs);
        }
    }
}
