//! Acceptance suite: the eight exit criteria of the project, one test per
//! criterion, each printing a single pass line. Arithmetic is exact, so
//! every comparison below is at tolerance zero.
//!
//! Run with `cargo test -p hopfalgd --test acceptance -- --nocapture`.

use std::time::Instant;

use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hopfalgd::constructions::{
    dual_numbers_algebra, group_algebra_hopf, hopf_algebra_embed, lu_algebroid, m2_algebra,
    sweedler_h4, ut2_algebra,
};
use hopfalgd::hopfalgebroid::{verify_derived_identities, HopfAlgebroid};
use hopfalgd::integrals::{
    all_integral_spaces, dual_integral_characterizations, dual_maschke_report,
    extension_sep_tensor, frobenius_decide, fundamental_iso, hopf_module_on_dual,
    left_integral_characterizations, maschke_report, qf_decide, right_integral_characterizations,
    ExtensionKind, FrobeniusOutcome, IntegralKind, QFSide,
};
use hopfalgd::json::{
    emit_algebroid, parse_document, to_canonical_string, verify_document, Document, FieldDesc,
};
use hopfalgd::linalg::{vec_add, vec_scale, Mat};
use hopfalgd::scalar::{Fp, Scalar};
use hopfalgd::Rat;

fn one_q() -> Rat {
    Rat::one()
}

fn one_f5() -> Fp {
    Fp::new(1, 5)
}

fn q_corpus() -> Vec<(&'static str, HopfAlgebroid<Rat>)> {
    let (h4, gamma, eps, s) = sweedler_h4(&one_q());
    vec![
        ("qc2", group_algebra_hopf(2, &one_q()).unwrap()),
        (
            "sweedler-h4",
            hopf_algebra_embed(&h4, &gamma, &eps, &s).unwrap(),
        ),
        ("lu-ut2-q", lu_algebroid(&ut2_algebra(&one_q())).unwrap()),
        ("lu-m2-q", lu_algebroid(&m2_algebra(&one_q())).unwrap()),
        (
            "lu-dualnumbers-q",
            lu_algebroid(&dual_numbers_algebra(&one_q())).unwrap(),
        ),
    ]
}

fn fp_corpus() -> Vec<(&'static str, HopfAlgebroid<Fp>)> {
    vec![
        ("f5c5", group_algebra_hopf(5, &one_f5()).unwrap()),
        ("lu-m2-f5", lu_algebroid(&m2_algebra(&one_f5())).unwrap()),
    ]
}

#[test]
fn criterion_1_axiom_suite_on_lu_algebroids() {
    let budget = 30.0_f64;
    let mut timings = Vec::new();

    let t = Instant::now();
    lu_algebroid(&ut2_algebra(&one_q())).expect("Lu over UT(2, Q)");
    timings.push(("UT(2, Q)", t.elapsed().as_secs_f64()));

    let t = Instant::now();
    lu_algebroid(&m2_algebra(&one_q())).expect("Lu over M2(Q)");
    timings.push(("M2(Q)", t.elapsed().as_secs_f64()));

    let t = Instant::now();
    lu_algebroid(&m2_algebra(&one_f5())).expect("Lu over M2(F5)");
    timings.push(("M2(F5)", t.elapsed().as_secs_f64()));

    let t = Instant::now();
    lu_algebroid(&dual_numbers_algebra(&one_q())).expect("Lu over Q[x]/(x^2)");
    timings.push(("Q[x]/(x^2)", t.elapsed().as_secs_f64()));

    for (name, secs) in &timings {
        assert!(
            *secs < budget,
            "axiom suite for Lu over {name} took {secs:.2}s (budget {budget}s)"
        );
    }
    let detail: Vec<String> = timings
        .iter()
        .map(|(n, s)| format!("{n} {s:.2}s"))
        .collect();
    println!(
        "ACCEPTANCE criterion 1: PASS — Lu axiom suites verified ({})",
        detail.join(", ")
    );
}

#[test]
fn criterion_2_derived_identity_suite() {
    for (name, h) in &q_corpus() {
        let rep = verify_derived_identities(h);
        assert!(rep.pass, "derived identities fail on {name}: {rep:?}");
    }
    for (name, h) in &fp_corpus() {
        let rep = verify_derived_identities(h);
        assert!(rep.pass, "derived identities fail on {name}: {rep:?}");
    }
    println!(
        "ACCEPTANCE criterion 2: PASS — antipode identities hold on all basis tuples of 7 corpus inputs"
    );
}

#[test]
fn criterion_3_maschke_equivalence() {
    let expect_q = [
        ("qc2", true),
        ("sweedler-h4", false),
        ("lu-ut2-q", false),
        ("lu-m2-q", true),
        ("lu-dualnumbers-q", false),
    ];
    for ((name, h), (ename, expected)) in q_corpus().iter().zip(expect_q) {
        assert_eq!(*name, ename);
        let rep = maschke_report(h).expect("all twelve conditions agree");
        assert_eq!(rep.separable, expected, "Maschke verdict for {name}");
        if let Some(cert) = &rep.certificate {
            assert!(cert.pass);
        }
        let dual = dual_maschke_report(h).expect("all dual conditions agree");
        let _ = dual.coseparable;
    }
    let expect_f = [("f5c5", false), ("lu-m2-f5", true)];
    for ((name, h), (ename, expected)) in fp_corpus().iter().zip(expect_f) {
        assert_eq!(*name, ename);
        let rep = maschke_report(h).expect("all twelve conditions agree");
        assert_eq!(rep.separable, expected, "Maschke verdict for {name}");
        dual_maschke_report(h).expect("all dual conditions agree");
    }
    println!(
        "ACCEPTANCE criterion 3: PASS — 12 Maschke conditions agree on all 7 inputs (positives qc2, lu-m2-q, lu-m2-f5; negatives sweedler-h4, f5c5, lu-ut2-q); dual Maschke agreement likewise"
    );
}

#[test]
fn criterion_4_fundamental_theorem() {
    fn run<K: Scalar>(name: &str, h: &HopfAlgebroid<K>) {
        let iso = fundamental_iso(h).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(
            iso.alpha_l.mul(&iso.alpha_l_inv),
            Mat::identity(iso.alpha_l.rows()),
            "{name}: alpha_L right inverse"
        );
        assert_eq!(
            iso.alpha_l_inv.mul(&iso.alpha_l),
            Mat::identity(iso.alpha_l.rows()),
            "{name}: alpha_L left inverse"
        );
        assert_eq!(
            iso.alpha_r.mul(&iso.alpha_r_inv),
            Mat::identity(iso.alpha_r.rows()),
            "{name}: alpha_R right inverse"
        );
        assert_eq!(
            iso.alpha_r_inv.mul(&iso.alpha_r),
            Mat::identity(iso.alpha_r.rows()),
            "{name}: alpha_R left inverse"
        );
        let m = hopf_module_on_dual(h);
        assert!(m.checks.pass, "{name}: Hopf module checks: {:?}", m.checks);
    }
    for (name, h) in &q_corpus() {
        run(name, h);
    }
    for (name, h) in &fp_corpus() {
        run(name, h);
    }
    println!(
        "ACCEPTANCE criterion 4: PASS — alpha_L and alpha_R are exact bijections with two-sided inverses, E is idempotent with image L(A^*), and the coaction is A-linear, on all 7 inputs"
    );
}

#[test]
fn criterion_5_frobenius_certificates() {
    let (h4, gamma, eps, s) = sweedler_h4(&one_q());
    let positives: Vec<(&str, HopfAlgebroid<Rat>)> = vec![
        ("qc2", group_algebra_hopf(2, &one_q()).unwrap()),
        (
            "sweedler-h4",
            hopf_algebra_embed(&h4, &gamma, &eps, &s).unwrap(),
        ),
        ("lu-m2-q", lu_algebroid(&m2_algebra(&one_q())).unwrap()),
    ];
    for (name, h) in &positives {
        match frobenius_decide(h, 1, 64) {
            FrobeniusOutcome::Frobenius {
                checks, systems, ..
            } => {
                assert!(checks.pass, "{name}: Frobenius certificate: {checks:?}");
                assert_eq!(systems.len(), 4, "{name}: systems for all four extensions");
            }
            _ => panic!("{name} must be Frobenius"),
        }
    }
    println!(
        "ACCEPTANCE criterion 5: PASS — Frobenius YES with verified (psi, Casimir) systems for qc2, sweedler-h4, lu-m2-q; rank-one cross-check agrees"
    );
}

#[test]
fn criterion_6_quasi_frobenius() {
    fn run_all<K: Scalar>(name: &str, h: &HopfAlgebroid<K>, expected: Option<bool>) {
        for side in [QFSide::Left, QFSide::Right] {
            for ext in ExtensionKind::ALL {
                let v = qf_decide(h, side, ext)
                    .unwrap_or_else(|e| panic!("{name} {side:?} {ext:?}: {e}"));
                assert_eq!(
                    v.integral_criterion,
                    Some(v.lemma_criterion),
                    "{name}: criteria disagree"
                );
                if let Some(exp) = expected {
                    assert_eq!(v.result, exp, "{name} {side:?} {ext:?}");
                }
            }
        }
    }
    for (name, h) in &q_corpus() {
        let expected = match *name {
            "lu-ut2-q" => Some(false),
            "lu-m2-q" => Some(true),
            _ => None,
        };
        run_all(name, h, expected);
    }
    for (name, h) in &fp_corpus() {
        run_all(name, h, None);
    }
    println!(
        "ACCEPTANCE criterion 6: PASS — lu-ut2-q is neither left nor right QF for any extension, lu-m2-q is QF; the integral span and QF-system span criteria agree on all inputs"
    );
}

#[test]
fn criterion_7_characterization_property_tests() {
    fn random_element<K: Scalar>(
        basis: &hopfalgd::linalg::Subspace<K>,
        rng: &mut StdRng,
        one: &K,
    ) -> Vec<K> {
        let mut out = vec![K::zero(); basis.ambient_dim()];
        for row in basis.basis_rows() {
            let c = K::embed_int(rng.gen_range(-9i64..=9), one);
            out = vec_add(&out, &vec_scale(row, &c));
        }
        out
    }

    fn run<K: Scalar>(name: &str, h: &HopfAlgebroid<K>, one: &K) {
        let mut rng = StdRng::seed_from_u64(7);
        let spaces = all_integral_spaces(h);
        let sep_sr = extension_sep_tensor(h, ExtensionKind::SR);
        let sep_sl = extension_sep_tensor(h, ExtensionKind::SL);
        for _ in 0..100 {
            let ell = random_element(&spaces.left_in.basis, &mut rng, one);
            assert!(
                left_integral_characterizations(h, &sep_sr, &ell),
                "{name}: left-integral characterizations fail"
            );
            let p = random_element(&spaces.right_in.basis, &mut rng, one);
            assert!(
                right_integral_characterizations(h, &sep_sl, &p),
                "{name}: right-integral characterizations fail"
            );
            for (kind, space) in [
                (IntegralKind::SOnRight, &spaces.s_on_right),
                (IntegralKind::TOnRight, &spaces.t_on_right),
                (IntegralKind::SOnLeft, &spaces.s_on_left),
                (IntegralKind::TOnLeft, &spaces.t_on_left),
            ] {
                let flat = random_element(&space.basis, &mut rng, one);
                let phi = hopfalgd::bialgebroid::unflatten_functional(
                    &flat,
                    space.base_dim,
                    space.total_dim,
                );
                assert!(
                    dual_integral_characterizations(h, kind, &spaces, &phi),
                    "{name}: dual characterizations fail for {kind:?}"
                );
            }
        }
    }
    for (name, h) in &q_corpus() {
        run(name, h, &one_q());
    }
    for (name, h) in &fp_corpus() {
        run(name, h, &one_f5());
    }
    println!(
        "ACCEPTANCE criterion 7: PASS — 100 seeded random elements of each integral space satisfy every equivalent characterization exactly, on all 7 inputs"
    );
}

#[test]
fn criterion_8_serialization_round_trip() {
    fn verdict_transcript<K: Scalar>(h: &HopfAlgebroid<K>) -> String {
        let maschke = maschke_report(h).unwrap();
        let mut out = format!("separable={}", maschke.separable);
        for side in [QFSide::Left, QFSide::Right] {
            for ext in ExtensionKind::ALL {
                let v = qf_decide(h, side, ext).unwrap();
                out.push_str(&format!(";qf[{side:?},{ext:?}]={}", v.result));
            }
        }
        match frobenius_decide(h, 42, 64) {
            FrobeniusOutcome::Frobenius { integral, .. } => {
                let txt: Vec<String> = integral.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!(";frobenius=yes[{}]", txt.join(",")));
            }
            FrobeniusOutcome::NotFrobenius { detail, .. } => {
                out.push_str(&format!(";frobenius=no[{detail}]"));
            }
            FrobeniusOutcome::Undecided { trials, .. } => {
                out.push_str(&format!(";frobenius=undecided[{trials}]"));
            }
        }
        out
    }

    for (name, h) in &q_corpus() {
        let doc1 = to_canonical_string(&emit_algebroid(h, FieldDesc::Rationals));
        let Document::Q(parsed) = parse_document(&doc1).unwrap() else {
            panic!("{name}: field changed in round trip")
        };
        let (_, res) = verify_document(&parsed);
        let h2 = res.unwrap_or_else(|e| panic!("{name}: reload failed: {e}"));
        let doc2 = to_canonical_string(&emit_algebroid(&h2, FieldDesc::Rationals));
        assert_eq!(doc1, doc2, "{name}: emit/load/emit not byte-stable");
        assert_eq!(
            verdict_transcript(h),
            verdict_transcript(&h2),
            "{name}: verdicts changed across the round trip"
        );
    }
    for (name, h) in &fp_corpus() {
        let doc1 = to_canonical_string(&emit_algebroid(h, FieldDesc::Prime(5)));
        let Document::F(parsed) = parse_document(&doc1).unwrap() else {
            panic!("{name}: field changed in round trip")
        };
        let (_, res) = verify_document(&parsed);
        let h2 = res.unwrap_or_else(|e| panic!("{name}: reload failed: {e}"));
        let doc2 = to_canonical_string(&emit_algebroid(&h2, FieldDesc::Prime(5)));
        assert_eq!(doc1, doc2, "{name}: emit/load/emit not byte-stable");
        assert_eq!(
            verdict_transcript(h),
            verdict_transcript(&h2),
            "{name}: verdicts changed across the round trip"
        );
    }
    println!(
        "ACCEPTANCE criterion 8: PASS — emit/load round trips are byte-stable and reproduce identical verdict transcripts with the same seed"
    );
}
