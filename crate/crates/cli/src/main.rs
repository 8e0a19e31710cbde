//! Command line front end: load a Hopf algebroid document, verify every
//! axiom, compute integral spaces, and run the Maschke / dual Maschke /
//! Frobenius / quasi-Frobenius decision procedures.
//!
//! Exit codes: 0 — the computation ran and decided; 2 — invalid input
//! (schema or axiom failure); 3 — the randomized non-degeneracy search was
//! inconclusive. Verdicts live in the report, never in the exit code.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hopfalgd::constructions::{builtin, Builtin, BUILTIN_NAMES};
use hopfalgd::hopfalgebroid::{
    antipode_bijective, verify_derived_identities, verify_sigma_chi, HopfAlgebroid,
};
use hopfalgd::integrals::{
    all_integral_spaces, characterization_check, dual_maschke_report, frobenius_decide,
    maschke_report, qf_decide, ExtensionKind, FrobeniusOutcome, IntegralKind, QFCertificate,
    QFSide,
};
use hopfalgd::json::{
    emit_algebra, emit_algebroid, parse_document, to_canonical_string, verify_document, Document,
    FieldDesc,
};
use hopfalgd::linalg::Mat;
use hopfalgd::report::AxiomReport;
use hopfalgd::scalar::Scalar;

#[derive(Parser)]
#[command(
    name = "hopfalgd",
    about = "Exact integrals, Maschke, Frobenius and quasi-Frobenius decisions for Hopf algebroids given by structure constants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every axiom and derived identity of a document.
    Check {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute all six integral spaces with dimensions and bases.
    Integrals {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the Maschke equivalence suite (separability).
    Maschke {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the dual Maschke equivalence suite (coseparability).
    DualMaschke {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide the Frobenius property through non-degenerate integrals.
    Frobenius {
        file: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        trials: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide left and right quasi-Frobenius for all four extensions.
    Qf {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Materialize a built-in example, optionally writing its document.
    Example {
        name: String,
        #[arg(long)]
        emit: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprint!("{msg}");
            if !msg.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(2)
        }
    }
}

/// Load and verify a document, then run a generic command body over
/// whichever scalar field the document declares.
macro_rules! dispatch {
    ($file:expr, $fmt:expr, reports: $body:ident) => {{
        let text = fs::read_to_string($file).map_err(|e| format!("cannot read {}: {e}", $file))?;
        match parse_document(&text).map_err(|e| e.to_string())? {
            Document::Q(d) => {
                let (reports, res) = verify_document(&d);
                match res {
                    Ok(h) => $body(&h, &reports, $fmt),
                    Err(msg) => Err(render_rejection(&reports, &msg, $fmt)),
                }
            }
            Document::F(d) => {
                let (reports, res) = verify_document(&d);
                match res {
                    Ok(h) => $body(&h, &reports, $fmt),
                    Err(msg) => Err(render_rejection(&reports, &msg, $fmt)),
                }
            }
        }
    }};
    ($file:expr, $fmt:expr, $body:ident ( _ $(, $extra:expr)* )) => {{
        let text = fs::read_to_string($file).map_err(|e| format!("cannot read {}: {e}", $file))?;
        match parse_document(&text).map_err(|e| e.to_string())? {
            Document::Q(d) => {
                let (reports, res) = verify_document(&d);
                match res {
                    Ok(h) => $body(&h, $fmt $(, $extra)*),
                    Err(msg) => Err(render_rejection(&reports, &msg, $fmt)),
                }
            }
            Document::F(d) => {
                let (reports, res) = verify_document(&d);
                match res {
                    Ok(h) => $body(&h, $fmt $(, $extra)*),
                    Err(msg) => Err(render_rejection(&reports, &msg, $fmt)),
                }
            }
        }
    }};
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check { file, format } => dispatch!(&file, format, reports: cmd_check),
        Command::Integrals { file, format } => dispatch!(&file, format, cmd_integrals(_)),
        Command::Maschke { file, format } => dispatch!(&file, format, cmd_maschke(_)),
        Command::DualMaschke { file, format } => dispatch!(&file, format, cmd_dual_maschke(_)),
        Command::Frobenius {
            file,
            seed,
            trials,
            format,
        } => dispatch!(&file, format, cmd_frobenius(_, seed, trials)),
        Command::Qf { file, format } => dispatch!(&file, format, cmd_qf(_)),
        Command::Example { name, emit, format } => cmd_example(&name, emit.as_deref(), format),
    }
}

fn render_rejection(reports: &[AxiomReport], msg: &str, format: Format) -> String {
    match format {
        Format::Json => to_canonical_string(&json!({
            "verified": false,
            "reports": reports_json(reports),
            "error": msg,
        })),
        Format::Text => {
            let mut out = format!("rejected: {msg}\n");
            for r in reports {
                out.push_str(&render_report(r));
            }
            out
        }
    }
}

fn cmd_check<K: Scalar>(
    h: &HopfAlgebroid<K>,
    axiom_reports: &[AxiomReport],
    format: Format,
) -> Result<ExitCode, String> {
    let duals = h.duals();
    let derived = vec![verify_derived_identities(h), verify_sigma_chi(h, &duals)];
    let ab = antipode_bijective(h);
    let pass = derived.iter().all(|r| r.pass);
    let v = json!({
        "verified": true,
        "axioms": reports_json(axiom_reports),
        "derived_identities": reports_json(&derived),
        "antipode_bijective": ab.bijective,
        "antipode_criterion_agrees": ab.criterion_invariant_exists == ab.bijective,
    });
    print_out(format, &v, || {
        let mut out = String::from("all axioms verified\n");
        for r in axiom_reports.iter().chain(&derived) {
            out.push_str(&render_report(r));
        }
        out.push_str(&format!(
            "antipode bijective: {} (criterion agrees: {})\n",
            ab.bijective,
            ab.criterion_invariant_exists == ab.bijective
        ));
        out
    });
    if pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}

fn cmd_integrals<K: Scalar>(h: &HopfAlgebroid<K>, format: Format) -> Result<ExitCode, String> {
    let spaces = all_integral_spaces(h);
    let sch = characterization_check(h);
    let list = [
        (&spaces.left_in, IntegralKind::LeftIn),
        (&spaces.right_in, IntegralKind::RightIn),
        (&spaces.s_on_right, IntegralKind::SOnRight),
        (&spaces.t_on_right, IntegralKind::TOnRight),
        (&spaces.s_on_left, IntegralKind::SOnLeft),
        (&spaces.t_on_left, IntegralKind::TOnLeft),
    ];
    let v = json!({
        "spaces": list
            .iter()
            .map(|(sp, kind)| {
                json!({
                    "kind": kind,
                    "label": kind.label(),
                    "dim": sp.dim(),
                    "basis": subspace_json(&sp.basis),
                })
            })
            .collect::<Vec<_>>(),
        "characterizations": report_json(&sch),
    });
    print_out(format, &v, || {
        let mut out = String::new();
        for (sp, kind) in &list {
            out.push_str(&format!("{:<45} dim {}\n", kind.label(), sp.dim()));
            for row in sp.basis.basis_rows() {
                out.push_str(&format!("  [{}]\n", scalars_text(row)));
            }
        }
        out.push_str(&render_report(&sch));
        out
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_maschke<K: Scalar>(h: &HopfAlgebroid<K>, format: Format) -> Result<ExitCode, String> {
    let rep = maschke_report(h).map_err(|e| e.to_string())?;
    let v = json!({
        "separable": rep.separable,
        "conditions": conditions_json(&rep.conditions),
        "normalized_left_integral": rep.normalized_left.as_ref().map(|x| vec_json(x)),
        "normalized_right_integral": rep.normalized_right.as_ref().map(|x| vec_json(x)),
        "certificate": rep.certificate.as_ref().map(report_json),
    });
    print_out(format, &v, || {
        let mut out = format!("separable: {}\n", rep.separable);
        for c in &rep.conditions {
            out.push_str(&format!("  {:<58} {}\n", c.condition, c.holds));
        }
        if let Some(l) = &rep.normalized_left {
            out.push_str(&format!(
                "normalized left integral: [{}]\n",
                scalars_text(l)
            ));
        }
        if let Some(cert) = &rep.certificate {
            out.push_str(&render_report(cert));
        }
        out
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_dual_maschke<K: Scalar>(h: &HopfAlgebroid<K>, format: Format) -> Result<ExitCode, String> {
    let rep = dual_maschke_report(h).map_err(|e| e.to_string())?;
    let v = json!({
        "coseparable": rep.coseparable,
        "conditions": conditions_json(&rep.conditions),
        "certificate": rep.certificate.as_ref().map(report_json),
    });
    print_out(format, &v, || {
        let mut out = format!("coseparable: {}\n", rep.coseparable);
        for c in &rep.conditions {
            out.push_str(&format!("  {:<58} {}\n", c.condition, c.holds));
        }
        if let Some(cert) = &rep.certificate {
            out.push_str(&render_report(cert));
        }
        out
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_frobenius<K: Scalar>(
    h: &HopfAlgebroid<K>,
    format: Format,
    seed: u64,
    trials: usize,
) -> Result<ExitCode, String> {
    match frobenius_decide(h, seed, trials) {
        FrobeniusOutcome::Frobenius {
            integral,
            dual_integral,
            systems,
            rank_one_generator,
            checks,
        } => {
            let v = json!({
                "frobenius": true,
                "seed": seed,
                "non_degenerate_integral": vec_json(&integral),
                "dual_integral": mat_json(&dual_integral),
                "rank_one_generator": mat_json(&rank_one_generator),
                "systems": systems
                    .iter()
                    .map(|s| {
                        json!({
                            "extension": s.extension,
                            "psi": mat_json(&s.psi),
                            "casimir": vec_json(&s.casimir_lift),
                        })
                    })
                    .collect::<Vec<_>>(),
                "certificate": report_json(&checks),
            });
            print_out(format, &v, || {
                let mut out = String::from("frobenius: true\n");
                out.push_str(&format!(
                    "non-degenerate left integral: [{}]\n",
                    scalars_text(&integral)
                ));
                for s in &systems {
                    out.push_str(&format!(
                        "verified Frobenius system for {}\n",
                        s.extension.label()
                    ));
                }
                out.push_str(&render_report(&checks));
                out
            });
            Ok(ExitCode::SUCCESS)
        }
        FrobeniusOutcome::NotFrobenius {
            integral_dim,
            detail,
        } => {
            let v = json!({
                "frobenius": false,
                "seed": seed,
                "integral_dimension": integral_dim,
                "evidence": detail,
            });
            print_out(format, &v, || {
                format!(
                    "frobenius: false\nintegral dimension: {integral_dim}\nevidence: {detail}\n"
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        FrobeniusOutcome::Undecided {
            integral_dim,
            trials,
        } => {
            let v = json!({
                "frobenius": "undecided",
                "seed": seed,
                "integral_dimension": integral_dim,
                "trials": trials,
            });
            print_out(format, &v, || {
                format!(
                    "frobenius: undecided after {trials} randomized trials (dim L(A) = {integral_dim})\n"
                )
            });
            Ok(ExitCode::from(3))
        }
    }
}

fn cmd_qf<K: Scalar>(h: &HopfAlgebroid<K>, format: Format) -> Result<ExitCode, String> {
    let mut verdicts = Vec::new();
    for side in [QFSide::Left, QFSide::Right] {
        for ext in ExtensionKind::ALL {
            verdicts.push(qf_decide(h, side, ext).map_err(|e| e.to_string())?);
        }
    }
    let v = json!({
        "verdicts": verdicts
            .iter()
            .map(|q| {
                json!({
                    "side": q.side,
                    "extension": q.extension,
                    "result": q.result,
                    "integral_criterion": q.integral_criterion,
                    "qf_system_criterion": q.lemma_criterion,
                    "certificate": match &q.certificate {
                        QFCertificate::Positive { integral_pairs, qf_system } => json!({
                            "integral_pairs": integral_pairs.len(),
                            "qf_system_size": qf_system.len(),
                        }),
                        QFCertificate::Negative { integral_span_dim, lemma_span_dim } => json!({
                            "integral_span_dim": integral_span_dim,
                            "qf_span_dim": lemma_span_dim,
                            "unit_in_span": false,
                        }),
                    },
                })
            })
            .collect::<Vec<_>>(),
    });
    print_out(format, &v, || {
        let mut out = String::new();
        for q in &verdicts {
            out.push_str(&format!(
                "{:<6}QF  {:<16} {}\n",
                format!("{:?}", q.side).to_lowercase(),
                q.extension.label(),
                q.result
            ));
        }
        out
    });
    Ok(ExitCode::SUCCESS)
}

fn cmd_example(name: &str, emit: Option<&str>, format: Format) -> Result<ExitCode, String> {
    let obj = builtin(name).map_err(|e| format!("{e}; available: {}", BUILTIN_NAMES.join(", ")))?;
    let (doc, summary) = match &obj {
        Builtin::AlgebroidQ(h) => (
            emit_algebroid(h, FieldDesc::Rationals),
            format!(
                "verified Hopf algebroid, total dimension {}",
                h.total().dim()
            ),
        ),
        Builtin::AlgebroidFp(h) => {
            let p = first_modulus(h);
            (
                emit_algebroid(h, FieldDesc::Prime(p)),
                format!(
                    "verified Hopf algebroid, total dimension {}",
                    h.total().dim()
                ),
            )
        }
        Builtin::AlgebraQ(a) => (
            emit_algebra(a, FieldDesc::Rationals),
            format!("algebra of dimension {}", a.dim()),
        ),
        Builtin::AlgebraFp(a) => (
            emit_algebra(a, FieldDesc::Prime(5)),
            format!("algebra of dimension {}", a.dim()),
        ),
    };
    match emit {
        Some(path) => {
            fs::write(path, to_canonical_string(&doc))
                .map_err(|e| format!("cannot write {path}: {e}"))?;
            match format {
                Format::Json => print!(
                    "{}",
                    to_canonical_string(&json!({ "name": name, "written": path }))
                ),
                Format::Text => println!("{name}: {summary}; written to {path}"),
            }
        }
        None => print!("{}", to_canonical_string(&doc)),
    }
    Ok(ExitCode::SUCCESS)
}

fn first_modulus(h: &HopfAlgebroid<hopfalgd::Fp>) -> u64 {
    h.total()
        .unit()
        .iter()
        .find_map(|x| (x.modulus() > 0).then(|| x.modulus()))
        .expect("prime-field algebroids carry their modulus")
}

fn print_out(format: Format, v: &Value, text: impl Fn() -> String) {
    match format {
        Format::Json => print!("{}", to_canonical_string(v)),
        Format::Text => print!("{}", text()),
    }
}

fn report_json(r: &AxiomReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn reports_json(rs: &[AxiomReport]) -> Value {
    Value::Array(rs.iter().map(report_json).collect())
}

fn conditions_json(cs: &[hopfalgd::report::ConditionReport]) -> Value {
    serde_json::to_value(cs).expect("conditions serialize")
}

fn vec_json<K: Scalar>(v: &[K]) -> Value {
    Value::Array(v.iter().map(|x| x.to_json()).collect())
}

fn mat_json<K: Scalar>(m: &Mat<K>) -> Value {
    Value::Array((0..m.rows()).map(|r| vec_json(m.row(r))).collect())
}

fn subspace_json<K: Scalar>(s: &hopfalgd::linalg::Subspace<K>) -> Value {
    Value::Array(s.basis_rows().map(vec_json).collect())
}

fn scalars_text<K: Scalar>(v: &[K]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_report(r: &AxiomReport) -> String {
    let mut out = format!("{}: {}\n", r.object, if r.pass { "pass" } else { "FAIL" });
    for c in &r.checks {
        let status = match c.status {
            hopfalgd::report::CheckStatus::Pass => "pass",
            hopfalgd::report::CheckStatus::Fail => "FAIL",
            hopfalgd::report::CheckStatus::Skipped => "skipped",
        };
        let witness = c
            .witness
            .as_ref()
            .map(|w| format!(" witness {w:?}"))
            .unwrap_or_default();
        out.push_str(&format!("  {:<45} {status}{witness}\n", c.name));
    }
    out
}
