//! Command-line front end for `lralg`.
//!
//! [`run`] takes the argument vector (including the program name) and returns
//! the exit code with everything that would be written to stdout and stderr,
//! so the binary is a thin wrapper and tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

pub mod datum;
pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lralg::catalog::{catalog, catalog_entry, catalog_verify, CatalogError};
use lralg::constraints::{
    buchberger_certify, generate_lr_system, iso_search, structural_reduce, CertifyOutcome,
    IsoBudget, IsoError, IsoOutcome, Limits,
};
use lralg::constructions::{
    filiform_lr, free3_lr, free4_two_gen_lr, halved_adjoint_lr, ConstructionError, FiliformSpec,
};
use lralg::exactlin::parse_rational;
use lralg::extensions::{
    extension_lie_algebra, invertible_generator_lift, semidirect_lr, ExtensionError,
};
use lralg::{verify_axioms, LieAlgebra, LieError, LrAlgebra, Matrix, Rational, VerificationReport};

use datum::{DatumFile, Lift};
use format::AlgebraFile;

/// At most this many violations are listed in reports.
const MAX_LISTED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "lralg",
    about = "Exact computations with Lie algebras and LR-algebras",
    disable_version_flag = true
)]
struct Cli {
    /// Print reports as JSON objects.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi identity, LR axioms, lemma suite and completeness.
    Check { file: PathBuf },
    /// Lower central, derived and upper central series dimensions.
    Series { file: PathBuf },
    /// The built-in table of LR-algebras on r2, n3, n4 and n3 + Q.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Build an LR-algebra and print it in the algebra file format.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Polynomial system whose solutions are the LR-structures on FILE.
    Constraints {
        file: PathBuf,
        /// Apply the structural reductions.
        #[arg(long)]
        reduce: bool,
        /// Write the system to OUT (`-` for stdout).
        #[arg(long, value_name = "OUT")]
        emit: Option<PathBuf>,
    },
    /// Generate, reduce and run Buchberger on the system for FILE.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Seconds.
        #[arg(long, default_value_t = 600)]
        time_budget: u64,
        #[arg(long, default_value_t = 5000)]
        max_basis: usize,
    },
    /// Decide whether two LR-algebras are isomorphic, within a budget.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        /// Node cap of the backtracking search.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Entry names, base algebras, parameters and expected completeness.
    List,
    /// Re-verify every entry (or those whose name starts with PREFIX) on its parameter sample.
    Verify { prefix: Option<String> },
    /// Print one entry in the algebra file format.
    Dump {
        name: String,
        /// Comma-separated rational parameter values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
        params: Vec<Rational>,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    /// Filiform algebra given by the top row c_{1,2..n-3} of its coefficients.
    Filiform {
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
        coeffs: Vec<Rational>,
    },
    /// x.y = [x,y]/2 on a 2-step nilpotent Lie algebra.
    Halfad { file: PathBuf },
    /// Free 3-step nilpotent Lie algebra on N generators.
    Free3 { n: usize },
    /// Free 4-step nilpotent Lie algebra on two generators.
    #[command(name = "free4-2gen")]
    Free4TwoGen,
    /// Extension of a Lie algebra by an abelian kernel, from a datum file.
    Extension { file: PathBuf },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s.trim()).map_err(|e| e.to_string())
}

enum Failure {
    /// Exit code 2.
    Usage(String),
    /// Exit code 1.
    Verification(String),
}

struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report {
            code: 0,
            text,
            json,
        }
    }
}

type CmdResult = Result<Report, Failure>;

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Check { file } => check(&file),
        Command::Series { file } => series(&file),
        Command::Catalog(c) => catalog_cmd(c),
        Command::Construct(c) => construct(c),
        Command::Constraints { file, reduce, emit } => constraints(&file, reduce, emit.as_deref()),
        Command::Solve {
            file,
            max_degree,
            time_budget,
            max_basis,
        } => solve(
            &file,
            &Limits {
                max_basis_size: max_basis,
                max_degree,
                time_budget: Duration::from_secs(time_budget),
            },
        ),
        Command::Iso {
            file1,
            file2,
            budget,
        } => iso(&file1, &file2, budget),
    };
    match (result, json) {
        (Ok(r), false) => Output {
            code: r.code,
            stdout: r.text,
            stderr: String::new(),
        },
        (Ok(r), true) => {
            let mut v = r.json;
            v["exit_code"] = json!(r.code);
            Output {
                code: r.code,
                stdout: format!("{}\n", serde_json::to_string_pretty(&v).expect("json")),
                stderr: String::new(),
            }
        }
        (Err(f), json) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, m),
                Failure::Verification(m) => (1, m),
            };
            if json {
                let v = json!({ "error": msg, "exit_code": code });
                Output {
                    code,
                    stdout: format!("{}\n", serde_json::to_string_pretty(&v).expect("json")),
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: {msg}\n"),
                }
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<AlgebraFile, Failure> {
    AlgebraFile::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))
}

fn load_lie(path: &Path) -> Result<(AlgebraFile, LieAlgebra), Failure> {
    let f = load(path)?;
    let g = f
        .lie()
        .map_err(|e| Failure::Verification(format!("{}: {e}", path.display())))?;
    Ok((f, g))
}

fn load_lr(path: &Path) -> Result<LrAlgebra, Failure> {
    let f = load(path)?;
    match f.lr() {
        None => Err(Failure::Usage(format!(
            "{}: no product section",
            path.display()
        ))),
        Some(r) => r.map_err(|e| Failure::Verification(format!("{}: {e}", path.display()))),
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dims_text(d: &[usize]) -> String {
    d.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn list_violations(rep: &VerificationReport, text: &mut String) -> Vec<String> {
    let all: Vec<String> = rep.violations.iter().map(ToString::to_string).collect();
    for v in all.iter().take(MAX_LISTED) {
        let _ = writeln!(text, "  {v}");
    }
    if all.len() > MAX_LISTED {
        let _ = writeln!(text, "  ... {} more", all.len() - MAX_LISTED);
    }
    all
}

fn check(path: &Path) -> CmdResult {
    let f = load(path)?;
    let g = match f.lie() {
        Ok(g) => g,
        Err(e @ LieError::JacobiViolation { .. }) => {
            return Ok(Report {
                code: 1,
                text: format!("Jacobi: FAIL\n  {e}\n"),
                json: json!({ "command": "check", "jacobi": "FAIL", "violations": [e.to_string()] }),
            })
        }
        Err(e) => return Err(Failure::Usage(format!("{}: {e}", path.display()))),
    };
    let Some(product) = f.product_tensor() else {
        return Ok(Report::ok(
            "Jacobi: PASS; no product section\n".into(),
            json!({ "command": "check", "jacobi": "PASS", "product": false }),
        ));
    };
    let axioms = verify_axioms(&g, &product);
    if !axioms.ok() {
        let mut text = format!(
            "LR axioms: FAIL ({} violation(s))\n",
            axioms.violations.len()
        );
        let v = list_violations(&axioms, &mut text);
        return Ok(Report {
            code: 1,
            text,
            json: json!({ "command": "check", "jacobi": "PASS", "product": true, "lr_axioms": "FAIL", "violations": v }),
        });
    }
    let a = LrAlgebra::from_tensor(g, product).map_err(|e| Failure::Verification(e.to_string()))?;
    let suite = a.lemma_suite_full();
    let complete = a.is_complete();
    let mut text = format!(
        "LR axioms: PASS; complete: {}; lemma suite: {}\n",
        yes(complete),
        pass(suite.ok())
    );
    let v = list_violations(&suite, &mut text);
    Ok(Report {
        code: if suite.ok() { 0 } else { 1 },
        text,
        json: json!({
            "command": "check",
            "jacobi": "PASS",
            "product": true,
            "lr_axioms": "PASS",
            "complete": complete,
            "lemma_suite": pass(suite.ok()),
            "violations": v,
        }),
    })
}

fn series(path: &Path) -> CmdResult {
    let (_, g) = load_lie(path)?;
    let gamma = g.lower_central_series().dims();
    let derived = g.derived_series().dims();
    let upper = g.upper_central_series().dims();
    let s = g.classify_solvability();
    let opt = |o: Option<usize>| o.map_or_else(|| "none".to_string(), |v| v.to_string());
    let text = format!(
        "gamma: {}; derived: {}; two-step solvable: {}\nupper central: {}; nilpotency class: {}; derived length: {}\n",
        dims_text(&gamma),
        dims_text(&derived),
        yes(s.two_step_solvable),
        dims_text(&upper),
        opt(s.nilpotency_class),
        opt(s.derived_length),
    );
    Ok(Report::ok(
        text,
        json!({
            "command": "series",
            "gamma": gamma,
            "derived": derived,
            "upper_central": upper,
            "two_step_solvable": s.two_step_solvable,
            "nilpotency_class": s.nilpotency_class,
            "derived_length": s.derived_length,
        }),
    ))
}

fn rationals_text(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn catalog_cmd(c: CatalogCmd) -> CmdResult {
    match c {
        CatalogCmd::List => {
            let mut text = String::new();
            let mut entries = Vec::new();
            for e in catalog() {
                let domains: Vec<String> = e
                    .params
                    .iter()
                    .map(|(n, d)| format!("{n} in {d}"))
                    .collect();
                let _ = writeln!(
                    text,
                    "{}\tbase {}\tcomplete: {}{}",
                    e.display_name(),
                    e.base.label(),
                    yes(e.expected_complete),
                    if domains.is_empty() {
                        String::new()
                    } else {
                        format!("\t{}", domains.join(", "))
                    }
                );
                entries.push(json!({
                    "name": e.name,
                    "base": e.base.label(),
                    "params": e.params.iter().map(|(n, d)| json!({ "name": n, "domain": d.to_string() })).collect::<Vec<_>>(),
                    "expected_complete": e.expected_complete,
                }));
            }
            Ok(Report::ok(
                text,
                json!({ "command": "catalog list", "entries": entries }),
            ))
        }
        CatalogCmd::Verify { prefix } => {
            let rep = catalog_verify(prefix.as_deref());
            if rep.checks.is_empty() {
                return Err(Failure::Usage(format!(
                    "no catalog entry starts with {:?}",
                    prefix.unwrap_or_default()
                )));
            }
            let mut text = String::new();
            let mut checks = Vec::new();
            for c in &rep.checks {
                let entry = catalog_entry(c.name).expect("verified entries exist");
                let params: Vec<String> = entry
                    .params
                    .iter()
                    .zip(&c.params)
                    .map(|((n, _), v)| format!("{n}={v}"))
                    .collect();
                let complete = c.complete.map_or("n/a", yes);
                let _ = writeln!(
                    text,
                    "{} {}{} axioms: {}; lemma suite: {}; complete: {} (expected {})",
                    pass(c.passed()),
                    c.name,
                    if params.is_empty() {
                        String::new()
                    } else {
                        format!(" [{}]", params.join(", "))
                    },
                    pass(c.axioms_ok),
                    pass(c.lemma_suite_ok),
                    complete,
                    yes(c.expected_complete),
                );
                checks.push(json!({
                    "name": c.name,
                    "params": rationals_text(&c.params),
                    "axioms": c.axioms_ok,
                    "lemma_suite": c.lemma_suite_ok,
                    "complete": c.complete,
                    "expected_complete": c.expected_complete,
                    "passed": c.passed(),
                }));
            }
            let failed = rep.checks.iter().filter(|c| !c.passed()).count();
            let incomplete = rep.incomplete_names();
            let _ = writeln!(
                text,
                "{} checks, {} failed; incomplete: {}",
                rep.checks.len(),
                failed,
                if incomplete.is_empty() {
                    "none".to_string()
                } else {
                    incomplete.join(", ")
                }
            );
            Ok(Report {
                code: if failed == 0 { 0 } else { 1 },
                text,
                json: json!({
                    "command": "catalog verify",
                    "checks": checks,
                    "failed": failed,
                    "incomplete": incomplete,
                }),
            })
        }
        CatalogCmd::Dump { name, params } => {
            let entry = catalog_entry(&name).map_err(|e| Failure::Usage(e.to_string()))?;
            let a = entry.instantiate(&params).map_err(|e| match e {
                CatalogError::Invalid { .. } => Failure::Verification(e.to_string()),
                _ => Failure::Usage(e.to_string()),
            })?;
            let bindings = entry
                .params
                .iter()
                .map(|(n, _)| n.to_string())
                .zip(params)
                .collect();
            let text = AlgebraFile::from_lr(entry.name, &a)
                .with_params(bindings)
                .print();
            Ok(Report::ok(
                text.clone(),
                json!({ "command": "catalog dump", "name": entry.name, "algebra": text }),
            ))
        }
    }
}

fn construction_failure(e: ConstructionError) -> Failure {
    Failure::Verification(e.to_string())
}

fn algebra_report(kind: &str, file: AlgebraFile, complete: Option<bool>) -> Report {
    let text = file.print();
    let json = json!({
        "command": format!("construct {kind}"),
        "name": file.name,
        "dim": file.dim,
        "complete": complete,
        "algebra": text,
    });
    Report::ok(text, json)
}

fn construct(c: ConstructCmd) -> CmdResult {
    match c {
        ConstructCmd::Filiform { n, coeffs } => {
            let coeffs = if coeffs.is_empty() {
                vec![Rational::from_integer(0.into()); n.saturating_sub(4)]
            } else {
                coeffs
            };
            let spec = FiliformSpec::from_top_row(n, &coeffs)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let a = filiform_lr(&spec).map_err(construction_failure)?;
            Ok(algebra_report(
                "filiform",
                AlgebraFile::from_lr(&format!("filiform-{n}"), &a),
                Some(a.is_complete()),
            ))
        }
        ConstructCmd::Halfad { file } => {
            let (f, g) = load_lie(&file)?;
            let a = halved_adjoint_lr(&g).map_err(construction_failure)?;
            Ok(algebra_report(
                "halfad",
                AlgebraFile::from_lr(&format!("halfad-{}", f.name), &a),
                Some(a.is_complete()),
            ))
        }
        ConstructCmd::Free3 { n } => {
            let a = free3_lr(n).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(algebra_report(
                "free3",
                AlgebraFile::from_lr(&format!("free3-{n}"), &a),
                Some(a.is_complete()),
            ))
        }
        ConstructCmd::Free4TwoGen => {
            let a = free4_two_gen_lr().map_err(construction_failure)?;
            Ok(algebra_report(
                "free4-2gen",
                AlgebraFile::from_lr("free4-2gen", &a),
                Some(a.is_complete()),
            ))
        }
        ConstructCmd::Extension { file } => {
            let d = DatumFile::parse(&read(&file)?)
                .map_err(|e| Failure::Usage(format!("{}:{e}", file.display())))?;
            let ext_failure =
                |e: ExtensionError| Failure::Verification(format!("{}: {e}", file.display()));
            let b = d.base_lie().map_err(|e| {
                Failure::Verification(format!("{}: base algebra: {e}", file.display()))
            })?;
            let data = d.data(b);
            match &d.lift {
                Lift::None => {
                    let g = extension_lie_algebra(&data).map_err(ext_failure)?;
                    Ok(algebra_report(
                        "extension",
                        AlgebraFile::from_lie(&d.name, &g),
                        None,
                    ))
                }
                Lift::Semidirect => {
                    let a = semidirect_lr(&data, d.base_product()).map_err(ext_failure)?;
                    Ok(algebra_report(
                        "extension",
                        AlgebraFile::from_lr(&d.name, &a),
                        Some(a.is_complete()),
                    ))
                }
                Lift::Generator(e) => {
                    let a = invertible_generator_lift(&data, e).map_err(ext_failure)?;
                    Ok(algebra_report(
                        "extension",
                        AlgebraFile::from_lr(&d.name, &a),
                        Some(a.is_complete()),
                    ))
                }
            }
        }
    }
}

fn constraints(path: &Path, reduce: bool, emit: Option<&Path>) -> CmdResult {
    let (_, g) = load_lie(path)?;
    let mut s = generate_lr_system(&g);
    if reduce {
        s = structural_reduce(&s, &g);
    }
    let mut text = format!(
        "variables: {}; equations: {}; max degree: {}\n",
        s.num_variables(),
        s.equations().len(),
        s.max_degree()
    );
    if reduce {
        let _ = writeln!(
            text,
            "reduction: {} forced zero, {} substituted, {} eliminated; {} variables remain",
            s.forced_zero().len(),
            s.substitutions().len(),
            s.eliminated_count(),
            s.remaining_variables().len()
        );
    }
    let emitted = match emit {
        Some(p) if p == Path::new("-") => {
            text = s.emit();
            Some("-".to_string())
        }
        Some(p) => {
            std::fs::write(p, s.emit())
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
            let _ = writeln!(text, "written to {}", p.display());
            Some(p.display().to_string())
        }
        None => None,
    };
    Ok(Report::ok(
        text,
        json!({
            "command": "constraints",
            "variables": s.num_variables(),
            "equations": s.equations().len(),
            "max_degree": s.max_degree(),
            "reduced": reduce,
            "forced_zero": s.forced_zero().len(),
            "substituted": s.substitutions().len(),
            "eliminated": s.eliminated_count(),
            "remaining_variables": s.remaining_variables().len(),
            "emitted": emitted,
        }),
    ))
}

fn solve(path: &Path, limits: &Limits) -> CmdResult {
    let (f, g) = load_lie(path)?;
    let full = generate_lr_system(&g);
    let s = structural_reduce(&full, &g);
    let outcome = buchberger_certify(&s, limits);
    let mut text = format!(
        "variables: {}\nreduction: {} forced zero, {} substituted, {} eliminated\nremaining: {} equations in {} variables\noutcome: {}\n",
        full.num_variables(),
        s.forced_zero().len(),
        s.substitutions().len(),
        s.eliminated_count(),
        s.equations().len(),
        s.remaining_variables().len(),
        outcome.label()
    );
    let mut extra = json!({});
    match &outcome {
        CertifyOutcome::Inconsistent(cert) => {
            let _ = writeln!(text, "{cert}");
            let _ = writeln!(text, "{} admits no LR-structure", f.name);
            extra = json!({ "certificate": cert.to_string() });
        }
        CertifyOutcome::SolutionsMayExist { basis_size } => {
            let _ = writeln!(
                text,
                "Groebner basis of size {basis_size} does not contain 1"
            );
            extra = json!({ "basis_size": basis_size });
        }
        CertifyOutcome::BudgetExhausted {
            reason,
            basis_size,
            pairs_left,
        } => {
            let _ = writeln!(
                text,
                "budget exhausted: {reason} (basis size {basis_size}, {pairs_left} pairs left)"
            );
            extra = json!({ "reason": reason, "basis_size": basis_size, "pairs_left": pairs_left });
        }
    }
    let mut v = json!({
        "command": "solve",
        "name": f.name,
        "variables": full.num_variables(),
        "forced_zero": s.forced_zero().len(),
        "substituted": s.substitutions().len(),
        "eliminated": s.eliminated_count(),
        "equations": s.equations().len(),
        "remaining_variables": s.remaining_variables().len(),
        "outcome": outcome.label(),
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    Ok(Report::ok(text, v))
}

fn matrix_json(t: &Matrix) -> Value {
    json!((0..t.rows())
        .map(|r| rationals_text(t.row(r)))
        .collect::<Vec<_>>())
}

fn iso(p1: &Path, p2: &Path, nodes: usize) -> CmdResult {
    let a = load_lr(p1)?;
    let b = load_lr(p2)?;
    let budget = IsoBudget {
        search_nodes: nodes,
        ..IsoBudget::default()
    };
    let outcome = iso_search(&a, &b, &budget).map_err(|e| match e {
        IsoError::DimensionMismatch { .. } => Failure::Usage(e.to_string()),
    })?;
    let (text, json) = match outcome {
        IsoOutcome::Found(t) => (
            format!("isomorphic: yes\nT =\n{t}"),
            json!({ "command": "iso", "outcome": "Found", "matrix": matrix_json(&t) }),
        ),
        IsoOutcome::DistinguishedBy(inv) => (
            format!("isomorphic: no; distinguished by: {inv}\n"),
            json!({ "command": "iso", "outcome": "DistinguishedBy", "invariant": inv }),
        ),
        IsoOutcome::Undecided => (
            "isomorphic: undecided\n".to_string(),
            json!({ "command": "iso", "outcome": "Undecided" }),
        ),
    };
    Ok(Report::ok(text, json))
}
