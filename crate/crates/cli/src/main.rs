//! `uzalg` command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 a check failed (the report is still
//! written), 2 invalid usage or parameters, 3 internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use uzalg::algebra::{
    casimir_value, check_relations, presentation, quadratic_basis, quadratic_basis_rep, CasimirValue,
    QuadraticVariant,
};
use uzalg::contract::{run_scheme, scheme, ContractionScheme, Level};
use uzalg::decompose::{
    check_flip_symmetry, decompose, decompose_with, explore, follows_classical_rules, spin_product, Component,
};
use uzalg::hopf::{check_hopf_axioms, check_intertwiner, check_qybe, evaluate_r};
use uzalg::realization::RealizationId;
use uzalg::rep::{fock_rep, fock_rep_for, matrix_json, matrix_latex, monomial_rep, quotient_rep, RepParams, Representation, DEFAULT_MARGIN};
use uzalg::scalar::{format_rational, parse_rational, RatFunc, Rational};
use uzalg::Error;

#[derive(Parser)]
#[command(name = "uzalg", version, about = "Exact matrices, R-matrices, decompositions and contractions of U_z sl(2,R) and relatives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build representation matrices.
    Generate(RepArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Evaluate the universal R-matrix on V (x) V.
    Rmatrix(RepArgs),
    /// Reduce j1 (x) j2 into irreducible components.
    Decompose(DecomposeArgs),
    /// Apply a contraction scheme.
    Contract(ContractArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Suite {
    Relations,
    Casimir,
    Qybe,
    Intertwiner,
    Hopf,
    Quadratic,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Basis {
    /// Finite quotient for negative integer beta.
    Quotient,
    /// Truncated number states.
    Fock,
    /// Polynomials `1, x, ..., x^(beta-2)`.
    Monomial,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// `symbolic` or a rational value for z.
#[derive(Clone)]
struct ZMode(Option<Rational>);

fn z_mode(s: &str) -> Result<ZMode, String> {
    if s == "symbolic" {
        Ok(ZMode(None))
    } else {
        rational(s).map(|q| ZMode(Some(q)))
    }
}

#[derive(Args, Clone)]
struct RepArgs {
    /// Algebra id, e.g. uzsl2, uzh4, uzpoincare.
    #[arg(long)]
    algebra: String,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    beta: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    delta: Option<Rational>,
    /// Free parameter of the two-boson realizations (default 1).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    alpha: Option<Rational>,
    /// Defaults to fock when --cutoff is given, quotient otherwise.
    #[arg(long, value_enum)]
    basis: Option<Basis>,
    /// Realization for the fock basis (default: the algebra's own).
    #[arg(long)]
    realization: Option<String>,
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: usize,
    /// `symbolic` or a rational value for z.
    #[arg(long, value_parser = z_mode, default_value = "symbolic", allow_hyphen_values = true)]
    z: ZMode,
}

#[derive(Args, Clone)]
struct DecomposeArgs {
    #[arg(long, value_parser = rational)]
    j1: Option<Rational>,
    #[arg(long, value_parser = rational)]
    j2: Option<Rational>,
    #[arg(long, value_parser = z_mode, default_value = "symbolic", allow_hyphen_values = true)]
    z: ZMode,
    /// JSON file with the classical reference basis:
    /// `[{"label": "1", "vectors": [["1","0",...], ...]}, ...]`.
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Decompose every j1 (x) j2 with j1, j2 <= this value instead.
    #[arg(long, value_parser = rational)]
    explore: Option<Rational>,
}

#[derive(Args, Clone)]
struct ContractArgs {
    /// Shipped scheme id: sl2-to-poincare or ext-to-h4.
    #[arg(long)]
    scheme: Option<String>,
    /// Scheme read from a JSON file instead.
    #[arg(long)]
    scheme_file: Option<PathBuf>,
    /// Contract the undeformed algebras.
    #[arg(long)]
    classical: bool,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    beta: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    delta: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    alpha: Option<Rational>,
    /// Also emit number-state matrices of the contracted realization.
    #[arg(long)]
    emit_matrices: bool,
    #[arg(long, default_value_t = 4)]
    cutoff: usize,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: usize,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidBeta(_)
            | Error::UnknownAlgebra(_)
            | Error::UnknownGenerator(_)
            | Error::UnknownScheme(_)
            | Error::CutoffTooSmall { .. }
            | Error::MarginInsufficient { .. }
            | Error::DimensionMismatch(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

/// Errors that are verification outcomes rather than faults.
fn check_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NotCompletelyReducible(_) | Error::NegativeEpsilonDegree { .. } | Error::RelationFailure(_)
    )
}

struct Output {
    doc: Value,
    latex: Option<String>,
    text: String,
    passed: bool,
}

impl RepArgs {
    fn params(&self) -> RepParams {
        let needs_alpha = RealizationId::for_algebra(&self.algebra)
            .map(|r| r.parameters().contains(&"alpha"))
            .unwrap_or(false);
        RepParams {
            beta: self.beta.clone(),
            delta: self.delta.clone(),
            alpha: self
                .alpha
                .clone()
                .or_else(|| needs_alpha.then(|| uzalg::scalar::int(1))),
        }
    }

    fn basis(&self) -> Basis {
        self.basis
            .unwrap_or(if self.cutoff.is_some() { Basis::Fock } else { Basis::Quotient })
    }

    fn build(&self) -> Result<Representation, Failure> {
        let rep = self.build_symbolic()?;
        Ok(match &self.z.0 {
            None => rep,
            Some(z) => rep.specialize(z)?,
        })
    }

    fn build_symbolic(&self) -> Result<Representation, Failure> {
        presentation(&self.algebra)?;
        let rep = match self.basis() {
            Basis::Quotient => quotient_rep(&self.algebra, self.params())?,
            Basis::Monomial => {
                let b = self.beta.clone().ok_or_else(|| Failure::Usage("--beta is required".into()))?;
                monomial_rep(&self.algebra, &b)?
            }
            Basis::Fock => {
                let cutoff = self
                    .cutoff
                    .ok_or_else(|| Failure::Usage("--cutoff is required for the fock basis".into()))?;
                match &self.realization {
                    None => fock_rep_for(&self.algebra, self.params(), cutoff, self.margin)?,
                    Some(id) => {
                        let id: RealizationId = id.parse()?;
                        if id.algebra() != self.algebra {
                            return Err(Failure::Usage(format!("{id} realizes {}, not {}", id.algebra(), self.algebra)));
                        }
                        let real = id.build(&self.params().to_params())?;
                        fock_rep(&real, self.params(), cutoff, self.margin)?
                    }
                }
            }
        };
        Ok(rep)
    }
}

fn generate(a: &RepArgs) -> Result<Output, Failure> {
    let rep = a.build()?;
    let doc = rep.to_json()?;
    Ok(Output {
        text: rep.to_latex()?,
        latex: Some(rep.to_latex()?),
        doc,
        passed: true,
    })
}

fn verify(suite: Suite, a: &RepArgs) -> Result<Output, Failure> {
    let pres = presentation(&a.algebra)?;
    let (doc, passed) = match suite {
        Suite::Relations => {
            let r = check_relations(&a.build_symbolic()?, pres)?;
            (r.to_json(), r.passed())
        }
        Suite::Casimir => match casimir_value(&a.build_symbolic()?, pres)? {
            CasimirValue::Scalar(v) => (json!({"algebra": pres.id, "passed": true, "value": v}), true),
            CasimirValue::NotScalar(w) => (json!({"algebra": pres.id, "passed": false, "witness": w.to_json()}), false),
        },
        Suite::Qybe => {
            let v = a.build_symbolic()?;
            let r = evaluate_r(pres.r_spec()?, &v, &v)?;
            let ok = check_qybe(&r);
            (json!({"algebra": pres.id, "passed": ok, "dim": r.rows()}), ok)
        }
        Suite::Intertwiner => {
            let v = a.build_symbolic()?;
            let r = check_intertwiner(pres.r_spec()?, pres.hopf()?, &v, &v)?;
            (r.to_json(), r.passed())
        }
        Suite::Hopf => {
            let r = check_hopf_axioms(pres.hopf()?, &a.build_symbolic()?)?;
            (r.to_json(), r.passed())
        }
        Suite::Quadratic => {
            let variant: QuadraticVariant = match a.algebra.as_str() {
                "uzsl2" => QuadraticVariant::Sl2,
                "uzpoincare" => QuadraticVariant::Poincare,
                "uzh4" => QuadraticVariant::H4,
                other => return Err(Failure::Usage(format!("no quadratic basis for {other}"))),
            };
            let real = RealizationId::for_algebra(&a.algebra)?.build(&a.params().to_params())?;
            let base = match a.cutoff {
                Some(_) => Some(a.build_symbolic()?),
                None => None,
            };
            let outcome = quadratic_basis(&real, variant).and_then(|q| {
                let rep = base.as_ref().map(|b| quadratic_basis_rep(b, variant)).transpose()?;
                Ok((q, rep))
            });
            match outcome {
                Ok((q, rep)) => {
                    let gens: serde_json::Map<String, Value> =
                        q.generators.iter().map(|(n, e)| (n.clone(), Value::String(e.to_string()))).collect();
                    let mut doc = json!({"algebra": variant.target(), "passed": true, "realization": gens});
                    if let Some(r) = rep {
                        doc["matrices"] = r.to_json()?;
                    }
                    (doc, true)
                }
                Err(e) if check_error(&e) => (json!({"algebra": variant.target(), "passed": false, "error": e.to_string()}), false),
                Err(e) => return Err(e.into()),
            }
        }
    };
    // relations hold identically in z, so a value given with --z is implied
    let mut doc = doc;
    if let Some(z) = &a.z.0 {
        doc["z"] = json!(format_rational(z));
        doc["checked"] = json!("symbolic in z");
    }
    Ok(Output {
        text: format!("{} {}\n", if passed { "PASS" } else { "FAIL" }, doc),
        latex: None,
        doc,
        passed,
    })
}

fn rmatrix(a: &RepArgs) -> Result<Output, Failure> {
    let pres = presentation(&a.algebra)?;
    let v = a.build_symbolic()?;
    let r = evaluate_r(pres.r_spec()?, &v, &v)?;
    let ok = check_qybe(&r);
    let r = match &a.z.0 {
        None => r,
        Some(z) => r.try_map(|s| s.specialize(z))?,
    };
    let latex = matrix_latex(&r);
    Ok(Output {
        doc: json!({"algebra": pres.id, "dim": r.rows(), "qybe": ok, "matrix": matrix_json(&r)}),
        text: latex.clone(),
        latex: Some(latex),
        passed: ok,
    })
}

fn read_reference(path: &PathBuf) -> Result<Vec<Component>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let bad = || Failure::Usage("reference must be [{label, vectors: [[rational]]}]".into());
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|c| {
            let label = rational(c["label"].as_str().ok_or_else(bad)?).map_err(Failure::Usage)?;
            let vectors = c["vectors"]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|vec| {
                    vec.as_array()
                        .ok_or_else(bad)?
                        .iter()
                        .map(|x| {
                            let q = rational(x.as_str().ok_or_else(bad)?).map_err(Failure::Usage)?;
                            Ok(RatFunc::from_rational(q))
                        })
                        .collect()
                })
                .collect::<Result<_, Failure>>()?;
            Ok(Component { label, vectors })
        })
        .collect()
}

fn run_decompose(a: &DecomposeArgs) -> Result<Output, Failure> {
    if let Some(max) = &a.explore {
        let entries = explore(max);
        let passed = entries.iter().all(|e| e.classical_rules);
        let text = entries
            .iter()
            .map(|e| format!("{} x {}: {}\n", format_rational(&e.j1), format_rational(&e.j2), e.to_json()))
            .collect();
        return Ok(Output {
            doc: json!({"max_j": format_rational(max), "passed": passed, "products": entries.iter().map(|e| e.to_json()).collect::<Vec<_>>()}),
            latex: None,
            text,
            passed,
        });
    }
    let (j1, j2) = match (&a.j1, &a.j2) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Failure::Usage("--j1 and --j2 are required (or --explore)".into())),
    };
    let mut rep = spin_product(j1, j2)?;
    if let Some(z) = &a.z.0 {
        rep = rep.specialize(z)?;
    }
    let result = match &a.reference {
        None => decompose(&rep),
        Some(p) => decompose_with(&rep, read_reference(p)?),
    };
    let result = match result {
        Ok(r) => r,
        Err(e) if check_error(&e) => {
            return Ok(Output {
                doc: json!({"passed": false, "error": e.to_string()}),
                latex: None,
                text: format!("FAIL {e}\n"),
                passed: false,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let mut doc = result.to_json()?;
    let passed = follows_classical_rules(&result);
    doc["passed"] = json!(passed);
    if j1 == j2 {
        doc["flip_symmetric"] = json!(check_flip_symmetry(&result));
    }
    let latex = result.to_latex()?;
    Ok(Output {
        doc,
        text: latex.clone(),
        latex: Some(latex),
        passed,
    })
}

fn run_contract(a: &ContractArgs) -> Result<Output, Failure> {
    let owned;
    let s: &ContractionScheme = match (&a.scheme, &a.scheme_file) {
        (Some(id), None) => scheme(id)?,
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            owned = ContractionScheme::from_json(&text)?
                .into_iter()
                .next()
                .ok_or_else(|| Failure::Usage("scheme file is empty".into()))?;
            &owned
        }
        _ => return Err(Failure::Usage("give exactly one of --scheme and --scheme-file".into())),
    };
    let level = if a.classical { Level::Classical } else { Level::Quantum };
    let src = s.realizations(level).0;
    let alpha = a
        .alpha
        .clone()
        .or_else(|| src.parameters().contains(&"alpha").then(|| uzalg::scalar::int(1)));
    let params = RepParams {
        beta: a.beta.clone(),
        delta: a.delta.clone(),
        alpha,
    };
    let report = match run_scheme(s, level, &params.to_params()) {
        Ok(r) => r,
        Err(e) if check_error(&e) => {
            return Ok(Output {
                doc: json!({"scheme": s.id, "passed": false, "error": e.to_string()}),
                latex: None,
                text: format!("FAIL {e}\n"),
                passed: false,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let mut doc = report.to_json();
    doc["parameters"] = params.to_json();
    let mut latex = None;
    if a.emit_matrices {
        let rep = fock_rep(&report.realization, params, a.cutoff, a.margin)?;
        latex = Some(rep.to_latex()?);
        doc["matrices"] = rep.to_json()?;
    }
    let text = report
        .realization
        .generators
        .iter()
        .map(|(n, e)| format!("{n} = {e}\n"))
        .collect::<String>()
        + &report
            .checks
            .iter()
            .map(|c| format!("{}: {}\n", c.object, if c.passed { "PASS" } else { "FAIL" }))
            .collect::<String>();
    Ok(Output {
        passed: report.passed(),
        doc,
        latex,
        text,
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Verify { suite, rep } => verify(*suite, rep),
        Command::Rmatrix(a) => rmatrix(a),
        Command::Decompose(a) => run_decompose(a),
        Command::Contract(a) => run_contract(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            return ExitCode::from(3);
        }
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.doc).expect("json") + "\n",
        Format::Text => out.text.clone(),
        Format::Latex => match &out.latex {
            Some(l) => l.clone(),
            None => {
                eprintln!("error: no LaTeX form for this command");
                return ExitCode::from(2);
            }
        },
    };
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    let written = match &cli.out {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(p) => std::fs::write(p, &body),
    };
    if let Err(e) = written {
        eprintln!("internal error: {e}");
        return ExitCode::from(3);
    }
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
