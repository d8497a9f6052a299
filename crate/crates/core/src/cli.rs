//! The `omnilie` command line.
//!
//! Every subcommand reads one document (a path, or `-` for standard input)
//! and prints a [`Report`]. Exit codes: 0 when every check passes, 1 when a
//! check fails or a construction is refused, 2 on input errors.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::algebroid::{self, AlgebroidData};
use crate::dirac::{self, CheckOptions, FourConditions, IntegrabilityMode, PiMap};
use crate::document::{Document, Payload};
use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiData};
use crate::omni::{self, OmniSample};
use crate::poly::{int, Patch};
use crate::report::{Check, CheckSet, Report};
use crate::sample::Sampler;

#[derive(Debug, Parser)]
#[command(name = "omnilie", version, about = "Exact verification of omni-Lie algebroids, Dirac structures and Lie/Jacobi correspondences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Integrability decision procedure.
    #[arg(long, value_enum, global = true, default_value_t = Mode::Finite)]
    pub mode: Mode,

    /// Degree cap for generated monomials and random sections.
    #[arg(long, global = true, default_value_t = 2)]
    pub degree_cap: u32,

    /// Number of random samples per sampled identity.
    #[arg(long, global = true, default_value_t = 16)]
    pub samples: usize,

    /// Seed for random samples (overrides the seed of an omni document).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Emit the JSON report (default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,

    /// Emit a human-readable report.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Finite,
    Sampled,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Lie algebroid axioms of an `algebroid` document.
    CheckAlgebroid { input: String },
    /// Build the Dirac graph of an algebroid and check it.
    ToDirac { input: String },
    /// Check skewness and integrability of a `pi` (or `algebroid`) document.
    CheckDirac { input: String },
    /// Reduce a Dirac graph to a Lie algebroid on E when possible.
    FromDirac { input: String },
    /// Check the Jacobi conditions of a `jacobi` document.
    CheckJacobi { input: String },
    /// Build the rank-one Dirac graph of a Jacobi pair and check it.
    JacobiToDirac { input: String },
    /// Run the Nijenhuis deformation suite.
    Nijenhuis { input: String },
    /// Check the five omni-Lie algebroid properties on random sections.
    OmniCheck { input: String },
    /// Build the cotangent algebroid of a Poisson bivector.
    PoissonCotangent { input: String },
    /// Point-base correspondence between Dirac graphs and Lie algebras.
    Weinstein { input: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckAlgebroid { .. } => "check-algebroid",
            Command::ToDirac { .. } => "to-dirac",
            Command::CheckDirac { .. } => "check-dirac",
            Command::FromDirac { .. } => "from-dirac",
            Command::CheckJacobi { .. } => "check-jacobi",
            Command::JacobiToDirac { .. } => "jacobi-to-dirac",
            Command::Nijenhuis { .. } => "nijenhuis",
            Command::OmniCheck { .. } => "omni-check",
            Command::PoissonCotangent { .. } => "poisson-cotangent",
            Command::Weinstein { .. } => "weinstein",
        }
    }

    fn input(&self) -> &str {
        match self {
            Command::CheckAlgebroid { input }
            | Command::ToDirac { input }
            | Command::CheckDirac { input }
            | Command::FromDirac { input }
            | Command::CheckJacobi { input }
            | Command::JacobiToDirac { input }
            | Command::Nijenhuis { input }
            | Command::OmniCheck { input }
            | Command::PoissonCotangent { input }
            | Command::Weinstein { input } => input,
        }
    }
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// What a subcommand produced before rendering.
struct Run {
    checks: CheckSet,
    result: Option<serde_json::Value>,
    refusal: Option<String>,
}

impl Run {
    fn checks(checks: CheckSet) -> Self {
        Run {
            checks,
            result: None,
            refusal: None,
        }
    }
}

/// Runs the tool on `args` (including the program name), reading `-` from
/// the process's standard input.
pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_stdin(args, || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    })
}

/// As [`run_command`], with standard input supplied by `stdin`.
pub fn run_with_stdin<I, T>(args: I, stdin: impl FnOnce() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let path = cli.command.input();
    let source = if path == "-" {
        stdin()
    } else {
        std::fs::read_to_string(path)
    };
    let source = match source {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(format!("cannot read {path}: {e}")),
    };
    let doc = match Document::from_json(&source) {
        Ok(doc) => doc,
        Err(e) => return Outcome::input_error(e),
    };
    let run = match execute(&cli, &doc) {
        Ok(run) => run,
        Err(e) => return Outcome::input_error(e),
    };
    let digest = hex::encode(Sha256::digest(source.as_bytes()));
    let mut report = Report::new(cli.command.name(), digest, &run.checks, doc.patch.var_names());
    report.result = run.result;
    if let Some(message) = run.refusal {
        report = report.refuse(message);
    }
    let stdout = if cli.pretty {
        report.render_pretty()
    } else {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    };
    let code = match report.verdict {
        crate::report::Verdict::Pass => 0,
        crate::report::Verdict::Fail => 1,
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn options(cli: &Cli) -> CheckOptions {
    CheckOptions {
        mode: match cli.mode {
            Mode::Finite => IntegrabilityMode::Finite,
            Mode::Sampled => IntegrabilityMode::Sampled,
        },
        degree_cap: cli.degree_cap,
        samples: cli.samples,
        seed: cli.seed.unwrap_or(0),
    }
}

fn wrong_payload(command: &str, expected: &str, found: &Payload) -> Error {
    Error::Document(format!("{command} expects a `{expected}` document, found `{}`", found.kind()))
}

fn algebroid_of<'a>(command: &str, doc: &'a Document) -> Result<&'a AlgebroidData> {
    match &doc.payload {
        Payload::Algebroid(a) => Ok(a),
        other => Err(wrong_payload(command, "algebroid", other)),
    }
}

fn jacobi_of<'a>(command: &str, doc: &'a Document) -> Result<&'a JacobiData> {
    match &doc.payload {
        Payload::Jacobi(j) => Ok(j),
        other => Err(wrong_payload(command, "jacobi", other)),
    }
}

fn pi_of(command: &str, doc: &Document) -> Result<PiMap> {
    match &doc.payload {
        Payload::Pi(pi) => Ok(pi.clone()),
        Payload::Algebroid(a) => Ok(a.pi_map()),
        other => Err(wrong_payload(command, "pi", other)),
    }
}

fn document(patch: &Patch, payload: Payload) -> serde_json::Value {
    Document {
        patch: patch.clone(),
        payload,
    }
    .to_json_value()
}

/// Skewness plus integrability; a skew failure is reported as a failed check
/// rather than an input error.
fn dirac_checks(pi: &PiMap, opts: &CheckOptions) -> CheckSet {
    let skew = dirac::check_skew(pi);
    let mut checks = CheckSet::new();
    let skew_ok = skew.pass;
    checks.push(skew);
    if skew_ok {
        match dirac::check_integrability(pi, opts) {
            Ok(set) => checks.extend(set),
            Err(e) => checks.push(Check::new("integrability", "piEquation").with_status(false, || e.to_string())),
        }
    }
    checks
}

fn execute(cli: &Cli, doc: &Document) -> Result<Run> {
    let opts = options(cli);
    let name = cli.command.name();
    let (cap, samples, seed) = (opts.degree_cap, opts.samples, opts.seed);
    match &cli.command {
        Command::CheckAlgebroid { .. } => {
            let a = algebroid_of(name, doc)?;
            Ok(Run::checks(algebroid::check_axioms_with(a, samples.min(8), seed, cap.min(1))))
        }
        Command::ToDirac { .. } => {
            let a = algebroid_of(name, doc)?;
            let mut checks = algebroid::check_axioms_with(a, samples.min(8), seed, cap.min(1));
            match algebroid::algebroid_to_pi(a) {
                Ok(pi) => {
                    checks.extend(dirac_checks(&pi, &opts));
                    Ok(Run {
                        checks,
                        result: Some(document(&doc.patch, Payload::Pi(pi))),
                        refusal: None,
                    })
                }
                Err(e) => Ok(Run {
                    checks,
                    result: None,
                    refusal: Some(e.to_string()),
                }),
            }
        }
        Command::CheckDirac { .. } => Ok(Run::checks(dirac_checks(&pi_of(name, doc)?, &opts))),
        Command::FromDirac { .. } => from_dirac(&pi_of(name, doc)?, &doc.patch, &opts),
        Command::CheckJacobi { .. } => {
            let j = jacobi_of(name, doc)?;
            let mut checks = jacobi::check_jacobi_structure(j, cap);
            checks.push(jacobi::check_anchor_like(j, samples, seed, cap).rule);
            Ok(Run::checks(checks))
        }
        Command::JacobiToDirac { .. } => {
            let j = jacobi_of(name, doc)?;
            let pi = jacobi::jacobi_to_pi(j);
            let mut checks = jacobi::jacobi_conditions(j);
            checks.extend(dirac_checks(&pi, &opts).into_vec().into_iter().map(|mut c| {
                c.name = format!("dirac-{}", c.name);
                c
            }).collect());
            Ok(Run {
                checks,
                result: Some(document(&doc.patch, Payload::Pi(pi))),
                refusal: None,
            })
        }
        Command::Nijenhuis { .. } => {
            let Payload::Nijenhuis(a, nop) = &doc.payload else {
                return Err(wrong_payload(name, "nijenhuis", &doc.payload));
            };
            let report = algebroid::nijenhuis_suite(a, nop, samples.min(4), seed, cap.min(1));
            Ok(Run::checks(report.checks))
        }
        Command::OmniCheck { .. } => {
            let Payload::Omni(spec) = &doc.payload else {
                return Err(wrong_payload(name, "omni", &doc.payload));
            };
            let (n, k) = (doc.patch.dim_m(), doc.patch.rank_e());
            let mut sampler = Sampler::new(cli.seed.unwrap_or(spec.seed));
            let samples: Vec<OmniSample> = (0..spec.count)
                .map(|_| OmniSample {
                    x: sampler.omni(n, k, spec.degree),
                    y: sampler.omni(n, k, spec.degree),
                    z: sampler.omni(n, k, spec.degree),
                    f: sampler.poly(n, spec.degree),
                })
                .collect();
            Ok(Run::checks(omni::check_omni_axioms(&samples)))
        }
        Command::PoissonCotangent { .. } => {
            let Payload::Poisson(bivector) = &doc.payload else {
                return Err(wrong_payload(name, "poisson", &doc.payload));
            };
            poisson(bivector, &doc.patch, samples, seed)
        }
        Command::Weinstein { .. } => weinstein(algebroid_of(name, doc)?, &opts),
    }
}

fn from_dirac(pi: &PiMap, patch: &Patch, opts: &CheckOptions) -> Result<Run> {
    let mut checks = dirac_checks(pi, opts);
    if !checks.all_pass() {
        return Ok(Run {
            checks,
            result: None,
            refusal: Some("graph is not a Dirac structure".into()),
        });
    }
    let four = dirac::four_conditions(pi, opts);
    let all = four.all();
    checks.extend(four.checks.clone());
    checks.push(Check::new("four-conditions-agree", "fourequivalentstatements").with_status(four.agree(), || {
        let values = four.values();
        FourConditions::NAMES
            .iter()
            .zip(values)
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(", ")
    }));
    if all {
        let a = dirac::dirac_to_algebroid(pi, opts)?;
        return Ok(Run {
            checks,
            result: Some(document(patch, Payload::Algebroid(a))),
            refusal: None,
        });
    }
    let refusal = Error::LocalLieOnly(
        FourConditions::NAMES
            .iter()
            .zip(four.values())
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| *n)
            .collect::<Vec<_>>()
            .join(", "),
    )
    .to_string();
    let result = if pi.rank() == 1 {
        jacobi::line_dirac_to_local_lie(pi, opts.degree_cap)
            .ok()
            .map(|local| document(patch, Payload::Jacobi(local.data)))
    } else {
        None
    };
    Ok(Run {
        checks,
        result,
        refusal: Some(refusal),
    })
}

fn poisson(bivector: &crate::poly::PolyMatrix, patch: &Patch, samples: usize, seed: u64) -> Result<Run> {
    let n = patch.dim_m();
    match algebroid::poisson_cotangent(bivector) {
        Ok(a) => {
            let mut checks: CheckSet = [Check::new("poisson-condition", "Poisson").with_status(true, String::new)]
                .into_iter()
                .collect();
            checks.extend(algebroid::check_axioms_with(&a, samples.min(4), seed, 1));
            checks.extend(algebroid::check_diagram(&a, samples.min(3), seed, 1));
            checks.extend(algebroid::check_rep_equivalence(&a, samples.min(3), seed, 1));
            // Informational only: ρ̂ is invertible exactly where Π is nondegenerate.
            let mut sampler = Sampler::new(seed);
            let mut invertible = true;
            for _ in 0..samples.min(4) {
                let point: Vec<_> = (0..n).map(|_| int(sampler.int_in(-5, 5))).collect();
                invertible &= !num_traits::Zero::is_zero(&algebroid::rho_hat_determinant(&a, &point)?);
            }
            let mut result = document(patch, Payload::Algebroid(a));
            result["rho_hat_invertible_at_samples"] = serde_json::Value::Bool(invertible);
            Ok(Run {
                checks,
                result: Some(result),
                refusal: None,
            })
        }
        Err(Error::NotPoisson { index, defect }) => {
            let check = Check::new("poisson-condition", "Poisson").with_status(false, || {
                format!("[Pi,Pi] component {index:?} = {defect}")
            });
            Ok(Run::checks([check].into_iter().collect()))
        }
        Err(e) => Err(e),
    }
}

fn weinstein(a: &AlgebroidData, opts: &CheckOptions) -> Result<Run> {
    if a.nvars() != 0 {
        return Err(Error::Document("weinstein expects a point base (no coordinates)".into()));
    }
    let pi = a.pi_map();
    let dirac_ok = dirac::is_dirac(&pi, opts);
    let jacobi = algebroid::check_axioms_with(a, 0, 0, 0)
        .get("jacobi-basis")
        .cloned()
        .expect("jacobi-basis is always reported");
    let lie_ok = jacobi.pass;
    let mut checks: CheckSet = dirac_checks(&pi, opts);
    checks.push(jacobi);
    checks.push(Check::new("dirac-iff-lie-algebra", "Wein").with_status(dirac_ok == lie_ok, || {
        format!("Dirac {dirac_ok}, Lie algebra {lie_ok}")
    }));
    Ok(Run::checks(checks))
}
