//! Command-line front end.
//!
//! Exit codes: 0 success or predicate true, 1 predicate false or empty
//! solution space, 2 usage, parse or validation error, 3 mathematical error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use mvcurl_core::ansatz::{casimir_solve, lm_solve};
use mvcurl_core::cohomology::truncated_exact_cohomology;
use mvcurl_core::curl::{curl, divergence, is_last_multiplier, schouten};
use mvcurl_core::identities::run_suite;
use mvcurl_core::poisson::{hamiltonian_field, jacobi_residual, lie_poisson, modular_field, unimodularity_check};
use mvcurl_core::{AnsatzSpace, Execution, Multivector, PoissonBivector, RationalFunc, VolumeForm};
use serde_json::{json, Value as Json};

use crate::document::{Document, Value};
use crate::error::{DslError, Result, EXIT_FALSE, EXIT_INVALID, EXIT_OK};
use crate::json::{self, function_to, multivector_to};
use crate::printer;
use crate::syntax::Kind;

pub const DEFAULT_SEED: u64 = 20_260_418;

#[derive(Debug, Parser)]
#[command(
    name = "mvcurl",
    version,
    about = "Exact multivector calculus: curl, Schouten bracket, last multipliers, Poisson structures"
)]
struct Cli {
    /// Document to read (DSL or JSON); standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Volume binding; the unique `volume` binding, or the coordinate volume.
    #[arg(long, global = true)]
    volume: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the document in canonical form.
    Print,
    /// Curl D_V(A) of a multivector.
    Curl { target: Option<String> },
    /// Divergence of a vector field.
    Div { target: Option<String> },
    /// Schouten bracket [A, B].
    Schouten { left: String, right: String },
    /// Three-route last-multiplier check.
    LmCheck {
        target: Option<String>,
        #[arg(long)]
        multiplier: Option<String>,
    },
    /// Last multipliers within a polynomial ansatz.
    LmSolve {
        target: Option<String>,
        #[arg(long)]
        max_degree: u32,
        /// Function binding used as a fixed denominator.
        #[arg(long)]
        denominator: Option<String>,
    },
    /// Jacobi residual [π, π].
    Jacobi { target: Option<String> },
    /// Modular vector field of a Poisson bivector.
    Modular { target: Option<String> },
    /// Hamiltonian vector field A_f.
    Hamiltonian {
        target: Option<String>,
        #[arg(long)]
        function: Option<String>,
    },
    /// Casimir functions within a polynomial ansatz.
    Casimir {
        target: Option<String>,
        #[arg(long)]
        max_degree: u32,
    },
    /// Search for a polynomial ρ with A_ρ equal to the modular field.
    Unimodular {
        target: Option<String>,
        #[arg(long)]
        max_degree: u32,
    },
    /// Lie-Poisson bivector of a `lie` binding.
    LiePoisson { target: Option<String> },
    /// Degree-truncated exact Poisson cohomology.
    Cohomology {
        target: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_degree: u32,
    },
    /// Randomized exact identity suite.
    Identities {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: u64,
    },
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_INVALID
                }
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let text = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&outcome.json).expect("results serialize"))
            } else {
                outcome.text
            };
            let _ = out.write_all(text.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Outcome {
    text: String,
    json: Json,
    code: i32,
}

impl Outcome {
    fn ok(text: String, json: Json) -> Self {
        Outcome { text, json, code: EXIT_OK }
    }

    fn verdict(holds: bool, text: String, json: Json) -> Self {
        Outcome { text, json, code: if holds { EXIT_OK } else { EXIT_FALSE } }
    }
}

fn load(cli: &Cli) -> Result<Document> {
    let mut src = String::new();
    match &cli.input {
        Some(path) => {
            src = std::fs::read_to_string(path)
                .map_err(|e| DslError::usage(format!("cannot read {}: {e}", path.display())))?;
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut src)
                .map_err(|e| DslError::usage(format!("cannot read standard input: {e}")))?;
        }
    }
    if src.trim_start().starts_with('{') {
        json::from_str(&src)
    } else {
        Document::parse(&src)
    }
}

/// The named binding, or the unique binding among `kinds`.
fn pick<'a>(doc: &'a Document, name: Option<&str>, kinds: &[Kind], what: &str) -> Result<(&'a str, &'a Value)> {
    if let Some(name) = name {
        let b = doc
            .bindings
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| DslError::usage(format!("no binding named `{name}`")))?;
        if !kinds.contains(&b.value.kind()) {
            return Err(DslError::usage(format!("`{name}` is a {}, expected {what}", b.value.kind().keyword())));
        }
        return Ok((&b.name, &b.value));
    }
    let found: Vec<_> = doc.bindings.iter().filter(|b| kinds.contains(&b.value.kind())).collect();
    match found.as_slice() {
        [b] => Ok((&b.name, &b.value)),
        [] => Err(DslError::usage(format!("expected {what}, but the document has none"))),
        _ => Err(DslError::usage(format!("document has several candidates for {what}; name one"))),
    }
}

fn multivector(doc: &Document, name: Option<&str>) -> Result<Multivector> {
    match pick(doc, name, &[Kind::Mv, Kind::Lie], "a multivector")?.1 {
        Value::Mv(a) => Ok(a.clone()),
        Value::Lie(c) => Ok(lie_poisson(c).into_inner()),
        _ => unreachable!("filtered by kind"),
    }
}

fn bivector(doc: &Document, name: Option<&str>) -> Result<Multivector> {
    let a = multivector(doc, name)?;
    if a.grade() != 2 && !a.is_zero() {
        return Err(DslError::usage(format!("expected a bivector, found grade {}", a.grade())));
    }
    Ok(if a.is_zero() { Multivector::zero(doc.dim(), 2) } else { a })
}

fn poisson(doc: &Document, name: Option<&str>) -> Result<PoissonBivector> {
    Ok(PoissonBivector::new(bivector(doc, name)?)?)
}

fn function(doc: &Document, name: Option<&str>) -> Result<RationalFunc> {
    match pick(doc, name, &[Kind::Func], "a function")?.1 {
        Value::Func(f) => Ok(f.clone()),
        _ => unreachable!("filtered by kind"),
    }
}

fn volume(doc: &Document, name: Option<&str>) -> Result<VolumeForm> {
    if name.is_none() && doc.of_kind(Kind::Volume).next().is_none() {
        return Ok(VolumeForm::unit(doc.dim()));
    }
    match pick(doc, name, &[Kind::Volume], "a volume")?.1 {
        Value::Volume(v) => Ok(v.clone()),
        _ => unreachable!("filtered by kind"),
    }
}

fn function_list(doc: &Document, fs: &[RationalFunc]) -> (String, Json) {
    let mut text = format!("dimension: {}\n", fs.len());
    for f in fs {
        text.push_str(&printer::function(&doc.chart, f));
        text.push('\n');
    }
    (text, json!({ "dimension": fs.len(), "basis": fs.iter().map(function_to).collect::<Vec<_>>() }))
}

fn mv_result(doc: &Document, command: &str, a: &Multivector) -> Outcome {
    Outcome::ok(
        format!("{}\n", printer::multivector(&doc.chart, a)),
        json!({ "command": command, "result": multivector_to(a) }),
    )
}

fn execute(cli: &Cli) -> Result<Outcome> {
    if let Command::Identities { seed, cases } = cli.command {
        let outcomes = run_suite(seed, cases, Execution::default());
        let mut text = String::new();
        let mut rows = Vec::new();
        for o in &outcomes {
            let status = if o.passed() { "pass" } else { "FAIL" };
            text.push_str(&format!("{}: {status} ({} cases)\n", o.identity.name(), o.cases));
            rows.push(json!({
                "identity": o.identity.name(),
                "cases": o.cases,
                "passed": o.passed(),
                "failures": o.failures,
                "errors": o.errors.iter().map(|(c, e)| json!({"case": c, "error": e})).collect::<Vec<_>>(),
            }));
        }
        let all = outcomes.iter().all(|o| o.passed());
        return Ok(Outcome::verdict(all, text, json!({ "seed": seed, "identities": rows })));
    }

    let doc = load(cli)?;
    let chart = &doc.chart;
    let vol = || volume(&doc, cli.volume.as_deref());
    Ok(match &cli.command {
        Command::Identities { .. } => unreachable!("handled above"),
        Command::Print => {
            Outcome::ok(printer::document(&doc), serde_json::to_value(json::document_to(&doc)).expect("serializable"))
        }
        Command::Curl { target } => mv_result(&doc, "curl", &curl(&vol()?, &multivector(&doc, target.as_deref())?)?),
        Command::Div { target } => {
            let f = divergence(&vol()?, &multivector(&doc, target.as_deref())?)?;
            Outcome::ok(
                format!("{}\n", printer::function(chart, &f)),
                json!({ "command": "div", "result": function_to(&f) }),
            )
        }
        Command::Schouten { left, right } => {
            let r = schouten(&multivector(&doc, Some(left))?, &multivector(&doc, Some(right))?)?;
            mv_result(&doc, "schouten", &r)
        }
        Command::LmCheck { target, multiplier } => {
            let a = multivector(&doc, target.as_deref())?;
            let m = function(&doc, multiplier.as_deref())?;
            let check = is_last_multiplier(&vol()?, &m, &a)?;
            let text = format!("last multiplier: {} ({}/3 routes)\n", check.holds(), check.agreeing());
            let json = json!({
                "last_multiplier": check.holds(),
                "routes": { "curl": check.curl_route, "witten": check.witten_route, "marsden": check.marsden_route },
            });
            Outcome::verdict(check.holds(), text, json)
        }
        Command::LmSolve { target, max_degree, denominator } => {
            let a = multivector(&doc, target.as_deref())?;
            let n = doc.dim();
            let space = match denominator {
                Some(name) => AnsatzSpace::with_denominator(n, *max_degree, &function(&doc, Some(name))?)?,
                None => AnsatzSpace::polynomial(n, *max_degree),
            };
            let found = lm_solve(&vol()?, &a, &space)?;
            let (text, json) = function_list(&doc, &found);
            Outcome::verdict(!found.is_empty(), text, json)
        }
        Command::Jacobi { target } => {
            let r = jacobi_residual(&bivector(&doc, target.as_deref())?)?;
            let text = format!("[pi, pi] = {}\n", printer::multivector(chart, &r));
            Outcome::verdict(r.is_zero(), text, json!({ "poisson": r.is_zero(), "residual": multivector_to(&r) }))
        }
        Command::Modular { target } => {
            let pi = poisson(&doc, target.as_deref())?;
            mv_result(&doc, "modular", &modular_field(&vol()?, &pi)?)
        }
        Command::Hamiltonian { target, function: f } => {
            let pi = poisson(&doc, target.as_deref())?;
            let f = function(&doc, f.as_deref())?;
            mv_result(&doc, "hamiltonian", &hamiltonian_field(&pi, &f)?)
        }
        Command::Casimir { target, max_degree } => {
            let pi = poisson(&doc, target.as_deref())?;
            let found = casimir_solve(&pi, &AnsatzSpace::polynomial(doc.dim(), *max_degree))?;
            let (text, json) = function_list(&doc, &found);
            Outcome::verdict(!found.is_empty(), text, json)
        }
        Command::Unimodular { target, max_degree } => {
            let pi = poisson(&doc, target.as_deref())?;
            match unimodularity_check(&vol()?, &pi, *max_degree)?.witness() {
                Some(rho) => Outcome::ok(
                    format!("unimodular: rho = {}\n", printer::function(chart, rho)),
                    json!({ "unimodular": true, "rho": function_to(rho) }),
                ),
                None => Outcome::verdict(
                    false,
                    format!("no witness of degree <= {max_degree}\n"),
                    json!({ "unimodular": null, "max_degree": max_degree }),
                ),
            }
        }
        Command::LiePoisson { target } => {
            let c = match pick(&doc, target.as_deref(), &[Kind::Lie], "a `lie` binding")?.1 {
                Value::Lie(c) => c,
                _ => unreachable!("filtered by kind"),
            };
            mv_result(&doc, "lie-poisson", &lie_poisson(c).into_inner())
        }
        Command::Cohomology { target, k, max_degree } => {
            let pi = poisson(&doc, target.as_deref())?;
            let r = truncated_exact_cohomology(&vol()?, &pi, *k, *max_degree)?;
            let text = format!(
                "grade: {}\ndegree bound: {}\nexact cochains: {}\nkernel: {}\nimage: {}\ntruncated H^{}: {}\n\
                 full kernel: {}\nexact kernel in full kernel: {}\n",
                r.k,
                r.degree_bound,
                r.dim_exact,
                r.dim_kernel,
                r.dim_image,
                r.k,
                r.truncated_h_dim,
                r.dim_full_kernel,
                r.exact_kernel_in_full_kernel
            );
            let json = json!({
                "k": r.k,
                "degree_bound": r.degree_bound,
                "pi_degree": r.pi_degree,
                "dim_exact": r.dim_exact,
                "dim_kernel": r.dim_kernel,
                "dim_image": r.dim_image,
                "truncated_h_dim": r.truncated_h_dim,
                "dim_full_kernel": r.dim_full_kernel,
                "exact_kernel_in_full_kernel": r.exact_kernel_in_full_kernel,
                "truncated": r.truncated,
            });
            Outcome::ok(text, json)
        }
    })
}
