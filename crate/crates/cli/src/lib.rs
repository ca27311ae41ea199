//! Command-line front end: argument parsing, dispatch and reporting.

pub mod expr;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use qhopf_core::cocycle::{solve_inner, Cocycle};
use qhopf_core::codec::{poly_from_doc, poly_to_doc, TermDoc};
use qhopf_core::hopf::{check_hopf_axioms, HopfStructure};
use qhopf_core::ncpoly::NCPoly;
use qhopf_core::presentations::{make_presentation, Algebra, AlgebraKind, PresentationDoc, DEFAULT_COMPLETION_BOUND};
use qhopf_core::su2_domain::domain_test;
use qhopf_core::verify::{run_lemma, LEMMA_IDS};
use qhopf_core::{AlgebraError, Scalar, Sym};

pub use expr::{parse, parse_expr, Expr};

/// Exit status for a failed check.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for bad arguments or input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qhopf", version, about = "Exact computations in free orthogonal and unitary quantum group algebras")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Directory for completed rewriting systems.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct AlgArgs {
    /// o+, u+, s1, su2 or h.
    #[arg(long = "alg")]
    pub alg: AlgebraKind,

    #[arg(long, default_value_t = 2)]
    pub n: usize,

    /// Completion bound.
    #[arg(long, default_value_t = DEFAULT_COMPLETION_BOUND)]
    pub bound: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the normal form of an expression.
    Normalize {
        #[command(flatten)]
        alg: AlgArgs,
        expr: String,
    },
    /// Check counit laws and coassociativity on generators and samples.
    HopfCheck {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, env = "QHOPF_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate, check or solve a cocycle given as JSON.
    #[command(subcommand)]
    Cocycle(CocycleCommand),
    /// Zero-divisor test for the SU₋₁(2) basis multiplication.
    DomainTest {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, env = "QHOPF_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_alpha: i64,
        #[arg(long, default_value_t = 3)]
        max_gamma: u32,
    },
    /// Run one lemma suite.
    Verify {
        lemma: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, env = "QHOPF_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Expression over H_n (defaults to z).
        #[arg(long)]
        xi: Option<String>,
    },
    /// Complete a presentation and report unresolved overlaps.
    Complete {
        #[command(flatten)]
        alg: AlgArgs,
    },
    /// Print a completed presentation as JSON.
    DumpPresentation {
        #[command(flatten)]
        alg: AlgArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CocycleCommand {
    /// Evaluate the cocycle on an expression over its domain.
    Eval {
        file: PathBuf,
        expr: String,
    },
    /// Evaluate the cocycle on every defining relation.
    Check { file: PathBuf },
    /// Search for an inner witness of bounded degree.
    SolveInner {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
}

/// JSON form of a cocycle: values are expressions over the module algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CocycleDoc {
    pub module: AlgebraKind,
    #[serde(default)]
    pub domain: Option<AlgebraKind>,
    #[serde(default = "default_n")]
    pub n: usize,
    pub values: BTreeMap<String, ValueDoc>,
}

/// A cocycle value: an expression string or the canonical term list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Text(String),
    Terms(Vec<TermDoc>),
}

fn default_n() -> usize {
    2
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check,
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx<'a> {
    json: bool,
    cache: Option<PathBuf>,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, value: &serde_json::Value, text: &str) -> Outcome {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string_pretty(value)?)?;
        } else {
            writeln!(self.out, "{text}")?;
        }
        Ok(())
    }

    fn algebra(&self, kind: AlgebraKind, n: usize, bound: usize) -> Result<Arc<Algebra<Scalar>>, Failure> {
        let n = if kind.needs_n() { n } else { 0 };
        let Some(dir) = &self.cache else {
            return Ok(Arc::new(make_presentation::<Scalar>(kind, n)?.complete(bound)?));
        };
        let path = dir.join(format!("{}_n{}_b{}.json", kind.name(), n, bound));
        if path.exists() {
            let doc: PresentationDoc = serde_json::from_str(&fs::read_to_string(&path)?)?;
            return Ok(Arc::new(Algebra::from_doc(&doc)?));
        }
        let alg = make_presentation::<Scalar>(kind, n)?.complete(bound)?;
        fs::create_dir_all(dir)?;
        fs::write(&path, serde_json::to_string(&alg.to_doc())?)?;
        Ok(Arc::new(alg))
    }
}

fn check_status(pass: bool) -> Outcome {
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn normalize(ctx: &mut Ctx, alg: &AlgArgs, text: &str) -> Outcome {
    let a = ctx.algebra(alg.alg, alg.n, alg.bound)?;
    let p = parse_expr::<Scalar>(text, a.alphabet())?;
    let nf = a.normal_form(&p)?;
    let value = json!({
        "algebra": a.kind().name(),
        "n": a.n(),
        "input": text,
        "normal_form": nf.poly.pretty(),
        "terms": poly_to_doc(&nf.poly),
        "certified": nf.certified,
    });
    let mut text_out = nf.poly.pretty();
    if !nf.certified {
        text_out.push_str(&format!("\n(uncertified: degree exceeds the completion bound {})", a.certified_degree()));
    }
    ctx.emit(&value, &text_out)
}

fn hopf_check(ctx: &mut Ctx, alg: &AlgArgs, degree: usize, samples: usize, seed: u64) -> Outcome {
    let a = ctx.algebra(alg.alg, alg.n, alg.bound.max(2 * degree))?;
    let h = HopfStructure::standard(a)?;
    let report = check_hopf_axioms(&h, degree, samples, seed)?;
    let text = if report.pass {
        format!("pass: {} elements checked", report.elements_checked)
    } else {
        let lines: Vec<String> =
            report.failures.iter().map(|f| format!("FAIL {} on {}: {} vs {}", f.law, f.element, f.lhs, f.rhs)).collect();
        lines.join("\n")
    };
    ctx.emit(&serde_json::to_value(&report)?, &text)?;
    check_status(report.pass)
}

/// Builds the cocycle of a document, deriving starred values where the
/// unstarred ones determine them.
fn cocycle_from_doc(ctx: &mut Ctx, doc: &CocycleDoc) -> Result<Cocycle<Scalar>, Failure> {
    let ambient = ctx.algebra(doc.module, doc.n, DEFAULT_COMPLETION_BOUND)?;
    let domain_kind = doc.domain.unwrap_or(doc.module);
    let domain = ctx.algebra(domain_kind, doc.n, DEFAULT_COMPLETION_BOUND)?;
    let hopf = Arc::new(HopfStructure::standard(domain.clone())?);
    let mut values = BTreeMap::new();
    for (token, value) in &doc.values {
        let s = Sym::parse_token(token)?;
        if !domain.alphabet().contains(&s) {
            return Err(Failure::Usage(format!("generator {token} is not in {}", domain.kind())));
        }
        let v = match value {
            ValueDoc::Text(text) => parse_expr::<Scalar>(text, ambient.alphabet())?,
            ValueDoc::Terms(terms) => poly_from_doc(ambient.alphabet(), terms)?,
        };
        values.insert(s, v);
    }
    let c = Cocycle::with_values(hopf, ambient, values)?;
    let complete = domain.alphabet().symbols().iter().all(|s| c.value(*s).is_some());
    Ok(if complete {
        c
    } else {
        match c.derive_adjoint_values() {
            Ok(d) => d,
            Err(AlgebraError::Underdetermined(_)) => c,
            Err(e) => return Err(e.into()),
        }
    })
}

fn read_cocycle(ctx: &mut Ctx, file: &Path) -> Result<Cocycle<Scalar>, Failure> {
    let doc: CocycleDoc = serde_json::from_str(&fs::read_to_string(file)?)?;
    cocycle_from_doc(ctx, &doc)
}

fn cocycle(ctx: &mut Ctx, cmd: &CocycleCommand) -> Outcome {
    match cmd {
        CocycleCommand::Eval { file, expr } => {
            let c = read_cocycle(ctx, file)?;
            let p = parse_expr::<Scalar>(expr, c.domain().algebra().alphabet())?;
            let v = c.eval(&p)?;
            ctx.emit(&json!({ "input": expr, "value": v.pretty(), "terms": poly_to_doc(&v) }), &v.pretty())
        }
        CocycleCommand::Check { file } => {
            let c = read_cocycle(ctx, file)?;
            let report = c.check_relations()?;
            let text = if report.pass {
                format!("pass: {} relations", report.checked)
            } else {
                let lines: Vec<String> =
                    report.violations.iter().map(|v| format!("FAIL {} ↦ {}", v.relation, v.value)).collect();
                lines.join("\n")
            };
            ctx.emit(&serde_json::to_value(&report)?, &text)?;
            check_status(report.pass)
        }
        CocycleCommand::SolveInner { file, bound } => {
            let c = read_cocycle(ctx, file)?;
            let gens = c.domain().algebra().alphabet().symbols();
            let found = solve_inner(&c, &gens, *bound)?;
            let witness = found.witness.as_ref().map(NCPoly::pretty);
            let value = json!({
                "witness": witness,
                "degree_bound": found.degree_bound,
                "unknowns": found.unknowns,
                "equations": found.equations,
                "caveat": found.caveat,
            });
            let text = match (&witness, found.caveat) {
                (Some(w), _) => format!("witness: {w}"),
                (None, caveat) => format!("no witness up to degree {}\n{}", found.degree_bound, caveat.unwrap_or("")),
            };
            ctx.emit(&value, &text)
        }
    }
}

fn run_command(ctx: &mut Ctx, command: &Command) -> Outcome {
    match command {
        Command::Normalize { alg, expr } => normalize(ctx, alg, expr),
        Command::HopfCheck { alg, degree, samples, seed } => hopf_check(ctx, alg, *degree, *samples, *seed),
        Command::Cocycle(cmd) => cocycle(ctx, cmd),
        Command::DomainTest { samples, seed, max_alpha, max_gamma } => {
            if *samples == 0 {
                return Err(Failure::Usage("--samples must be at least 1".into()));
            }
            let report = domain_test::<Scalar>(*samples, *max_alpha, *max_gamma, *seed);
            let text = if report.pass {
                format!("pass: {} products nonzero with additive α-degree", report.samples)
            } else {
                let lines: Vec<String> =
                    report.failures.iter().map(|f| format!("FAIL ({})·({}): {}", f.x, f.y, f.reason)).collect();
                lines.join("\n")
            };
            ctx.emit(&serde_json::to_value(&report)?, &text)?;
            check_status(report.pass)
        }
        Command::Verify { lemma, n, seed, degree, xi } => {
            if !LEMMA_IDS.contains(&lemma.as_str()) {
                return Err(Failure::Usage(format!("unknown lemma `{lemma}`; expected one of {}", LEMMA_IDS.join(", "))));
            }
            let xi = match xi {
                Some(text) => {
                    let n8 = u8::try_from(*n).map_err(|_| Failure::Usage(format!("n = {n} is out of range")))?;
                    Some(parse_expr::<Scalar>(text, AlgebraKind::H.alphabet(n8))?)
                }
                None => None,
            };
            let report = run_lemma::<Scalar>(lemma, *n, *seed, *degree, xi.as_ref())?;
            let mut lines = vec![format!("{}: {}", report.lemma_id, if report.pass { "pass" } else { "FAIL" })];
            for c in &report.checks {
                let mark = if c.inconclusive {
                    "??"
                } else if c.pass {
                    "ok"
                } else {
                    "FAIL"
                };
                let extra = c.counterexample.as_deref().map(|x| format!(" [{x}]")).unwrap_or_default();
                lines.push(format!("  {mark} {}{extra}", c.description));
            }
            lines.extend(report.caveats.iter().map(|c| format!("  caveat: {c}")));
            ctx.emit(&serde_json::to_value(&report)?, &lines.join("\n"))?;
            check_status(report.pass)
        }
        Command::Complete { alg } => {
            let a = ctx.algebra(alg.alg, alg.n, alg.bound)?;
            let unresolved = a.unresolved_overlaps(alg.bound);
            let value = json!({
                "algebra": a.kind().name(),
                "n": a.n(),
                "bound": alg.bound,
                "rules": a.rule_set().rules().len(),
                "unresolved": unresolved.iter().map(|o| o.word.token()).collect::<Vec<_>>(),
                "certified_degree": a.certified_degree(),
            });
            let text = format!(
                "{} n={}: {} rules, {} unresolved overlaps up to degree {}",
                a.kind(),
                a.n(),
                a.rule_set().rules().len(),
                unresolved.len(),
                alg.bound
            );
            ctx.emit(&value, &text)?;
            check_status(unresolved.is_empty())
        }
        Command::DumpPresentation { alg } => {
            let a = ctx.algebra(alg.alg, alg.n, alg.bound)?;
            writeln!(ctx.out, "{}", serde_json::to_string_pretty(&a.to_doc())?)?;
            Ok(())
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status: 0 on success, 1 when a check fails, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let mut ctx = Ctx { json: cli.json, cache: cli.cache.clone(), out };
    match run_command(&mut ctx, &cli.command) {
        Ok(()) => 0,
        Err(Failure::Check) => EXIT_CHECK_FAILED,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}
