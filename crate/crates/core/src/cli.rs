//! Command-line front end shared by the `cyclic-srs` binary and the tests.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! status: 0 on success, 1 when the requested object does not exist or a
//! check fails, 2 on usage, file or parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{cyclic_confluence_verdict_with, DEFAULT_PROBE_LENGTH};
use crate::completion::{
    cyclical_completion, verify_cyclically_complete, CompletionBudget, CompletionStatus, Conflict,
    DEFAULT_MAX_ADDITIONS,
};
use crate::conjugacy::{
    commutativity_relations, conjugacy_test, tilde_classes, Certificate, ConjugacyResult, UnknownReason,
    DEFAULT_CONGRUENCE_BUDGET,
};
use crate::cyclic::{
    cyclic_steps, explore_allseq, is_cyclically_irreducible, rho_from_report, CyclicGraph, ExploreBudget, Rho,
    DEFAULT_MAX_EDGES, DEFAULT_MAX_NODES,
};
use crate::error::Error;
use crate::format::{parse_system_with, write_system, ParseOptions};
use crate::rewriting::{RewritingSystem, Semantics, DEFAULT_STEP_BUDGET};
use crate::words::Word;

#[derive(Debug, Parser)]
#[command(name = "cyclic-srs", version, about = "Cyclic string rewriting over monoid presentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Nodes explored per cyclic-reduction graph.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    pub max_nodes: usize,
    /// Edges explored per cyclic-reduction graph.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EDGES)]
    pub max_edges: usize,
    /// Rewrite steps allowed when computing one normal form.
    #[arg(long, global = true, default_value_t = DEFAULT_STEP_BUDGET)]
    pub step_budget: usize,
    /// Value for a symbolic schema bound such as `n=2..N`.
    #[arg(long, global = true)]
    pub schema_bound: Option<i64>,
    /// Overrides the `option: semantics=` line of the system file.
    #[arg(long, global = true, value_parser = parse_semantics)]
    pub semantics: Option<Semantics>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    /// One JSON record per line.
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Adjacency,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a word.
    Reduce { system: PathBuf, word: String },
    /// Cyclically irreducible form of a word.
    CyclicReduce { system: PathBuf, word: String },
    /// Whether no rule applies to any rotation of a word.
    Irreducible { system: PathBuf, word: String },
    /// Explores every cyclic-reduction sequence from a word.
    Allseq { system: PathBuf, word: String },
    /// Lists cyclical inclusions and overlaps and gives a confluence verdict.
    Audit {
        system: PathBuf,
        /// Longest word seeded into the termination probe.
        #[arg(long, default_value_t = DEFAULT_PROBE_LENGTH)]
        probe_length: usize,
    },
    /// Runs cyclical completion.
    Complete {
        system: PathBuf,
        /// Where to write the completed system (stdout when absent).
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Where to write the completion log (stdout when absent).
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_ADDITIONS)]
        max_additions: usize,
        /// Also check unique forms for all words up to this length.
        #[arg(long)]
        verify_length: Option<usize>,
    },
    /// Looks for a common cyclic descendant of two words.
    Conjugate {
        system: PathBuf,
        u: String,
        v: String,
        /// Where to write the certificate, if one is found.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// `~`-classes among the words of one length.
    Classes {
        system: PathBuf,
        #[arg(long)]
        length: usize,
        /// Restrict to these symbols (whitespace-separated).
        #[arg(long)]
        symbols: Option<String>,
    },
    /// Re-checks a conjugacy certificate file.
    Verify {
        system: PathBuf,
        certificate: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CONGRUENCE_BUDGET)]
        congruence_budget: usize,
    },
    /// Prints the cyclic-reduction graph explored from a word.
    DumpGraph {
        system: PathBuf,
        word: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Adjacency)]
        graph_format: GraphFormat,
    },
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    Semantics::parse(s).ok_or_else(|| format!("expected generic, special or completely_simple, got {s:?}"))
}

enum Failure {
    /// The reader went away; stop without a message.
    Closed,
    Usage(String),
    Domain(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Closed) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

struct Ctx<'a> {
    system: RewritingSystem,
    budget: ExploreBudget,
    structured: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn word(&self, label: &str, text: &str) -> Result<Word, Failure> {
        self.system.alphabet().parse_word(text).map_err(|e| match e {
            Error::UnknownSymbol { name, column } => {
                Failure::Usage(format!("{label}:1:{column}: unknown symbol {name:?}"))
            }
            Error::MalformedPower { token, column } => {
                Failure::Usage(format!("{label}:1:{column}: malformed power {token:?}"))
            }
            other => Failure::Usage(format!("{label}: {other}")),
        })
    }

    fn r(&self, w: &Word) -> String {
        self.system.alphabet().render(w)
    }

    fn record(&mut self, value: Value) -> Result<(), Failure> {
        writeln!(self.out, "{value}")?;
        Ok(())
    }

    fn budget_text(&self) -> String {
        format!("{} nodes / {} edges", self.budget.max_nodes, self.budget.max_edges)
    }
}

fn load(path: &Path, options: &Options) -> Result<RewritingSystem, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let parse_options = ParseOptions {
        schema_bound: options.schema_bound,
        semantics_override: options.semantics,
    };
    let system = parse_system_with(&text, &parse_options).map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Failure::Usage(format!("{}:{line}:{column}: {message}", path.display()))
        }
        other => Failure::Usage(format!("{}: {other}", path.display())),
    })?;
    Ok(system.with_step_budget(options.step_budget))
}

fn system_path(command: &Command) -> &Path {
    match command {
        Command::Reduce { system, .. }
        | Command::CyclicReduce { system, .. }
        | Command::Irreducible { system, .. }
        | Command::Allseq { system, .. }
        | Command::Audit { system, .. }
        | Command::Complete { system, .. }
        | Command::Conjugate { system, .. }
        | Command::Classes { system, .. }
        | Command::Verify { system, .. }
        | Command::DumpGraph { system, .. } => system,
    }
}

fn domain(e: Error) -> Failure {
    Failure::Domain(e.to_string())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let system = load(system_path(&cli.command), &cli.options)?;
    for caveat in system.caveats() {
        writeln!(err, "note: {caveat}")?;
    }
    let mut ctx = Ctx {
        system,
        budget: ExploreBudget {
            max_nodes: cli.options.max_nodes,
            max_edges: cli.options.max_edges,
        },
        structured: cli.options.format == OutputFormat::Structured,
        out,
    };
    match &cli.command {
        Command::Reduce { word, .. } => reduce(&mut ctx, word),
        Command::CyclicReduce { word, .. } => cyclic_reduce(&mut ctx, word),
        Command::Irreducible { word, .. } => irreducible(&mut ctx, word),
        Command::Allseq { word, .. } => allseq(&mut ctx, word),
        Command::Audit { probe_length, .. } => audit(&mut ctx, *probe_length),
        Command::Complete {
            output,
            log,
            max_additions,
            verify_length,
            ..
        } => complete(&mut ctx, output.as_deref(), log.as_deref(), *max_additions, *verify_length),
        Command::Conjugate { u, v, certificate, .. } => conjugate(&mut ctx, u, v, certificate.as_deref()),
        Command::Classes { length, symbols, .. } => classes(&mut ctx, *length, symbols.as_deref()),
        Command::Verify {
            certificate,
            congruence_budget,
            ..
        } => verify(&mut ctx, certificate, *congruence_budget),
        Command::DumpGraph { word, graph_format, .. } => dump_graph(&mut ctx, word, *graph_format),
    }
}

fn reduce(ctx: &mut Ctx, text: &str) -> Outcome {
    let w = ctx.word("word", text)?;
    let (nf, trace) = ctx.system.normal_form(&w).map_err(domain)?;
    if ctx.structured {
        let rec = json!({
            "kind": "reduce",
            "word": ctx.r(&w),
            "normal_form": ctx.r(&nf),
            "steps": trace.steps.len(),
        });
        ctx.record(rec)?;
    } else {
        writeln!(ctx.out, "{}", ctx.r(&nf))?;
    }
    Ok(0)
}

fn cyclic_reduce(ctx: &mut Ctx, text: &str) -> Outcome {
    let w = ctx.word("word", text)?;
    let report = explore_allseq(&ctx.system, &w, ctx.budget);
    let result = rho_from_report(&report);
    let budget = ctx.budget_text();
    let (status, code) = match &result {
        Rho::Unique { .. } => ("unique", 0),
        Rho::Ambiguous { .. } => ("ambiguous", 1),
        Rho::NoForm { .. } => ("none", 1),
    };
    if ctx.structured {
        let mut rec = json!({ "kind": "cyclic_reduce", "word": ctx.r(&w), "status": status });
        match &result {
            Rho::Unique {
                form,
                reached,
                chain,
                exhaustive,
            } => {
                rec["form"] = json!(ctx.r(form));
                rec["reached"] = json!(ctx.r(reached));
                rec["chain"] = json!(chain.iter().map(|s| s.render(&ctx.system)).collect::<Vec<_>>());
                rec["exhaustive"] = json!(exhaustive);
            }
            Rho::Ambiguous { forms } => {
                rec["forms"] = json!(forms.iter().map(|f| ctx.r(f)).collect::<Vec<_>>());
            }
            Rho::NoForm { exhaustive } => rec["exhaustive"] = json!(exhaustive),
        }
        ctx.record(rec)?;
        return Ok(code);
    }
    match &result {
        Rho::Unique { reached, exhaustive, .. } => {
            writeln!(ctx.out, "{}", ctx.r(reached))?;
            if !exhaustive {
                writeln!(ctx.out, "note: budget of {budget} reached; other forms may exist")?;
            }
        }
        Rho::Ambiguous { forms } => {
            let forms: Vec<String> = forms.iter().map(|f| ctx.r(f)).collect();
            writeln!(ctx.out, "ambiguous: {}", forms.join(" | "))?;
        }
        Rho::NoForm { exhaustive: true } => {
            writeln!(ctx.out, "none: every reduction sequence stays in a cycle")?;
        }
        Rho::NoForm { exhaustive: false } => {
            writeln!(ctx.out, "unknown: no form within the budget of {budget}")?;
        }
    }
    Ok(code)
}

fn irreducible(ctx: &mut Ctx, text: &str) -> Outcome {
    let w = ctx.word("word", text)?;
    let yes = is_cyclically_irreducible(&ctx.system, &w);
    if ctx.structured {
        let steps: Vec<String> = cyclic_steps(&ctx.system, &w)
            .iter()
            .filter(|s| s.is_base())
            .map(|s| s.render(&ctx.system))
            .collect();
        let rec = json!({ "kind": "irreducible", "word": ctx.r(&w), "irreducible": yes, "steps": steps });
        ctx.record(rec)?;
    } else {
        writeln!(ctx.out, "{}", if yes { "yes" } else { "no" })?;
    }
    Ok(0)
}

fn allseq(ctx: &mut Ctx, text: &str) -> Outcome {
    let w = ctx.word("word", text)?;
    let report = explore_allseq(&ctx.system, &w, ctx.budget);
    let forms: Vec<String> = report.irreducible_forms.iter().map(|f| ctx.r(f)).collect();
    let witness = report.nontermination_witness.as_ref().map(|c| c.render(&ctx.system));
    let relations = match &report.nontermination_witness {
        Some(c) => Some(commutativity_relations(&ctx.system, c).map_err(domain)?),
        None => None,
    };
    if ctx.structured {
        let rec = json!({
            "kind": "allseq",
            "word": ctx.r(&w),
            "explored": report.explored.len(),
            "terminates": report.terminates.as_str(),
            "converges": report.converges.as_str(),
            "irreducible_forms": forms,
            "witness": witness,
            "commutes": relations.as_ref().map(|(x, y)| json!({ "x": ctx.r(x), "y": ctx.r(y) })),
            "budget_hit": report.budget_hit,
        });
        ctx.record(rec)?;
        return Ok(0);
    }
    writeln!(ctx.out, "word: {}", ctx.r(&w))?;
    writeln!(ctx.out, "explored: {}", report.explored.len())?;
    writeln!(ctx.out, "terminates: {}", report.terminates.as_str())?;
    writeln!(ctx.out, "converges: {}", report.converges.as_str())?;
    if forms.is_empty() {
        writeln!(ctx.out, "irreducible forms: none")?;
    } else {
        writeln!(ctx.out, "irreducible forms: {}", forms.join(" | "))?;
    }
    if let Some(witness) = witness {
        writeln!(ctx.out, "witness: {witness}")?;
    }
    if let Some((x, y)) = relations {
        let (x, y) = (ctx.r(&x), ctx.r(&y));
        writeln!(ctx.out, "commutes with: x = {x} ; y = {y}")?;
    }
    if report.budget_hit {
        writeln!(ctx.out, "budget: reached {}", ctx.budget_text())?;
    }
    Ok(0)
}

fn audit(ctx: &mut Ctx, probe_length: usize) -> Outcome {
    let report = cyclic_confluence_verdict_with(&ctx.system, ctx.budget, probe_length);
    if ctx.structured {
        let (records, verdict) = report.records(&ctx.system);
        for rec in records {
            let value = serde_json::to_value(rec).map_err(|e| Failure::Domain(e.to_string()))?;
            ctx.record(value)?;
        }
        let value = serde_json::to_value(verdict).map_err(|e| Failure::Domain(e.to_string()))?;
        ctx.record(value)?;
    } else {
        write!(ctx.out, "{}", report.render_text(&ctx.system))?;
    }
    Ok(0)
}

fn complete(
    ctx: &mut Ctx,
    output: Option<&Path>,
    log: Option<&Path>,
    max_additions: usize,
    verify_length: Option<usize>,
) -> Outcome {
    let budget = CompletionBudget {
        explore: ctx.budget,
        max_additions,
    };
    let outcome = cyclical_completion(&ctx.system, budget).map_err(domain)?;
    let written = write_system(&outcome.system);
    let log_text = outcome.log_text();
    if let Some(path) = log {
        std::fs::write(path, &log_text)?;
    }
    if let Some(path) = output {
        std::fs::write(path, &written)?;
    }
    let check = verify_length.map(|n| verify_cyclically_complete(&outcome.system, ctx.budget, n));
    let code = match outcome.status {
        CompletionStatus::Completed if check.as_ref().is_none_or(|c| c.holds()) => 0,
        _ => 1,
    };
    if ctx.structured {
        for a in &outcome.added {
            let (x, y) = &a.conjugators;
            let rec = json!({
                "kind": "added",
                "lhs": ctx.r(&a.lhs),
                "rhs": ctx.r(&a.rhs),
                "origin": a.origin.kind,
                "r1": a.origin.r1.to_string(),
                "r2": a.origin.r2.to_string(),
                "source": ctx.r(&a.origin.ambiguity.source),
                "x": ctx.r(x),
                "y": ctx.r(y),
            });
            ctx.record(rec)?;
        }
        let mut rec = json!({
            "kind": "completion",
            "status": outcome.status_str(),
            "added": outcome.added.len(),
            "conditional": outcome.conditional,
        });
        match &outcome.status {
            CompletionStatus::Failed(Conflict::BothSources { z1, z2, origin }) => {
                rec["conflict"] = json!("both_sources");
                rec["forms"] = json!([ctx.r(z1), ctx.r(z2)]);
                rec["source"] = json!(ctx.r(&origin.ambiguity.source));
            }
            CompletionStatus::Failed(Conflict::NoForm { side, origin }) => {
                rec["conflict"] = json!("no_form");
                rec["side"] = json!(ctx.r(side));
                rec["source"] = json!(ctx.r(&origin.ambiguity.source));
            }
            CompletionStatus::BudgetExhausted { remaining } => rec["remaining"] = json!(remaining.len()),
            CompletionStatus::Completed => {}
        }
        if let Some(c) = &check {
            rec["verified_words"] = json!(c.checked);
            rec["ambiguous_words"] = json!(c.ambiguous.iter().map(|(w, _)| ctx.r(w)).collect::<Vec<_>>());
            rec["no_form_words"] = json!(c.no_form.iter().map(|w| ctx.r(w)).collect::<Vec<_>>());
            rec["unknown_words"] = json!(c.unknown.iter().map(|w| ctx.r(w)).collect::<Vec<_>>());
        }
        ctx.record(rec)?;
        if output.is_none() {
            ctx.record(json!({ "kind": "system", "text": written }))?;
        }
        return Ok(code);
    }
    if log.is_none() {
        write!(ctx.out, "{log_text}")?;
    }
    if let Some(c) = &check {
        writeln!(
            ctx.out,
            "check: {} words, {} unique, {} without form, {} ambiguous, {} over budget",
            c.checked,
            c.unique,
            c.no_form.len(),
            c.ambiguous.len(),
            c.unknown.len()
        )?;
        for (w, forms) in &c.ambiguous {
            let forms: Vec<String> = forms.iter().map(|f| ctx.r(f)).collect();
            writeln!(ctx.out, "  ambiguous {}: {}", ctx.r(w), forms.join(" | "))?;
        }
    }
    if output.is_none() {
        if log.is_none() {
            writeln!(ctx.out)?;
        }
        write!(ctx.out, "{written}")?;
    }
    Ok(code)
}

fn conjugate(ctx: &mut Ctx, u: &str, v: &str, path: Option<&Path>) -> Outcome {
    let u = ctx.word("u", u)?;
    let v = ctx.word("v", v)?;
    let verdict = conjugacy_test(&ctx.system, &u, &v, ctx.budget).map_err(domain)?;
    let cert_text = verdict.certificate().map(|c| c.serialize(&ctx.system));
    if let (Some(path), Some(text)) = (path, &cert_text) {
        std::fs::write(path, text)?;
    }
    let reason = match &verdict.result {
        ConjugacyResult::Unknown(r) => Some(*r),
        _ => None,
    };
    let meeting = match &verdict.result {
        ConjugacyResult::TransposedChain { meeting, .. } => Some(ctx.r(meeting)),
        _ => None,
    };
    if ctx.structured {
        let certificate = verdict.certificate().map(|c| {
            json!({ "u": ctx.r(&c.u), "v": ctx.r(&c.v), "x": ctx.r(&c.x), "y": ctx.r(&c.y), "text": cert_text })
        });
        let rec = json!({
            "kind": "conjugacy",
            "u": ctx.r(&u),
            "v": ctx.r(&v),
            "verdict": verdict.label(),
            "reason": reason.map(UnknownReason::as_str),
            "meeting": meeting,
            "note": verdict.semantics_note,
            "certificate": certificate,
        });
        ctx.record(rec)?;
        return Ok(0);
    }
    match reason {
        Some(UnknownReason::Budget) => {
            writeln!(ctx.out, "verdict: unknown (budget of {} reached)", ctx.budget_text())?
        }
        Some(r) => writeln!(ctx.out, "verdict: unknown ({})", r.as_str())?,
        None => writeln!(ctx.out, "verdict: {}", verdict.label())?,
    }
    if let Some(m) = meeting {
        writeln!(ctx.out, "meeting: {m}")?;
    }
    writeln!(ctx.out, "note: {}", verdict.semantics_note)?;
    if let (None, Some(text)) = (path, cert_text) {
        write!(ctx.out, "{text}")?;
    }
    Ok(0)
}

fn classes(ctx: &mut Ctx, length: usize, symbols: Option<&str>) -> Outcome {
    let letters = match symbols {
        Some(s) => Some(ctx.word("symbols", s)?.0),
        None => None,
    };
    let result = tilde_classes(&ctx.system, length, letters.as_deref(), ctx.budget).map_err(domain)?;
    for (i, class) in result.classes.iter().enumerate() {
        let members: Vec<String> = class.members.iter().map(|m| ctx.r(m)).collect();
        if ctx.structured {
            let rec = json!({
                "kind": "class",
                "index": i,
                "members": members,
                "has_irreducible": class.has_irreducible,
                "has_cycle": class.has_cycle,
            });
            ctx.record(rec)?;
        } else {
            let mut flags = Vec::new();
            if class.has_cycle {
                flags.push("cycle");
            }
            if class.has_irreducible {
                flags.push("irreducible");
            }
            let flags = if flags.is_empty() { String::new() } else { format!(" [{}]", flags.join(", ")) };
            writeln!(ctx.out, "class {i}: {}{flags}", members.join(" | "))?;
        }
    }
    Ok(0)
}

fn verify(ctx: &mut Ctx, path: &Path, congruence_budget: usize) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let cert = Certificate::parse(&ctx.system, &text).map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Failure::Usage(format!("{}:{line}:{column}: {message}", path.display()))
        }
        other => Failure::Domain(format!("{}: {other}", path.display())),
    })?;
    let result = cert.verify(&ctx.system, congruence_budget);
    if ctx.structured {
        let rec = json!({
            "kind": "verify",
            "valid": result.is_ok(),
            "error": result.as_ref().err().map(|e| e.to_string()),
        });
        ctx.record(rec)?;
    } else {
        match &result {
            Ok(()) => writeln!(ctx.out, "valid: u·x = x·v and y·u = v·y")?,
            Err(e) => writeln!(ctx.out, "invalid: {e}")?,
        }
    }
    Ok(if result.is_ok() { 0 } else { 1 })
}

fn dump_graph(ctx: &mut Ctx, text: &str, format: GraphFormat) -> Outcome {
    let w = ctx.word("word", text)?;
    let graph = CyclicGraph::explore(&ctx.system, [w], ctx.budget);
    let body = match format {
        GraphFormat::Adjacency => graph.to_adjacency(&ctx.system),
        GraphFormat::Dot => graph.to_dot(&ctx.system),
    };
    if ctx.structured {
        ctx.record(json!({ "kind": "graph", "format": format!("{format:?}").to_lowercase(), "text": body }))?;
    } else {
        write!(ctx.out, "{body}")?;
    }
    Ok(0)
}
