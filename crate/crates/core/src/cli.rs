//! Command-line front end.

use crate::coding::{decode, gc, GodelCode};
use crate::diagonal::fixed_point;
use crate::kernel::text::{parse_proofs, print_proof, print_proofs};
use crate::kernel::{check_proof, TheoremDb};
use crate::revision::doc::{FragmentDoc, FrameDoc};
use crate::revision::experiment::{
    dcb_seed, local_validation, revision_befs, Counts, Falsified, Options, StageRow, Target,
};
use crate::revision::EmptyMeet;
use crate::scripts::{self, catalog, Ctx};
use crate::syntax::{parse_formula, parse_syntax, Formula, Syntax, Var};
use crate::systems::builtin_systems;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "knowtruth", version, about = "Untyped knowledge and truth workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Parse a formula or term and print it in canonical form.
    Parse {
        text: String,
        #[arg(long)]
        json: bool,
    },
    /// Godel code of an expression, or the expression of a code.
    Code {
        text: String,
        /// Read TEXT as a code and decode it.
        #[arg(long)]
        decode: bool,
    },
    /// Fixed point of a formula in one variable, with its checked witness.
    Diag {
        formula: String,
        /// Variable receiving the code, as `vN`.
        #[arg(long, default_value = "v0")]
        var: String,
        /// Write the witness proof here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check proof files; proofs within a file may cite earlier ones.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Scripted derivations.
    Scripts {
        #[command(subcommand)]
        cmd: ScriptsCmd,
    },
    /// Revision-semantics experiments on a frame document.
    Revise(ReviseArgs),
    /// List registered systems, or print one system's manifest.
    Systems { name: Option<String> },
}

#[derive(Debug, Subcommand)]
pub enum ScriptsCmd {
    List,
    Run {
        ids: Vec<String>,
        #[arg(long)]
        all: bool,
        /// Write each script's proofs to DIR/<id>.proof.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Befs,
    Dcb,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    #[value(name = "kt-ubf-ia")]
    A,
    #[value(name = "kt-ubf-ia-in+")]
    B,
    #[value(name = "kt-ubf-ia-in+-")]
    C,
}

#[derive(Debug, clap::Args)]
pub struct ReviseArgs {
    frame: PathBuf,
    #[arg(long)]
    fragment: Option<PathBuf>,
    /// Experiment to run; a target implies `local`.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, value_enum)]
    target: Option<TargetArg>,
    /// Revision stages to compute.
    #[arg(long, default_value_t = 12)]
    max_iter: usize,
    #[arg(long, default_value_t = 3)]
    window: usize,
    /// Seeds of the random starting valuations (befs mode).
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 2, 3])]
    seeds: Vec<u64>,
    /// Sampler seed.
    #[arg(long, default_value_t = crate::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 30)]
    per_axiom: usize,
    #[arg(long, value_enum, default_value_t = MeetArg::Everything)]
    empty_meet: MeetArg,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeetArg {
    Everything,
    Nothing,
}

/// Parse arguments and run; returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run(cli.cmd, out) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

enum Failure {
    Input(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn json(out: &mut dyn Write, v: &impl Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(input)?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn run(cmd: Cmd, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Cmd::Parse { text, json: as_json } => {
            let x = parse_syntax(&text).map_err(input)?;
            if as_json {
                let kind = if matches!(x, Syntax::Formula(_)) { "formula" } else { "term" };
                json(out, &serde_json::json!({ "kind": kind, "text": x.to_string(), "code": gc(&x).0.to_string() }))?;
            } else {
                writeln!(out, "{x}")?;
            }
            Ok(EXIT_OK)
        }
        Cmd::Code { text, decode: back } => {
            if back {
                let n: GodelCode = text.parse().map_err(|_| Failure::Input(format!("`{text}` is not a natural")))?;
                match decode(&n) {
                    Ok(x) => writeln!(out, "{x}")?,
                    Err(e) => {
                        writeln!(out, "not a code: {e}")?;
                        return Ok(EXIT_REJECTED);
                    }
                }
            } else {
                writeln!(out, "{}", gc(&parse_syntax(&text).map_err(input)?).0)?;
            }
            Ok(EXIT_OK)
        }
        Cmd::Diag { formula, var, emit } => diag(&formula, &var, emit, out),
        Cmd::Check { files, json: as_json } => check(&files, as_json, out),
        Cmd::Scripts { cmd } => match cmd {
            ScriptsCmd::List => {
                for (id, about, _) in catalog() {
                    writeln!(out, "{id:<16} {about}")?;
                }
                Ok(EXIT_OK)
            }
            ScriptsCmd::Run { ids, all, emit, json: as_json } => run_scripts(ids, all, emit, as_json, out),
        },
        Cmd::Revise(a) => revise(a, out),
        Cmd::Systems { name } => {
            let reg = builtin_systems();
            match name {
                Some(n) => write!(out, "{}", reg.get(&n).map_err(input)?.manifest())?,
                None => {
                    for n in reg.names() {
                        let s = reg.get(n).map_err(input)?;
                        writeln!(out, "{n:<16} {}", s.title)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn parse_var(s: &str) -> Result<Var, Failure> {
    s.strip_prefix('v')
        .and_then(|n| n.parse().ok())
        .map(Var)
        .ok_or_else(|| Failure::Input(format!("`{s}` is not a variable")))
}

fn diag(formula: &str, var: &str, emit: Option<PathBuf>, out: &mut dyn Write) -> Result<i32, Failure> {
    let phi = parse_formula(formula).map_err(input)?;
    let y = parse_var(var)?;
    let fp = fixed_point(&phi, y).map_err(input)?;
    let v = check_proof(&builtin_systems(), &TheoremDb::new(), &fp.witness);
    writeln!(out, "theta: {}", fp.theta)?;
    writeln!(out, "statement: {}", fp.statement)?;
    if let Some(path) = emit {
        std::fs::write(&path, print_proof(&fp.witness))?;
    }
    match v {
        Ok(_) => {
            writeln!(out, "witness: {} steps in {}, accepted", fp.witness.steps.len(), fp.witness.system)?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(out, "witness rejected: {e}")?;
            Ok(EXIT_REJECTED)
        }
    }
}

#[derive(Serialize)]
struct CheckRow {
    file: String,
    system: String,
    steps: usize,
    accepted: bool,
    conclusion: Option<String>,
    nec_uses: Option<usize>,
    error: Option<String>,
}

fn check(files: &[PathBuf], as_json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let reg = builtin_systems();
    let db = TheoremDb::new();
    let mut rows = Vec::new();
    for f in files {
        let proofs = parse_proofs(&read(f)?).map_err(|e| Failure::Input(format!("{}: {e}", f.display())))?;
        for p in proofs {
            let r = check_proof(&reg, &db, &p);
            rows.push(CheckRow {
                file: f.display().to_string(),
                system: p.system.clone(),
                steps: p.steps.len(),
                accepted: r.is_ok(),
                conclusion: r.as_ref().ok().map(|v| v.conclusion.to_string()),
                nec_uses: r.as_ref().ok().map(|v| v.nec_uses),
                error: r.as_ref().err().map(|e| e.to_string()),
            });
            if r.is_err() {
                break;
            }
        }
    }
    let ok = rows.iter().all(|r| r.accepted);
    if as_json {
        json(out, &rows)?;
    } else {
        for r in &rows {
            let title = reg.get(&r.system).map(|s| s.title.clone()).unwrap_or_else(|_| r.system.clone());
            match (&r.conclusion, &r.error) {
                (Some(c), _) if *c == Formula::bot().to_string() => writeln!(out, "⊥ derived in {title}")?,
                (Some(c), _) => writeln!(out, "accepted in {title}: {c}")?,
                (_, Some(e)) => writeln!(out, "rejected in {title}: {e}")?,
                _ => {}
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_REJECTED })
}

#[derive(Serialize)]
struct ScriptRow {
    id: String,
    about: String,
    ok: bool,
    proofs: usize,
    steps: usize,
    conclusion: Option<String>,
    ms: u128,
    error: Option<String>,
}

fn run_scripts(
    ids: Vec<String>,
    all: bool,
    emit: Option<PathBuf>,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let cat = catalog();
    let ids: Vec<String> =
        if all || ids.is_empty() { cat.iter().map(|(i, _, _)| i.to_string()).collect() } else { ids };
    if let Some(bad) = ids.iter().find(|i| !cat.iter().any(|(c, _, _)| c == i)) {
        return Err(Failure::Input(format!("unknown script `{bad}`")));
    }
    if let Some(dir) = &emit {
        std::fs::create_dir_all(dir)?;
    }
    let ctx = Ctx::new();
    let mut rows = Vec::new();
    for id in &ids {
        let about = cat.iter().find(|(c, _, _)| c == id).map(|(_, a, _)| a.to_string()).unwrap_or_default();
        let row = match scripts::run(&ctx, id) {
            Ok(r) => {
                let replayed = scripts::replay(&r);
                if let Some(dir) = &emit {
                    std::fs::write(dir.join(format!("{id}.proof")), print_proofs(&r.proofs))?;
                }
                ScriptRow {
                    id: id.clone(),
                    about,
                    ok: replayed.is_ok(),
                    proofs: r.proofs.len(),
                    steps: r.proofs.iter().map(|p| p.steps.len()).sum(),
                    conclusion: Some(r.verdict().conclusion.to_string()),
                    ms: r.elapsed.as_millis(),
                    error: replayed.err().map(|e| e.to_string()),
                }
            }
            Err(e) => ScriptRow {
                id: id.clone(),
                about,
                ok: false,
                proofs: 0,
                steps: 0,
                conclusion: None,
                ms: 0,
                error: Some(e.to_string()),
            },
        };
        rows.push(row);
    }
    if as_json {
        json(out, &rows)?;
    } else {
        writeln!(out, "{:<16} {:<6} {:>6} {:>7} {:>8}  statement", "script", "result", "proofs", "steps", "ms")?;
        for r in &rows {
            let verdict = if r.ok { "pass" } else { "FAIL" };
            writeln!(out, "{:<16} {:<6} {:>6} {:>7} {:>8}  {}", r.id, verdict, r.proofs, r.steps, r.ms, r.about)?;
            if let Some(e) = &r.error {
                writeln!(out, "    {e}")?;
            }
        }
    }
    Ok(if rows.iter().all(|r| r.ok) { EXIT_OK } else { EXIT_REJECTED })
}

fn table(out: &mut dyn Write, rows: &[StageRow], falsified: &[Falsified]) -> Result<(), Failure> {
    writeln!(out, "{:<14} {:>5} {:>7} {:>8} {:>6}", "run", "stage", "true", "unknown", "false")?;
    for r in rows {
        let Counts { r#true, unknown, r#false } = r.counts;
        writeln!(out, "{:<14} {:>5} {:>7} {:>8} {:>6}", r.run, r.stage, r#true, unknown, r#false)?;
    }
    for f in falsified.iter().take(10) {
        writeln!(out, "false at world {} stage {} ({}): {}", f.world, f.stage, f.axiom, f.formula)?;
    }
    Ok(())
}

fn revise(a: ReviseArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut doc = FrameDoc::from_json(&read(&a.frame)?).map_err(input)?;
    if let Some(p) = &a.fragment {
        FragmentDoc::from_json(&read(p)?).map_err(input)?.apply(&mut doc);
    }
    let frame = doc.frame().map_err(input)?;
    let mut opts = Options {
        per_axiom: a.per_axiom,
        seed: a.seed,
        sentences: doc.sentences().map_err(input)?,
        empty_meet: match a.empty_meet {
            MeetArg::Everything => EmptyMeet::Everything,
            MeetArg::Nothing => EmptyMeet::Nothing,
        },
        ..Options::default()
    };
    let dom = doc.domain().map_err(input)?;
    opts.domain.cutoff = dom.cutoff;
    if !dom.pool.is_empty() {
        opts.domain.pool = dom.pool;
    }
    let systems = {
        let s = doc.seeds().map_err(input)?;
        if s.is_empty() {
            vec![crate::systems::DCB.to_string(); frame.worlds]
        } else {
            s
        }
    };
    let mode = a.mode.unwrap_or(if a.target.is_some() { Mode::Local } else { Mode::Befs });
    let ctx = Ctx::new();
    let props: Vec<String> = frame
        .properties()
        .iter()
        .filter_map(|p| serde_json::to_value(p).ok())
        .filter_map(|v| v.as_str().map(str::to_string))
        .collect();
    let head = |out: &mut dyn Write, extra: &str| -> Result<(), Failure> {
        writeln!(
            out,
            "frame: {} agents, {} worlds, properties [{}]",
            frame.agents.len(),
            frame.worlds,
            props.join(", ")
        )?;
        writeln!(out, "cutoff {}, pool {} terms; {extra}", opts.domain.cutoff, opts.domain.pool.len())?;
        writeln!(out, "{}", crate::revision::experiment::RANGE_NOTE)?;
        Ok(())
    };
    match mode {
        Mode::Befs => {
            let r = revision_befs(&ctx, &frame, &a.seeds, a.max_iter.clamp(1, 4), &opts).map_err(input)?;
            if a.json {
                json(out, &r)?;
            } else {
                head(
                    out,
                    &format!("fragment {} sentences, {} instances {:?}", r.fragment, r.instances(), r.per_level),
                )?;
                table(out, &r.rows, &r.falsified)?;
                writeln!(out, "liar period: {:?}; truth-teller bistable: {}", r.liar_period, r.truth_teller_bistable)?;
                writeln!(out, "{} false verdicts in {} ms", r.falsified.len(), r.elapsed_ms)?;
            }
            Ok(if r.passed() { EXIT_OK } else { EXIT_REJECTED })
        }
        Mode::Dcb => {
            let r = dcb_seed(&ctx, &frame, &systems, a.max_iter, &opts).map_err(input)?;
            if a.json {
                json(out, &r)?;
            } else {
                head(
                    out,
                    &format!(
                        "fragment {} sentences, {} instances, left-total: {}",
                        r.fragment, r.instances, r.left_total
                    ),
                )?;
                table(out, &r.rows, &r.falsified)?;
                writeln!(out, "{} false verdicts in {} ms", r.falsified.len(), r.elapsed_ms)?;
            }
            Ok(if r.falsified.is_empty() { EXIT_OK } else { EXIT_REJECTED })
        }
        Mode::Local => {
            let target = match a.target.unwrap_or(TargetArg::A) {
                TargetArg::A => Target::A,
                TargetArg::B => Target::B,
                TargetArg::C => Target::C,
            };
            let r = local_validation(&ctx, &frame, &systems, target, a.max_iter, a.window, &opts).map_err(input)?;
            if a.json {
                json(out, &r)?;
            } else {
                head(
                    out,
                    &format!("target {}, fragment {} sentences, {} instances", r.target, r.fragment, r.instances),
                )?;
                table(out, &r.rows, &r.falsified)?;
                match r.m {
                    Some(m) => {
                        writeln!(out, "stabilization index m = {m}; zero false for n in [{m}, {}]", m + r.window)?
                    }
                    None => writeln!(out, "no stabilization index within {} stages", r.stages)?,
                }
                if !r.frame_matches {
                    writeln!(out, "frame lacks the properties the target needs")?;
                }
                writeln!(out, "DCB instances false at some stage: {}; {} ms", r.dcb_false, r.elapsed_ms)?;
            }
            Ok(if r.passed() { EXIT_OK } else { EXIT_REJECTED })
        }
    }
}
