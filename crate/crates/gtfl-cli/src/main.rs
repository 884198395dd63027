//! `gtfl`: check, run, verify and benchmark gradually typed programs.
//!
//! Exit codes: 0 success, 1 parse error, 2 type error, 3 I/O error,
//! 4 runtime error, 5 step budget exhausted, 6 verification failure.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gtfl::bench::{bench_all, SIZES};
use gtfl::elab::{elaborate_program, Elaborated};
use gtfl::evidence::Backend;
use gtfl::oracle::suites::{run_suite, Suite, SuiteConfig};
use gtfl::runtime::{run, Outcome, RunConfig, Semantics};
use gtfl::statics::typecheck_program;
use gtfl::syntax::{parse_program, Program};
use gtfl::types::Label;

const EXIT_PARSE: u8 = 1;
const EXIT_TYPE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_RUNTIME: u8 = 4;
const EXIT_BUDGET: u8 = 5;
const EXIT_VERIFY: u8 = 6;

#[derive(Parser)]
#[command(name = "gtfl", version, about = "Gradually typed records with evidence-based runtime checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Rl,
    RlPlus,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Gr,
    Brr,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    None,
    /// The elaborated runtime term.
    Rl,
    MetricsJson,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Galois,
    Fc,
    Assoc,
    Csub,
    Cod,
    All,
}

#[derive(clap::Args)]
struct Input {
    /// Source file.
    file: Option<PathBuf>,
    /// Read the program from standard input.
    #[arg(long, conflicts_with = "file")]
    stdin: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Type check a program.
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Elaborate and evaluate a program.
    Run {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "rl-plus")]
        semantics: SemanticsArg,
        #[arg(long, value_enum, default_value = "brr")]
        backend: BackendArg,
        #[arg(long, env = "GTFL_BUDGET", default_value_t = gtfl::runtime::DEFAULT_BUDGET)]
        budget: u64,
        /// Print one JSON object per reduction step to stderr.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "none")]
        emit: Emit,
    },
    /// Run an exhaustive property suite over a finite type universe.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value = "brr")]
        backend: BackendArg,
        /// Universe depth; defaults per suite.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "x,y")]
        labels: Vec<String>,
        #[arg(long, default_value_t = 1)]
        margin: usize,
    },
    /// Space benchmarks under both semantics and both backends.
    Bench {
        #[arg(long, env = "GTFL_BUDGET", default_value_t = gtfl::runtime::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Check { input } => check(&input),
        Cmd::Run { input, semantics, backend, budget, trace, emit } => run_cmd(&input, semantics, backend, budget, trace, emit),
        Cmd::Verify { suite, backend, depth, labels, margin } => verify(suite, backend, depth, labels, margin),
        Cmd::Bench { budget, json } => bench(budget, json),
    };
    ExitCode::from(code)
}

fn backend_of(b: BackendArg) -> Backend {
    match b {
        BackendArg::Gr => Backend::Gr,
        BackendArg::Brr => Backend::Brr,
    }
}

fn read(input: &Input) -> Result<(String, String), u8> {
    let fail = |what: &str, e: io::Error| {
        eprintln!("error: cannot read {what}: {e}");
        EXIT_IO
    };
    match (&input.file, input.stdin) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map(|s| (path.display().to_string(), s))
            .map_err(|e| fail(&path.display().to_string(), e)),
        (None, true) => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| fail("standard input", e))?;
            Ok(("<stdin>".into(), s))
        }
        (None, false) => {
            eprintln!("error: give a file or --stdin");
            Err(EXIT_IO)
        }
    }
}

fn parse(input: &Input) -> Result<Program, u8> {
    let (name, src) = read(input)?;
    parse_program(&src).map_err(|e| {
        eprintln!("{name}:{e}");
        EXIT_PARSE
    })
}

fn check(input: &Input) -> u8 {
    let p = match parse(input) {
        Ok(p) => p,
        Err(c) => return c,
    };
    match typecheck_program(&p) {
        Ok(t) => {
            println!("{t}");
            0
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_TYPE
        }
    }
}

fn elaborate(input: &Input, backend: Backend) -> Result<Elaborated, u8> {
    let p = parse(input)?;
    elaborate_program(&p, backend).map_err(|e| {
        eprintln!("{e}");
        EXIT_TYPE
    })
}

fn run_cmd(input: &Input, semantics: SemanticsArg, backend: BackendArg, budget: u64, trace: bool, emit: Emit) -> u8 {
    let e = match elaborate(input, backend_of(backend)) {
        Ok(e) => e,
        Err(c) => return c,
    };
    if let Emit::Rl = emit {
        for (name, body) in &e.globals {
            println!("{name} = {body}");
        }
        println!("{}", e.main);
        return 0;
    }
    let semantics = match semantics {
        SemanticsArg::Rl => Semantics::Rl,
        SemanticsArg::RlPlus => Semantics::RlPlus,
    };
    let mut cfg = RunConfig::new(semantics).budget(budget);
    cfg.trace = trace;
    let r = run(&e, &cfg);
    if trace {
        let mut err = io::stderr().lock();
        for ev in &r.trace {
            let _ = writeln!(err, "{}", serde_json::to_string(ev).expect("trace serializes"));
        }
    }
    match emit {
        Emit::MetricsJson => println!("{}", r.metrics_json()),
        _ => {
            if let Outcome::Value(v) = &r.outcome {
                println!("{}", strip(v));
            }
        }
    }
    match &r.outcome {
        Outcome::Value(_) => 0,
        Outcome::Error(err) => {
            eprintln!("{err}");
            EXIT_RUNTIME
        }
        Outcome::Diverged => {
            eprintln!("error: step budget of {budget} exhausted");
            EXIT_BUDGET
        }
    }
}

/// The value without its outermost evidence.
fn strip(v: &gtfl::elab::RTerm) -> String {
    match v {
        gtfl::elab::RTerm::Asc(et) => et.term.to_string(),
        v => v.to_string(),
    }
}

fn verify(suite: SuiteArg, backend: BackendArg, depth: Option<usize>, labels: Vec<String>, margin: usize) -> u8 {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Galois => vec![Suite::Galois],
        SuiteArg::Fc => vec![Suite::Fc],
        SuiteArg::Assoc => vec![Suite::Assoc],
        SuiteArg::Csub => vec![Suite::Csub],
        SuiteArg::Cod => vec![Suite::Cod],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let cfg = SuiteConfig {
        backend: backend_of(backend),
        depth,
        labels: labels.iter().filter(|l| !l.is_empty()).map(|l| Label::new(l)).collect(),
        margin,
    };
    let mut code = 0;
    let mut reports = Vec::new();
    for s in suites {
        match run_suite(s, &cfg) {
            Ok(r) => {
                if !r.passed() {
                    code = EXIT_VERIFY;
                    for c in r.checks.iter().filter(|c| c.failures > 0) {
                        let w = c.witnesses.first().map_or("", String::as_str);
                        eprintln!("{s}: {}: {} of {} cases failed; first witness: {w}", c.name, c.failures, c.cases);
                    }
                }
                reports.push(r);
            }
            Err(e) => {
                eprintln!("{s}: {e}");
                return EXIT_VERIFY;
            }
        }
    }
    let out = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    };
    emit(&out.expect("report serializes"));
    code
}

fn bench(budget: u64, json: bool) -> u8 {
    let rows = bench_all(&SIZES, budget);
    if json {
        emit(&serde_json::to_string_pretty(&rows).expect("rows serialize"));
        return 0;
    }
    println!("{:<9} {:<4} {:<8} {:>3} {:>8} {:>12} {:>9} {:>8}  outcome", "workload", "ev", "sem", "n", "steps", "max_pending", "max_size", "B");
    for r in &rows {
        println!(
            "{:<9} {:<4} {:<8} {:>3} {:>8} {:>12} {:>9} {:>8}  {}",
            r.workload.name(),
            r.backend,
            r.semantics,
            r.n,
            r.steps,
            r.max_pending_ascriptions,
            r.max_evidence_size,
            r.bound_b,
            strip_outcome(&r.outcome)
        );
    }
    0
}

fn strip_outcome(s: &str) -> &str {
    s.rsplit("> ").next().unwrap_or(s)
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(s: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{s}");
}
