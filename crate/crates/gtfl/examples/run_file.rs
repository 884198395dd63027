//! Type checks, elaborates and runs one program, printing its metrics.
//!
//! `cargo run --example run_file -- corpus/sum.gtfl`

use gtfl::elab::elaborate_program;
use gtfl::evidence::Backend;
use gtfl::runtime::{run, RunConfig, Semantics};
use gtfl::statics::typecheck_program;
use gtfl::syntax::parse_program;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "corpus/sum.gtfl".into());
    let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    let p = parse_program(&src).unwrap_or_else(|e| panic!("{path}:{e}"));
    let ty = typecheck_program(&p).unwrap_or_else(|e| panic!("{path}: {e}"));
    println!("{path} : {ty}");
    let e = elaborate_program(&p, Backend::Brr).expect("well typed");
    let mut cfg = RunConfig::new(Semantics::RlPlus);
    cfg.meter_space = true;
    let r = run(&e, &cfg);
    println!("{}", r.outcome);
    println!("{}", serde_json::to_string_pretty(&r.metrics_json()).unwrap());
}
