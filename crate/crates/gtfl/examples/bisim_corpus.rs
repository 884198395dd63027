//! Compares the two semantics on every program in a directory.
//!
//! `cargo run --example bisim_corpus -- corpus brr`

use std::path::PathBuf;

use gtfl::elab::elaborate_program;
use gtfl::evidence::Backend;
use gtfl::runtime::bisim_compare;
use gtfl::syntax::parse_program;

fn main() {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "corpus".into()));
    let backend = match args.next().as_deref() {
        Some("gr") => Backend::Gr,
        _ => Backend::Brr,
    };
    let mut paths: Vec<_> = std::fs::read_dir(&dir).expect("readable directory").map(|e| e.unwrap().path()).collect();
    paths.sort();
    let mut unrelated = 0;
    for path in paths {
        let src = std::fs::read_to_string(&path).expect("readable file");
        let e = match parse_program(&src).map_err(|e| e.to_string()).and_then(|p| elaborate_program(&p, backend).map_err(|e| e.to_string())) {
            Ok(e) => e,
            Err(err) => {
                println!("{:<28} skipped: {err}", path.display());
                continue;
            }
        };
        let v = bisim_compare(&e, 20_000);
        unrelated += usize::from(!v.related);
        let mark = if v.related { "related" } else { "UNRELATED" };
        println!("{:<28} {mark:<9} rl {:<13} rl+ {}", path.display(), v.rl.outcome.category(), v.rl_plus.outcome.category());
    }
    println!("{unrelated} unrelated under {backend}");
}
