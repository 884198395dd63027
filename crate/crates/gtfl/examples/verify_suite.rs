//! Runs the quick oracle suites for both evidence flavors.
//!
//! `cargo run --release --example verify_suite -- fc` picks one suite.

use gtfl::evidence::Backend;
use gtfl::oracle::suites::{run_suite, Suite, SuiteConfig};

fn main() {
    let suites = match std::env::args().nth(1) {
        Some(s) => vec![s.parse::<Suite>().unwrap_or_else(|e| panic!("{e}"))],
        None => vec![Suite::Galois, Suite::Csub, Suite::Cod],
    };
    for s in suites {
        for backend in [Backend::Gr, Backend::Brr] {
            let r = run_suite(s, &SuiteConfig { backend, ..SuiteConfig::default() }).expect("feasible");
            println!("{} [{backend}] depth {}: {} ms", s.name(), r.depth, r.elapsed_ms);
            for c in &r.checks {
                println!("  {:<26} {:>12} cases {:>8} failures", c.name, c.cases, c.failures);
            }
        }
    }
}
