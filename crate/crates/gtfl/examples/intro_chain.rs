//! The record program that type checks under both evidence flavors but only
//! succeeds under gradual rows.

use gtfl::elab::elaborate_program;
use gtfl::evidence::Backend;
use gtfl::runtime::{run, RunConfig, Semantics};
use gtfl::syntax::parse_program;

const SRC: &str = "let q : {x:Int} = {x = 5, y = true} in (q :: ? :: {x:Int, y:Bool}).y";

fn main() {
    let p = parse_program(SRC).expect("parses");
    for backend in [Backend::Gr, Backend::Brr] {
        let e = elaborate_program(&p, backend).expect("type checks");
        println!("[{backend}] {}", e.main);
        for s in [Semantics::Rl, Semantics::RlPlus] {
            let r = run(&e, &RunConfig::new(s));
            println!("  {s:<7} {} after {} steps", r.outcome, r.steps);
        }
    }
}
