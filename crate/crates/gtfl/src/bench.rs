//! The space benchmarks: parity by mutual recursion, direct and in
//! continuation-passing style.

use serde::Serialize;

use crate::elab::elaborate_program;
use crate::evidence::Backend;
use crate::runtime::{run, RunConfig, Semantics};
use crate::syntax::parse_program;

pub const SIZES: [u64; 4] = [3, 7, 15, 31];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Workload {
    EvenOdd,
    Cps,
}

impl Workload {
    pub fn name(self) -> &'static str {
        match self {
            Workload::EvenOdd => "even-odd",
            Workload::Cps => "cps",
        }
    }

    pub fn source(self, n: u64) -> String {
        match self {
            Workload::EvenOdd => format!(
                "def even (n: Int) : ? = if n == 0 then true else odd (n - 1);\n\
                 def odd (n: Int) : Bool = if n == 0 then false else even (n - 1);\n\
                 odd {n}\n"
            ),
            Workload::Cps => format!(
                "def evenk (n: Int) (k: ? -> ?) : Bool = if n == 0 then k true else oddk (n - 1) k;\n\
                 def oddk (n: Int) (k: Bool -> Bool) : Bool = if n == 0 then k false else evenk (n - 1) k;\n\
                 evenk {n} (\\(b: Bool). b)\n"
            ),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub workload: Workload,
    pub backend: String,
    pub semantics: String,
    pub n: u64,
    pub outcome: String,
    pub steps: u64,
    pub max_pending_ascriptions: usize,
    pub max_evidence_size: usize,
    pub bound_b: u64,
    pub composition_bound_violations: usize,
}

pub fn bench_row(w: Workload, backend: Backend, sem: Semantics, n: u64, budget: u64) -> BenchRow {
    let p = parse_program(&w.source(n)).expect("benchmark parses");
    let e = elaborate_program(&p, backend).expect("benchmark type checks");
    let r = run(&e, &RunConfig::new(sem).budget(budget));
    BenchRow {
        workload: w,
        backend: backend.name().into(),
        semantics: sem.name().into(),
        n,
        outcome: r.outcome.to_string(),
        steps: r.steps,
        max_pending_ascriptions: r.metrics.max_pending_ascriptions,
        max_evidence_size: r.metrics.max_evidence_size,
        bound_b: r.metrics.bound_b,
        composition_bound_violations: r.metrics.composition_bound_violations,
    }
}

/// Every workload, backend, semantics and size.
pub fn bench_all(sizes: &[u64], budget: u64) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for w in [Workload::EvenOdd, Workload::Cps] {
        for b in [Backend::Gr, Backend::Brr] {
            for s in [Semantics::Rl, Semantics::RlPlus] {
                for &n in sizes {
                    rows.push(bench_row(w, b, s, n, budget));
                }
            }
        }
    }
    rows
}
