//! Pending ascriptions under the two semantics as the recursion deepens.

use gtfl::bench::{bench_all, SIZES};

fn main() {
    println!("{:<9} {:<4} {:<8} {:>3} {:>12} {:>9} {:>5}", "workload", "ev", "sem", "n", "max_pending", "max_size", "B");
    for r in bench_all(&SIZES, 100_000) {
        println!(
            "{:<9} {:<4} {:<8} {:>3} {:>12} {:>9} {:>5}",
            r.workload.name(),
            r.backend,
            r.semantics,
            r.n,
            r.max_pending_ascriptions,
            r.max_evidence_size,
            r.bound_b
        );
    }
}
