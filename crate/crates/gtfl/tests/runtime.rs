use std::path::PathBuf;

use gtfl::bench::{bench_row, Workload, SIZES};
use gtfl::elab::{elaborate_program, Elaborated, RTerm};
use gtfl::evidence::{Backend, Evidence, TotalEvidence};
use gtfl::runtime::{bisim_compare, compute_bound_b, run, space_of, Cost, ErrorKind, Outcome, RunConfig, Semantics};
use gtfl::syntax::{parse_program, Program};
use gtfl::types::GType;

const SEMANTICS: [Semantics; 2] = [Semantics::Rl, Semantics::RlPlus];

fn corpus() -> Vec<(PathBuf, Program)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let prog = parse_program(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (p, prog)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn program(name: &str) -> Program {
    let path = format!("{}/../../corpus/{name}.gtfl", env!("CARGO_MANIFEST_DIR"));
    parse_program(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn elab(src: &str, b: Backend) -> Elaborated {
    elaborate_program(&parse_program(src).unwrap(), b).unwrap()
}

fn outcome(e: &Elaborated, s: Semantics) -> Outcome {
    run(e, &RunConfig::new(s)).outcome
}

#[test]
fn intro_program_succeeds_under_gradual_rows() {
    let e = elaborate_program(&program("intro_records"), Backend::Gr).unwrap();
    let Outcome::Value(RTerm::Asc(v)) = outcome(&e, Semantics::Rl) else { panic!() };
    assert_eq!(v.ev, TotalEvidence::Ev(Evidence::Gr(GType::Bool, GType::Bool)));
    assert_eq!(*v.term, RTerm::Bool(true));
}

#[test]
fn intro_program_fails_under_bounded_rows() {
    let e = elaborate_program(&program("intro_records"), Backend::Brr).unwrap();
    for s in SEMANTICS {
        assert!(matches!(outcome(&e, s), Outcome::Error(_)), "{s}");
    }
}

#[test]
fn intro_program_is_expected_to_split_the_semantics_under_gradual_rows() {
    let e = elaborate_program(&program("intro_records"), Backend::Gr).unwrap();
    let v = bisim_compare(&e, 10_000);
    assert!(!v.related);
    assert_eq!(v.rl.outcome.category(), "value");
    assert_eq!(v.rl_plus.outcome.category(), "runtime_error");
}

#[test]
fn arithmetic() {
    for b in [Backend::Gr, Backend::Brr] {
        for s in SEMANTICS {
            let e = elab("5 + 3", b);
            let Outcome::Value(v) = outcome(&e, s) else { panic!() };
            assert_eq!(v, RTerm::Num(8));
        }
    }
}

#[test]
fn overflow_is_a_runtime_error() {
    let e = elab("9223372036854775807 + 1", Backend::Brr);
    for s in SEMANTICS {
        let Outcome::Error(err) = outcome(&e, s) else { panic!() };
        assert!(matches!(err.kind, ErrorKind::Overflow(_)));
    }
}

#[test]
fn budget_exhaustion_is_divergence() {
    let e = elaborate_program(&program("loop"), Backend::Brr).unwrap();
    for s in SEMANTICS {
        let r = run(&e, &RunConfig::new(s).budget(500));
        assert_eq!((r.outcome, r.steps), (Outcome::Diverged, 500));
    }
}

#[test]
fn a_latent_failure_around_a_loop_still_diverges() {
    for b in [Backend::Gr, Backend::Brr] {
        let e = elaborate_program(&program("loop_latent"), b).unwrap();
        let mut cfg = RunConfig::new(Semantics::RlPlus).budget(2_000);
        cfg.trace = true;
        let r = run(&e, &cfg);
        assert_eq!(r.outcome, Outcome::Diverged);
        assert!(r.trace.iter().any(|ev| ev.term.starts_with('⊥')), "the failure is carried, not raised");
        assert_eq!(run(&e, &RunConfig::new(Semantics::Rl).budget(2_000)).outcome, Outcome::Diverged);
    }
}

#[test]
fn unused_failing_argument_fails_under_both_semantics() {
    let e = elab(r"(\(x: Bool). 0) ((1 :: ?) :: Bool)", Backend::Brr);
    for s in SEMANTICS {
        assert!(matches!(outcome(&e, s), Outcome::Error(_)), "{s}");
    }
}

#[test]
fn nested_conditionals_follow_the_composed_checks() {
    // Every check along the taken path admits records that drop `l`, so the
    // composite stays defined and the run returns its argument.
    let e = elaborate_program(&program("nested_if"), Backend::Brr).unwrap();
    for s in SEMANTICS {
        let Outcome::Value(RTerm::Asc(v)) = outcome(&e, s) else { panic!("{s}") };
        assert!(matches!(*v.term, RTerm::Rec(_)));
    }
}

#[test]
fn even_odd_space() {
    for b in [Backend::Gr, Backend::Brr] {
        let rl: Vec<_> = SIZES.iter().map(|&n| bench_row(Workload::EvenOdd, b, Semantics::Rl, n, 100_000)).collect();
        let plus: Vec<_> = SIZES.iter().map(|&n| bench_row(Workload::EvenOdd, b, Semantics::RlPlus, n, 100_000)).collect();
        for (a, p) in rl.iter().zip(&plus) {
            assert_eq!(a.outcome, p.outcome);
            assert!(p.max_pending_ascriptions <= 1);
        }
        assert!(rl.windows(2).all(|w| w[0].max_pending_ascriptions < w[1].max_pending_ascriptions));
        assert!(rl.iter().all(|r| r.max_pending_ascriptions >= r.n as usize));
    }
}

#[test]
fn cps_space() {
    for b in [Backend::Gr, Backend::Brr] {
        let rl: Vec<_> = SIZES.iter().map(|&n| bench_row(Workload::Cps, b, Semantics::Rl, n, 100_000)).collect();
        let plus: Vec<_> = SIZES.iter().map(|&n| bench_row(Workload::Cps, b, Semantics::RlPlus, n, 100_000)).collect();
        assert!(rl.windows(2).all(|w| w[0].max_pending_ascriptions < w[1].max_pending_ascriptions));
        assert!(plus.iter().all(|r| r.max_pending_ascriptions <= 1));
    }
}

#[test]
fn space_of_terms() {
    assert_eq!(space_of(Cost::Size, &RTerm::Num(5)), 1);
    let e = elab("1 + 2", Backend::Brr);
    // One node for the sum and one per operand.
    assert_eq!(space_of(Cost::Zero, &e.main), 3);
    assert_eq!(space_of(Cost::Size, &e.main), 3 + 2 + 2);
}

#[test]
fn evidence_bound() {
    let ints = elab("1 + 2", Backend::Brr);
    assert_eq!(compute_bound_b(&ints), 18);
    let lit = elab("5", Backend::Brr);
    let r = run(&lit, &RunConfig::new(Semantics::RlPlus));
    assert_eq!(r.metrics.max_evidence_size, 0);
    let intro = elaborate_program(&program("intro_records"), Backend::Brr).unwrap();
    for s in SEMANTICS {
        let r = run(&intro, &RunConfig::new(s));
        assert!(r.metrics.max_evidence_size as u64 <= r.metrics.bound_b);
        assert_eq!(r.metrics.bound_b, compute_bound_b(&intro));
    }
}

#[test]
fn corpus_runs_within_bounds_under_bounded_rows() {
    for (path, p) in corpus() {
        let e = elaborate_program(&p, Backend::Brr).unwrap();
        let mut cfg = RunConfig::new(Semantics::RlPlus).budget(20_000);
        cfg.meter_space = true;
        let r = run(&e, &cfg);
        let m = &r.metrics;
        assert!(!r.outcome.is_stuck(), "{}", path.display());
        assert!(r.within_bound(), "{}: {m:?}", path.display());
        assert_eq!(m.composition_bound_violations, 0, "{}", path.display());
        assert_eq!(m.overhead_violations, 0, "{}", path.display());
        assert!(m.max_pending_ascriptions <= 1, "{}", path.display());
    }
}

#[test]
fn corpus_semantics_are_related_under_bounded_rows() {
    let programs = corpus();
    assert!(programs.len() >= 20);
    for (path, p) in programs {
        let e = elaborate_program(&p, Backend::Brr).unwrap();
        let v = bisim_compare(&e, 20_000);
        assert!(v.related, "{}: {:?}", path.display(), v.reason);
    }
}

#[test]
fn corpus_semantics_agree_in_outcome_under_gradual_rows_except_the_intro() {
    for (path, p) in corpus() {
        let e = elaborate_program(&p, Backend::Gr).unwrap();
        let v = bisim_compare(&e, 20_000);
        let intro = path.file_stem().unwrap() == "intro_records";
        assert_eq!(v.related, !intro, "{}: {:?}", path.display(), v.reason);
    }
}

#[test]
fn traces_count_steps() {
    let e = elaborate_program(&program("sum"), Backend::Brr).unwrap();
    for s in SEMANTICS {
        let mut cfg = RunConfig::new(s);
        cfg.trace = true;
        let r = run(&e, &cfg);
        assert_eq!(r.trace.len() as u64, r.steps);
        assert!(r.trace.iter().enumerate().all(|(i, ev)| ev.step == i as u64 + 1));
        assert!(r.trace.iter().any(|ev| ev.rule == "app"));
        let untraced = run(&e, &RunConfig::new(s));
        assert_eq!((untraced.outcome, untraced.steps), (r.outcome, r.steps));
    }
}

#[test]
fn metrics_json_shape() {
    let e = elab("5 + 3", Backend::Brr);
    let j = run(&e, &RunConfig::new(Semantics::RlPlus)).metrics_json();
    assert_eq!(j["schema"], "gtfl-metrics/1");
    assert_eq!(j["outcome"], "value");
    for k in ["steps", "max_evidence_size", "max_pending_ascriptions", "bound_B", "within_bound"] {
        assert!(!j[k].is_null(), "{k}");
    }
}
