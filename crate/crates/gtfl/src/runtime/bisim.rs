//! Comparing the outcomes of the two semantics.

use super::{run, Outcome, RunConfig, RunResult, Semantics};
use crate::elab::{Elaborated, EvTerm, RTerm};
use crate::evidence::TotalEvidence;

#[derive(Clone, Debug)]
pub struct Verdict {
    pub related: bool,
    pub rl: RunResult,
    pub rl_plus: RunResult,
    /// Why the outcomes are unrelated.
    pub reason: Option<String>,
}

/// Run both semantics and relate their outcomes.
pub fn bisim_compare(p: &Elaborated, budget: u64) -> Verdict {
    let rl = run(p, &RunConfig::new(Semantics::Rl).budget(budget));
    let rl_plus = run(p, &RunConfig::new(Semantics::RlPlus).budget(budget));
    let reason = match (&rl.outcome, &rl_plus.outcome) {
        (Outcome::Value(a), Outcome::Value(b)) => {
            if related(a, b) {
                None
            } else {
                Some(format!("values differ: {a} vs {b}"))
            }
        }
        (Outcome::Error(_), Outcome::Error(_)) | (Outcome::Diverged, Outcome::Diverged) => None,
        (a, b) => Some(format!("outcomes differ: {} vs {}", a.category(), b.category())),
    };
    Verdict { related: reason.is_none(), rl, rl_plus, reason }
}

/// Peel the ascriptions around a term, outermost first.
fn peel(mut t: &RTerm) -> (Vec<&TotalEvidence>, &RTerm) {
    let mut evs = Vec::new();
    while let RTerm::Asc(et) = t {
        evs.push(&et.ev);
        t = &et.term;
    }
    (evs, t)
}

/// An RL term against an RL⁺ term: cores related, and each evidence stack
/// composed in its own semantics' order to the same result.
pub fn related(a: &RTerm, b: &RTerm) -> bool {
    let (ea, ca) = peel(a);
    let (eb, cb) = peel(b);
    if ea.is_empty() != eb.is_empty() {
        return false;
    }
    if !ea.is_empty() {
        // RL merges from the inside out, RL⁺ from the outside in.
        let rl = ea.iter().rev().skip(1).fold(ea[ea.len() - 1].clone(), |acc, e| acc.compose(e));
        let rlp = eb.iter().skip(1).fold(eb[0].clone(), |acc, e| (*e).compose(&acc));
        if rl != rlp {
            return false;
        }
    }
    core(ca, cb)
}

fn slot(a: &EvTerm, b: &EvTerm) -> bool {
    related(&RTerm::Asc(a.clone()), &RTerm::Asc(b.clone()))
}

fn core(a: &RTerm, b: &RTerm) -> bool {
    use RTerm::*;
    match (a, b) {
        (Num(x), Num(y)) => x == y,
        (Bool(x), Bool(y)) => x == y,
        (Var(x), Var(y)) | (Global(x), Global(y)) => x == y,
        (Lam(x, p), Lam(y, q)) => x == y && related(p, q),
        (App(a1, a2), App(b1, b2)) | (Bin(_, a1, a2), Bin(_, b1, b2)) => {
            std::mem::discriminant(a) == std::mem::discriminant(b) && slot(a1, b1) && slot(a2, b2)
        }
        (If(a1, a2, a3), If(b1, b2, b3)) => slot(a1, b1) && slot(a2, b2) && slot(a3, b3),
        (Rec(fa), Rec(fb)) => fa.len() == fb.len() && fa.iter().zip(fb).all(|((la, ta), (lb, tb))| la == lb && related(ta, tb)),
        (Proj(sa, la), Proj(sb, lb)) => la == lb && slot(sa, sb),
        (Let(x, sa, ba), Let(y, sb, bb)) => x == y && slot(sa, sb) && related(ba, bb),
        _ => false,
    }
}
