//! Space accounting for runtime terms.

use std::collections::BTreeSet;

use crate::elab::{Elaborated, EvTerm, RTerm};
use crate::evidence::{Evidence, TotalEvidence};

/// How much an evidence object costs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cost {
    Size,
    Zero,
}

fn cost(c: Cost, e: &TotalEvidence) -> usize {
    match c {
        Cost::Size => e.size(),
        Cost::Zero => 0,
    }
}

pub fn space_of(c: Cost, t: &RTerm) -> usize {
    let slot = |et: &EvTerm| cost(c, &et.ev) + space_of(c, &et.term);
    match t {
        RTerm::Num(_) | RTerm::Bool(_) | RTerm::Var(_) | RTerm::Global(_) => 1,
        RTerm::Lam(_, b) => 1 + space_of(c, b),
        RTerm::App(a, b) | RTerm::Bin(_, a, b) => 1 + slot(a) + slot(b),
        RTerm::If(a, b, d) => 1 + slot(a) + slot(b) + slot(d),
        RTerm::Rec(fs) => 1 + fs.iter().map(|(_, t)| space_of(c, t)).sum::<usize>(),
        RTerm::Proj(a, _) | RTerm::Asc(a) => 1 + slot(a),
        RTerm::Let(_, a, b) => 1 + slot(a) + space_of(c, b),
    }
}

/// `2·(3 + d)^(1 + h)`, saturating.
pub fn bound_formula(dom_l: usize, height: usize) -> u64 {
    let base = 3 + dom_l as u64;
    let mut acc: u64 = 2;
    for _ in 0..=height {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Size bound for composing `a` with `b`.
pub fn composition_bound(a: &Evidence, b: &Evidence) -> usize {
    let d = a.dom_l().max(b.dom_l());
    let h = a.height().max(b.height());
    bound_formula(d, h).min(usize::MAX as u64) as usize
}

/// Evidence bound for a whole program, from its tallest evidence and the
/// labels mentioned anywhere in its evidence.
pub fn compute_bound_b(p: &Elaborated) -> u64 {
    let mut labels = BTreeSet::new();
    let mut height = 0;
    p.for_each_evidence(&mut |e| {
        if let TotalEvidence::Ev(e) = e {
            height = height.max(e.height());
            match e {
                Evidence::Gr(a, b) => {
                    a.collect_labels(&mut labels);
                    b.collect_labels(&mut labels);
                }
                Evidence::Brr(a, b) => {
                    a.collect_labels(&mut labels);
                    b.collect_labels(&mut labels);
                }
            }
        }
    });
    bound_formula(labels.len(), height)
}

/// Largest evidence in a program before it runs.
pub fn max_static_evidence(p: &Elaborated) -> usize {
    let mut m = 0;
    p.for_each_evidence(&mut |e| {
        if let TotalEvidence::Ev(e) = e {
            m = m.max(e.size());
        }
    });
    m
}
