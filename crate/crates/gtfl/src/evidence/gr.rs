//! Gradual-rows evidence: pairs of source gradual types.

use crate::statics::{ccod, cdom, cproj, gradual_meet};
use crate::types::{GFields, GType, Label, Tail};

pub type GrEv = (GType, GType);

/// Largest evidence for `s1 ≲ s2`.
pub fn interior(s1: &GType, s2: &GType) -> Option<GrEv> {
    use GType::*;
    match (s1, s2) {
        (Int, Int) | (Bool, Bool) | (Unknown, Unknown) => Some((s1.clone(), s1.clone())),
        (Int | Bool, Unknown) => Some((s1.clone(), s1.clone())),
        (Rec(fs, _), Unknown) if fs.is_empty() => Some((s1.clone(), s1.clone())),
        (Unknown, Int | Bool) => Some((s2.clone(), s2.clone())),
        (Arrow(..), Unknown) => interior(s1, &unknown_arrow()),
        (Unknown, Arrow(..)) => interior(&unknown_arrow(), s2),
        (Arrow(a1, b1), Arrow(a2, b2)) => {
            let (a2p, a1p) = interior(a2, a1)?;
            let (b1p, b2p) = interior(b1, b2)?;
            Some((GType::arrow(a1p, b1p), GType::arrow(a2p, b2p)))
        }
        (Unknown, Rec(..)) => interior(&GType::empty_row(), s2),
        (Rec(..), Unknown) => Some((s1.clone(), GType::empty_row())),
        (Rec(f1, t1), Rec(f2, t2)) => {
            if f2.keys().any(|l| !f1.contains_key(l)) {
                if *t1 == Tail::Closed {
                    return None;
                }
                // The row on the left may supply the missing fields at `?`.
                let mut wide = f1.clone();
                for l in f2.keys() {
                    wide.entry(l.clone()).or_insert(Unknown);
                }
                return interior(&Rec(wide, *t1), s2);
            }
            let mut left = GFields::new();
            let mut right = GFields::new();
            for (l, b) in f2 {
                let (ap, bp) = interior(&f1[l], b)?;
                left.insert(l.clone(), ap);
                right.insert(l.clone(), bp);
            }
            let extra = f1.len() > f2.len();
            if !extra && *t1 == Tail::Closed {
                return Some((Rec(left, Tail::Closed), Rec(right, Tail::Closed)));
            }
            for (l, a) in f1 {
                left.entry(l.clone()).or_insert_with(|| a.clone());
            }
            Some((Rec(left, *t1), Rec(right, *t2)))
        }
        _ => None,
    }
}

fn unknown_arrow() -> GType {
    GType::arrow(GType::Unknown, GType::Unknown)
}

pub fn wf(s1: &GType, s2: &GType) -> bool {
    use GType::*;
    match (s1, s2) {
        (Int, Int) | (Bool, Bool) | (Unknown, Unknown) => true,
        (Arrow(a1, b1), Arrow(a2, b2)) => wf(a2, a1) && wf(b1, b2),
        (Rec(f1, t1), Rec(f2, t2)) => {
            let shared = f2.iter().all(|(l, b)| f1.get(l).is_some_and(|a| wf(a, b)));
            let extra = f1.len() > f2.len();
            shared && (extra || !(*t1 == Tail::Closed && *t2 == Tail::Open))
        }
        _ => false,
    }
}

/// Consistent transitivity through interior and gradual meet.
pub fn compose(e1: &GrEv, e2: &GrEv) -> Option<GrEv> {
    let (s1, s21) = e1;
    let (s22, s3) = e2;
    let mid = gradual_meet(s21, s22)?;
    let (left, _) = interior(s1, &mid)?;
    let (_, right) = interior(&mid, s3)?;
    interior(&left, &right)
}

pub fn idom((s1, s2): &GrEv) -> Option<GrEv> {
    Some((cdom(s2)?, cdom(s1)?))
}

pub fn icod((s1, s2): &GrEv) -> Option<GrEv> {
    Some((ccod(s1)?, ccod(s2)?))
}

pub fn iproj((s1, s2): &GrEv, l: &Label) -> Option<GrEv> {
    Some((cproj(s1, l)?, cproj(s2, l)?))
}
