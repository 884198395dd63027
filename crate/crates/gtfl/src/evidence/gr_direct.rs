//! Field-by-field consistent transitivity for gradual rows.
//!
//! Labels of a record composition fall into the groups of the equational
//! definition: shared by all four components, dropped by the outer
//! supertype, dropped by the first supertype and recovered at `?`, or
//! private to the outer subtype. Each shared field composes recursively.

use std::collections::BTreeSet;

use super::gr::{interior, GrEv};
use crate::types::{GFields, GType, Label, Tail};

pub fn compose(e1: &GrEv, e2: &GrEv) -> Option<GrEv> {
    use GType::*;
    let ((s1, s2), (s3, s4)) = (e1, e2);
    match (s1, s2, s3, s4) {
        (Unknown, Unknown, Unknown, Unknown) => Some((Unknown, Unknown)),
        (Int, Int, Int, Int) | (Int, Int, Unknown, Unknown) | (Unknown, Unknown, Int, Int) => {
            Some((Int, Int))
        }
        (Bool, Bool, Bool, Bool) | (Bool, Bool, Unknown, Unknown) | (Unknown, Unknown, Bool, Bool) => {
            Some((Bool, Bool))
        }
        (Arrow(..), Arrow(..), Unknown, Unknown) => compose(e1, &(unknown_arrow(), unknown_arrow())),
        (Unknown, Unknown, Arrow(..), Arrow(..)) => compose(&(unknown_arrow(), unknown_arrow()), e2),
        (Rec(..), Rec(..), Unknown, Unknown) => compose(e1, &(GType::empty_row(), GType::empty_row())),
        (Unknown, Unknown, Rec(..), Rec(..)) => compose(&(GType::empty_row(), GType::empty_row()), e2),
        (Arrow(a1, b1), Arrow(a2, b2), Arrow(a3, b3), Arrow(a4, b4)) => {
            let (a6, a5) = compose(&((**a4).clone(), (**a3).clone()), &((**a2).clone(), (**a1).clone()))?;
            let (b5, b6) = compose(&((**b1).clone(), (**b2).clone()), &((**b3).clone(), (**b4).clone()))?;
            Some((GType::arrow(a5, b5), GType::arrow(a6, b6)))
        }
        (Rec(f1, t1), Rec(f2, t2), Rec(f3, t3), Rec(f4, t4)) => {
            records((f1, *t1), (f2, *t2), (f3, *t3), (f4, *t4))
        }
        _ => None,
    }
}

fn unknown_arrow() -> GType {
    GType::arrow(GType::Unknown, GType::Unknown)
}

type Side<'a> = (&'a GFields, Tail);

fn records((f1, t1): Side, (f2, t2): Side, (f3, t3): Side, (f4, t4): Side) -> Option<GrEv> {
    let middle: BTreeSet<&Label> = f2.keys().chain(f3.keys()).collect();
    let mut left = GFields::new();
    let mut right = GFields::new();
    for &l in &middle {
        // First evidence at `l`: a row may have forgotten the field.
        let first = match (f1.get(l), f2.get(l)) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            (_, None) if t2 == Tail::Closed => return None,
            (Some(a), None) => interior(a, &GType::Unknown)?,
            (None, None) if t1 == Tail::Closed => return None,
            (None, None) => (GType::Unknown, GType::Unknown),
            (None, Some(_)) => unreachable!("ill-formed evidence"),
        };
        let second = match (f3.get(l), f4.get(l)) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            (Some(a), None) => interior(a, &GType::Unknown)?,
            (None, _) if t3 == Tail::Closed => return None,
            (None, None) => (GType::Unknown, GType::Unknown),
            (None, Some(_)) => unreachable!("ill-formed evidence"),
        };
        let (a5, a6) = compose(&first, &second)?;
        left.insert(l.clone(), a5);
        if f4.contains_key(l) {
            right.insert(l.clone(), a6);
        }
    }
    for (l, a) in f1 {
        left.entry(l.clone()).or_insert_with(|| a.clone());
    }
    let middle_closed = t2 == Tail::Closed || t3 == Tail::Closed;
    let same_width = right.len() == middle.len();
    let tail4 = if (middle_closed && same_width) || (t1 == Tail::Closed && right.len() == left.len()) {
        Tail::Closed
    } else {
        t4
    };
    Some((GType::Rec(left, t1), GType::Rec(right, tail4)))
}
