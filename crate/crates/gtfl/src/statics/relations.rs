//! Subtyping, consistent subtyping, gradual destructors and the lattice
//! operations used by the `if` rule and by evidence composition.

use std::collections::BTreeMap;

use crate::types::{GFields, GType, Label, Tail, Type};

pub fn static_subtype(t1: &Type, t2: &Type) -> bool {
    match (t1, t2) {
        (Type::Int, Type::Int) | (Type::Bool, Type::Bool) => true,
        (Type::Arrow(a1, b1), Type::Arrow(a2, b2)) => static_subtype(a2, a1) && static_subtype(b1, b2),
        (Type::Record(f1), Type::Record(f2)) => f2
            .iter()
            .all(|(l, t)| f1.get(l).is_some_and(|s| static_subtype(s, t))),
        _ => false,
    }
}

/// Least common supertype. A shared field whose types have no join is
/// dropped, which is what the least upper bound of the two records is.
pub fn static_join(t1: &Type, t2: &Type) -> Option<Type> {
    match (t1, t2) {
        (Type::Int, Type::Int) => Some(Type::Int),
        (Type::Bool, Type::Bool) => Some(Type::Bool),
        (Type::Arrow(a1, b1), Type::Arrow(a2, b2)) => Some(Type::arrow(static_meet(a1, a2)?, static_join(b1, b2)?)),
        (Type::Record(f1), Type::Record(f2)) => Some(Type::Record(
            f1.iter()
                .filter_map(|(l, s)| Some((l.clone(), static_join(s, f2.get(l)?)?)))
                .collect(),
        )),
        _ => None,
    }
}

pub fn static_meet(t1: &Type, t2: &Type) -> Option<Type> {
    match (t1, t2) {
        (Type::Int, Type::Int) => Some(Type::Int),
        (Type::Bool, Type::Bool) => Some(Type::Bool),
        (Type::Arrow(a1, b1), Type::Arrow(a2, b2)) => Some(Type::arrow(static_join(a1, a2)?, static_meet(b1, b2)?)),
        (Type::Record(f1), Type::Record(f2)) => {
            let mut out = BTreeMap::new();
            for (l, s) in f1 {
                let t = match f2.get(l) {
                    Some(t2) => static_meet(s, t2)?,
                    None => s.clone(),
                };
                out.insert(l.clone(), t);
            }
            for (l, s) in f2 {
                out.entry(l.clone()).or_insert_with(|| s.clone());
            }
            Some(Type::Record(out))
        }
        _ => None,
    }
}

pub fn consistent_subtype(s1: &GType, s2: &GType) -> bool {
    match (s1, s2) {
        (GType::Unknown, _) | (_, GType::Unknown) => true,
        (GType::Int, GType::Int) | (GType::Bool, GType::Bool) => true,
        (GType::Arrow(a1, b1), GType::Arrow(a2, b2)) => consistent_subtype(a2, a1) && consistent_subtype(b1, b2),
        (GType::Rec(f1, t1), GType::Rec(f2, _)) => f2.iter().all(|(l, s)| match f1.get(l) {
            Some(r) => consistent_subtype(r, s),
            None => *t1 == Tail::Open,
        }),
        _ => false,
    }
}

pub fn cdom(s: &GType) -> Option<GType> {
    match s {
        GType::Arrow(a, _) => Some((**a).clone()),
        GType::Unknown => Some(GType::Unknown),
        _ => None,
    }
}

pub fn ccod(s: &GType) -> Option<GType> {
    match s {
        GType::Arrow(_, b) => Some((**b).clone()),
        GType::Unknown => Some(GType::Unknown),
        _ => None,
    }
}

pub fn cproj(s: &GType, l: &Label) -> Option<GType> {
    match s {
        GType::Rec(fs, tail) => match fs.get(l) {
            Some(t) => Some(t.clone()),
            None if *tail == Tail::Open => Some(GType::Unknown),
            None => None,
        },
        GType::Unknown => Some(GType::Unknown),
        _ => None,
    }
}

fn unknown_arrow() -> GType {
    GType::arrow(GType::Unknown, GType::Unknown)
}

/// `⊔~`. As with [`static_join`], a shared field without a join is dropped.
pub fn csub_join(s1: &GType, s2: &GType) -> Option<GType> {
    use GType::*;
    match (s1, s2) {
        (Unknown, Unknown) => Some(Unknown),
        (Int, Int) | (Int, Unknown) | (Unknown, Int) => Some(Int),
        (Bool, Bool) | (Bool, Unknown) | (Unknown, Bool) => Some(Bool),
        (Arrow(a1, b1), Arrow(a2, b2)) => Some(GType::arrow(csub_meet(a1, a2)?, csub_join(b1, b2)?)),
        (Arrow(..), Unknown) => csub_join(s1, &unknown_arrow()),
        (Unknown, Arrow(..)) => csub_join(&unknown_arrow(), s2),
        (Rec(..), Unknown) => csub_join(s1, &GType::empty_row()),
        (Unknown, Rec(..)) => csub_join(&GType::empty_row(), s2),
        (Rec(f1, t1), Rec(f2, t2)) => {
            let shared: GFields = f1
                .iter()
                .filter_map(|(l, a)| Some((l.clone(), csub_join(a, f2.get(l)?)?)))
                .collect();
            let tail = match (t1, t2) {
                (Tail::Closed, Tail::Closed) => Tail::Closed,
                // One side is a row: the result is open exactly when the
                // other side has a field the row does not list.
                (Tail::Open, Tail::Open) => Tail::Open,
                (Tail::Closed, Tail::Open) => extra_tail(f1, f2),
                (Tail::Open, Tail::Closed) => extra_tail(f2, f1),
            };
            Some(Rec(shared, tail))
        }
        _ => None,
    }
}

fn extra_tail(closed: &GFields, row: &GFields) -> Tail {
    if closed.keys().any(|l| !row.contains_key(l)) {
        Tail::Open
    } else {
        Tail::Closed
    }
}

/// `⊓~`.
pub fn csub_meet(s1: &GType, s2: &GType) -> Option<GType> {
    use GType::*;
    match (s1, s2) {
        (Unknown, Unknown) => Some(Unknown),
        (Int, Int) | (Int, Unknown) | (Unknown, Int) => Some(Int),
        (Bool, Bool) | (Bool, Unknown) | (Unknown, Bool) => Some(Bool),
        (Arrow(a1, b1), Arrow(a2, b2)) => Some(GType::arrow(csub_join(a1, a2)?, csub_meet(b1, b2)?)),
        (Arrow(..), Unknown) => csub_meet(s1, &unknown_arrow()),
        (Unknown, Arrow(..)) => csub_meet(&unknown_arrow(), s2),
        (Rec(..), Unknown) => csub_meet(s1, &GType::empty_row()),
        (Unknown, Rec(..)) => csub_meet(&GType::empty_row(), s2),
        (Rec(f1, t1), Rec(f2, t2)) => {
            let mut out = GFields::new();
            for (l, a) in f1 {
                let m = match f2.get(l) {
                    Some(b) => csub_meet(a, b)?,
                    None if *t2 == Tail::Open => csub_meet(a, &Unknown)?,
                    None => a.clone(),
                };
                out.insert(l.clone(), m);
            }
            for (l, b) in f2 {
                if !f1.contains_key(l) {
                    let m = if *t1 == Tail::Open { csub_meet(b, &Unknown)? } else { b.clone() };
                    out.insert(l.clone(), m);
                }
            }
            let tail = if *t1 == Tail::Open || *t2 == Tail::Open { Tail::Open } else { Tail::Closed };
            Some(Rec(out, tail))
        }
        _ => None,
    }
}

/// Precision meet: the most imprecise type below both.
pub fn gradual_meet(s1: &GType, s2: &GType) -> Option<GType> {
    use GType::*;
    match (s1, s2) {
        (s, Unknown) | (Unknown, s) => Some(s.clone()),
        (Int, Int) => Some(Int),
        (Bool, Bool) => Some(Bool),
        (Arrow(a1, b1), Arrow(a2, b2)) => Some(GType::arrow(gradual_meet(a1, a2)?, gradual_meet(b1, b2)?)),
        (Rec(f1, t1), Rec(f2, t2)) => {
            let mut out = GFields::new();
            for (l, a) in f1 {
                let m = match f2.get(l) {
                    Some(b) => gradual_meet(a, b)?,
                    None if *t2 == Tail::Open => a.clone(),
                    None => return None,
                };
                out.insert(l.clone(), m);
            }
            for (l, b) in f2 {
                if !f1.contains_key(l) {
                    if *t1 != Tail::Open {
                        return None;
                    }
                    out.insert(l.clone(), b.clone());
                }
            }
            Some(Rec(out, Tail::both_open(*t1, *t2)))
        }
        _ => None,
    }
}
