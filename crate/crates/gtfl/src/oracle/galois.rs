//! Concretization and abstraction for both type flavors.

use std::collections::{BTreeMap, BTreeSet};

use super::{OracleError, Universe};
use crate::types::{BFields, BType, GFields, GType, Label, Mapping, Tail, Type};

pub fn gr_contains(s: &GType, t: &Type) -> bool {
    GType::from_static(t).precision_le(s)
}

/// Membership in the concretization of a bounded type.
pub fn brr_contains(s: &BType, t: &Type) -> bool {
    match (s, t) {
        (BType::Unknown, _) => true,
        (BType::Int, Type::Int) | (BType::Bool, Type::Bool) => true,
        (BType::Arrow(a, b), Type::Arrow(c, d)) => brr_contains(a, c) && brr_contains(b, d),
        (BType::Rec(fs, _), Type::Record(ts)) => {
            let labels: BTreeSet<&Label> = fs.keys().chain(ts.keys()).collect();
            labels.into_iter().all(|l| match (s.field(l).expect("record"), ts.get(l)) {
                (Mapping::Req(p) | Mapping::Opt(p), Some(t)) => brr_contains(&p, t),
                (Mapping::Absent | Mapping::Opt(_), None) => true,
                _ => false,
            })
        }
        _ => false,
    }
}

pub fn gamma_gr<'u>(s: &GType, u: &'u Universe) -> Vec<&'u Type> {
    u.members.iter().filter(|t| gr_contains(s, t)).collect()
}

pub fn gamma_brr<'u>(s: &BType, u: &'u Universe) -> Vec<&'u Type> {
    u.members.iter().filter(|t| brr_contains(s, t)).collect()
}

enum Shape<'a> {
    Int,
    Bool,
    Arrow(Vec<&'a Type>, Vec<&'a Type>),
    Rec(Vec<&'a BTreeMap<Label, Type>>),
    Mixed,
}

fn shape<'a>(c: &[&'a Type]) -> Shape<'a> {
    if c.iter().all(|t| **t == Type::Int) {
        return Shape::Int;
    }
    if c.iter().all(|t| **t == Type::Bool) {
        return Shape::Bool;
    }
    let arrows: Vec<_> = c.iter().filter_map(|t| match t {
        Type::Arrow(a, b) => Some((&**a, &**b)),
        _ => None,
    }).collect();
    if arrows.len() == c.len() {
        return Shape::Arrow(arrows.iter().map(|p| p.0).collect(), arrows.iter().map(|p| p.1).collect());
    }
    let recs: Vec<_> = c.iter().filter_map(|t| match t {
        Type::Record(fs) => Some(fs),
        _ => None,
    }).collect();
    if recs.len() == c.len() {
        return Shape::Rec(recs);
    }
    Shape::Mixed
}

fn nonempty<T>(c: &[T]) -> Result<(), OracleError> {
    if c.is_empty() {
        Err(OracleError::EmptyAbstraction)
    } else {
        Ok(())
    }
}

/// Most precise gradual-rows type covering `c`. Arrow sets are summarized
/// componentwise.
pub fn alpha_gr(c: &[&Type]) -> Result<GType, OracleError> {
    nonempty(c)?;
    Ok(match shape(c) {
        Shape::Int => GType::Int,
        Shape::Bool => GType::Bool,
        Shape::Arrow(doms, cods) => GType::arrow(alpha_gr(&doms)?, alpha_gr(&cods)?),
        Shape::Rec(recs) => {
            let first: BTreeSet<&Label> = recs[0].keys().collect();
            let same = recs.iter().all(|r| r.keys().collect::<BTreeSet<_>>() == first);
            let mut fields = GFields::new();
            for l in first {
                if recs.iter().all(|r| r.contains_key(l)) {
                    let ts: Vec<&Type> = recs.iter().map(|r| &r[l]).collect();
                    fields.insert(l.clone(), alpha_gr(&ts)?);
                }
            }
            GType::Rec(fields, if same { Tail::Closed } else { Tail::Open })
        }
        Shape::Mixed => GType::Unknown,
    })
}

/// Most precise bounded type covering `c` within universe `u`. A label
/// whose field ranges over everything in `u`, present or not, is left to
/// the row tail.
pub fn alpha_brr(c: &[&Type], u: &Universe) -> Result<BType, OracleError> {
    nonempty(c)?;
    Ok(match shape(c) {
        Shape::Int => BType::Int,
        Shape::Bool => BType::Bool,
        Shape::Arrow(doms, cods) => BType::arrow(alpha_brr(&doms, u)?, alpha_brr(&cods, u)?),
        Shape::Rec(recs) => {
            let labels: BTreeSet<&Label> = recs.iter().flat_map(|r| r.keys()).collect();
            let mut fields = BFields::new();
            for l in labels {
                let ts: Vec<&Type> = recs.iter().filter_map(|r| r.get(l)).collect();
                let payload = alpha_brr(&ts, u)?;
                let m = if ts.len() == recs.len() { Mapping::Req(payload) } else { Mapping::Opt(payload) };
                fields.insert(l.clone(), m);
            }
            let loose = |m: &Mapping| matches!(m, Mapping::Opt(BType::Unknown));
            if fields.values().any(loose) {
                for l in &u.labels {
                    fields.entry(l.clone()).or_insert(Mapping::Absent);
                }
                fields.retain(|_, m| !loose(m));
                BType::rec(fields, Tail::Open)
            } else {
                BType::rec(fields, Tail::Closed)
            }
        }
        Shape::Mixed => BType::Unknown,
    })
}
