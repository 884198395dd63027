//! Exhaustive enumeration of bounded types.

use std::collections::{BTreeMap, HashMap};

use super::OracleError;
use crate::types::{BFields, BType, GFields, GType, Label, Mapping, Tail, Type};

pub const MAX_DEPTH: usize = 4;
pub const MAX_LABELS: usize = 3;

/// All static types of height at most `depth` over a label set.
#[derive(Clone, Debug)]
pub struct Universe {
    pub depth: usize,
    pub labels: Vec<Label>,
    pub members: Vec<Type>,
    index: HashMap<Type, usize>,
}

impl Universe {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, t: &Type) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &Type) -> bool {
        self.index.contains_key(t)
    }
}

fn guard(depth: usize, labels: &[Label]) -> Result<(), OracleError> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(OracleError::Depth(depth));
    }
    if labels.len() > MAX_LABELS {
        return Err(OracleError::Labels(labels.len()));
    }
    Ok(())
}

/// Every assignment of an option (or absence) to each label.
fn assignments<T: Clone>(labels: &[Label], options: &[Option<T>]) -> Vec<BTreeMap<Label, T>> {
    let mut out = vec![BTreeMap::new()];
    for l in labels {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for m in &out {
            for o in options {
                let mut m = m.clone();
                if let Some(t) = o {
                    m.insert(l.clone(), t.clone());
                }
                next.push(m);
            }
        }
        out = next;
    }
    out
}

fn dedup_labels(labels: &[Label]) -> Vec<Label> {
    let mut ls = labels.to_vec();
    ls.sort();
    ls.dedup();
    ls
}

pub fn enumerate(depth: usize, labels: &[Label]) -> Result<Universe, OracleError> {
    let labels = dedup_labels(labels);
    guard(depth, &labels)?;
    let mut level = vec![Type::Int, Type::Bool, Type::Record(BTreeMap::new())];
    for _ in 1..depth {
        let mut next = vec![Type::Int, Type::Bool];
        for a in &level {
            for b in &level {
                next.push(Type::arrow(a.clone(), b.clone()));
            }
        }
        let opts: Vec<Option<Type>> = std::iter::once(None).chain(level.iter().cloned().map(Some)).collect();
        next.extend(assignments(&labels, &opts).into_iter().map(Type::Record));
        level = next;
    }
    let index = level.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    Ok(Universe { depth, labels, members: level, index })
}

/// Gradual-rows types of height at most `depth`.
pub fn enumerate_gr(depth: usize, labels: &[Label]) -> Result<Vec<GType>, OracleError> {
    let labels = dedup_labels(labels);
    guard(depth, &labels)?;
    let mut level = vec![GType::Unknown, GType::Int, GType::Bool, GType::Rec(GFields::new(), Tail::Closed), GType::empty_row()];
    for _ in 1..depth {
        let mut next = vec![GType::Unknown, GType::Int, GType::Bool];
        for a in &level {
            for b in &level {
                next.push(GType::arrow(a.clone(), b.clone()));
            }
        }
        let opts: Vec<Option<GType>> = std::iter::once(None).chain(level.iter().cloned().map(Some)).collect();
        for fs in assignments(&labels, &opts) {
            next.push(GType::Rec(fs.clone(), Tail::Closed));
            next.push(GType::Rec(fs, Tail::Open));
        }
        level = next;
    }
    Ok(level)
}

/// Canonical bounded types of height at most `depth`.
pub fn enumerate_brr(depth: usize, labels: &[Label]) -> Result<Vec<BType>, OracleError> {
    let labels = dedup_labels(labels);
    guard(depth, &labels)?;
    let mut level = vec![BType::Unknown, BType::Int, BType::Bool, BType::Rec(BFields::new(), Tail::Closed), BType::empty_row()];
    for _ in 1..depth {
        let mut next = vec![BType::Unknown, BType::Int, BType::Bool];
        for a in &level {
            for b in &level {
                next.push(BType::arrow(a.clone(), b.clone()));
            }
        }
        let mut opts: Vec<Option<Mapping>> = vec![None, Some(Mapping::Absent)];
        for t in &level {
            opts.push(Some(Mapping::Req(t.clone())));
            opts.push(Some(Mapping::Opt(t.clone())));
        }
        for tail in [Tail::Closed, Tail::Open] {
            for fs in assignments(&labels, &opts) {
                let t = BType::Rec(fs, tail);
                if t.is_canonical() {
                    next.push(t);
                }
            }
        }
        level = next;
    }
    Ok(level)
}
