use std::collections::BTreeMap;
use std::fmt;

use super::{Label, Tail, Type};

pub type GFields = BTreeMap<Label, GType>;

/// Source-level gradual types: the unknown type and gradual rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GType {
    Unknown,
    Int,
    Bool,
    Arrow(Box<GType>, Box<GType>),
    /// `{l: S, ..}` when the tail is closed, `{l: S, .., ?}` when open.
    Rec(GFields, Tail),
}

impl GType {
    pub fn arrow(a: GType, b: GType) -> GType {
        GType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn record<I, L>(fields: I) -> GType
    where
        I: IntoIterator<Item = (L, GType)>,
        L: Into<Label>,
    {
        GType::Rec(fields.into_iter().map(|(l, t)| (l.into(), t)).collect(), Tail::Closed)
    }

    pub fn row<I, L>(fields: I) -> GType
    where
        I: IntoIterator<Item = (L, GType)>,
        L: Into<Label>,
    {
        GType::Rec(fields.into_iter().map(|(l, t)| (l.into(), t)).collect(), Tail::Open)
    }

    /// `{?}`
    pub fn empty_row() -> GType {
        GType::Rec(BTreeMap::new(), Tail::Open)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, GType::Unknown)
    }

    pub fn from_static(t: &Type) -> GType {
        match t {
            Type::Int => GType::Int,
            Type::Bool => GType::Bool,
            Type::Arrow(a, b) => GType::arrow(GType::from_static(a), GType::from_static(b)),
            Type::Record(fs) => GType::Rec(
                fs.iter().map(|(l, t)| (l.clone(), GType::from_static(t))).collect(),
                Tail::Closed,
            ),
        }
    }

    /// The static type this gradual type denotes exactly, if it has no `?`.
    pub fn to_static(&self) -> Option<Type> {
        Some(match self {
            GType::Unknown => return None,
            GType::Int => Type::Int,
            GType::Bool => Type::Bool,
            GType::Arrow(a, b) => Type::arrow(a.to_static()?, b.to_static()?),
            GType::Rec(_, Tail::Open) => return None,
            GType::Rec(fs, Tail::Closed) => Type::Record(
                fs.iter()
                    .map(|(l, t)| Some((l.clone(), t.to_static()?)))
                    .collect::<Option<_>>()?,
            ),
        })
    }

    pub fn is_static(&self) -> bool {
        self.to_static().is_some()
    }

    /// `self ⊑ other`: self is at least as precise as other.
    pub fn precision_le(&self, other: &GType) -> bool {
        match (self, other) {
            (_, GType::Unknown) => true,
            (GType::Int, GType::Int) | (GType::Bool, GType::Bool) => true,
            (GType::Arrow(a1, b1), GType::Arrow(a2, b2)) => a1.precision_le(a2) && b1.precision_le(b2),
            (GType::Rec(f1, t1), GType::Rec(f2, t2)) => {
                let shared = f2
                    .iter()
                    .all(|(l, s2)| f1.get(l).is_some_and(|s1| s1.precision_le(s2)));
                match t2 {
                    Tail::Open => shared,
                    Tail::Closed => *t1 == Tail::Closed && f1.len() == f2.len() && shared,
                }
            }
            _ => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            GType::Unknown | GType::Int | GType::Bool => 1,
            GType::Arrow(a, b) => 1 + a.size() + b.size(),
            GType::Rec(fs, _) => 1 + fs.values().map(GType::size).sum::<usize>(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            GType::Unknown | GType::Int | GType::Bool => 1,
            GType::Arrow(a, b) => 1 + a.height().max(b.height()),
            GType::Rec(fs, _) => 1 + fs.values().map(GType::height).max().unwrap_or(0),
        }
    }

    pub fn collect_labels(&self, out: &mut std::collections::BTreeSet<Label>) {
        match self {
            GType::Unknown | GType::Int | GType::Bool => {}
            GType::Arrow(a, b) => {
                a.collect_labels(out);
                b.collect_labels(out);
            }
            GType::Rec(fs, _) => {
                for (l, t) in fs {
                    out.insert(l.clone());
                    t.collect_labels(out);
                }
            }
        }
    }
}

impl fmt::Display for GType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GType::Unknown => f.write_str("?"),
            GType::Int => f.write_str("Int"),
            GType::Bool => f.write_str("Bool"),
            GType::Arrow(a, b) => {
                if matches!(**a, GType::Arrow(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
            GType::Rec(fs, tail) => {
                f.write_str("{")?;
                for (i, (l, t)) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{l}: {t}")?;
                }
                if *tail == Tail::Open {
                    if !fs.is_empty() {
                        f.write_str(", ")?;
                    }
                    f.write_str("?")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for GType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
