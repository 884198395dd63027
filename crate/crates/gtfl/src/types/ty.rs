use std::collections::BTreeMap;
use std::fmt;

use super::Label;

/// Fully static types.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Int,
    Bool,
    Arrow(Box<Type>, Box<Type>),
    Record(BTreeMap<Label, Type>),
}

impl Type {
    pub fn arrow(a: Type, b: Type) -> Type {
        Type::Arrow(Box::new(a), Box::new(b))
    }

    pub fn record<I, L>(fields: I) -> Type
    where
        I: IntoIterator<Item = (L, Type)>,
        L: Into<Label>,
    {
        Type::Record(fields.into_iter().map(|(l, t)| (l.into(), t)).collect())
    }

    pub fn height(&self) -> usize {
        match self {
            Type::Int | Type::Bool => 1,
            Type::Arrow(a, b) => 1 + a.height().max(b.height()),
            Type::Record(fs) => 1 + fs.values().map(Type::height).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Type::Int | Type::Bool => 1,
            Type::Arrow(a, b) => 1 + a.size() + b.size(),
            Type::Record(fs) => 1 + fs.values().map(Type::size).sum::<usize>(),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Int => f.write_str("Int"),
            Type::Bool => f.write_str("Bool"),
            Type::Arrow(a, b) => {
                if matches!(**a, Type::Arrow(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
            Type::Record(fs) => {
                f.write_str("{")?;
                for (i, (l, t)) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{l}: {t}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
