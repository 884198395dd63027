use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{GType, Label, Tail};

/// Field mapping inside a bounded record or row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mapping {
    Absent,
    Req(BType),
    Opt(BType),
}

pub type BFields = BTreeMap<Label, Mapping>;

/// Bounded records and rows. Values built through [`BType::rec`] are kept
/// canonical: records never list `Absent`, rows never list `Opt(?)`, so an
/// unlisted label always means [`Mapping::default_for`] the tail.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BType {
    Unknown,
    Int,
    Bool,
    Arrow(Box<BType>, Box<BType>),
    Rec(BFields, Tail),
}

impl Mapping {
    /// What an unlisted label stands for under the given tail.
    pub fn default_for(tail: Tail) -> Mapping {
        match tail {
            Tail::Closed => Mapping::Absent,
            Tail::Open => Mapping::Opt(BType::Unknown),
        }
    }

    pub fn payload(&self) -> Option<&BType> {
        match self {
            Mapping::Absent => None,
            Mapping::Req(t) | Mapping::Opt(t) => Some(t),
        }
    }

    pub fn precision_le(&self, other: &Mapping) -> bool {
        match (self, other) {
            (Mapping::Absent, Mapping::Absent | Mapping::Opt(_)) => true,
            (Mapping::Req(a), Mapping::Req(b) | Mapping::Opt(b)) => a.precision_le(b),
            (Mapping::Opt(a), Mapping::Opt(b)) => a.precision_le(b),
            _ => false,
        }
    }

    pub fn canonical(self) -> Mapping {
        match self {
            Mapping::Absent => Mapping::Absent,
            Mapping::Req(t) => Mapping::Req(t.canonical()),
            Mapping::Opt(t) => Mapping::Opt(t.canonical()),
        }
    }

    fn size(&self) -> usize {
        self.payload().map_or(1, BType::size)
    }

    fn height(&self) -> usize {
        self.payload().map_or(1, BType::height)
    }
}

impl BType {
    pub fn arrow(a: BType, b: BType) -> BType {
        BType::Arrow(Box::new(a), Box::new(b))
    }

    /// Canonicalizing constructor.
    pub fn rec(fields: BFields, tail: Tail) -> BType {
        let dflt = Mapping::default_for(tail);
        BType::Rec(fields.into_iter().filter(|(_, m)| *m != dflt).collect(), tail)
    }

    pub fn record<I, L>(fields: I) -> BType
    where
        I: IntoIterator<Item = (L, Mapping)>,
        L: Into<Label>,
    {
        BType::rec(fields.into_iter().map(|(l, m)| (l.into(), m)).collect(), Tail::Closed)
    }

    pub fn row<I, L>(fields: I) -> BType
    where
        I: IntoIterator<Item = (L, Mapping)>,
        L: Into<Label>,
    {
        BType::rec(fields.into_iter().map(|(l, m)| (l.into(), m)).collect(), Tail::Open)
    }

    pub fn empty_row() -> BType {
        BType::Rec(BTreeMap::new(), Tail::Open)
    }

    /// Mapping of `l`, falling back to the tail default.
    pub fn field(&self, l: &Label) -> Option<Mapping> {
        match self {
            BType::Rec(fs, tail) => Some(fs.get(l).cloned().unwrap_or_else(|| Mapping::default_for(*tail))),
            _ => None,
        }
    }

    /// Re-normalize a value that may have been built without [`BType::rec`].
    pub fn canonical(self) -> BType {
        match self {
            BType::Arrow(a, b) => BType::arrow(a.canonical(), b.canonical()),
            BType::Rec(fs, tail) => BType::rec(fs.into_iter().map(|(l, m)| (l, m.canonical())).collect(), tail),
            t => t,
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            BType::Arrow(a, b) => a.is_canonical() && b.is_canonical(),
            BType::Rec(fs, tail) => {
                let dflt = Mapping::default_for(*tail);
                fs.values().all(|m| *m != dflt && m.payload().is_none_or(BType::is_canonical))
            }
            _ => true,
        }
    }

    /// Structural precision; agrees with inclusion of concretizations.
    pub fn precision_le(&self, other: &BType) -> bool {
        match (self, other) {
            (_, BType::Unknown) => true,
            (BType::Int, BType::Int) | (BType::Bool, BType::Bool) => true,
            (BType::Arrow(a1, b1), BType::Arrow(a2, b2)) => a1.precision_le(a2) && b1.precision_le(b2),
            (BType::Rec(f1, t1), BType::Rec(f2, t2)) => {
                let labels: BTreeSet<&Label> = f1.keys().chain(f2.keys()).collect();
                labels.into_iter().all(|l| {
                    let m1 = self.field(l).unwrap();
                    let m2 = other.field(l).unwrap();
                    m1.precision_le(&m2)
                }) && Mapping::default_for(*t1).precision_le(&Mapping::default_for(*t2))
            }
            _ => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            BType::Unknown | BType::Int | BType::Bool => 1,
            BType::Arrow(a, b) => 1 + a.size() + b.size(),
            BType::Rec(fs, _) => 1 + fs.values().map(Mapping::size).sum::<usize>(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            BType::Unknown | BType::Int | BType::Bool => 1,
            BType::Arrow(a, b) => 1 + a.height().max(b.height()),
            BType::Rec(fs, _) => 1 + fs.values().map(Mapping::height).max().unwrap_or(0),
        }
    }

    pub fn collect_labels(&self, out: &mut BTreeSet<Label>) {
        match self {
            BType::Unknown | BType::Int | BType::Bool => {}
            BType::Arrow(a, b) => {
                a.collect_labels(out);
                b.collect_labels(out);
            }
            BType::Rec(fs, _) => {
                for (l, m) in fs {
                    out.insert(l.clone());
                    if let Some(t) = m.payload() {
                        t.collect_labels(out);
                    }
                }
            }
        }
    }
}

/// Records become bounded records and rows become bounded rows, with every
/// declared field Required.
pub fn embed_gr_to_brr(s: &GType) -> BType {
    match s {
        GType::Unknown => BType::Unknown,
        GType::Int => BType::Int,
        GType::Bool => BType::Bool,
        GType::Arrow(a, b) => BType::arrow(embed_gr_to_brr(a), embed_gr_to_brr(b)),
        GType::Rec(fs, tail) => BType::rec(
            fs.iter().map(|(l, t)| (l.clone(), Mapping::Req(embed_gr_to_brr(t)))).collect(),
            *tail,
        ),
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mapping::Absent => f.write_str("-: "),
            Mapping::Req(t) => write!(f, "R: {t}"),
            Mapping::Opt(t) => write!(f, "O: {t}"),
        }
    }
}

impl fmt::Display for BType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BType::Unknown => f.write_str("?"),
            BType::Int => f.write_str("Int"),
            BType::Bool => f.write_str("Bool"),
            BType::Arrow(a, b) => {
                if matches!(**a, BType::Arrow(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
            BType::Rec(fs, tail) => {
                f.write_str("[")?;
                for (i, (l, m)) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{l} {m}")?;
                }
                if *tail == Tail::Open {
                    if !fs.is_empty() {
                        f.write_str(", ")?;
                    }
                    f.write_str("?")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for BType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
