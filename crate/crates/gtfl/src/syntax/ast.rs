use std::fmt;

use crate::types::{GType, Label};

/// Byte range plus the 1-based position of its start.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn to(self, other: Span) -> Span {
        Span { start: self.start, end: other.end, line: self.line, col: self.col }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    /// Extension: integer subtraction.
    Sub,
    /// Extension: integer equality.
    Eq,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Eq => "==",
        }
    }
}

/// Source terms. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TermKind {
    Int(i64),
    Bool(bool),
    Var(String),
    Lam(String, GType, Box<Term>),
    App(Box<Term>, Box<Term>),
    Bin(BinOp, Box<Term>, Box<Term>),
    If(Box<Term>, Box<Term>, Box<Term>),
    /// Fields in source order; labels are distinct.
    Rec(Vec<(Label, Term)>),
    Proj(Box<Term>, Label),
    Asc(Box<Term>, GType),
    /// A missing annotation means the bound term's own type.
    Let(String, Option<GType>, Box<Term>, Box<Term>),
}

impl Term {
    pub fn new(kind: TermKind, span: Span) -> Term {
        Term { kind, span }
    }

    /// Span-free constructor for generated terms.
    pub fn bare(kind: TermKind) -> Term {
        Term { kind, span: Span::default() }
    }
}

/// A top-level recursive function, `def f (x: T) .. : R = body;`.
#[derive(Clone, Debug)]
pub struct Def {
    pub name: String,
    pub params: Vec<(String, GType)>,
    pub ret: GType,
    pub body: Term,
    pub span: Span,
}

impl PartialEq for Def {
    fn eq(&self, other: &Def) -> bool {
        self.name == other.name && self.params == other.params && self.ret == other.ret && self.body == other.body
    }
}

impl Def {
    /// `T1 -> .. -> Tn -> R`
    pub fn signature(&self) -> GType {
        self.params
            .iter()
            .rev()
            .fold(self.ret.clone(), |acc, (_, t)| GType::arrow(t.clone(), acc))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    pub defs: Vec<Def>,
    pub main: Term,
}
