//! Type-directed translation into the evidence-annotated runtime language.

use std::collections::BTreeMap;
use std::fmt;

use crate::evidence::{Backend, RuntimeType, TotalEvidence};
use crate::statics::{binop_result, ccod, cdom, cproj, csub_join, def_env, require_csub, TypeEnv, TypeError, TypeErrorKind};
use crate::syntax::{BinOp, Program, Span, Term, TermKind};
use crate::types::{GType, Label};

/// A runtime subterm under its evidence.
#[derive(Clone, Debug, PartialEq)]
pub struct EvTerm {
    pub ev: TotalEvidence,
    pub term: Box<RTerm>,
    /// Source position of the check, for diagnostics.
    pub span: Span,
}

impl EvTerm {
    pub fn new(ev: impl Into<TotalEvidence>, term: RTerm, span: Span) -> EvTerm {
        EvTerm { ev: ev.into(), term: Box::new(term), span }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RTerm {
    Num(i64),
    Bool(bool),
    Var(String),
    /// A top-level definition, unfolded on demand.
    Global(String),
    Lam(String, Box<RTerm>),
    App(EvTerm, EvTerm),
    Bin(BinOp, EvTerm, EvTerm),
    If(EvTerm, EvTerm, EvTerm),
    Rec(Vec<(Label, RTerm)>),
    Proj(EvTerm, Label),
    Asc(EvTerm),
    Let(String, EvTerm, Box<RTerm>),
}

impl RTerm {
    pub fn asc(ev: impl Into<TotalEvidence>, term: RTerm, span: Span) -> RTerm {
        RTerm::Asc(EvTerm::new(ev, term, span))
    }

    pub fn is_raw_value(&self) -> bool {
        match self {
            RTerm::Num(_) | RTerm::Bool(_) | RTerm::Lam(..) => true,
            RTerm::Rec(fs) => fs.iter().all(|(_, v)| v.is_value()),
            _ => false,
        }
    }

    /// `u` or `ε u`; a latent failure around a raw value is a redex.
    pub fn is_value(&self) -> bool {
        match self {
            RTerm::Asc(et) => et.ev != TotalEvidence::Bottom && et.term.is_raw_value(),
            t => t.is_raw_value(),
        }
    }

    /// Capture-avoiding substitution of a closed value.
    pub fn subst(&self, x: &str, v: &RTerm) -> RTerm {
        let ev = |et: &EvTerm| EvTerm { ev: et.ev.clone(), term: Box::new(et.term.subst(x, v)), span: et.span };
        match self {
            RTerm::Var(y) if y == x => v.clone(),
            RTerm::Num(_) | RTerm::Bool(_) | RTerm::Var(_) | RTerm::Global(_) => self.clone(),
            RTerm::Lam(y, _) if y == x => self.clone(),
            RTerm::Lam(y, b) => RTerm::Lam(y.clone(), Box::new(b.subst(x, v))),
            RTerm::App(a, b) => RTerm::App(ev(a), ev(b)),
            RTerm::Bin(op, a, b) => RTerm::Bin(*op, ev(a), ev(b)),
            RTerm::If(a, b, c) => RTerm::If(ev(a), ev(b), ev(c)),
            RTerm::Rec(fs) => RTerm::Rec(fs.iter().map(|(l, t)| (l.clone(), t.subst(x, v))).collect()),
            RTerm::Proj(a, l) => RTerm::Proj(ev(a), l.clone()),
            RTerm::Asc(a) => RTerm::Asc(ev(a)),
            RTerm::Let(y, a, b) if y == x => RTerm::Let(y.clone(), ev(a), b.clone()),
            RTerm::Let(y, a, b) => RTerm::Let(y.clone(), ev(a), Box::new(b.subst(x, v))),
        }
    }

    /// Visit every evidence slot.
    pub fn for_each_evidence(&self, f: &mut dyn FnMut(&TotalEvidence)) {
        let ev = |et: &EvTerm, f: &mut dyn FnMut(&TotalEvidence)| {
            f(&et.ev);
            et.term.for_each_evidence(f);
        };
        match self {
            RTerm::Num(_) | RTerm::Bool(_) | RTerm::Var(_) | RTerm::Global(_) => {}
            RTerm::Lam(_, b) => b.for_each_evidence(f),
            RTerm::App(a, b) | RTerm::Bin(_, a, b) => {
                ev(a, f);
                ev(b, f);
            }
            RTerm::If(a, b, c) => {
                ev(a, f);
                ev(b, f);
                ev(c, f);
            }
            RTerm::Rec(fs) => fs.iter().for_each(|(_, t)| t.for_each_evidence(f)),
            RTerm::Proj(a, _) | RTerm::Asc(a) => ev(a, f),
            RTerm::Let(_, a, b) => {
                ev(a, f);
                b.for_each_evidence(f);
            }
        }
    }
}

/// A whole elaborated program.
#[derive(Clone, Debug)]
pub struct Elaborated {
    pub backend: Backend,
    /// Each definition as nested lambdas around its checked body.
    pub globals: BTreeMap<String, RTerm>,
    pub main: RTerm,
    pub ty: GType,
}

impl Elaborated {
    pub fn for_each_evidence(&self, f: &mut dyn FnMut(&TotalEvidence)) {
        for g in self.globals.values() {
            g.for_each_evidence(f);
        }
        self.main.for_each_evidence(f);
    }
}

struct Cx<'a> {
    backend: Backend,
    globals: &'a BTreeMap<String, GType>,
    locals: TypeEnv,
    /// Runtime types of the locals, innermost last.
    rt_locals: Vec<(String, RuntimeType)>,
}

type Out = (RTerm, GType, RuntimeType);

impl Cx<'_> {
    fn new(backend: Backend, globals: &BTreeMap<String, GType>) -> Cx<'_> {
        Cx { backend, globals, locals: TypeEnv::new(), rt_locals: Vec::new() }
    }

    fn push(&mut self, x: &str, s: &GType) {
        self.locals.push(x, s.clone());
        self.rt_locals.push((x.to_string(), RuntimeType::of(self.backend, s)));
    }

    fn pop(&mut self) {
        self.locals.pop();
        self.rt_locals.pop();
    }

    fn rt(&self, s: &GType) -> RuntimeType {
        RuntimeType::of(self.backend, s)
    }

    /// Statically the check is on source types; the evidence comes from
    /// the runtime types, and is `⊥` when those are already inconsistent.
    fn slot(&self, e: RTerm, (s1, r1): (&GType, &RuntimeType), (s2, r2): (&GType, &RuntimeType), span: Span) -> Result<EvTerm, TypeError> {
        require_csub(s1, s2, span)?;
        let ev = match r1.interior(r2) {
            Some(ev) => TotalEvidence::Ev(ev),
            None if self.backend == Backend::Gr => unreachable!("interior is defined on consistent subtypes"),
            None => TotalEvidence::Bottom,
        };
        Ok(EvTerm::new(ev, e, span))
    }

    fn go(&mut self, t: &Term) -> Result<Out, TypeError> {
        let span = t.span;
        match &t.kind {
            TermKind::Int(n) => Ok((RTerm::Num(*n), GType::Int, self.rt(&GType::Int))),
            TermKind::Bool(b) => Ok((RTerm::Bool(*b), GType::Bool, self.rt(&GType::Bool))),
            TermKind::Var(x) => {
                if let Some(s) = self.locals.lookup(x) {
                    let r = self.rt_locals.iter().rev().find(|(y, _)| y == x).map(|(_, r)| r.clone()).expect("runtime type");
                    Ok((RTerm::Var(x.clone()), s.clone(), r))
                } else if let Some(s) = self.globals.get(x) {
                    Ok((RTerm::Global(x.clone()), s.clone(), self.rt(s)))
                } else {
                    Err(TypeError::new(TypeErrorKind::Unbound(x.clone()), span))
                }
            }
            TermKind::Lam(x, s1, body) => {
                self.push(x, s1);
                let r = self.go(body);
                self.pop();
                let (e, s2, r2) = r?;
                Ok((RTerm::Lam(x.clone(), Box::new(e)), GType::arrow(s1.clone(), s2), RuntimeType::arrow(self.rt(s1), r2)))
            }
            TermKind::App(t1, t2) => {
                let (e1, s1, r1) = self.go(t1)?;
                let (e2, s2, r2) = self.go(t2)?;
                let dom = cdom(&s1).ok_or_else(|| TypeError::new(TypeErrorKind::NotFunction(s1.clone()), t1.span))?;
                let cod = ccod(&s1).expect("cod~ is defined wherever dom~ is");
                let rdom = r1.dom().unwrap_or_else(|| self.rt(&dom));
                let rcod = r1.cod().unwrap_or_else(|| self.rt(&cod));
                let a2 = self.slot(e2, (&s2, &r2), (&dom, &rdom), t2.span)?;
                let fun = GType::arrow(dom, cod.clone());
                let rfun = RuntimeType::arrow(rdom, rcod.clone());
                let a1 = self.slot(e1, (&s1, &r1), (&fun, &rfun), t1.span)?;
                Ok((RTerm::App(a1, a2), cod, rcod))
            }
            TermKind::Bin(op, t1, t2) => {
                let (e1, s1, r1) = self.go(t1)?;
                let (e2, s2, r2) = self.go(t2)?;
                let int = self.rt(&GType::Int);
                let a1 = self.slot(e1, (&s1, &r1), (&GType::Int, &int), t1.span)?;
                let a2 = self.slot(e2, (&s2, &r2), (&GType::Int, &int), t2.span)?;
                let res = binop_result(*op);
                let rres = self.rt(&res);
                Ok((RTerm::Bin(*op, a1, a2), res, rres))
            }
            TermKind::If(c, t2, t3) => {
                let (e1, s1, r1) = self.go(c)?;
                let (e2, s2, r2) = self.go(t2)?;
                let (e3, s3, r3) = self.go(t3)?;
                let a1 = self.slot(e1, (&s1, &r1), (&GType::Bool, &self.rt(&GType::Bool)), c.span)?;
                let j = csub_join(&s2, &s3).ok_or_else(|| TypeError::new(TypeErrorKind::NoJoin(s2.clone(), s3.clone()), span))?;
                let rj = r2.join(&r3).unwrap_or_else(|| self.rt(&j));
                let a2 = self.slot(e2, (&s2, &r2), (&j, &rj), t2.span)?;
                let a3 = self.slot(e3, (&s3, &r3), (&j, &rj), t3.span)?;
                Ok((RTerm::If(a1, a2, a3), j, rj))
            }
            TermKind::Rec(fields) => {
                let mut out = Vec::new();
                let mut ty = crate::types::GFields::new();
                let mut rty = Vec::new();
                for (l, ft) in fields {
                    let (e, s, r) = self.go(ft)?;
                    out.push((l.clone(), e));
                    ty.insert(l.clone(), s);
                    rty.push((l.clone(), r));
                }
                let rrec = RuntimeType::record(self.backend, rty);
                Ok((RTerm::Rec(out), GType::Rec(ty, crate::types::Tail::Closed), rrec))
            }
            TermKind::Proj(t1, l) => {
                let (e, s, r) = self.go(t1)?;
                let sl = cproj(&s, l).ok_or_else(|| TypeError::new(TypeErrorKind::NoField(s.clone(), l.clone()), span))?;
                let rl = r.proj(l).unwrap_or_else(|| self.rt(&sl));
                let target = GType::record([(l.clone(), sl.clone())]);
                let rtarget = RuntimeType::record(self.backend, vec![(l.clone(), rl.clone())]);
                Ok((RTerm::Proj(self.slot(e, (&s, &r), (&target, &rtarget), span)?, l.clone()), sl, rl))
            }
            TermKind::Asc(t1, s1) => {
                let (e, s, r) = self.go(t1)?;
                let r1 = self.rt(s1);
                Ok((RTerm::Asc(self.slot(e, (&s, &r), (s1, &r1), span)?), s1.clone(), r1))
            }
            TermKind::Let(x, annot, t1, t2) => {
                let (e1, s1, r1) = self.go(t1)?;
                let (s, rs) = match annot {
                    Some(a) => (a.clone(), self.rt(a)),
                    None => (s1.clone(), r1.clone()),
                };
                let a1 = self.slot(e1, (&s1, &r1), (&s, &rs), t1.span)?;
                self.locals.push(x, s);
                self.rt_locals.push((x.clone(), rs));
                let r = self.go(t2);
                self.pop();
                let (e2, s2, r2) = r?;
                Ok((RTerm::Let(x.clone(), a1, Box::new(e2)), s2, r2))
            }
        }
    }
}

/// Elaborate a term with no definitions in scope.
pub fn elaborate(t: &Term, env: &TypeEnv, backend: Backend) -> Result<(RTerm, GType), TypeError> {
    let globals = BTreeMap::new();
    let mut cx = Cx::new(backend, &globals);
    for (x, s) in env.iter() {
        cx.push(x, s);
    }
    cx.go(t).map(|(e, s, _)| (e, s))
}

pub fn elaborate_program(p: &Program, backend: Backend) -> Result<Elaborated, TypeError> {
    def_env(&p.defs)?;
    let sigs: BTreeMap<String, GType> = p.defs.iter().map(|d| (d.name.clone(), d.signature())).collect();
    let mut globals = BTreeMap::new();
    for d in &p.defs {
        let mut cx = Cx::new(backend, &sigs);
        for (x, t) in &d.params {
            cx.push(x, t);
        }
        let (body, s, r) = cx.go(&d.body)?;
        let ret = cx.rt(&d.ret);
        let mut e = RTerm::Asc(cx.slot(body, (&s, &r), (&d.ret, &ret), d.body.span)?);
        for (x, _) in d.params.iter().rev() {
            e = RTerm::Lam(x.clone(), Box::new(e));
        }
        globals.insert(d.name.clone(), e);
    }
    let mut cx = Cx::new(backend, &sigs);
    let (main, ty, _) = cx.go(&p.main)?;
    Ok(Elaborated { backend, globals, main, ty })
}

fn is_atomic(t: &RTerm) -> bool {
    matches!(t, RTerm::Num(_) | RTerm::Bool(_) | RTerm::Var(_) | RTerm::Global(_) | RTerm::Rec(_))
}

struct Atom<'a>(&'a RTerm);

impl fmt::Display for Atom<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if is_atomic(self.0) {
            self.0.fmt(f)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

impl fmt::Display for EvTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.ev, Atom(&self.term))
    }
}

impl fmt::Display for RTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RTerm::Num(n) => write!(f, "{n}"),
            RTerm::Bool(b) => write!(f, "{b}"),
            RTerm::Var(x) | RTerm::Global(x) => f.write_str(x),
            RTerm::Lam(x, b) => write!(f, "\\{x}. {b}"),
            RTerm::App(a, b) => write!(f, "({a}) ({b})"),
            RTerm::Bin(op, a, b) => write!(f, "({a}) {} ({b})", op.symbol()),
            RTerm::If(a, b, c) => write!(f, "if {a} then {b} else {c}"),
            RTerm::Rec(fs) => {
                f.write_str("{")?;
                for (i, (l, t)) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{l} = {t}")?;
                }
                f.write_str("}")
            }
            RTerm::Proj(a, l) => write!(f, "({a}).{l}"),
            RTerm::Asc(a) => a.fmt(f),
            RTerm::Let(x, a, b) => write!(f, "let {x} = {a} in {b}"),
        }
    }
}
