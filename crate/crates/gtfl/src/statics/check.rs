use std::fmt;

use crate::syntax::{BinOp, Def, Program, Span, Term, TermKind};
use crate::types::{GType, Label, Tail};

use super::relations::{ccod, cdom, consistent_subtype, cproj, csub_join};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum TypeErrorKind {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("`{0}` is not a consistent subtype of `{1}`")]
    NotConsistent(GType, GType),
    #[error("`{0}` is not a function type")]
    NotFunction(GType),
    #[error("`{0}` has no field `{1}`")]
    NoField(GType, Label),
    #[error("branch types `{0}` and `{1}` have no consistent join")]
    NoJoin(GType, GType),
    #[error("duplicate definition `{0}`")]
    DuplicateDef(String),
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{span}: type error: {kind}")]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub span: Span,
}

impl TypeError {
    pub fn new(kind: TypeErrorKind, span: Span) -> TypeError {
        TypeError { kind, span }
    }
}

/// Scoped variable typing; later bindings shadow earlier ones.
#[derive(Clone, Debug, Default)]
pub struct TypeEnv {
    vars: Vec<(String, GType)>,
}

impl TypeEnv {
    pub fn new() -> TypeEnv {
        TypeEnv::default()
    }

    pub fn lookup(&self, x: &str) -> Option<&GType> {
        self.vars.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn extended(&self, x: &str, t: GType) -> TypeEnv {
        let mut env = self.clone();
        env.push(x, t);
        env
    }

    pub fn push(&mut self, x: &str, t: GType) {
        self.vars.push((x.to_string(), t));
    }

    pub fn pop(&mut self) {
        self.vars.pop();
    }

    /// Bindings, outermost first.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &GType)> {
        self.vars.iter().map(|(x, t)| (x.as_str(), t))
    }
}

impl fmt::Display for TypeEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}: {t}")?;
        }
        Ok(())
    }
}

pub fn require_csub(s1: &GType, s2: &GType, span: Span) -> Result<(), TypeError> {
    if consistent_subtype(s1, s2) {
        Ok(())
    } else {
        Err(TypeError::new(TypeErrorKind::NotConsistent(s1.clone(), s2.clone()), span))
    }
}

pub fn binop_result(op: BinOp) -> GType {
    match op {
        BinOp::Add | BinOp::Sub => GType::Int,
        BinOp::Eq => GType::Bool,
    }
}

pub fn typecheck(term: &Term, env: &TypeEnv) -> Result<GType, TypeError> {
    let mut env = env.clone();
    check(term, &mut env)
}

fn check(term: &Term, env: &mut TypeEnv) -> Result<GType, TypeError> {
    let span = term.span;
    match &term.kind {
        TermKind::Int(_) => Ok(GType::Int),
        TermKind::Bool(_) => Ok(GType::Bool),
        TermKind::Var(x) => env
            .lookup(x)
            .cloned()
            .ok_or_else(|| TypeError::new(TypeErrorKind::Unbound(x.clone()), span)),
        TermKind::Lam(x, s1, body) => {
            env.push(x, s1.clone());
            let s2 = check(body, env);
            env.pop();
            Ok(GType::arrow(s1.clone(), s2?))
        }
        TermKind::App(t1, t2) => {
            let s1 = check(t1, env)?;
            let s2 = check(t2, env)?;
            let dom = cdom(&s1).ok_or_else(|| TypeError::new(TypeErrorKind::NotFunction(s1.clone()), t1.span))?;
            require_csub(&s2, &dom, t2.span)?;
            Ok(ccod(&s1).expect("cod~ is defined wherever dom~ is"))
        }
        TermKind::Bin(op, t1, t2) => {
            let s1 = check(t1, env)?;
            let s2 = check(t2, env)?;
            require_csub(&s1, &GType::Int, t1.span)?;
            require_csub(&s2, &GType::Int, t2.span)?;
            Ok(binop_result(*op))
        }
        TermKind::If(c, t2, t3) => {
            let s1 = check(c, env)?;
            let s2 = check(t2, env)?;
            let s3 = check(t3, env)?;
            require_csub(&s1, &GType::Bool, c.span)?;
            csub_join(&s2, &s3).ok_or_else(|| TypeError::new(TypeErrorKind::NoJoin(s2, s3), span))
        }
        TermKind::Rec(fields) => {
            let mut out = crate::types::GFields::new();
            for (l, t) in fields {
                out.insert(l.clone(), check(t, env)?);
            }
            Ok(GType::Rec(out, Tail::Closed))
        }
        TermKind::Proj(t, l) => {
            let s = check(t, env)?;
            cproj(&s, l).ok_or_else(|| TypeError::new(TypeErrorKind::NoField(s, l.clone()), span))
        }
        TermKind::Asc(t, s1) => {
            let s = check(t, env)?;
            require_csub(&s, s1, span)?;
            Ok(s1.clone())
        }
        TermKind::Let(x, annot, t1, t2) => {
            let s1 = check(t1, env)?;
            let s = match annot {
                Some(s) => {
                    require_csub(&s1, s, t1.span)?;
                    s.clone()
                }
                None => s1,
            };
            env.push(x, s);
            let s2 = check(t2, env);
            env.pop();
            s2
        }
    }
}

/// Environment holding every definition's declared signature.
pub fn def_env(defs: &[Def]) -> Result<TypeEnv, TypeError> {
    let mut env = TypeEnv::new();
    for (i, d) in defs.iter().enumerate() {
        if defs[..i].iter().any(|e| e.name == d.name) {
            return Err(TypeError::new(TypeErrorKind::DuplicateDef(d.name.clone()), d.span));
        }
        env.push(&d.name, d.signature());
    }
    Ok(env)
}

pub fn check_def(d: &Def, globals: &TypeEnv) -> Result<(), TypeError> {
    let mut env = globals.clone();
    for (x, t) in &d.params {
        env.push(x, t.clone());
    }
    let s = check(&d.body, &mut env)?;
    require_csub(&s, &d.ret, d.body.span)
}

pub fn typecheck_program(p: &Program) -> Result<GType, TypeError> {
    let globals = def_env(&p.defs)?;
    for d in &p.defs {
        check_def(d, &globals)?;
    }
    typecheck(&p.main, &globals)
}
