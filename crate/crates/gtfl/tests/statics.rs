mod common;

use std::collections::BTreeMap;

use gtfl::elab::elaborate_program;
use gtfl::evidence::Backend;
use gtfl::oracle::{alpha_gr, enumerate, enumerate_gr, gamma_gr};
use gtfl::statics::{
    ccod, cdom, consistent_subtype, cproj, csub_join, gradual_meet, static_join, static_meet, static_subtype, typecheck,
    typecheck_program, TypeEnv, TypeErrorKind,
};
use gtfl::syntax::{parse_program, parse_term, BinOp, Term, TermKind};
use gtfl::types::{GType, Label, Type};

fn labels(ls: &[&str]) -> Vec<Label> {
    ls.iter().map(|l| Label::new(l)).collect()
}

fn xy() -> Type {
    Type::record([("x", Type::Int), ("y", Type::Bool)])
}

fn check(src: &str) -> Result<GType, TypeErrorKind> {
    typecheck(&parse_term(src).unwrap(), &TypeEnv::new()).map_err(|e| e.kind)
}

#[test]
fn static_subtyping_examples() {
    assert!(static_subtype(&xy(), &Type::record([("x", Type::Int)])));
    assert!(static_subtype(&Type::Int, &Type::Int));
    assert!(!static_subtype(&Type::record([("x", Type::Int)]), &xy()));
    let f = Type::arrow(Type::record([("x", Type::Int)]), Type::Int);
    assert!(static_subtype(&f, &Type::arrow(xy(), Type::Int)));
}

#[test]
fn static_extrema_examples() {
    let xq = Type::record([("x", Type::Int), ("q", Type::Int)]);
    assert_eq!(static_join(&xy(), &xq), Some(Type::record([("x", Type::Int)])));
    assert_eq!(static_meet(&Type::record([("x", Type::Int)]), &Type::record([("y", Type::Bool)])), Some(xy()));
    assert_eq!(static_join(&Type::Int, &Type::Bool), None);
}

// Least upper and greatest lower bounds by search. The universe is closed
// under both operations, so the search is exact.
#[test]
fn static_extrema_match_brute_force() {
    let u = enumerate(2, &labels(&["x", "y"])).unwrap();
    let bound = |a: &Type, b: &Type, upper: bool| -> Option<Type> {
        let le = |s: &Type, t: &Type| if upper { static_subtype(s, t) } else { static_subtype(t, s) };
        let bounds: Vec<&Type> = u.members.iter().filter(|c| le(a, c) && le(b, c)).collect();
        bounds.iter().find(|c| bounds.iter().all(|d| le(c, d))).map(|c| (*c).clone())
    };
    for a in &u.members {
        for b in &u.members {
            assert_eq!(static_join(a, b), bound(a, b, true), "join {a} {b}");
            assert_eq!(static_meet(a, b), bound(a, b, false), "meet {a} {b}");
        }
    }
}

#[test]
fn consistent_subtyping_examples() {
    let xy = GType::record([("x", GType::Int), ("y", GType::Bool)]);
    assert!(consistent_subtype(&xy, &GType::row([("x", GType::Int)])));
    for s in enumerate_gr(2, &labels(&["x"])).unwrap() {
        assert!(consistent_subtype(&GType::Unknown, &s));
    }
    assert!(!consistent_subtype(&GType::Int, &GType::Bool));
}

#[test]
fn destructor_examples() {
    assert_eq!(ccod(&GType::Unknown), Some(GType::Unknown));
    assert_eq!(ccod(&GType::arrow(GType::Int, GType::Bool)), Some(GType::Bool));
    assert_eq!(ccod(&GType::Int), None);
    assert_eq!(cdom(&GType::arrow(GType::Int, GType::Bool)), Some(GType::Int));
    assert_eq!(cproj(&GType::row([("f", GType::Int)]), &Label::new("m")), Some(GType::Unknown));
    assert_eq!(cproj(&GType::record([("x", GType::Int)]), &Label::new("x")), Some(GType::Int));
    assert_eq!(cproj(&GType::record([("x", GType::Int)]), &Label::new("y")), None);
}

#[test]
fn consistent_extrema_examples() {
    assert_eq!(csub_join(&GType::Int, &GType::Unknown), Some(GType::Int));
    let xy = GType::record([("x", GType::Int), ("y", GType::Bool)]);
    let xq = GType::record([("x", GType::Int), ("q", GType::Int)]);
    assert_eq!(csub_join(&xy, &xq), Some(GType::record([("x", GType::Int)])));
    assert_eq!(csub_join(&GType::Int, &GType::Bool), None);
}

#[test]
fn gradual_meet_examples() {
    let s = GType::record([("x", GType::Int)]);
    assert_eq!(gradual_meet(&s, &GType::Unknown), Some(s));
    let a = GType::record([("x", GType::Unknown), ("y", GType::Bool)]);
    assert_eq!(gradual_meet(&a, &GType::row([("x", GType::Int)])), Some(GType::record([("x", GType::Int), ("y", GType::Bool)])));
    assert_eq!(gradual_meet(&GType::Int, &GType::Bool), None);
}

#[test]
fn csub_join_is_an_upper_bound() {
    let ts = enumerate_gr(2, &labels(&["x", "y"])).unwrap();
    for a in &ts {
        for b in &ts {
            if let Some(j) = csub_join(a, b) {
                assert!(consistent_subtype(a, &j) && consistent_subtype(b, &j), "{a} {b} {j}");
            }
        }
    }
}

// Meet against the abstraction of the intersected concretizations, with the
// same one-extra-label universe as the precision check.
#[test]
fn gradual_meet_matches_abstraction() {
    let u = enumerate(3, &labels(&["x", "y"])).unwrap();
    let ts = enumerate_gr(2, &labels(&["x"])).unwrap();
    for a in &ts {
        let ga = gamma_gr(a, &u);
        for b in &ts {
            let both: Vec<&Type> = gamma_gr(b, &u).into_iter().filter(|t| ga.contains(t)).collect();
            let expected = if both.is_empty() { None } else { Some(alpha_gr(&both).unwrap()) };
            assert_eq!(gradual_meet(a, b), expected, "{a} ⊓ {b}");
        }
    }
}

#[test]
fn typing_examples() {
    assert_eq!(check("let q : {x:Int} = {x = 5, y = true} in ((q :: ?) :: {x:Int, y:Bool}).y"), Ok(GType::Bool));
    let Err(TypeErrorKind::NotConsistent(a, b)) = check("5 + true") else { panic!() };
    assert_eq!((a, b), (GType::Bool, GType::Int));
    let row = GType::row([("f", GType::Int)]);
    assert_eq!(check(r"\(x: {f: Int, ?}). x.m + x.f"), Ok(GType::arrow(row, GType::Int)));
    assert!(check("if 1 then 2 else 3").is_err());
    assert!(check("if true then 2 else false").is_err());
    assert_eq!(check("if true then {x = 1} else {x = 2, y = true}"), Ok(GType::record([("x", GType::Int)])));
    assert!(check("{x = 1}.y").is_err());
    assert!(check("3 4").is_err());
    assert!(check("z").is_err());
}

#[test]
fn elaboration_agrees_with_typing_on_the_corpus() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let p = parse_program(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let ty = typecheck_program(&p).unwrap();
        for b in [Backend::Gr, Backend::Brr] {
            assert_eq!(elaborate_program(&p, b).unwrap().ty, ty, "{}", path.display());
        }
    }
}

/// A checker for the fully static language, written independently.
fn reference(t: &Term, env: &mut Vec<(String, Type)>) -> Option<Type> {
    fn sub(a: &Type, b: &Type) -> bool {
        match (a, b) {
            (Type::Int, Type::Int) | (Type::Bool, Type::Bool) => true,
            (Type::Arrow(a1, b1), Type::Arrow(a2, b2)) => sub(a2, a1) && sub(b1, b2),
            (Type::Record(f1), Type::Record(f2)) => f2.iter().all(|(l, t2)| f1.get(l).is_some_and(|t1| sub(t1, t2))),
            _ => false,
        }
    }
    fn ext(a: &Type, b: &Type, up: bool) -> Option<Type> {
        match (a, b) {
            (Type::Int, Type::Int) => Some(Type::Int),
            (Type::Bool, Type::Bool) => Some(Type::Bool),
            (Type::Arrow(a1, b1), Type::Arrow(a2, b2)) => Some(Type::arrow(ext(a1, a2, !up)?, ext(b1, b2, up)?)),
            (Type::Record(f1), Type::Record(f2)) => {
                let mut out = BTreeMap::new();
                for l in f1.keys().chain(f2.keys()) {
                    match (f1.get(l), f2.get(l)) {
                        (Some(x), Some(y)) => match ext(x, y, up) {
                            Some(t) => {
                                out.insert(l.clone(), t);
                            }
                            None if up => {}
                            None => return None,
                        },
                        (Some(x), None) | (None, Some(x)) if !up => {
                            out.insert(l.clone(), x.clone());
                        }
                        _ => {}
                    }
                }
                Some(Type::Record(out))
            }
            _ => None,
        }
    }
    let st = |s: &GType| s.to_static().expect("static annotation");
    match &t.kind {
        TermKind::Int(_) => Some(Type::Int),
        TermKind::Bool(_) => Some(Type::Bool),
        TermKind::Var(x) => env.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t.clone()),
        TermKind::Lam(x, s, b) => {
            env.push((x.clone(), st(s)));
            let r = reference(b, env);
            env.pop();
            Some(Type::arrow(st(s), r?))
        }
        TermKind::App(f, a) => {
            let Type::Arrow(d, c) = reference(f, env)? else { return None };
            sub(&reference(a, env)?, &d).then_some(*c)
        }
        TermKind::Bin(op, a, b) => {
            let ok = sub(&reference(a, env)?, &Type::Int) && sub(&reference(b, env)?, &Type::Int);
            ok.then_some(if *op == BinOp::Eq { Type::Bool } else { Type::Int })
        }
        TermKind::If(c, a, b) => {
            if reference(c, env)? != Type::Bool {
                return None;
            }
            ext(&reference(a, env)?, &reference(b, env)?, true)
        }
        TermKind::Rec(fs) => {
            let mut out = BTreeMap::new();
            for (l, e) in fs {
                out.insert(l.clone(), reference(e, env)?);
            }
            Some(Type::Record(out))
        }
        TermKind::Proj(e, l) => match reference(e, env)? {
            Type::Record(fs) => fs.get(l).cloned(),
            _ => None,
        },
        TermKind::Asc(e, s) => sub(&reference(e, env)?, &st(s)).then(|| st(s)),
        TermKind::Let(x, annot, a, b) => {
            let ta = reference(a, env)?;
            let tx = match annot {
                Some(s) if sub(&ta, &st(s)) => st(s),
                Some(_) => return None,
                None => ta,
            };
            env.push((x.clone(), tx));
            let r = reference(b, env);
            env.pop();
            r
        }
    }
}

#[test]
fn conservative_over_the_static_language() {
    let (mut accepted, mut rejected) = (0, 0);
    for seed in 0..3000 {
        let mut g = common::Gen::static_noisy(seed, 0.08);
        let want = g.ty(2);
        let t = g.term(&want, 10);
        let ours = typecheck(&t, &TypeEnv::new()).ok();
        let theirs = reference(&t, &mut Vec::new());
        assert_eq!(ours, theirs.as_ref().map(GType::from_static), "seed {seed}: {}", gtfl::syntax::pretty_term(&t));
        if ours.is_some() {
            accepted += 1;
        } else {
            rejected += 1;
        }
    }
    assert!(accepted > 500 && rejected > 500, "{accepted} accepted, {rejected} rejected");
}
