//! Random well-typed source terms, shared by the fuzz, round-trip and
//! acceptance targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gtfl::syntax::{BinOp, Term, TermKind};
use gtfl::types::{GType, Label, Tail};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LABELS: [&str; 3] = ["x", "y", "z"];

pub struct Gen {
    rng: ChaCha8Rng,
    env: Vec<(String, GType)>,
    fresh: usize,
    /// Whether `?` and gradual rows may appear.
    gradual: bool,
    /// Chance that a leaf ignores the type it was asked for.
    noise: f64,
}

fn t(kind: TermKind) -> Term {
    Term::bare(kind)
}

fn asc(e: Term, s: GType) -> Term {
    t(TermKind::Asc(Box::new(e), s))
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), env: Vec::new(), fresh: 0, gradual: true, noise: 0.0 }
    }

    /// Fully static annotations, with some leaves of the wrong type.
    pub fn static_noisy(seed: u64, noise: f64) -> Gen {
        Gen { gradual: false, noise, ..Gen::new(seed) }
    }

    /// A gradual type of height at most `depth`.
    pub fn ty(&mut self, depth: usize) -> GType {
        let leaf = depth <= 1;
        let lo = if self.gradual { 0 } else { 1 };
        match self.rng.gen_range(lo..if leaf { 3 } else { 6 }) {
            0 => GType::Unknown,
            1 => GType::Int,
            2 => GType::Bool,
            3 => GType::arrow(self.ty(depth - 1), self.ty(depth - 1)),
            _ => {
                let mut fields = BTreeMap::new();
                for l in LABELS {
                    if self.rng.gen_bool(0.4) {
                        fields.insert(Label::new(l), self.ty(depth - 1));
                    }
                }
                let tail = if self.gradual && self.rng.gen_bool(0.4) { Tail::Open } else { Tail::Closed };
                GType::Rec(fields, tail)
            }
        }
    }

    fn var(&mut self) -> String {
        self.fresh += 1;
        format!("v{}", self.fresh)
    }

    fn int(&mut self) -> Term {
        if self.rng.gen_ratio(1, 40) {
            return t(TermKind::Int(i64::MAX));
        }
        t(TermKind::Int(self.rng.gen_range(0..20)))
    }

    /// A closed term whose type is consistently a subtype of `want`, and
    /// usually equal to it.
    pub fn term(&mut self, want: &GType, fuel: usize) -> Term {
        if fuel == 0 {
            return self.leaf(want);
        }
        let f = fuel - 1;
        match self.rng.gen_range(0..10) {
            // Detour through the unknown type from an arbitrary source type.
            0 if self.gradual => {
                let s = self.ty(2);
                let inner = self.term(&s, f / 2);
                asc(asc(inner, GType::Unknown), want.clone())
            }
            1 => {
                let c = self.term(&GType::Bool, f / 3);
                let a = self.term(want, f / 2);
                let b = self.term(want, f / 2);
                t(TermKind::If(Box::new(c), Box::new(a), Box::new(b)))
            }
            2 => {
                let a = self.ty(2);
                let fun = self.term(&GType::arrow(a.clone(), want.clone()), f / 2);
                let arg = self.term(&a, f / 2);
                t(TermKind::App(Box::new(fun), Box::new(arg)))
            }
            3 => {
                let a = self.ty(2);
                let bound = self.term(&a, f / 2);
                let x = self.var();
                let annot = if self.rng.gen_bool(0.5) { Some(a.clone()) } else { None };
                self.env.push((x.clone(), a));
                let body = self.term(want, f / 2);
                self.env.pop();
                t(TermKind::Let(x, annot, Box::new(bound), Box::new(body)))
            }
            4 => {
                let l = *LABELS.choose(&mut self.rng).unwrap();
                let mut fields = vec![(Label::new(l), self.term(want, f / 2))];
                for m in LABELS {
                    if m != l && self.rng.gen_bool(0.3) {
                        let s = self.ty(1);
                        fields.push((Label::new(m), self.term(&s, f / 3)));
                    }
                }
                fields.shuffle(&mut self.rng);
                let rec = t(TermKind::Rec(fields));
                let rec = if self.gradual && self.rng.gen_bool(0.3) { asc(rec, GType::row([(l, want.clone())])) } else { rec };
                t(TermKind::Proj(Box::new(rec), Label::new(l)))
            }
            // An unknown function applied to anything.
            5 if want.is_unknown() => {
                let fun = self.term(&GType::Unknown, f / 2);
                let s = self.ty(2);
                let arg = self.term(&s, f / 2);
                t(TermKind::App(Box::new(fun), Box::new(arg)))
            }
            6 if want.is_unknown() && self.rng.gen_ratio(1, 6) => omega(),
            _ => self.shaped(want, f),
        }
    }

    /// Introduction forms for `want`.
    fn shaped(&mut self, want: &GType, fuel: usize) -> Term {
        match want {
            GType::Int => match self.rng.gen_range(0..3) {
                0 => self.int(),
                1 => self.bin(BinOp::Add, fuel),
                _ => self.bin(BinOp::Sub, fuel),
            },
            GType::Bool => match self.rng.gen_range(0..2) {
                0 => t(TermKind::Bool(self.rng.gen())),
                _ => self.bin(BinOp::Eq, fuel),
            },
            GType::Unknown => {
                let s = self.ty(2);
                let e = self.term(&s, fuel);
                asc(e, GType::Unknown)
            }
            GType::Arrow(a, b) => {
                let x = self.var();
                self.env.push((x.clone(), (**a).clone()));
                let body = self.term(b, fuel);
                self.env.pop();
                t(TermKind::Lam(x, (**a).clone(), Box::new(body)))
            }
            GType::Rec(fields, tail) => {
                let mut out: Vec<(Label, Term)> = fields.iter().map(|(l, s)| (l.clone(), self.term(s, fuel / 2))).collect();
                let mut widened = false;
                for m in LABELS {
                    let m = Label::new(m);
                    if !fields.contains_key(&m) && self.rng.gen_bool(0.25) {
                        let s = self.ty(1);
                        out.push((m, self.term(&s, fuel / 3)));
                        widened = true;
                    }
                }
                out.shuffle(&mut self.rng);
                let rec = t(TermKind::Rec(out));
                if widened || *tail == Tail::Open {
                    asc(rec, want.clone())
                } else {
                    rec
                }
            }
        }
    }

    fn bin(&mut self, op: BinOp, fuel: usize) -> Term {
        let a = self.term(&GType::Int, fuel / 2);
        let b = self.term(&GType::Int, fuel / 2);
        t(TermKind::Bin(op, Box::new(a), Box::new(b)))
    }

    fn leaf(&mut self, want: &GType) -> Term {
        if self.noise > 0.0 && self.rng.gen_bool(self.noise) {
            let other = self.ty(2);
            return self.shaped(&other, 0);
        }
        let bound: Vec<String> = self.env.iter().filter(|(_, s)| s == want).map(|(x, _)| x.clone()).collect();
        if !bound.is_empty() && self.rng.gen_bool(0.6) {
            return t(TermKind::Var(bound.choose(&mut self.rng).unwrap().clone()));
        }
        match want {
            GType::Int => self.int(),
            GType::Bool => t(TermKind::Bool(self.rng.gen())),
            GType::Unknown => {
                let e = if self.rng.gen_bool(0.5) { self.int() } else { t(TermKind::Bool(self.rng.gen())) };
                asc(e, GType::Unknown)
            }
            _ => self.shaped(want, 0),
        }
    }
}

/// `(\(x: ?). x x) (\(x: ?). x x)`
pub fn omega() -> Term {
    let w = t(TermKind::Lam(
        "w".into(),
        GType::Unknown,
        Box::new(t(TermKind::App(Box::new(t(TermKind::Var("w".into()))), Box::new(t(TermKind::Var("w".into())))))),
    ));
    t(TermKind::App(Box::new(w.clone()), Box::new(w)))
}

/// A closed term of a random type, with the type it was aimed at.
pub fn closed_term(seed: u64, fuel: usize) -> (Term, GType) {
    let mut g = Gen::new(seed);
    let want = g.ty(2);
    let term = g.term(&want, fuel);
    (term, want)
}
