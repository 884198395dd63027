//! Frame machine shared by both semantics.
//!
//! The stack holds the evaluation context innermost-last. Ascription frames
//! come from ascription terms, slot frames from elimination forms whose
//! operand is being evaluated under its evidence. Under RL ascription frames
//! may pile up; under RL⁺ an ascription meeting another evidence frame is
//! merged on the spot, so they never become adjacent.

use std::collections::BTreeMap;

use super::{ErrorKind, RunConfig, RuntimeError, Semantics, SpaceMetrics, TraceEvent};
use super::space::{composition_bound, space_of, Cost};
use crate::elab::{EvTerm, RTerm};
use crate::evidence::{Evidence, TotalEvidence};
use crate::syntax::{BinOp, Span};
use crate::types::Label;

#[derive(Clone, Debug)]
enum SlotKind {
    AppFun { arg: EvTerm },
    AppArg { fun_ev: TotalEvidence, fun: RTerm, fun_span: Span },
    BinL { op: BinOp, right: EvTerm },
    BinR { op: BinOp, left_ev: TotalEvidence, left: RTerm, left_span: Span },
    IfCond { then: EvTerm, els: EvTerm },
    Proj { label: Label },
    Let { x: String, body: RTerm },
}

#[derive(Clone, Debug)]
enum Frame {
    Asc { ev: TotalEvidence, span: Span },
    Slot { ev: TotalEvidence, span: Span, kind: SlotKind },
    Rec { done: Vec<(Label, RTerm)>, label: Label, rest: Vec<(Label, RTerm)> },
}

impl Frame {
    fn holds_evidence(&self) -> bool {
        !matches!(self, Frame::Rec { .. })
    }
}

enum Flow {
    Continue,
    Stepped(&'static str),
}

pub(super) struct Machine<'a> {
    sem: Semantics,
    globals: &'a BTreeMap<String, RTerm>,
    stack: Vec<Frame>,
    /// Length of the run of adjacent evidence frames ending at each frame.
    runs: Vec<usize>,
    focus: RTerm,
    pub metrics: SpaceMetrics,
}

type StepResult = Result<Option<&'static str>, RuntimeError>;

impl<'a> Machine<'a> {
    pub fn new(sem: Semantics, globals: &'a BTreeMap<String, RTerm>, main: RTerm, metrics: SpaceMetrics) -> Machine<'a> {
        Machine { sem, globals, stack: Vec::new(), runs: Vec::new(), focus: main, metrics }
    }

    fn push(&mut self, f: Frame) {
        let prev = self.runs.last().copied().unwrap_or(0);
        let run = match f {
            Frame::Asc { .. } => prev + 1,
            Frame::Slot { .. } => 1,
            Frame::Rec { .. } => 0,
        };
        self.metrics.max_pending_ascriptions = self.metrics.max_pending_ascriptions.max(run);
        self.stack.push(f);
        self.runs.push(run);
    }

    fn pop(&mut self) -> Option<Frame> {
        self.runs.pop();
        self.stack.pop()
    }

    fn observe(&mut self, e: &Evidence) {
        debug_assert!(e.wf(), "ill-formed evidence {e}");
        self.metrics.max_evidence_size = self.metrics.max_evidence_size.max(e.size());
    }

    /// `inner` then `outer`; RL fails on the spot, RL⁺ keeps `⊥`.
    fn compose(&mut self, inner: &TotalEvidence, outer: &TotalEvidence, span: Span) -> Result<TotalEvidence, RuntimeError> {
        let r = inner.compose(outer);
        match (&r, inner, outer) {
            (TotalEvidence::Ev(e), TotalEvidence::Ev(a), TotalEvidence::Ev(b)) => {
                if e.size() > composition_bound(a, b) {
                    self.metrics.composition_bound_violations += 1;
                }
                let e = e.clone();
                self.observe(&e);
            }
            (TotalEvidence::Bottom, _, _) if self.sem == Semantics::Rl => {
                return Err(RuntimeError::new(ErrorKind::Transitivity { inner: inner.clone(), outer: outer.clone() }, span));
            }
            _ => {}
        }
        Ok(r)
    }

    fn invert(&mut self, ev: &TotalEvidence, f: impl Fn(&Evidence) -> Evidence, span: Span) -> Result<Evidence, RuntimeError> {
        match ev {
            TotalEvidence::Ev(e) => {
                let r = f(e);
                self.observe(&r);
                Ok(r)
            }
            TotalEvidence::Bottom => Err(RuntimeError::new(ErrorKind::LatentFailure, span)),
        }
    }

    fn stuck(&self, what: &str) -> RuntimeError {
        RuntimeError::new(ErrorKind::Stuck(format!("{what}: {}", self.focus)), Span::default())
    }

    /// Perform one counted step; `Ok(None)` once the whole term is a value.
    pub fn step(&mut self) -> StepResult {
        loop {
            if self.is_done() {
                return Ok(None);
            }
            let flow = if self.focus.is_value() { self.ret()? } else { self.descend()? };
            match flow {
                Flow::Continue => continue,
                Flow::Stepped(rule) => return Ok(Some(rule)),
            }
        }
    }

    pub fn is_done(&self) -> bool {
        self.stack.is_empty() && self.focus.is_value()
    }

    fn ret(&mut self) -> Result<Flow, RuntimeError> {
        if self.sem == Semantics::RlPlus {
            if let RTerm::Asc(et) = &self.focus {
                let under_evidence = self.stack.last().is_some_and(Frame::holds_evidence);
                if et.ev == TotalEvidence::Bottom && !under_evidence {
                    return Err(RuntimeError::new(ErrorKind::LatentFailure, et.span));
                }
            }
        }
        let Some(frame) = self.pop() else {
            return Err(self.stuck("finished machine stepped"));
        };
        let focus = std::mem::replace(&mut self.focus, RTerm::Num(0));
        match frame {
            Frame::Asc { ev, span } => match focus {
                RTerm::Asc(inner) => {
                    let merged = self.compose(&inner.ev, &ev, span)?;
                    self.focus = RTerm::Asc(EvTerm { ev: merged, term: inner.term, span });
                    Ok(Flow::Stepped("merge"))
                }
                u => {
                    if ev == TotalEvidence::Bottom {
                        return Err(RuntimeError::new(ErrorKind::LatentFailure, span));
                    }
                    self.focus = RTerm::Asc(EvTerm { ev, term: Box::new(u), span });
                    Ok(Flow::Continue)
                }
            },
            Frame::Slot { ev, span, kind } => match focus {
                RTerm::Asc(inner) => {
                    let merged = self.compose(&inner.ev, &ev, span)?;
                    self.push(Frame::Slot { ev: merged, span, kind });
                    self.focus = *inner.term;
                    Ok(Flow::Stepped("merge"))
                }
                u => {
                    if ev == TotalEvidence::Bottom {
                        return Err(RuntimeError::new(ErrorKind::LatentFailure, span));
                    }
                    self.complete(ev, span, kind, u)
                }
            },
            Frame::Rec { mut done, label, rest } => {
                done.push((label, focus));
                self.continue_record(done, rest);
                Ok(Flow::Continue)
            }
        }
    }

    fn continue_record(&mut self, mut done: Vec<(Label, RTerm)>, rest: Vec<(Label, RTerm)>) {
        let mut it = rest.into_iter();
        while let Some((l, t)) = it.next() {
            if t.is_value() {
                done.push((l, t));
            } else {
                self.push(Frame::Rec { done, label: l, rest: it.collect() });
                self.focus = t;
                return;
            }
        }
        self.focus = RTerm::Rec(done);
    }

    fn complete(&mut self, ev: TotalEvidence, span: Span, kind: SlotKind, u: RTerm) -> Result<Flow, RuntimeError> {
        match kind {
            SlotKind::AppFun { arg } => {
                self.push(Frame::Slot { ev: arg.ev, span: arg.span, kind: SlotKind::AppArg { fun_ev: ev, fun: u, fun_span: span } });
                self.focus = *arg.term;
                Ok(Flow::Continue)
            }
            SlotKind::AppArg { fun_ev, fun, fun_span } => {
                let RTerm::Lam(x, body) = fun else {
                    self.focus = fun;
                    return Err(self.stuck("applying a non-function"));
                };
                let dom = self.invert(&fun_ev, Evidence::idom, fun_span)?;
                let cod = self.invert(&fun_ev, Evidence::icod, fun_span)?;
                // A notion of reduction: fails on the spot under both semantics.
                let dom = TotalEvidence::Ev(dom);
                let e3 = self.compose(&ev, &dom, span)?;
                if e3 == TotalEvidence::Bottom {
                    return Err(RuntimeError::new(ErrorKind::Transitivity { inner: ev, outer: dom }, span));
                }
                let arg = RTerm::Asc(EvTerm { ev: e3, term: Box::new(u), span });
                self.focus = RTerm::Asc(EvTerm::new(cod, body.subst(&x, &arg), fun_span));
                Ok(Flow::Stepped("app"))
            }
            SlotKind::BinL { op, right } => {
                self.push(Frame::Slot { ev: right.ev, span: right.span, kind: SlotKind::BinR { op, left_ev: ev, left: u, left_span: span } });
                self.focus = *right.term;
                Ok(Flow::Continue)
            }
            SlotKind::BinR { op, left, .. } => {
                let (RTerm::Num(a), RTerm::Num(b)) = (&left, &u) else {
                    self.focus = RTerm::Bin(op, EvTerm::new(TotalEvidence::Bottom, left, span), EvTerm::new(ev, u, span));
                    return Err(self.stuck("arithmetic on non-integers"));
                };
                self.focus = match op {
                    BinOp::Add => RTerm::Num(a.checked_add(*b).ok_or(RuntimeError::new(ErrorKind::Overflow(op), span))?),
                    BinOp::Sub => RTerm::Num(a.checked_sub(*b).ok_or(RuntimeError::new(ErrorKind::Overflow(op), span))?),
                    BinOp::Eq => RTerm::Bool(a == b),
                };
                Ok(Flow::Stepped(op_rule(op)))
            }
            SlotKind::IfCond { then, els } => {
                let branch = match u {
                    RTerm::Bool(true) => then,
                    RTerm::Bool(false) => els,
                    other => {
                        self.focus = other;
                        return Err(self.stuck("branching on a non-boolean"));
                    }
                };
                self.focus = RTerm::Asc(branch);
                Ok(Flow::Stepped("if"))
            }
            SlotKind::Proj { label } => {
                let RTerm::Rec(fields) = u else {
                    self.focus = u;
                    return Err(self.stuck("projecting from a non-record"));
                };
                let Some((_, v)) = fields.into_iter().find(|(l, _)| *l == label) else {
                    return Err(self.stuck("projecting a missing field"));
                };
                let pe = self.invert(&ev, |e| e.iproj(&label), span)?;
                self.focus = RTerm::Asc(EvTerm::new(pe, v, span));
                Ok(Flow::Stepped("proj"))
            }
            SlotKind::Let { x, body } => {
                let v = RTerm::Asc(EvTerm { ev, term: Box::new(u), span });
                self.focus = body.subst(&x, &v);
                Ok(Flow::Stepped("let"))
            }
        }
    }

    fn descend(&mut self) -> Result<Flow, RuntimeError> {
        let focus = std::mem::replace(&mut self.focus, RTerm::Num(0));
        match focus {
            RTerm::Global(g) => match self.globals.get(&g) {
                Some(def) => {
                    self.focus = def.clone();
                    Ok(Flow::Stepped("unfold"))
                }
                None => {
                    self.focus = RTerm::Global(g);
                    Err(self.stuck("unknown definition"))
                }
            },
            RTerm::Rec(fields) => {
                self.continue_record(Vec::new(), fields);
                Ok(Flow::Continue)
            }
            RTerm::Asc(et) => {
                if self.sem == Semantics::RlPlus {
                    if let RTerm::Asc(inner) = *et.term {
                        let merged = self.compose(&inner.ev, &et.ev, et.span)?;
                        self.focus = RTerm::Asc(EvTerm { ev: merged, term: inner.term, span: et.span });
                        return Ok(Flow::Stepped("merge"));
                    }
                    if let Some(Frame::Asc { ev, span } | Frame::Slot { ev, span, .. }) = self.stack.last() {
                        let (ev, span) = (ev.clone(), *span);
                        let merged = self.compose(&et.ev, &ev, span)?;
                        match self.stack.last_mut() {
                            Some(Frame::Asc { ev, .. } | Frame::Slot { ev, .. }) => *ev = merged,
                            _ => unreachable!(),
                        }
                        self.focus = *et.term;
                        return Ok(Flow::Stepped("merge"));
                    }
                }
                self.push(Frame::Asc { ev: et.ev, span: et.span });
                self.focus = *et.term;
                Ok(Flow::Continue)
            }
            RTerm::App(f, a) => self.enter(f, SlotKind::AppFun { arg: a }),
            RTerm::Bin(op, a, b) => self.enter(a, SlotKind::BinL { op, right: b }),
            RTerm::If(c, t, e) => self.enter(c, SlotKind::IfCond { then: t, els: e }),
            RTerm::Proj(a, label) => self.enter(a, SlotKind::Proj { label }),
            RTerm::Let(x, a, body) => self.enter(a, SlotKind::Let { x, body: *body }),
            other @ (RTerm::Var(_) | RTerm::Num(_) | RTerm::Bool(_) | RTerm::Lam(..)) => {
                self.focus = other;
                Err(self.stuck("free variable or misplaced value"))
            }
        }
    }

    fn enter(&mut self, slot: EvTerm, kind: SlotKind) -> Result<Flow, RuntimeError> {
        self.push(Frame::Slot { ev: slot.ev, span: slot.span, kind });
        self.focus = *slot.term;
        Ok(Flow::Continue)
    }

    /// The current term with its context plugged back in.
    pub fn plug(&self) -> RTerm {
        let mut t = self.focus.clone();
        for f in self.stack.iter().rev() {
            t = match f.clone() {
                Frame::Asc { ev, span } => RTerm::Asc(EvTerm { ev, term: Box::new(t), span }),
                Frame::Rec { mut done, label, rest } => {
                    done.push((label, t));
                    done.extend(rest);
                    RTerm::Rec(done)
                }
                Frame::Slot { ev, span, kind } => {
                    let slot = EvTerm { ev, term: Box::new(t), span };
                    match kind {
                        SlotKind::AppFun { arg } => RTerm::App(slot, arg),
                        SlotKind::AppArg { fun_ev, fun, fun_span } => RTerm::App(EvTerm::new(fun_ev, fun, fun_span), slot),
                        SlotKind::BinL { op, right } => RTerm::Bin(op, slot, right),
                        SlotKind::BinR { op, left_ev, left, left_span } => RTerm::Bin(op, EvTerm::new(left_ev, left, left_span), slot),
                        SlotKind::IfCond { then, els } => RTerm::If(slot, then, els),
                        SlotKind::Proj { label } => RTerm::Proj(slot, label),
                        SlotKind::Let { x, body } => RTerm::Let(x, slot, Box::new(body)),
                    }
                }
            };
        }
        t
    }

    /// Record space figures for the current state.
    pub fn meter(&mut self, cfg: &RunConfig) {
        if !cfg.meter_space {
            return;
        }
        let t = self.plug();
        let with = space_of(Cost::Size, &t);
        let without = space_of(Cost::Zero, &t);
        self.metrics.space_now = with;
        self.metrics.max_space = self.metrics.max_space.max(with);
        if with as u128 > 3 * self.metrics.bound_b as u128 * without as u128 {
            self.metrics.overhead_violations += 1;
        }
    }

    pub fn trace_event(&self, step: u64, rule: &str) -> TraceEvent {
        TraceEvent { step, rule: rule.to_string(), term: self.plug().to_string(), metrics: self.metrics.clone() }
    }
}

fn op_rule(op: BinOp) -> &'static str {
    match op {
        BinOp::Add => "add",
        BinOp::Sub => "sub",
        BinOp::Eq => "eq",
    }
}
