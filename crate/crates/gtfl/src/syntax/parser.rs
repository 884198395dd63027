use std::collections::{BTreeMap, BTreeSet};

use super::lexer::{lex, Tok};
use super::{BinOp, Def, ParseError, Program, Span, Term, TermKind};
use crate::types::{GType, Label, Tail};

pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let mut p = Parser::new(src)?;
    let mut defs = Vec::new();
    while p.peek() == &Tok::Def {
        defs.push(p.def()?);
    }
    let main = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(Program { defs, main })
}

/// A single term, without definitions.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<GType, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

fn starts_atom(t: &Tok) -> bool {
    matches!(
        t,
        Tok::Int(_)
            | Tok::Ident(_)
            | Tok::True
            | Tok::False
            | Tok::LParen
            | Tok::LBrace
            | Tok::Backslash
            | Tok::If
            | Tok::Let
    )
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let s = self.span();
        ParseError::new(s.line, s.col, expected.iter().map(|e| e.to_string()).collect(), self.peek().to_string())
    }

    fn expect(&mut self, t: Tok) -> Result<Span, ParseError> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            Err(self.error(&[&t.to_string()]))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(x)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn def(&mut self) -> Result<Def, ParseError> {
        let start = self.expect(Tok::Def)?;
        let name = self.ident()?;
        let mut params = Vec::new();
        while self.peek() == &Tok::LParen {
            self.bump();
            let x = self.ident()?;
            self.expect(Tok::Colon)?;
            let t = self.ty()?;
            self.expect(Tok::RParen)?;
            params.push((x, t));
        }
        if params.is_empty() {
            return Err(self.error(&["`(`"]));
        }
        self.expect(Tok::Colon)?;
        let ret = self.ty()?;
        self.expect(Tok::Eq)?;
        let body = self.term()?;
        let end = self.expect(Tok::Semi)?;
        Ok(Def { name, params, ret, body, span: start.to(end) })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Backslash | Tok::If | Tok::Let => self.prefix(),
            _ => self.ascription(),
        }
    }

    fn prefix(&mut self) -> Result<Term, ParseError> {
        let (tok, start) = self.bump();
        let kind = match tok {
            Tok::Backslash => {
                self.expect(Tok::LParen)?;
                let x = self.ident()?;
                self.expect(Tok::Colon)?;
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Dot)?;
                TermKind::Lam(x, t, Box::new(self.term()?))
            }
            Tok::If => {
                let c = self.term()?;
                self.expect(Tok::Then)?;
                let a = self.term()?;
                self.expect(Tok::Else)?;
                let b = self.term()?;
                TermKind::If(Box::new(c), Box::new(a), Box::new(b))
            }
            Tok::Let => {
                let x = self.ident()?;
                let annot = if self.peek() == &Tok::Colon {
                    self.bump();
                    Some(self.ty()?)
                } else {
                    None
                };
                self.expect(Tok::Eq)?;
                let bound = self.term()?;
                self.expect(Tok::In)?;
                let body = self.term()?;
                TermKind::Let(x, annot, Box::new(bound), Box::new(body))
            }
            _ => unreachable!(),
        };
        Ok(Term::new(kind, start.to(self.prev_span())))
    }

    fn ascription(&mut self) -> Result<Term, ParseError> {
        let mut t = self.equality()?;
        while self.peek() == &Tok::ColonColon {
            self.bump();
            let ty = self.ty()?;
            let span = t.span.to(self.prev_span());
            t = Term::new(TermKind::Asc(Box::new(t), ty), span);
        }
        Ok(t)
    }

    fn equality(&mut self) -> Result<Term, ParseError> {
        let l = self.additive()?;
        if self.peek() != &Tok::EqEq {
            return Ok(l);
        }
        self.bump();
        let r = self.additive()?;
        if self.peek() == &Tok::EqEq {
            return Err(self.error(&["`::`", "`)`", "end of term"]));
        }
        let span = l.span.to(r.span);
        Ok(Term::new(TermKind::Bin(BinOp::Eq, Box::new(l), Box::new(r)), span))
    }

    fn additive(&mut self) -> Result<Term, ParseError> {
        let mut l = self.application()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(l),
            };
            self.bump();
            let r = self.application()?;
            let span = l.span.to(r.span);
            l = Term::new(TermKind::Bin(op, Box::new(l), Box::new(r)), span);
        }
    }

    fn application(&mut self) -> Result<Term, ParseError> {
        let mut f = self.postfix()?;
        while starts_atom(self.peek()) {
            let a = self.postfix()?;
            let span = f.span.to(a.span);
            f = Term::new(TermKind::App(Box::new(f), Box::new(a)), span);
        }
        Ok(f)
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.peek() == &Tok::Dot {
            self.bump();
            let l = self.ident()?;
            let span = t.span.to(self.prev_span());
            t = Term::new(TermKind::Proj(Box::new(t), Label::new(&l)), span);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let start = self.span();
        let kind = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                TermKind::Int(n)
            }
            Tok::True => {
                self.bump();
                TermKind::Bool(true)
            }
            Tok::False => {
                self.bump();
                TermKind::Bool(false)
            }
            Tok::Ident(x) => {
                self.bump();
                TermKind::Var(x)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                return Ok(Term::new(t.kind, start.to(self.prev_span())));
            }
            Tok::LBrace => {
                self.bump();
                let mut fields = Vec::new();
                let mut seen = BTreeSet::new();
                if self.peek() != &Tok::RBrace {
                    loop {
                        let at = self.span();
                        let l = self.ident()?;
                        if !seen.insert(l.clone()) {
                            return Err(ParseError::new(at.line, at.col, vec!["a fresh label".into()], format!("duplicate label `{l}`")));
                        }
                        self.expect(Tok::Eq)?;
                        fields.push((Label::new(&l), self.term()?));
                        if self.peek() == &Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                if self.peek() != &Tok::RBrace {
                    return Err(self.error(&["`,`", "`}`"]));
                }
                self.bump();
                TermKind::Rec(fields)
            }
            Tok::Backslash | Tok::If | Tok::Let => return self.prefix(),
            _ => return Err(self.error(&["term"])),
        };
        Ok(Term::new(kind, start.to(self.prev_span())))
    }

    fn ty(&mut self) -> Result<GType, ParseError> {
        let a = self.base_ty()?;
        if self.peek() == &Tok::Arrow {
            self.bump();
            Ok(GType::arrow(a, self.ty()?))
        } else {
            Ok(a)
        }
    }

    fn base_ty(&mut self) -> Result<GType, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) if x == "Int" => {
                self.bump();
                Ok(GType::Int)
            }
            Tok::Ident(x) if x == "Bool" => {
                self.bump();
                Ok(GType::Bool)
            }
            Tok::Question => {
                self.bump();
                Ok(GType::Unknown)
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::LBrace => {
                self.bump();
                let mut fields = BTreeMap::new();
                let mut tail = Tail::Closed;
                if self.peek() != &Tok::RBrace {
                    loop {
                        if self.peek() == &Tok::Question {
                            self.bump();
                            tail = Tail::Open;
                            break;
                        }
                        let at = self.span();
                        let l = self.ident()?;
                        self.expect(Tok::Colon)?;
                        let t = self.ty()?;
                        if fields.insert(Label::new(&l), t).is_some() {
                            return Err(ParseError::new(at.line, at.col, vec!["a fresh label".into()], format!("duplicate label `{l}`")));
                        }
                        if self.peek() == &Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBrace)?;
                Ok(GType::Rec(fields, tail))
            }
            _ => Err(self.error(&["type"])),
        }
    }
}
