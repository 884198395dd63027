//! Source syntax: AST, lexer, parser and printer.

mod ast;
mod lexer;
mod parser;
mod pretty;

use std::fmt;

pub use ast::{BinOp, Def, Program, Span, Term, TermKind};
pub use parser::{parse_program, parse_term, parse_type};
pub use pretty::{pretty_def, pretty_program, pretty_term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub fn new(line: u32, col: u32, expected: Vec<String>, found: String) -> ParseError {
        ParseError { line, col, expected, found }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: parse error: expected {}, found {}", self.line, self.col, self.expected.join(" or "), self.found)
    }
}

impl std::error::Error for ParseError {}
