use std::fmt;

use super::{ParseError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(i64),
    Ident(String),
    Let,
    In,
    If,
    Then,
    Else,
    True,
    False,
    Def,
    Backslash,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    ColonColon,
    Dot,
    Comma,
    Semi,
    Eq,
    EqEq,
    Plus,
    Minus,
    Arrow,
    Question,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Int(n) => return write!(f, "integer {n}"),
            Tok::Ident(x) => return write!(f, "identifier `{x}`"),
            Tok::Let => "`let`",
            Tok::In => "`in`",
            Tok::If => "`if`",
            Tok::Then => "`then`",
            Tok::Else => "`else`",
            Tok::True => "`true`",
            Tok::False => "`false`",
            Tok::Def => "`def`",
            Tok::Backslash => "`\\`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Colon => "`:`",
            Tok::ColonColon => "`::`",
            Tok::Dot => "`.`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Eq => "`=`",
            Tok::EqEq => "`==`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Arrow => "`->`",
            Tok::Question => "`?`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

pub fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if src[i..].starts_with("//") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i].parse::<i64>().map_err(|_| {
                ParseError::new(line, col, vec!["an integer that fits in 64 bits".into()], src[start..i].into())
            })?;
            Tok::Int(n)
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            match &src[start..i] {
                "let" => Tok::Let,
                "in" => Tok::In,
                "if" => Tok::If,
                "then" => Tok::Then,
                "else" => Tok::Else,
                "true" => Tok::True,
                "false" => Tok::False,
                "def" => Tok::Def,
                x => Tok::Ident(x.to_string()),
            }
        } else {
            let two = src.get(i..i + 2).unwrap_or("");
            let (t, len) = match two {
                "::" => (Tok::ColonColon, 2),
                "==" => (Tok::EqEq, 2),
                "->" => (Tok::Arrow, 2),
                _ => {
                    let t = match c {
                        b'\\' => Tok::Backslash,
                        b'(' => Tok::LParen,
                        b')' => Tok::RParen,
                        b'{' => Tok::LBrace,
                        b'}' => Tok::RBrace,
                        b':' => Tok::Colon,
                        b'.' => Tok::Dot,
                        b',' => Tok::Comma,
                        b';' => Tok::Semi,
                        b'=' => Tok::Eq,
                        b'+' => Tok::Plus,
                        b'-' => Tok::Minus,
                        b'?' => Tok::Question,
                        _ => {
                            let ch = src[i..].chars().next().unwrap();
                            return Err(ParseError::new(line, col, vec!["a token".into()], format!("`{ch}`")));
                        }
                    };
                    (t, 1)
                }
            };
            i += len;
            t
        };
        let width = (i - start) as u32;
        out.push((tok, Span { start, end: i, line, col }));
        col += width;
    }
    out.push((Tok::Eof, Span { start: i, end: i, line, col }));
    Ok(out)
}
