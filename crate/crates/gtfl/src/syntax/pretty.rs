use super::{BinOp, Def, Program, Term, TermKind};

fn level(t: &Term) -> u8 {
    match &t.kind {
        TermKind::Lam(..) | TermKind::If(..) | TermKind::Let(..) | TermKind::Asc(..) => 0,
        TermKind::Bin(BinOp::Eq, ..) => 1,
        TermKind::Bin(..) => 2,
        TermKind::App(..) => 3,
        TermKind::Proj(..) => 4,
        _ => 5,
    }
}

/// Source text that parses back to the same term.
pub fn pretty_term(t: &Term) -> String {
    let mut s = String::new();
    go(t, 0, &mut s);
    s
}

pub fn pretty_program(p: &Program) -> String {
    let mut s = String::new();
    for d in &p.defs {
        s.push_str(&pretty_def(d));
        s.push('\n');
    }
    s.push_str(&pretty_term(&p.main));
    s
}

pub fn pretty_def(d: &Def) -> String {
    let mut s = format!("def {}", d.name);
    for (x, t) in &d.params {
        s.push_str(&format!(" ({x}: {t})"));
    }
    s.push_str(&format!(" : {} =\n  {};", d.ret, pretty_term(&d.body)));
    s
}

fn go(t: &Term, ctx: u8, out: &mut String) {
    let paren = level(t) < ctx;
    if paren {
        out.push('(');
    }
    match &t.kind {
        TermKind::Int(n) => out.push_str(&n.to_string()),
        TermKind::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        TermKind::Var(x) => out.push_str(x),
        TermKind::Lam(x, ty, body) => {
            out.push_str(&format!("\\({x}: {ty}). "));
            go(body, 0, out);
        }
        TermKind::App(f, a) => {
            go(f, 3, out);
            out.push(' ');
            go(a, 4, out);
        }
        TermKind::Bin(op, l, r) => {
            let (lc, rc) = if *op == BinOp::Eq { (2, 2) } else { (2, 3) };
            go(l, lc, out);
            out.push_str(&format!(" {} ", op.symbol()));
            go(r, rc, out);
        }
        TermKind::If(c, a, b) => {
            out.push_str("if ");
            go(c, 0, out);
            out.push_str(" then ");
            go(a, 0, out);
            out.push_str(" else ");
            go(b, 0, out);
        }
        TermKind::Rec(fs) => {
            out.push('{');
            for (i, (l, e)) in fs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format!("{l} = "));
                go(e, 0, out);
            }
            out.push('}');
        }
        TermKind::Proj(e, l) => {
            go(e, 4, out);
            out.push_str(&format!(".{l}"));
        }
        TermKind::Asc(e, ty) => {
            if matches!(e.kind, TermKind::Asc(..)) {
                go(e, 0, out);
            } else {
                go(e, 1, out);
            }
            out.push_str(&format!(" :: {ty}"));
        }
        TermKind::Let(x, ty, bound, body) => {
            match ty {
                Some(ty) => out.push_str(&format!("let {x} : {ty} = ")),
                None => out.push_str(&format!("let {x} = ")),
            }
            go(bound, 0, out);
            out.push_str(" in ");
            go(body, 0, out);
        }
    }
    if paren {
        out.push(')');
    }
}
