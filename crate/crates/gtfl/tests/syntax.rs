mod common;

use gtfl::syntax::{parse_program, parse_term, parse_type, pretty_program, pretty_term, Term, TermKind};
use gtfl::types::{BType, GType, Label, Mapping};
use proptest::prelude::*;

fn b(kind: TermKind) -> Box<Term> {
    Box::new(Term::bare(kind))
}

fn intro_ast() -> Term {
    let xy = GType::record([("x", GType::Int), ("y", GType::Bool)]);
    let q = TermKind::Var("q".into());
    let casted = TermKind::Asc(b(TermKind::Asc(b(q), GType::Unknown)), xy);
    Term::bare(TermKind::Let(
        "q".into(),
        Some(GType::record([("x", GType::Int)])),
        b(TermKind::Rec(vec![(Label::new("x"), Term::bare(TermKind::Int(5))), (Label::new("y"), Term::bare(TermKind::Bool(true)))])),
        b(TermKind::Proj(b(casted), Label::new("y"))),
    ))
}

const INTRO: &str = "let q : {x:Int} = {x = 5, y = true} in (q :: ? :: {x:Int, y:Bool}).y";

#[test]
fn intro_program_parses_to_the_expected_tree() {
    assert_eq!(parse_term(INTRO).unwrap(), intro_ast());
}

#[test]
fn ascription_is_left_associative() {
    let t = parse_term("1 :: ? :: Int").unwrap();
    let expected = Term::bare(TermKind::Asc(b(TermKind::Asc(b(TermKind::Int(1)), GType::Unknown)), GType::Int));
    assert_eq!(t, expected);
}

#[test]
fn lambda_with_conditional_body() {
    let t = parse_term(r"\(n: Int). if n then 1 else 2").unwrap();
    let body = TermKind::If(b(TermKind::Var("n".into())), b(TermKind::Int(1)), b(TermKind::Int(2)));
    assert_eq!(t, Term::bare(TermKind::Lam("n".into(), GType::Int, b(body))));
}

#[test]
fn trailing_comma_is_rejected_with_a_position() {
    let e = parse_term("{x = 5,}").unwrap_err();
    assert_eq!((e.line, e.col), (1, 8));
    assert!(!e.expected.is_empty());
}

#[test]
fn application_binds_tighter_than_addition() {
    let t = parse_term("f 1 + 2").unwrap();
    let app = TermKind::App(b(TermKind::Var("f".into())), b(TermKind::Int(1)));
    assert_eq!(t, Term::bare(TermKind::Bin(gtfl::syntax::BinOp::Add, b(app), b(TermKind::Int(2)))));
}

#[test]
fn arrows_associate_to_the_right() {
    let t = parse_type("Int -> Bool -> ?").unwrap();
    assert_eq!(t, GType::arrow(GType::Int, GType::arrow(GType::Bool, GType::Unknown)));
}

#[test]
fn type_notation() {
    assert_eq!(GType::row([("x", GType::Int)]).to_string(), "{x: Int, ?}");
    assert_eq!(GType::empty_row().to_string(), "{?}");
    assert_eq!(BType::record([("x", Mapping::Opt(BType::Int))]).to_string(), "[x O: Int]");
    assert_eq!(parse_type("{?}").unwrap(), GType::empty_row());
    assert_eq!(parse_type("{y: Bool, x: Int, ?}").unwrap(), GType::row([("x", GType::Int), ("y", GType::Bool)]));
}

#[test]
fn duplicate_labels_are_rejected() {
    assert!(parse_term("{x = 1, x = 2}").is_err());
    assert!(parse_type("{x: Int, x: Bool}").is_err());
}

#[test]
fn intro_program_round_trips() {
    let t = parse_term(INTRO).unwrap();
    assert_eq!(parse_term(&pretty_term(&t)).unwrap(), t);
}

#[test]
fn every_corpus_program_parses_and_round_trips() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "gtfl") {
            let src = std::fs::read_to_string(&path).unwrap();
            let p = parse_program(&src).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(parse_program(&pretty_program(&p)).unwrap(), p, "{}", path.display());
            n += 1;
        }
    }
    assert!(n >= 20);
}

fn gradual_type() -> impl Strategy<Value = GType> {
    any::<u64>().prop_map(|seed| common::Gen::new(seed).ty(3))
}

proptest! {
    #[test]
    fn pretty_then_parse_is_identity_on_terms(seed in any::<u64>()) {
        let (t, _) = common::closed_term(seed, 10);
        let printed = pretty_term(&t);
        prop_assert_eq!(parse_term(&printed).unwrap(), t, "{}", printed);
    }

    #[test]
    fn pretty_then_parse_is_identity_on_types(s in gradual_type()) {
        prop_assert_eq!(parse_type(&s.to_string()).unwrap(), s);
    }
}
