//! Composing evidence by hand, and checking one composite against the
//! finite-universe definition.

use gtfl::evidence::Evidence;
use gtfl::oracle::{check_forward_complete, enumerate, oracle_compose};
use gtfl::types::{GType, Label};

fn main() {
    let xy = GType::record([("x", GType::Int), ("y", GType::Bool)]);
    let x = GType::record([("x", GType::Int)]);
    let e1 = Evidence::Gr(xy.clone(), x.clone());
    let e2 = Evidence::Gr(x, GType::empty_row());
    let e3 = Evidence::Gr(GType::row([("x", GType::Int), ("y", GType::Bool)]), xy);

    let show = |e: Option<Evidence>| e.map_or("undefined".to_string(), |e| e.to_string());
    println!("e1 ; e2        = {}", show(e1.compose(&e2)));
    println!("e2 ; e3        = {}", show(e2.compose(&e3)));
    println!("(e1 ; e2) ; e3 = {}", show(e1.compose(&e2).and_then(|c| c.compose(&e3))));

    let u = enumerate(2, &[Label::new("x"), Label::new("y")]).expect("small universe");
    println!("universe of {} static types", u.len());
    println!("oracle e1 ; e2 = {}", show(oracle_compose(&e1, &e2, &u, 1).expect("feasible")));
    let v = check_forward_complete(&e1, &e2, &u, 1).expect("feasible");
    match v.witness {
        Some((a, b)) => println!("not forward complete: ({a}, {b}) is admitted but not derivable"),
        None => println!("forward complete"),
    }
}
