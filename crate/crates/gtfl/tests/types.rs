use gtfl::oracle::{enumerate, enumerate_brr, enumerate_gr, gamma_brr, gamma_gr};
use gtfl::types::{embed_gr_to_brr, size_height_dom_brr, size_height_dom_gr, BFields, BType, GType, Label, Mapping, Tail};
use proptest::prelude::*;

fn labels(ls: &[&str]) -> Vec<Label> {
    ls.iter().map(|l| Label::new(l)).collect()
}

fn req(t: BType) -> Mapping {
    Mapping::Req(t)
}

#[test]
fn precision_examples() {
    assert!(GType::Int.precision_le(&GType::Unknown));
    let xy = GType::record([("x", GType::Int), ("y", GType::Bool)]);
    assert!(xy.precision_le(&GType::row([("x", GType::Int)])));
    assert!(!GType::Int.precision_le(&GType::Bool));
    assert!(!GType::row([("x", GType::Int)]).precision_le(&xy));
}

#[test]
fn measures() {
    assert_eq!(size_height_dom_gr(&GType::Int), (1, 1, 0));
    assert_eq!(size_height_dom_gr(&GType::arrow(GType::Int, GType::Bool)), (3, 2, 0));
    let r = BType::record([("x", req(BType::Int)), ("y", req(BType::Bool))]);
    assert_eq!(size_height_dom_brr(&r), (3, 2, 2));
    assert_eq!(size_height_dom_gr(&GType::empty_row()), (1, 1, 0));
}

#[test]
fn embedding() {
    assert_eq!(embed_gr_to_brr(&GType::record([("x", GType::Int)])), BType::record([("x", req(BType::Int))]));
    assert_eq!(embed_gr_to_brr(&GType::row([("x", GType::Int)])), BType::row([("x", req(BType::Int))]));
    assert_eq!(embed_gr_to_brr(&GType::Unknown), BType::Unknown);
}

#[test]
fn redundant_mappings_do_not_affect_equality() {
    let mut closed = BFields::new();
    closed.insert(Label::new("x"), req(BType::Int));
    closed.insert(Label::new("y"), Mapping::Absent);
    assert_eq!(BType::Rec(closed, Tail::Closed).canonical(), BType::record([("x", req(BType::Int))]));
    let mut open = BFields::new();
    open.insert(Label::new("y"), Mapping::Opt(BType::Unknown));
    assert_eq!(BType::Rec(open, Tail::Open).canonical(), BType::empty_row());
}

#[test]
fn gradual_precision_is_a_preorder_at_depth_two() {
    let ts = enumerate_gr(2, &labels(&["x", "y"])).unwrap();
    assert_eq!(ts.len(), 100);
    for a in &ts {
        assert!(a.precision_le(a));
        for b in &ts {
            if !a.precision_le(b) {
                continue;
            }
            if b.precision_le(a) {
                assert_eq!(a, b);
            }
            for c in &ts {
                if b.precision_le(c) {
                    assert!(a.precision_le(c), "{a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn bounded_precision_is_a_partial_order_at_depth_two() {
    let ts = enumerate_brr(2, &labels(&["x", "y"])).unwrap();
    assert_eq!(ts.len(), 270);
    for a in &ts {
        assert!(a.is_canonical());
        assert!(a.precision_le(a));
        for b in ts.iter().filter(|b| a.precision_le(b)) {
            if b.precision_le(a) {
                assert_eq!(a, b);
            }
            for c in ts.iter().filter(|c| b.precision_le(c)) {
                assert!(a.precision_le(c), "{a} {b} {c}");
            }
        }
    }
}

fn subset<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.iter().all(|x| b.contains(x))
}

// Types over {x} concretized in a universe that has one more label, so
// that a row is never confused with a record listing every label.
#[test]
fn gradual_precision_matches_concretization() {
    let u = enumerate(3, &labels(&["x", "y"])).unwrap();
    let ts = enumerate_gr(2, &labels(&["x"])).unwrap();
    let gs: Vec<_> = ts.iter().map(|s| gamma_gr(s, &u)).collect();
    for (a, ga) in ts.iter().zip(&gs) {
        for (b, gb) in ts.iter().zip(&gs) {
            assert_eq!(a.precision_le(b), subset(ga, gb), "{a} vs {b}");
        }
    }
}

#[test]
fn bounded_precision_matches_concretization() {
    let u = enumerate(3, &labels(&["x", "y"])).unwrap();
    let ts = enumerate_brr(2, &labels(&["x"])).unwrap();
    let gs: Vec<_> = ts.iter().map(|s| gamma_brr(s, &u)).collect();
    for (a, ga) in ts.iter().zip(&gs) {
        for (b, gb) in ts.iter().zip(&gs) {
            assert_eq!(a.precision_le(b), subset(ga, gb), "{a} vs {b}");
        }
    }
}

#[test]
fn bounded_sizes_respect_the_height_bound() {
    for s in enumerate_brr(2, &labels(&["x", "y", "z"])).unwrap() {
        let (size, height, dom) = size_height_dom_brr(&s);
        assert!(size <= (3 + dom).pow(1 + height as u32), "{s}");
    }
}

#[test]
fn embedding_preserves_concretization() {
    let u = enumerate(3, &labels(&["x", "y"])).unwrap();
    for s in enumerate_gr(2, &labels(&["x", "y"])).unwrap() {
        assert_eq!(gamma_gr(&s, &u), gamma_brr(&embed_gr_to_brr(&s), &u), "{s}");
    }
}

fn bounded(depth: u32) -> BoxedStrategy<BType> {
    let leaf = prop_oneof![Just(BType::Unknown), Just(BType::Int), Just(BType::Bool)];
    leaf.prop_recursive(depth, 24, 3, |inner| {
        let mapping = prop_oneof![
            Just(Mapping::Absent),
            inner.clone().prop_map(Mapping::Req),
            inner.clone().prop_map(Mapping::Opt),
        ];
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BType::arrow(a, b)),
            (proptest::collection::btree_map(prop_oneof![Just(Label::new("x")), Just(Label::new("y"))], mapping, 0..3), any::<bool>())
                .prop_map(|(fs, open)| BType::Rec(fs, if open { Tail::Open } else { Tail::Closed })),
        ]
    })
    .boxed()
}

proptest! {
    #[test]
    fn canonicalization_is_idempotent(s in bounded(3)) {
        let c = s.clone().canonical();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.clone().canonical(), c.clone());
        prop_assert!(s.precision_le(&c) && c.precision_le(&s));
    }

    #[test]
    fn bounded_size_bound(s in bounded(4)) {
        let (size, height, dom) = size_height_dom_brr(&s.canonical());
        prop_assert!(size <= (3 + dom).pow(1 + height as u32));
    }
}
