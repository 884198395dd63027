//! Static types, the two gradual flavors, and their size measures.

mod brr;
mod gr;
mod label;
mod ty;

pub use brr::{embed_gr_to_brr, BFields, BType, Mapping};
pub use gr::{GFields, GType};
pub use label::Label;
pub use ty::Type;

/// Whether a record-like type admits unlisted fields.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Tail {
    Closed,
    Open,
}

impl Tail {
    /// `?` only when both are `?`.
    pub fn both_open(a: Tail, b: Tail) -> Tail {
        if a == Tail::Open && b == Tail::Open {
            Tail::Open
        } else {
            Tail::Closed
        }
    }
}

/// `(size, height, dom_l)` of a gradual type.
pub fn size_height_dom_gr(s: &GType) -> (usize, usize, usize) {
    let mut ls = std::collections::BTreeSet::new();
    s.collect_labels(&mut ls);
    (s.size(), s.height(), ls.len())
}

pub fn size_height_dom_brr(s: &BType) -> (usize, usize, usize) {
    let mut ls = std::collections::BTreeSet::new();
    s.collect_labels(&mut ls);
    (s.size(), s.height(), ls.len())
}
