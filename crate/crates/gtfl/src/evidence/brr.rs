//! Bounded records and rows evidence.

use std::collections::BTreeSet;

use crate::types::{BFields, BType, Label, Mapping, Tail};

pub type BrrEv = (BType, BType);

fn unknown_arrow() -> BType {
    BType::arrow(BType::Unknown, BType::Unknown)
}

fn labels<'a>(a: &'a BFields, b: &'a BFields) -> BTreeSet<&'a Label> {
    a.keys().chain(b.keys()).collect()
}

pub fn interior(s1: &BType, s2: &BType) -> Option<BrrEv> {
    use BType::*;
    match (s1, s2) {
        (Int, Int) | (Bool, Bool) | (Unknown, Unknown) => Some((s1.clone(), s1.clone())),
        (Int | Bool, Unknown) => Some((s1.clone(), s1.clone())),
        (Unknown, Int | Bool) => Some((s2.clone(), s2.clone())),
        (Arrow(..), Unknown) => interior(s1, &unknown_arrow()),
        (Unknown, Arrow(..)) => interior(&unknown_arrow(), s2),
        (Arrow(a1, b1), Arrow(a2, b2)) => {
            let (a2p, a1p) = interior(a2, a1)?;
            let (b1p, b2p) = interior(b1, b2)?;
            Some((BType::arrow(a1p, b1p), BType::arrow(a2p, b2p)))
        }
        (Unknown, Rec(..)) => interior(&BType::empty_row(), s2),
        (Rec(..), Unknown) => interior(s1, &BType::empty_row()),
        (Rec(f1, t1), Rec(f2, t2)) => {
            let mut left = BFields::new();
            let mut right = BFields::new();
            for l in labels(f1, f2) {
                let (m1, m2) = interior_mapping(&s1.field(l)?, &s2.field(l)?)?;
                left.insert(l.clone(), m1);
                right.insert(l.clone(), m2);
            }
            Some((BType::rec(left, *t1), BType::rec(right, Tail::both_open(*t1, *t2))))
        }
        _ => None,
    }
}

pub fn interior_mapping(m1: &Mapping, m2: &Mapping) -> Option<(Mapping, Mapping)> {
    use Mapping::*;
    match (m1, m2) {
        (m, Absent) => Some((m.clone(), Absent)),
        (Absent, Req(_)) => None,
        // Not listed among the mapping rules; a supertype of a record
        // lacking the field lacks it too.
        (Absent, Opt(_)) => Some((Absent, Absent)),
        (Req(a) | Opt(a), Req(b)) => {
            let (ap, bp) = interior(a, b)?;
            Some((Req(ap), Req(bp)))
        }
        (Req(a) | Opt(a), Opt(b)) => match interior(a, b) {
            Some((_, bp)) => Some((m1.clone(), Opt(bp))),
            None => Some((m1.clone(), Absent)),
        },
    }
}

/// Precision meet.
pub fn meet(s1: &BType, s2: &BType) -> Option<BType> {
    use BType::*;
    match (s1, s2) {
        (s, Unknown) | (Unknown, s) => Some(s.clone()),
        (Int, Int) => Some(Int),
        (Bool, Bool) => Some(Bool),
        (Arrow(a1, b1), Arrow(a2, b2)) => Some(BType::arrow(meet(a1, a2)?, meet(b1, b2)?)),
        (Rec(f1, t1), Rec(f2, t2)) => {
            let mut out = BFields::new();
            for l in labels(f1, f2) {
                out.insert(l.clone(), meet_mapping(&s1.field(l)?, &s2.field(l)?)?);
            }
            Some(BType::rec(out, Tail::both_open(*t1, *t2)))
        }
        _ => None,
    }
}

pub fn meet_mapping(m1: &Mapping, m2: &Mapping) -> Option<Mapping> {
    use Mapping::*;
    match (m1, m2) {
        (Absent, Absent) | (Absent, Opt(_)) | (Opt(_), Absent) => Some(Absent),
        (Req(a), Req(b) | Opt(b)) | (Opt(b), Req(a)) => Some(Req(meet(a, b)?)),
        (Opt(a), Opt(b)) => Some(meet(a, b).map_or(Absent, Opt)),
        (Absent, Req(_)) | (Req(_), Absent) => None,
    }
}

pub fn wf(s1: &BType, s2: &BType) -> bool {
    use BType::*;
    match (s1, s2) {
        (Int, Int) | (Bool, Bool) | (Unknown, Unknown) => true,
        (Arrow(a1, b1), Arrow(a2, b2)) => wf(a2, a1) && wf(b1, b2),
        (Rec(f1, t1), Rec(f2, t2)) => {
            !(*t1 == Tail::Closed && *t2 == Tail::Open)
                && labels(f1, f2)
                    .into_iter()
                    .all(|l| wf_mapping(&s1.field(l).unwrap(), &s2.field(l).unwrap()))
        }
        _ => false,
    }
}

/// The Optional rule asks for some `S1 ⊑ S3` with `<S1, S2>` well formed;
/// that holds exactly when the interior of `S3 ≲ S2` keeps `S2` intact.
pub fn wf_mapping(m1: &Mapping, m2: &Mapping) -> bool {
    use Mapping::*;
    match (m1, m2) {
        (_, Absent) => true,
        (Req(a), Req(b)) => wf(a, b),
        (Req(a) | Opt(a), Opt(b)) => interior(a, b).is_some_and(|(_, bp)| bp == *b),
        _ => false,
    }
}

pub fn compose(e1: &BrrEv, e2: &BrrEv) -> Option<BrrEv> {
    let (s1, s21) = e1;
    let (s22, s3) = e2;
    let mid = meet(s21, s22)?;
    let (left, _) = interior(s1, &mid)?;
    let (_, right) = interior(&mid, s3)?;
    interior(&left, &right)
}

pub fn cdom(s: &BType) -> Option<BType> {
    match s {
        BType::Arrow(a, _) => Some((**a).clone()),
        BType::Unknown => Some(BType::Unknown),
        _ => None,
    }
}

pub fn ccod(s: &BType) -> Option<BType> {
    match s {
        BType::Arrow(_, b) => Some((**b).clone()),
        BType::Unknown => Some(BType::Unknown),
        _ => None,
    }
}

/// Field bound of `l`: Required and Optional both yield their payload, an
/// unlisted row field yields `?`, an absent field has none.
pub fn cproj(s: &BType, l: &Label) -> Option<BType> {
    match s {
        BType::Unknown => Some(BType::Unknown),
        BType::Rec(..) => s.field(l)?.payload().cloned(),
        _ => None,
    }
}

pub fn idom((s1, s2): &BrrEv) -> Option<BrrEv> {
    Some((cdom(s2)?, cdom(s1)?))
}

pub fn icod((s1, s2): &BrrEv) -> Option<BrrEv> {
    Some((ccod(s1)?, ccod(s2)?))
}

pub fn iproj((s1, s2): &BrrEv, l: &Label) -> Option<BrrEv> {
    Some((cproj(s1, l)?, cproj(s2, l)?))
}

/// `⊔~` over bounded types. A field without a join becomes absent.
pub fn csub_join(s1: &BType, s2: &BType) -> Option<BType> {
    use BType::*;
    match (s1, s2) {
        (Unknown, Unknown) => Some(Unknown),
        (Int, Int) | (Int, Unknown) | (Unknown, Int) => Some(Int),
        (Bool, Bool) | (Bool, Unknown) | (Unknown, Bool) => Some(Bool),
        (Arrow(a1, b1), Arrow(a2, b2)) => Some(BType::arrow(csub_meet(a1, a2)?, csub_join(b1, b2)?)),
        (Arrow(..), Unknown) => csub_join(s1, &unknown_arrow()),
        (Unknown, Arrow(..)) => csub_join(&unknown_arrow(), s2),
        (Rec(..), Unknown) => csub_join(s1, &BType::empty_row()),
        (Unknown, Rec(..)) => csub_join(&BType::empty_row(), s2),
        (Rec(f1, t1), Rec(f2, t2)) => {
            let mut out = BFields::new();
            for l in labels(f1, f2) {
                out.insert(l.clone(), join_mapping(&s1.field(l)?, &s2.field(l)?));
            }
            Some(BType::rec(out, Tail::both_open(*t1, *t2)))
        }
        _ => None,
    }
}

fn join_mapping(m1: &Mapping, m2: &Mapping) -> Mapping {
    use Mapping::*;
    match (m1, m2) {
        (Absent, _) | (_, Absent) => Absent,
        (Req(a), Req(b)) => csub_join(a, b).map_or(Absent, Req),
        (Opt(a), Req(b) | Opt(b)) | (Req(a), Opt(b)) => csub_join(a, b).map_or(Absent, Opt),
    }
}

pub fn csub_meet(s1: &BType, s2: &BType) -> Option<BType> {
    use BType::*;
    match (s1, s2) {
        (Unknown, Unknown) => Some(Unknown),
        (Int, Int) | (Int, Unknown) | (Unknown, Int) => Some(Int),
        (Bool, Bool) | (Bool, Unknown) | (Unknown, Bool) => Some(Bool),
        (Arrow(a1, b1), Arrow(a2, b2)) => Some(BType::arrow(csub_join(a1, a2)?, csub_meet(b1, b2)?)),
        (Arrow(..), Unknown) => csub_meet(s1, &unknown_arrow()),
        (Unknown, Arrow(..)) => csub_meet(&unknown_arrow(), s2),
        (Rec(..), Unknown) => csub_meet(s1, &BType::empty_row()),
        (Unknown, Rec(..)) => csub_meet(&BType::empty_row(), s2),
        (Rec(f1, t1), Rec(f2, t2)) => {
            let mut out = BFields::new();
            for l in labels(f1, f2) {
                out.insert(l.clone(), meet_csub_mapping(&s1.field(l)?, &s2.field(l)?)?);
            }
            let tail = if *t1 == Tail::Closed && *t2 == Tail::Closed { Tail::Closed } else { Tail::Open };
            Some(BType::rec(out, tail))
        }
        _ => None,
    }
}

fn meet_csub_mapping(m1: &Mapping, m2: &Mapping) -> Option<Mapping> {
    use Mapping::*;
    match (m1, m2) {
        (Absent, m) | (m, Absent) => Some(m.clone()),
        (Req(a), Req(b) | Opt(b)) | (Opt(b), Req(a)) => Some(Req(csub_meet(a, b)?)),
        (Opt(a), Opt(b)) => Some(csub_meet(a, b).map_or(Absent, Opt)),
    }
}
