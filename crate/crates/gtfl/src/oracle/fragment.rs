//! Subtyping fragments: concretized evidence and its composition.

use std::collections::{BTreeMap, BTreeSet};

use super::galois::{alpha_brr, alpha_gr, brr_contains, gr_contains};
use super::{enumerate, OracleError, Universe};
use crate::evidence::{Backend, Evidence};
use crate::statics::static_subtype;
use crate::types::Type;

/// A finite set of static subtyping instances.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fragment {
    pub pairs: BTreeSet<(Type, Type)>,
}

impl Fragment {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn lefts(&self) -> Vec<&Type> {
        self.pairs.iter().map(|p| &p.0).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn rights(&self) -> Vec<&Type> {
        self.pairs.iter().map(|p| &p.1).collect::<BTreeSet<_>>().into_iter().collect()
    }
}

/// Whether `t1 <: t2` is one of the instances an evidence object stands for.
pub fn ev_contains(e: &Evidence, t1: &Type, t2: &Type) -> bool {
    let inside = match e {
        Evidence::Gr(a, b) => gr_contains(a, t1) && gr_contains(b, t2),
        Evidence::Brr(a, b) => brr_contains(a, t1) && brr_contains(b, t2),
    };
    inside && static_subtype(t1, t2)
}

pub fn side_contains(e: &Evidence, left: bool, t: &Type) -> bool {
    match (e, left) {
        (Evidence::Gr(a, _), true) => gr_contains(a, t),
        (Evidence::Gr(_, b), false) => gr_contains(b, t),
        (Evidence::Brr(a, _), true) => brr_contains(a, t),
        (Evidence::Brr(_, b), false) => brr_contains(b, t),
    }
}

/// Concretization with left components from `lu` and right ones from `ru`.
pub fn gamma_ev_between(e: &Evidence, lu: &Universe, ru: &Universe) -> Fragment {
    let ls: Vec<&Type> = lu.members.iter().filter(|t| side_contains(e, true, t)).collect();
    let rs: Vec<&Type> = ru.members.iter().filter(|t| side_contains(e, false, t)).collect();
    let mut pairs = BTreeSet::new();
    for a in &ls {
        for b in &rs {
            if static_subtype(a, b) {
                pairs.insert(((*a).clone(), (*b).clone()));
            }
        }
    }
    Fragment { pairs }
}

pub fn gamma_ev(e: &Evidence, u: &Universe) -> Fragment {
    gamma_ev_between(e, u, u)
}

pub fn rel_compose(r1: &Fragment, r2: &Fragment) -> Fragment {
    let mut by_mid: BTreeMap<&Type, Vec<&Type>> = BTreeMap::new();
    for (b, c) in &r2.pairs {
        by_mid.entry(b).or_default().push(c);
    }
    let mut pairs = BTreeSet::new();
    for (a, b) in &r1.pairs {
        for c in by_mid.get(b).into_iter().flatten() {
            pairs.insert((a.clone(), (*c).clone()));
        }
    }
    Fragment { pairs }
}

/// Abstraction of a fragment; `None` when it is empty.
pub fn alpha_ev(r: &Fragment, backend: Backend, u: &Universe) -> Result<Option<Evidence>, OracleError> {
    if r.is_empty() {
        return Ok(None);
    }
    let (l, rt) = (r.lefts(), r.rights());
    Ok(Some(match backend {
        Backend::Gr => Evidence::Gr(alpha_gr(&l)?, alpha_gr(&rt)?),
        Backend::Brr => Evidence::Brr(alpha_brr(&l, u)?, alpha_brr(&rt, u)?),
    }))
}

/// Composition computed from its definition: concretize, compose the
/// fragments through middles drawn from a deeper universe, abstract.
pub fn oracle_compose(e1: &Evidence, e2: &Evidence, u: &Universe, margin: usize) -> Result<Option<Evidence>, OracleError> {
    let mid = enumerate(u.depth + margin, &u.labels)?;
    let r1 = gamma_ev_between(e1, u, &mid);
    let r2 = gamma_ev_between(e2, &mid, u);
    alpha_ev(&rel_compose(&r1, &r2), e1.backend(), u)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FcVerdict {
    pub holds: bool,
    /// A pair in exactly one of the two fragments.
    pub witness: Option<(Type, Type)>,
}

pub fn check_forward_complete(e1: &Evidence, e2: &Evidence, u: &Universe, margin: usize) -> Result<FcVerdict, OracleError> {
    let mid = enumerate(u.depth + margin, &u.labels)?;
    let precise = rel_compose(&gamma_ev_between(e1, u, &mid), &gamma_ev_between(e2, &mid, u));
    let composed = match e1.compose(e2) {
        Some(e) => gamma_ev(&e, u),
        None => Fragment::default(),
    };
    let witness = precise.pairs.symmetric_difference(&composed.pairs).next().cloned();
    Ok(FcVerdict { holds: witness.is_none(), witness })
}
