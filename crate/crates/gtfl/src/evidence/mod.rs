//! Evidence for consistent subtyping, behind one interface for both backends.

pub mod brr;
pub mod gr;
pub mod gr_direct;

use std::fmt;

use crate::types::{embed_gr_to_brr, size_height_dom_brr, size_height_dom_gr, BType, GType, Label, Mapping, Tail};

/// Which type abstraction evidence is drawn from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Backend {
    Gr,
    Brr,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Gr => "gr",
            Backend::Brr => "brr",
        }
    }

    /// Initial evidence for `s1 ≲ s2`, over source types.
    pub fn interior(self, s1: &GType, s2: &GType) -> Option<Evidence> {
        match self {
            Backend::Gr => gr::interior(s1, s2).map(|(a, b)| Evidence::Gr(a, b)),
            Backend::Brr => brr::interior(&embed_gr_to_brr(s1), &embed_gr_to_brr(s2))
                .map(|(a, b)| Evidence::Brr(a, b)),
        }
    }
}

/// The type the elaborator tracks for evidence: the source type itself
/// under GR, its bounded counterpart under BRR. Joins and destructors are
/// taken in the backend's own domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RuntimeType {
    Gr(GType),
    Brr(BType),
}

impl RuntimeType {
    pub fn of(backend: Backend, s: &GType) -> RuntimeType {
        match backend {
            Backend::Gr => RuntimeType::Gr(s.clone()),
            Backend::Brr => RuntimeType::Brr(embed_gr_to_brr(s)),
        }
    }

    pub fn interior(&self, other: &RuntimeType) -> Option<Evidence> {
        match (self, other) {
            (RuntimeType::Gr(a), RuntimeType::Gr(b)) => gr::interior(a, b).map(|(x, y)| Evidence::Gr(x, y)),
            (RuntimeType::Brr(a), RuntimeType::Brr(b)) => brr::interior(a, b).map(|(x, y)| Evidence::Brr(x, y)),
            _ => panic!("runtime types from different backends"),
        }
    }

    pub fn join(&self, other: &RuntimeType) -> Option<RuntimeType> {
        match (self, other) {
            (RuntimeType::Gr(a), RuntimeType::Gr(b)) => crate::statics::csub_join(a, b).map(RuntimeType::Gr),
            (RuntimeType::Brr(a), RuntimeType::Brr(b)) => brr::csub_join(a, b).map(RuntimeType::Brr),
            _ => panic!("runtime types from different backends"),
        }
    }

    pub fn dom(&self) -> Option<RuntimeType> {
        match self {
            RuntimeType::Gr(a) => crate::statics::cdom(a).map(RuntimeType::Gr),
            RuntimeType::Brr(a) => brr::cdom(a).map(RuntimeType::Brr),
        }
    }

    pub fn cod(&self) -> Option<RuntimeType> {
        match self {
            RuntimeType::Gr(a) => crate::statics::ccod(a).map(RuntimeType::Gr),
            RuntimeType::Brr(a) => brr::ccod(a).map(RuntimeType::Brr),
        }
    }

    pub fn proj(&self, l: &Label) -> Option<RuntimeType> {
        match self {
            RuntimeType::Gr(a) => crate::statics::cproj(a, l).map(RuntimeType::Gr),
            RuntimeType::Brr(a) => brr::cproj(a, l).map(RuntimeType::Brr),
        }
    }

    pub fn arrow(a: RuntimeType, b: RuntimeType) -> RuntimeType {
        match (a, b) {
            (RuntimeType::Gr(a), RuntimeType::Gr(b)) => RuntimeType::Gr(GType::arrow(a, b)),
            (RuntimeType::Brr(a), RuntimeType::Brr(b)) => RuntimeType::Brr(BType::arrow(a, b)),
            _ => panic!("runtime types from different backends"),
        }
    }

    /// A closed record of the given fields.
    pub fn record(backend: Backend, fields: Vec<(Label, RuntimeType)>) -> RuntimeType {
        match backend {
            Backend::Gr => RuntimeType::Gr(GType::Rec(
                fields.into_iter().map(|(l, t)| match t {
                    RuntimeType::Gr(t) => (l, t),
                    RuntimeType::Brr(_) => panic!("runtime types from different backends"),
                }).collect(),
                Tail::Closed,
            )),
            Backend::Brr => RuntimeType::Brr(BType::rec(
                fields.into_iter().map(|(l, t)| match t {
                    RuntimeType::Brr(t) => (l, Mapping::Req(t)),
                    RuntimeType::Gr(_) => panic!("runtime types from different backends"),
                }).collect(),
                Tail::Closed,
            )),
        }
    }
}

impl fmt::Display for RuntimeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuntimeType::Gr(a) => a.fmt(f),
            RuntimeType::Brr(a) => a.fmt(f),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Evidence {
    Gr(GType, GType),
    Brr(BType, BType),
}

impl Evidence {
    pub fn backend(&self) -> Backend {
        match self {
            Evidence::Gr(..) => Backend::Gr,
            Evidence::Brr(..) => Backend::Brr,
        }
    }

    pub fn wf(&self) -> bool {
        match self {
            Evidence::Gr(a, b) => gr::wf(a, b),
            Evidence::Brr(a, b) => brr::wf(a, b),
        }
    }

    /// Consistent transitivity; `None` is a failed runtime check.
    pub fn compose(&self, other: &Evidence) -> Option<Evidence> {
        match (self, other) {
            (Evidence::Gr(a, b), Evidence::Gr(c, d)) => {
                let (e1, e2) = ((a.clone(), b.clone()), (c.clone(), d.clone()));
                let r = gr::compose(&e1, &e2);
                debug_assert_eq!(r, gr_direct::compose(&e1, &e2), "routes disagree on {self} ∘ {other}");
                r.map(|(x, y)| Evidence::Gr(x, y))
            }
            (Evidence::Brr(a, b), Evidence::Brr(c, d)) => {
                brr::compose(&(a.clone(), b.clone()), &(c.clone(), d.clone())).map(|(x, y)| Evidence::Brr(x, y))
            }
            _ => panic!("composing evidence from different backends"),
        }
    }

    pub fn idom(&self) -> Evidence {
        self.invert(gr::idom, brr::idom, "idom")
    }

    pub fn icod(&self) -> Evidence {
        self.invert(gr::icod, brr::icod, "icod")
    }

    pub fn iproj(&self, l: &Label) -> Evidence {
        self.invert(|e| gr::iproj(e, l), |e| brr::iproj(e, l), "iproj")
    }

    fn invert(
        &self,
        g: impl Fn(&gr::GrEv) -> Option<gr::GrEv>,
        b: impl Fn(&brr::BrrEv) -> Option<brr::BrrEv>,
        what: &str,
    ) -> Evidence {
        let r = match self {
            Evidence::Gr(x, y) => g(&(x.clone(), y.clone())).map(|(a, b)| Evidence::Gr(a, b)),
            Evidence::Brr(x, y) => b(&(x.clone(), y.clone())).map(|(a, b)| Evidence::Brr(a, b)),
        };
        r.unwrap_or_else(|| panic!("{what} outside its domain: {self}"))
    }

    /// Sum of the component sizes.
    pub fn size(&self) -> usize {
        let ((s1, _, _), (s2, _, _)) = self.measures();
        s1 + s2
    }

    pub fn height(&self) -> usize {
        let ((_, h1, _), (_, h2, _)) = self.measures();
        h1.max(h2)
    }

    pub fn dom_l(&self) -> usize {
        let ((_, _, d1), (_, _, d2)) = self.measures();
        d1.max(d2)
    }

    fn measures(&self) -> ((usize, usize, usize), (usize, usize, usize)) {
        match self {
            Evidence::Gr(a, b) => (size_height_dom_gr(a), size_height_dom_gr(b)),
            Evidence::Brr(a, b) => (size_height_dom_brr(a), size_height_dom_brr(b)),
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Gr(a, b) => write!(f, "<{a}, {b}>"),
            Evidence::Brr(a, b) => write!(f, "<{a}, {b}>"),
        }
    }
}

/// Evidence or a latent failure.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TotalEvidence {
    Bottom,
    Ev(Evidence),
}

impl TotalEvidence {
    pub fn compose(&self, other: &TotalEvidence) -> TotalEvidence {
        match (self, other) {
            (TotalEvidence::Ev(a), TotalEvidence::Ev(b)) => a.compose(b).map_or(TotalEvidence::Bottom, TotalEvidence::Ev),
            _ => TotalEvidence::Bottom,
        }
    }

    pub fn evidence(&self) -> Option<&Evidence> {
        match self {
            TotalEvidence::Ev(e) => Some(e),
            TotalEvidence::Bottom => None,
        }
    }

    /// Size of the object, with `⊥` counting as one.
    pub fn size(&self) -> usize {
        self.evidence().map_or(1, Evidence::size)
    }
}

impl From<Evidence> for TotalEvidence {
    fn from(e: Evidence) -> TotalEvidence {
        TotalEvidence::Ev(e)
    }
}

impl fmt::Display for TotalEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TotalEvidence::Bottom => f.write_str("⊥"),
            TotalEvidence::Ev(e) => e.fmt(f),
        }
    }
}
