//! Brute-force semantics over finite type universes.

mod fragment;
mod galois;
pub mod suites;

mod universe;

pub use fragment::{
    alpha_ev, check_forward_complete, ev_contains, gamma_ev, gamma_ev_between, oracle_compose, rel_compose, side_contains,
    FcVerdict, Fragment,
};
pub use galois::{alpha_brr, alpha_gr, brr_contains, gamma_brr, gamma_gr, gr_contains};
pub use universe::{enumerate, enumerate_brr, enumerate_gr, Universe, MAX_DEPTH, MAX_LABELS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("universe depth {0} out of range 1..=4")]
    Depth(usize),
    #[error("{0} labels requested, at most 3 supported")]
    Labels(usize),
    #[error("cannot abstract an empty set of types")]
    EmptyAbstraction,
    #[error("infeasible: {0}")]
    Infeasible(String),
}
