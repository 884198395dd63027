//! Static semantics of the source language.

mod check;
mod relations;

pub use check::{
    binop_result, check_def, def_env, require_csub, typecheck, typecheck_program, TypeEnv, TypeError,
    TypeErrorKind,
};
pub use relations::{
    ccod, cdom, consistent_subtype, cproj, csub_join, csub_meet, gradual_meet, static_join, static_meet,
    static_subtype,
};
