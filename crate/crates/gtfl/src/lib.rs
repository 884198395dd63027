pub mod bench;
pub mod elab;
pub mod evidence;
pub mod oracle;
pub mod runtime;
pub mod statics;
pub mod syntax;
pub mod types;
