//! Exact universal differential calculus on free Lie algebras.

pub mod descent;
pub mod error;
pub mod forms;
pub mod freelie;
pub mod kv;
pub mod ledger;
pub mod linalg;
pub mod simplicial;
pub mod tangential;
pub mod text;

pub use error::{Error, Result};
