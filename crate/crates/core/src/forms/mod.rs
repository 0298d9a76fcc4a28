//! Cyclic words and universal differential forms.

pub mod basis;
pub mod cyclic;
pub mod form;

pub use basis::graded_basis;
pub use cyclic::canonicalize;
pub use form::{pair, CyclicForm};
