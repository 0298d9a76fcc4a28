//! Free graded Lie superalgebras inside their associative envelope.

pub mod alphabet;
pub mod bch;
pub mod lyndon;
pub mod poly;
pub mod series;

pub use alphabet::{GeneratorSet, Letter, Word, MAX_INDEX};
pub use bch::{bch_generic, LieOps};
pub use lyndon::{lie_coordinates, lyndon_basis, lyndon_words, super_lyndon_basis, BracketTree};
pub use poly::{LetterMap, Poly};
pub use series::{LieSeries, PowerSeries, DEFAULT_TRUNCATION};
