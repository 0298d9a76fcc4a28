//! Cosimplicial structure on `Ω⟨A, x_•⟩`: cofaces, simplicial and total
//! differentials, and finite-degree row cohomology.

pub mod cofaces;
pub mod cohomology;
pub mod complex;

pub use cofaces::{coface, coface_images, level_gens, level_of, simplicial_delta, Variant};
pub use cohomology::{row_cohomology, RowCohomology};
pub use complex::{total_differential, MixedChain};
