//! Tangential derivations and automorphisms, the cocycles `c` and `C`,
//! cosimplicial pushforwards and the associator.

pub mod automorphism;
pub mod derivation;

pub use automorphism::TangentialAutomorphism;
pub use derivation::{
    bch_tder, block_map, pushforward_form, pushforward_images, TangentialDerivation,
};

use crate::error::{Error, Result};

/// `Φ_g = (g^{12,3})^{-1} (g^{1,2})^{-1} g^{2,3} g^{1,23}`.
pub fn associator(g: &TangentialAutomorphism) -> Result<TangentialAutomorphism> {
    if g.arity() != 2 {
        return Err(Error::InvalidArgument(format!(
            "associator needs arity 2, got {}",
            g.arity()
        )));
    }
    let face = |s: &str| g.pushforward(&block_map(s, 3)?);
    TangentialAutomorphism::product(&[
        &face("12,3")?.inverse(),
        &face("1,2")?.inverse(),
        &face("2,3")?,
        &face("1,23")?,
    ])
}
