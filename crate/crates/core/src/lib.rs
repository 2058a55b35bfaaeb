//! Algebraic fundamental groups of split reductive groups, computed from root data.

pub mod abcoh;
pub mod complexes;
pub mod error;
pub mod gammamod;
pub mod io;
pub mod lattice;
pub mod resolutions;
pub mod rootdata;
pub mod verify;

pub use error::{AxiomError, Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/root-data.md")]
    mod root_data {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    mod resolutions {}
    #[doc = include_str!("../../../book/src/exact-sequences.md")]
    mod exact_sequences {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/gamma-modules.md")]
    mod gamma_modules {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
