//! Finite groups acting on finitely generated abelian groups, and their
//! cohomology in degrees 0 to 2 through inhomogeneous bar cochains.
//!
//! A twisted constant group split by a Galois cover with group `Γ` is modelled
//! by its group of points over the cover together with the `Γ`-action. This
//! dictionary is a modelling assumption of the crate.

mod cohomology;
mod group;
mod module;

pub use cohomology::{bar_complex, cohomology_long_sequence, group_cohomology, BarComplex, MAX_DEGREE};
pub use group::{FiniteGroup, MAX_ORDER};
pub use module::{equivariant_hom, GammaHom, GammaModule};

pub(crate) use cohomology::cochain_map;
pub(crate) use module::permutation_matrix;
