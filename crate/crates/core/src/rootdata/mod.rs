//! Root data of split reductive groups, a catalog of standard groups and the
//! invariants `π₁`, `μ`, `μ(-1)`, `Z(G)^*` and `(G^tor)_*`.

mod cartan;
mod catalog;
mod datum;
mod hom;
mod invariants;
mod quotient;

pub use cartan::{cartan_matrix, root_count, simply_connected_from_cartan, CartanType};
pub use catalog::{standard_group, standard_group_by_name, GroupSpec, CATALOG_NAMES};
pub use datum::{pairing, GammaAction, RootDatum};
pub use hom::GroupHomData;
pub use invariants::{fundamental_invariants, GroupInvariants};
pub use quotient::{adjoint_quotient, central_quotient, coweight_generators, simply_connected_cover, Cover};
