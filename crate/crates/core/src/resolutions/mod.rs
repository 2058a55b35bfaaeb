//! t-resolutions `1 -> T -> H -> G -> 1` and m-resolutions on the lattice level:
//! construction by pushout, `π₁` as `cok[T_* -> R_*]`, morphisms, fiber products,
//! canonical isomorphisms, `π₁` of homomorphisms and exact sequences.

mod construct;
mod morphism;
mod mres;
mod ses;
mod tres;

pub use construct::{t_resolution_from_torus, t_resolution_generic, torus_identification, EmbeddingChoice};
pub use morphism::{
    canonical_iso, fiber_product_resolution, pi1_functor, pi1_of_morphism, pi1_via_resolutions, reference_pi1,
    FiberProduct, ResolutionMorphism,
};
pub use mres::{pi1_via_m_resolution, pi1_via_m_resolution_with, MResolution};
pub use ses::{check_pi1_exact, ses_from_normal_subgroup, snake_route, Pi1Sequence, RootPart, SesData};
pub use tres::{fundamental_sequence, pi1_of_resolution, qiso_certificate, FundamentalSequence, QisoCertificate, TResolution};
