//! Two-term complexes of Γ-modules: cohomology, cones, duals, shifts,
//! quasi-isomorphisms and hypercohomology.
//!
//! Conventions: the shift `[n]` moves degree `d` to `d - n` and multiplies the
//! differential by `(-1)^n`; the dual places `Hom(C^n, Z)` in degree `-n` with
//! differential `-(δ)^T` and `Γ` acting through inverse transposes. With these
//! choices `C(f)^∨` and `C(f^∨)[-1]` agree term by term up to the order of the
//! two middle summands.

mod bounded;
#[cfg(test)]
mod cylinder;
mod duality;
mod hyper;
mod two_term;

pub use bounded::BoundedComplex;
pub use duality::{
    basis_change, cone_shift_identity, kernel_inclusion, random_lattice_complex,
    random_quasi_isomorphism, stabilization, to_cohomology, MAX_RANK,
};
pub use hyper::{hypercohomology, TotalComplex, MAX_RELATIVE_DEGREE};
pub use two_term::{is_quasi_isomorphism, ComplexMorphism, TwoTermComplex};
