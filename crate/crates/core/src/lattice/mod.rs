//! Exact integer linear algebra and finitely generated abelian groups.

mod cochain;
mod derived;
mod exact;
mod group;
mod hermite;
mod hom;
mod matrix;
mod smith;

pub use cochain::{induced_map, CochainWindow, ComplexSes};
pub use derived::{derived_dual, derived_tensor};
pub use exact::{
    homology, is_exact, render_sequence, snake_sequence, ExactnessFailure, ExactnessReport,
    FailureKind, Homology, SnakeDiagram,
};
pub use group::{parse_canonical, CanonicalForm, FgAbGroup};
pub use hermite::{kernel_basis, rank, row_hermite, RowHermite, RowLattice};
pub use hom::{canonical_isomorphism, AbHom, Kernel};
pub use matrix::{int, IntMatrix, Integer};
pub use smith::{smith_normal_form, solve_matrix, LinearSolver, Smith};

pub(crate) use hom::same_group;
