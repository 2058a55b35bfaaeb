//! Small data with a nontrivial Γ-action.

use std::sync::Arc;

use num_rational::BigRational;

use crate::gammamod::FiniteGroup;
use crate::lattice::{IntMatrix, Integer};
use crate::rootdata::{central_quotient, standard_group_by_name, GammaAction, RootDatum};

/// `GL(2)` with `Z/2` acting on cocharacters by `[[0, -1], [-1, 0]]`: the coroot is
/// fixed and the central `G_m` is inverted.
pub fn twisted_gl2() -> RootDatum {
    let gl2 = standard_group_by_name("GL(2)").expect("catalog group");
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let flip = IntMatrix::from_rows_i64(&[vec![0, -1], vec![-1, 0]]);
    let gamma = GammaAction::from_cocharacters(z2, &[IntMatrix::identity(2), flip]);
    gl2.with_gamma(gamma).expect("the flip preserves the roots")
}

/// `GL(2)^3` with `S_3` permuting the factors.
pub fn permuted_gl2_cube() -> RootDatum {
    let gl2 = standard_group_by_name("GL(2)").expect("catalog group");
    RootDatum::permuted_power(&gl2, Arc::new(FiniteGroup::symmetric(3))).expect("S_3 acts on three points")
}

/// `(G_m × SL(2)^3)/μ₂` with `μ₂` embedded diagonally and `S_3` permuting the
/// `SL(2)` factors.
pub fn permuted_sl2_cube_quotient() -> RootDatum {
    let sl2 = standard_group_by_name("SL(2)").expect("catalog group");
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let cube = RootDatum::permuted_power(&sl2, s3.clone()).expect("S_3 acts on three points");
    let prod = RootDatum::product(&[&RootDatum::torus(1), &cube]);
    let cube_gamma = cube.gamma().expect("permuted power has Gamma");
    let matrices = cube_gamma
        .matrices()
        .iter()
        .map(|m| IntMatrix::block_diag(&[&IntMatrix::identity(1), m]))
        .collect();
    let with_gamma = prod.with_gamma(GammaAction::new(s3, matrices)).expect("permutation action");
    let half = BigRational::new(Integer::from(1), Integer::from(2));
    central_quotient(&with_gamma, &[vec![half; 4]]).expect("the diagonal mu_2 is central")
}
