//! `RHom(M, Z)` and `M ⊗^L N` through a two-term free resolution of `M`.

use std::sync::Arc;

use super::group::FgAbGroup;
use super::hom::AbHom;
use super::matrix::IntMatrix;

/// The free resolution `0 -> Z^k -B^T-> Z^g -> M -> 0`, `B` a basis of the relations.
fn resolution_matrix(m: &FgAbGroup) -> IntMatrix {
    m.relation_lattice().basis().transpose()
}

/// `(Hom(M, Z), Ext^1(M, Z))` in canonical presentation.
pub fn derived_dual(m: &FgAbGroup) -> (FgAbGroup, FgAbGroup) {
    let bt = resolution_matrix(m);
    let k = bt.cols();
    let g = bt.rows();
    // dualized differential Z^g -> Z^k is B
    let dual = AbHom::new_unchecked(
        Arc::new(FgAbGroup::free(g)),
        Arc::new(FgAbGroup::free(k)),
        bt.transpose(),
    );
    let hom = dual.kernel().group.canonical_group();
    let ext = dual.cokernel().0.canonical_group();
    (hom, ext)
}

/// `(M ⊗ N, Tor_1(M, N))` in canonical presentation.
pub fn derived_tensor(m: &FgAbGroup, n: &FgAbGroup) -> (FgAbGroup, FgAbGroup) {
    let bt = resolution_matrix(m);
    let (g, k) = (bt.rows(), bt.cols());
    let src = Arc::new(n.power(k));
    let tgt = Arc::new(n.power(g));
    let mat = bt.kronecker(&IntMatrix::identity(n.generators()));
    let f = AbHom::new_unchecked(src, tgt, mat);
    let tensor = f.cokernel().0.canonical_group();
    let tor = f.kernel().group.canonical_group();
    (tensor, tor)
}
