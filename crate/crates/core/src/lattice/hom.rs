//! Homomorphisms between presented groups: kernels, cokernels, images and lifts.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer as _;
use num_traits::Zero;

use super::group::FgAbGroup;
use super::hermite::{kernel_basis, RowLattice};
use super::matrix::{IntMatrix, Integer};
use super::smith::LinearSolver;
use crate::error::{Error, Result};

/// A homomorphism `source -> target`. Column `j` of the matrix is the image of
/// source generator `j` in target generator coordinates.
#[derive(Clone)]
pub struct AbHom {
    source: Arc<FgAbGroup>,
    target: Arc<FgAbGroup>,
    matrix: IntMatrix,
    solver: OnceLock<Arc<LinearSolver>>,
}

pub(crate) fn same_group(a: &Arc<FgAbGroup>, b: &Arc<FgAbGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AbHom {
    /// Checks dimensions and that every source relation lands in the target relations.
    pub fn new(
        source: impl Into<Arc<FgAbGroup>>,
        target: impl Into<Arc<FgAbGroup>>,
        matrix: IntMatrix,
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
            return Err(Error::Dimension(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators(),
                source.generators()
            )));
        }
        for i in 0..source.relations().rows() {
            let img = matrix.mul_vec(source.relations().row(i));
            if !target.contains_relation(&img) {
                return Err(Error::NotWellDefined { relation: i });
            }
        }
        Ok(Self::new_unchecked(source, target, matrix))
    }

    pub(crate) fn new_unchecked(
        source: Arc<FgAbGroup>,
        target: Arc<FgAbGroup>,
        matrix: IntMatrix,
    ) -> Self {
        debug_assert_eq!(matrix.rows(), target.generators());
        debug_assert_eq!(matrix.cols(), source.generators());
        AbHom {
            source,
            target,
            matrix,
            solver: OnceLock::new(),
        }
    }

    pub fn from_i64(
        source: impl Into<Arc<FgAbGroup>>,
        target: impl Into<Arc<FgAbGroup>>,
        rows: &[Vec<i64>],
    ) -> Result<Self> {
        let (source, target) = (source.into(), target.into());
        let m = if rows.is_empty() {
            IntMatrix::zeros(target.generators(), source.generators())
        } else {
            IntMatrix::from_rows_i64(rows)
        };
        Self::new(source, target, m)
    }

    pub fn zero(source: impl Into<Arc<FgAbGroup>>, target: impl Into<Arc<FgAbGroup>>) -> Self {
        let (source, target) = (source.into(), target.into());
        let m = IntMatrix::zeros(target.generators(), source.generators());
        Self::new_unchecked(source, target, m)
    }

    pub fn identity(group: impl Into<Arc<FgAbGroup>>) -> Self {
        let g = group.into();
        let m = IntMatrix::identity(g.generators());
        Self::new_unchecked(g.clone(), g, m)
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<FgAbGroup> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<FgAbGroup> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Integer]) -> Vec<Integer> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if !same_group(&first.target, &self.source) {
            return Err(Error::NotComposable { index: 0, next: 1 });
        }
        Ok(Self::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            &self.matrix * &first.matrix,
        ))
    }

    fn check_parallel(&self, other: &AbHom) -> Result<()> {
        if same_group(&self.source, &other.source) && same_group(&self.target, &other.target) {
            Ok(())
        } else {
            Err(Error::Dimension("homs have different source or target".into()))
        }
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix),
        ))
    }

    pub fn sub(&self, other: &AbHom) -> Result<AbHom> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.sub(&other.matrix),
        ))
    }

    pub fn neg(&self) -> AbHom {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    /// Same map with source and target replaced by equal presentations.
    pub fn retarget(
        &self,
        source: &Arc<FgAbGroup>,
        target: &Arc<FgAbGroup>,
    ) -> Result<AbHom> {
        if !same_group(&self.source, source) || !same_group(&self.target, target) {
            return Err(Error::Dimension("retarget needs equal presentations".into()));
        }
        Ok(Self::new_unchecked(source.clone(), target.clone(), self.matrix.clone()))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.col(j)))
    }

    /// Equal as maps (same presentations, columns agree modulo target relations).
    pub fn equals(&self, other: &AbHom) -> bool {
        self.check_parallel(other).is_ok()
            && (0..self.matrix.cols()).all(|j| {
                self.target
                    .elements_equal(&self.matrix.col(j), &other.matrix.col(j))
            })
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> Kernel {
        let gm = self.source.generators();
        let ln = self.target.relation_lattice().basis();
        // x with F x in L_N  <=>  (x, y) in ker [F | -B^T]
        let stacked = self.matrix.hstack(&ln.transpose().neg());
        let kb = kernel_basis(&stacked);
        let idx: Vec<usize> = (0..gm).collect();
        let proj = kb.select_cols(&idx);
        let lattice = RowLattice::from_generators(&proj);
        let s = lattice.rank();
        let lm = self.source.relation_lattice().basis();
        let mut rel_rows = Vec::with_capacity(lm.rows());
        for i in 0..lm.rows() {
            let c = lattice
                .coordinates(lm.row(i))
                .expect("source relations lie in the kernel lattice");
            rel_rows.push(c);
        }
        let group = Arc::new(FgAbGroup::from_parts(
            s,
            IntMatrix::from_rows(rel_rows, s),
        ));
        let inclusion = Self::new_unchecked(
            group.clone(),
            self.source.clone(),
            lattice.basis().transpose(),
        );
        Kernel {
            group,
            inclusion,
            lattice,
        }
    }

    /// Cokernel with its projection from the target.
    pub fn cokernel(&self) -> (Arc<FgAbGroup>, AbHom) {
        let rel = self.target.relations().vstack(&self.matrix.transpose());
        let group = Arc::new(FgAbGroup::from_parts(self.target.generators(), rel));
        let proj = Self::new_unchecked(
            self.target.clone(),
            group.clone(),
            IntMatrix::identity(self.target.generators()),
        );
        (group, proj)
    }

    /// Image as a group, with the factorization `source -> image -> target`.
    pub fn image(&self) -> (Arc<FgAbGroup>, AbHom, AbHom) {
        let k = self.kernel();
        let gm = self.source.generators();
        let group = Arc::new(FgAbGroup::from_parts(gm, k.lattice.basis().clone()));
        let onto = Self::new_unchecked(self.source.clone(), group.clone(), IntMatrix::identity(gm));
        let into = Self::new_unchecked(group.clone(), self.target.clone(), self.matrix.clone());
        (group, onto, into)
    }

    pub fn is_injective(&self) -> bool {
        let k = self.kernel();
        self.source.relation_lattice().contains_lattice(&k.lattice)
    }

    pub fn is_surjective(&self) -> bool {
        let (c, _) = self.cokernel();
        let lat = c.relation_lattice();
        lat.rank() == c.generators()
            && (0..lat.rank()).all(|i| lat.basis()[(i, i)] == Integer::from(1))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    fn solver(&self) -> &LinearSolver {
        self.solver.get_or_init(|| {
            let ln = self.target.relation_lattice().basis();
            Arc::new(LinearSolver::new(&self.matrix.hstack(&ln.transpose())))
        })
    }

    /// Some `x` with `f(x) = y` in the target, if `y` is in the image.
    pub fn lift(&self, y: &[Integer]) -> Option<Vec<Integer>> {
        let sol = self.solver().solve(y)?;
        Some(sol[..self.source.generators()].to_vec())
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<AbHom> {
        if !self.is_isomorphism() {
            return Err(Error::Internal("inverse of a non-isomorphism".into()));
        }
        let gn = self.target.generators();
        let mut cols = Vec::with_capacity(gn);
        for j in 0..gn {
            let x = self
                .lift(&self.target.basis_element(j))
                .ok_or_else(|| Error::Internal("surjection without a lift".into()))?;
            cols.push(x);
        }
        let m = IntMatrix::from_cols(&cols, self.source.generators());
        Ok(Self::new_unchecked(self.target.clone(), self.source.clone(), m))
    }

    /// `g` with `through ∘ g = self`, when the image of `self` lies in the image of `through`.
    pub fn factor_through(&self, through: &AbHom) -> Result<AbHom> {
        if !same_group(&self.target, &through.target) {
            return Err(Error::Dimension("factor_through: different targets".into()));
        }
        let mut cols = Vec::with_capacity(self.matrix.cols());
        for j in 0..self.matrix.cols() {
            let x = through.lift(&self.matrix.col(j)).ok_or_else(|| {
                Error::Internal(format!("factor_through: generator {j} not in the image"))
            })?;
            cols.push(x);
        }
        let m = IntMatrix::from_cols(&cols, through.source.generators());
        AbHom::new(self.source.clone(), through.source.clone(), m)
    }

    /// Matrix in the canonical coordinates of source and target, torsion rows reduced.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let m = &(self.target.to_canonical_matrix() * &self.matrix)
            * self.source.from_canonical_matrix();
        let moduli = self.target.canonical_moduli();
        let mut out = m.clone();
        for i in 0..out.rows() {
            if moduli[i].is_zero() {
                continue;
            }
            for j in 0..out.cols() {
                out[(i, j)] = m[(i, j)].mod_floor(&moduli[i]);
            }
        }
        out
    }

    /// Transport along isomorphisms: `after ∘ self ∘ before`.
    pub fn conjugate(&self, before: &AbHom, after: &AbHom) -> Result<AbHom> {
        after.compose(&self.compose(before)?)
    }
}

/// The canonical presentation of `g` with the two comparison isomorphisms
/// `g -> canonical` and `canonical -> g`.
pub fn canonical_isomorphism(g: &Arc<FgAbGroup>) -> (Arc<FgAbGroup>, AbHom, AbHom) {
    let c = Arc::new(g.canonical_group());
    let to = AbHom::new_unchecked(g.clone(), c.clone(), g.to_canonical_matrix().clone());
    let from = AbHom::new_unchecked(c.clone(), g.clone(), g.from_canonical_matrix().clone());
    (c, to, from)
}

/// Kernel of a hom: the subgroup `K / L` with `K` the preimage lattice of the target relations.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub group: Arc<FgAbGroup>,
    pub inclusion: AbHom,
    lattice: RowLattice,
}

impl Kernel {
    /// The preimage lattice `K` in source generator coordinates.
    pub fn lattice(&self) -> &RowLattice {
        &self.lattice
    }

    /// Factors `f: M -> source` through the inclusion, failing if some image is
    /// not in the kernel.
    pub fn factor(&self, f: &AbHom) -> Result<AbHom> {
        if !same_group(f.target_arc(), self.inclusion.target_arc()) {
            return Err(Error::Dimension("factor: map does not land in the kernel's ambient group".into()));
        }
        let s = self.group.generators();
        let mut cols = Vec::with_capacity(f.matrix.cols());
        for j in 0..f.matrix.cols() {
            let c = self.lattice.coordinates(&f.matrix.col(j)).ok_or_else(|| {
                Error::Internal(format!("factor: generator {j} does not map into the kernel"))
            })?;
            cols.push(c);
        }
        let m = IntMatrix::from_cols(&cols, s);
        Ok(AbHom::new_unchecked(f.source.clone(), self.group.clone(), m))
    }

    /// Kernel coordinates of an element of the source lying in the kernel.
    pub fn coordinates(&self, x: &[Integer]) -> Option<Vec<Integer>> {
        self.lattice.coordinates(x)
    }
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({} -> {}, {:?})", self.source, self.target, self.matrix)
    }
}

impl fmt::Display for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::int;

    fn z() -> Arc<FgAbGroup> {
        Arc::new(FgAbGroup::free(1))
    }

    #[test]
    fn multiplication_by_n_has_cokernel_z_mod_n() {
        let f = AbHom::from_i64(z(), z(), &[vec![5]]).unwrap();
        assert_eq!(f.cokernel().0.to_string(), "Z/5");
        assert!(f.is_injective());
        assert!(!f.is_surjective());
        let one = AbHom::from_i64(z(), z(), &[vec![1]]).unwrap();
        assert_eq!(one.cokernel().0.to_string(), "0");
        assert!(one.is_isomorphism());
    }

    #[test]
    fn diagonal_embedding_cokernel() {
        let f = AbHom::from_i64(z(), FgAbGroup::free(2), &[vec![1], vec![1]]).unwrap();
        assert_eq!(f.cokernel().0.to_string(), "Z");
    }

    #[test]
    fn kernel_of_sum_and_of_doubling_mod_4() {
        let sum = AbHom::from_i64(FgAbGroup::free(2), z(), &[vec![1, 1]]).unwrap();
        let k = sum.kernel();
        assert_eq!(k.group.to_string(), "Z");
        assert!(sum.compose(&k.inclusion).unwrap().is_zero());

        let z4 = Arc::new(FgAbGroup::cyclic(4));
        let dbl = AbHom::from_i64(z4.clone(), z4, &[vec![2]]).unwrap();
        let k = dbl.kernel();
        assert_eq!(k.group.to_string(), "Z/2");
        assert!(dbl.compose(&k.inclusion).unwrap().is_zero());
        assert_eq!(dbl.image().0.to_string(), "Z/2");
    }

    #[test]
    fn ill_defined_hom_is_rejected() {
        let err = AbHom::from_i64(FgAbGroup::cyclic(2), FgAbGroup::cyclic(3), &[vec![1]]).unwrap_err();
        assert_eq!(err, Error::NotWellDefined { relation: 0 });
    }

    #[test]
    fn inverse_and_lift() {
        let g = Arc::new(FgAbGroup::free(2));
        let f = AbHom::from_i64(g.clone(), g.clone(), &[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = f.inverse().unwrap();
        assert!(f.compose(&inv).unwrap().equals(&AbHom::identity(g)));
        assert!(f.lift(&[int(3), int(2)]).is_some());
    }

    #[test]
    fn canonical_matrix_of_reduction() {
        let red = AbHom::from_i64(z(), FgAbGroup::cyclic(6), &[vec![7]]).unwrap();
        assert_eq!(red.canonical_matrix(), IntMatrix::from_rows_i64(&[vec![1]]));
    }
}
