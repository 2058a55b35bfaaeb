use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gammamod::{equivariant_hom, FiniteGroup, GammaModule};
use crate::lattice::{
    homology, induced_map, same_group, AbHom, CochainWindow, FgAbGroup, Homology, IntMatrix,
};

use super::bounded::BoundedComplex;

/// `term0 -> term1` in degrees `base_degree` and `base_degree + 1`.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    base_degree: i64,
    term0: GammaModule,
    term1: GammaModule,
    differential: AbHom,
}

impl TwoTermComplex {
    pub fn new(
        base_degree: i64,
        term0: GammaModule,
        term1: GammaModule,
        differential: AbHom,
    ) -> Result<Self> {
        equivariant_hom(&term0, &term1, &differential)?;
        Ok(TwoTermComplex {
            base_degree,
            term0,
            term1,
            differential,
        })
    }

    /// Complex with trivial `Γ` from a differential matrix.
    pub fn plain(base_degree: i64, g0: FgAbGroup, g1: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        let t = Arc::new(FiniteGroup::trivial());
        let d = AbHom::new(g0, g1, matrix)?;
        let term0 = GammaModule::trivial(t.clone(), d.source_arc().clone());
        let term1 = GammaModule::trivial(t, d.target_arc().clone());
        Ok(TwoTermComplex {
            base_degree,
            term0,
            term1,
            differential: d,
        })
    }

    /// Free complex `Z^a -> Z^b` with trivial `Γ`.
    pub fn lattice(base_degree: i64, matrix: IntMatrix) -> Result<Self> {
        let (b, a) = (matrix.rows(), matrix.cols());
        Self::plain(base_degree, FgAbGroup::free(a), FgAbGroup::free(b), matrix)
    }

    pub fn base_degree(&self) -> i64 {
        self.base_degree
    }

    pub fn term0(&self) -> &GammaModule {
        &self.term0
    }

    pub fn term1(&self) -> &GammaModule {
        &self.term1
    }

    pub fn differential(&self) -> &AbHom {
        &self.differential
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.term0.group()
    }

    pub fn is_lattice(&self) -> bool {
        self.term0.is_lattice() && self.term1.is_lattice()
    }

    /// Cohomology with the chain-level data needed for induced maps.
    pub fn cohomology_data(&self, degree: i64) -> Result<Homology> {
        let d = &self.differential;
        if degree == self.base_degree {
            homology(&AbHom::zero(FgAbGroup::trivial(), d.source_arc().clone()), d)
        } else if degree == self.base_degree + 1 {
            homology(d, &AbHom::zero(d.target_arc().clone(), FgAbGroup::trivial()))
        } else {
            Err(Error::UnsupportedDegree(degree))
        }
    }

    /// `H^n` of the complex (zero outside the two degrees).
    pub fn cohomology(&self, degree: i64) -> FgAbGroup {
        match self.cohomology_data(degree) {
            Ok(h) => (*h.group).clone(),
            Err(_) => FgAbGroup::trivial(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.differential.is_isomorphism()
    }

    pub fn to_bounded(&self) -> BoundedComplex {
        BoundedComplex::new_unchecked(
            self.base_degree,
            vec![self.term0.clone(), self.term1.clone()],
            vec![self.differential.clone()],
        )
    }

    pub(crate) fn from_bounded(b: &BoundedComplex) -> Result<Self> {
        if b.terms().len() != 2 {
            return Err(Error::InvalidComplex("expected two terms".into()));
        }
        Ok(TwoTermComplex {
            base_degree: b.base_degree(),
            term0: b.terms()[0].clone(),
            term1: b.terms()[1].clone(),
            differential: b.differentials()[0].clone(),
        })
    }

    /// The same complex with torsion-free terms rewritten on `Z^r`.
    pub fn in_free_basis(&self) -> Result<TwoTermComplex> {
        let (t0, _, from0) = self.term0.free_basis()?;
        let (t1, to1, _) = self.term1.free_basis()?;
        let m = &(&to1 * self.differential.matrix()) * &from0;
        let d = AbHom::new(t0.carrier().clone(), t1.carrier().clone(), m)?;
        TwoTermComplex::new(self.base_degree, t0, t1, d)
    }

    pub fn window(&self) -> CochainWindow {
        self.to_bounded().window()
    }

    /// `Hom(-, Z)` termwise: `term1^∨ -> term0^∨` in degrees `-d-1, -d`, differential `-δ^T`.
    pub fn dual(&self) -> Result<TwoTermComplex> {
        Self::from_bounded(&self.to_bounded().dual()?)
    }

    /// Shift `[n]`: degree `d` moves to `d - n`, differential times `(-1)^n`.
    pub fn shift(&self, n: i64) -> TwoTermComplex {
        Self::from_bounded(&self.to_bounded().shift(n)).expect("shift keeps two terms")
    }
}

/// A morphism of two-term complexes given by its two components.
#[derive(Clone, Debug)]
pub struct ComplexMorphism {
    source: TwoTermComplex,
    target: TwoTermComplex,
    f0: AbHom,
    f1: AbHom,
}

impl ComplexMorphism {
    pub fn new(
        source: TwoTermComplex,
        target: TwoTermComplex,
        f0: AbHom,
        f1: AbHom,
    ) -> Result<Self> {
        if source.base_degree != target.base_degree {
            return Err(Error::InvalidComplex(format!(
                "degree mismatch: {} vs {}",
                source.base_degree, target.base_degree
            )));
        }
        equivariant_hom(&source.term0, &target.term0, &f0)?;
        equivariant_hom(&source.term1, &target.term1, &f1)?;
        let left = f1.compose(&source.differential)?;
        let right = target.differential.compose(&f0)?;
        if !left.equals(&right) {
            return Err(Error::NotCommutative("complex morphism square".into()));
        }
        Ok(ComplexMorphism {
            source,
            target,
            f0,
            f1,
        })
    }

    pub fn from_matrices(
        source: &TwoTermComplex,
        target: &TwoTermComplex,
        m0: IntMatrix,
        m1: IntMatrix,
    ) -> Result<Self> {
        let f0 = AbHom::new(source.term0.carrier().clone(), target.term0.carrier().clone(), m0)?;
        let f1 = AbHom::new(source.term1.carrier().clone(), target.term1.carrier().clone(), m1)?;
        Self::new(source.clone(), target.clone(), f0, f1)
    }

    pub fn identity(c: &TwoTermComplex) -> Self {
        ComplexMorphism {
            source: c.clone(),
            target: c.clone(),
            f0: AbHom::identity(c.term0.carrier().clone()),
            f1: AbHom::identity(c.term1.carrier().clone()),
        }
    }

    pub fn source(&self) -> &TwoTermComplex {
        &self.source
    }

    pub fn target(&self) -> &TwoTermComplex {
        &self.target
    }

    pub fn f0(&self) -> &AbHom {
        &self.f0
    }

    pub fn f1(&self) -> &AbHom {
        &self.f1
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ComplexMorphism) -> Result<ComplexMorphism> {
        if !same_group(first.target.term0.carrier(), self.source.term0.carrier())
            || !same_group(first.target.term1.carrier(), self.source.term1.carrier())
        {
            return Err(Error::NotComposable { index: 0, next: 1 });
        }
        Ok(ComplexMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            f0: self.f0.compose(&first.f0)?,
            f1: self.f1.compose(&first.f1)?,
        })
    }

    /// Induced map `H^n(source) -> H^n(target)` on canonical presentations.
    pub fn induced(&self, degree: i64) -> Result<AbHom> {
        let hs = self.source.cohomology_data(degree)?;
        let ht = self.target.cohomology_data(degree)?;
        let f = if degree == self.source.base_degree {
            &self.f0
        } else {
            &self.f1
        };
        induced_map(f, &hs, &ht)
    }

    /// The mapping cone, in degrees `d-1, d, d+1`:
    /// `P0 -[-a; f0]-> P1 ⊕ Q0 -[f1 | b]-> Q1`.
    pub fn cone(&self) -> BoundedComplex {
        let (p, q) = (&self.source, &self.target);
        let mid = GammaModule::direct_sum(&[&p.term1, &q.term0]).expect("same acting group");
        let first = p.differential.matrix().neg().vstack(self.f0.matrix());
        let second = self.f1.matrix().hstack(q.differential.matrix());
        let d0 = AbHom::new_unchecked(p.term0.carrier().clone(), mid.carrier().clone(), first);
        let d1 = AbHom::new_unchecked(mid.carrier().clone(), q.term1.carrier().clone(), second);
        BoundedComplex::new_unchecked(
            p.base_degree - 1,
            vec![p.term0.clone(), mid, q.term1.clone()],
            vec![d0, d1],
        )
    }

    /// `f^∨: target^∨ -> source^∨` with components `f1^T` and `f0^T`.
    pub fn dual(&self) -> Result<ComplexMorphism> {
        let s = self.target.dual()?;
        let t = self.source.dual()?;
        let g0 = AbHom::new_unchecked(
            s.term0.carrier().clone(),
            t.term0.carrier().clone(),
            self.f1.matrix().transpose(),
        );
        let g1 = AbHom::new_unchecked(
            s.term1.carrier().clone(),
            t.term1.carrier().clone(),
            self.f0.matrix().transpose(),
        );
        ComplexMorphism::new(s, t, g0, g1)
    }
}

/// Decides whether `f` induces isomorphisms on cohomology, once through the
/// induced maps and once through acyclicity of the cone. The two answers must agree.
pub fn is_quasi_isomorphism(f: &ComplexMorphism) -> Result<bool> {
    let d = f.source.base_degree;
    let induced = f.induced(d)?.is_isomorphism() && f.induced(d + 1)?.is_isomorphism();
    let cone = f.cone().is_acyclic()?;
    if induced != cone {
        return Err(Error::Internal(format!(
            "quasi-isomorphism tests disagree: induced maps say {induced}, cone says {cone}"
        )));
    }
    Ok(induced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows_i64(rows)
    }

    fn doubling() -> TwoTermComplex {
        TwoTermComplex::lattice(0, m(&[vec![2]])).unwrap()
    }

    fn to_cyclic(n: i64) -> TwoTermComplex {
        TwoTermComplex::plain(0, FgAbGroup::trivial(), FgAbGroup::cyclic(n), IntMatrix::zeros(1, 0)).unwrap()
    }

    #[test]
    fn cohomology_of_doubling() {
        let c = doubling();
        assert_eq!(c.cohomology(0).to_string(), "0");
        assert_eq!(c.cohomology(1).to_string(), "Z/2");
        assert_eq!(c.cohomology(5).to_string(), "0");
    }

    #[test]
    fn reduction_is_a_quasi_isomorphism() {
        let f = ComplexMorphism::from_matrices(&doubling(), &to_cyclic(2), IntMatrix::zeros(0, 1), m(&[vec![1]])).unwrap();
        assert!(is_quasi_isomorphism(&f).unwrap());
        assert!(f.cone().is_acyclic().unwrap());
        let g = ComplexMorphism::from_matrices(&doubling(), &to_cyclic(4), IntMatrix::zeros(0, 1), m(&[vec![2]])).unwrap();
        assert!(!is_quasi_isomorphism(&g).unwrap());
        assert!(is_quasi_isomorphism(&ComplexMorphism::identity(&doubling())).unwrap());
    }

    #[test]
    fn zero_map_cone_cohomology() {
        let c = doubling();
        let f = ComplexMorphism::from_matrices(&c, &c, m(&[vec![0]]), m(&[vec![0]])).unwrap();
        let cone = f.cone();
        // H^n(C(0)) = H^{n+1}(P) ⊕ H^n(Q)
        assert_eq!(cone.cohomology(-1).unwrap().to_string(), "0");
        assert_eq!(cone.cohomology(0).unwrap().to_string(), "Z/2");
        assert_eq!(cone.cohomology(1).unwrap().to_string(), "Z/2");
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let c = doubling();
        let e = ComplexMorphism::from_matrices(&c, &c, m(&[vec![1]]), m(&[vec![3]]));
        assert!(matches!(e, Err(Error::NotCommutative(_))));
    }

    #[test]
    fn dual_of_projection() {
        let c = TwoTermComplex::lattice(0, m(&[vec![1, 0]])).unwrap();
        let d = c.dual().unwrap();
        assert_eq!(d.base_degree(), -1);
        assert_eq!(d.differential().matrix(), &m(&[vec![-1], vec![0]]));
        let torsion = to_cyclic(2);
        assert!(matches!(torsion.dual(), Err(Error::DualOfNonLattice(_))));
    }
}
