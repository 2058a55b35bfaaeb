use std::sync::Arc;

use super::datum::RootDatum;
use super::quotient::simply_connected_cover;
use crate::error::{Error, Result};
use crate::gammamod::GammaModule;
use crate::lattice::{is_exact, AbHom, FgAbGroup, IntMatrix, RowLattice};

/// Invariants of a split reductive group read off its root datum.
#[derive(Clone, Debug)]
pub struct GroupInvariants {
    /// `Q^∨ ⊂ X^∨`.
    pub coroot_lattice: RowLattice,
    /// `Q ⊂ X`.
    pub root_lattice: RowLattice,
    /// `π₁ = X^∨ / Q^∨`, presented on the cocharacter basis.
    pub pi1: Arc<FgAbGroup>,
    /// `π₁` with the descended Γ-action, when the datum has one.
    pub pi1_module: Option<GammaModule>,
    /// Characters of `μ = ker(G̃ -> G^der)`: `P / res(X)`.
    pub mu_star: FgAbGroup,
    /// `μ(-1) = (X^∨ ∩ Q Q^∨) / Q^∨`, the torsion of `π₁`.
    pub mu_minus_one: Arc<FgAbGroup>,
    /// `Z(G)^* = X / Q`.
    pub center_chars: FgAbGroup,
    /// `(G^tor)_* = X^∨ / (X^∨ ∩ Q Q^∨)`.
    pub cochar_torus_quotient: Arc<FgAbGroup>,
    /// `0 -> μ(-1) -> π₁ -> (G^tor)_* -> 0`, four maps, checked exact.
    pub mu_sequence: Vec<AbHom>,
    pub is_semisimple: bool,
    pub is_simply_connected: bool,
    pub is_adjoint: bool,
}

/// Computes every invariant and checks the `μ(-1)` sequence.
pub fn fundamental_invariants(d: &RootDatum) -> Result<GroupInvariants> {
    let n = d.rank();
    let coroot_lattice = d.coroot_lattice();
    let root_lattice = d.root_lattice();
    let pi1 = Arc::new(FgAbGroup::new(n, d.coroots().clone())?);
    let pi1_module = match d.gamma() {
        None => None,
        Some(g) => Some(GammaModule::new(g.group().clone(), pi1.clone(), g.cocharacter_matrices())?),
    };
    let mu_star = simply_connected_cover(d)?.mu_star;

    let sat = coroot_lattice.saturation();
    let k = sat.rank();
    let rel_rows = (0..coroot_lattice.rank())
        .map(|i| {
            sat.coordinates(coroot_lattice.basis().row(i))
                .ok_or_else(|| Error::Internal("coroot lattice is not inside its saturation".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mu_minus_one = Arc::new(FgAbGroup::new(k, IntMatrix::from_rows(rel_rows, k))?);
    let cochar_torus_quotient = Arc::new(FgAbGroup::new(n, sat.basis().clone())?);
    let zero = Arc::new(FgAbGroup::trivial());
    let mu_sequence = vec![
        AbHom::zero(zero.clone(), mu_minus_one.clone()),
        AbHom::new(mu_minus_one.clone(), pi1.clone(), sat.basis().transpose())?,
        AbHom::new(pi1.clone(), cochar_torus_quotient.clone(), IntMatrix::identity(n))?,
        AbHom::zero(cochar_torus_quotient.clone(), zero),
    ];
    if let Some(f) = is_exact(&mu_sequence)?.failure {
        return Err(Error::Internal(format!("mu(-1) sequence: {f}")));
    }
    let center_chars = FgAbGroup::new(n, d.roots().clone())?;
    let is_semisimple = coroot_lattice.rank() == n;
    let is_simply_connected = pi1.is_trivial();
    let is_adjoint = is_semisimple && center_chars.is_trivial();
    Ok(GroupInvariants {
        coroot_lattice,
        root_lattice,
        pi1,
        pi1_module,
        mu_star,
        mu_minus_one,
        center_chars,
        cochar_torus_quotient,
        mu_sequence,
        is_semisimple,
        is_simply_connected,
        is_adjoint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::standard_group_by_name;

    fn inv(name: &str) -> GroupInvariants {
        fundamental_invariants(&standard_group_by_name(name).unwrap()).unwrap()
    }

    #[test]
    fn pgl2() {
        let i = inv("PGL(2)");
        assert_eq!(i.pi1.to_string(), "Z/2");
        assert_eq!(i.mu_star.to_string(), "Z/2");
        assert_eq!(i.mu_minus_one.to_string(), "Z/2");
        assert_eq!(i.center_chars.to_string(), "0");
        assert_eq!(i.cochar_torus_quotient.to_string(), "0");
        assert!(i.is_adjoint && i.is_semisimple && !i.is_simply_connected);
    }

    #[test]
    fn gl2() {
        let i = inv("GL(2)");
        assert_eq!(i.pi1.to_string(), "Z");
        assert_eq!(i.mu_star.to_string(), "0");
        assert_eq!(i.center_chars.to_string(), "Z");
        assert_eq!(i.cochar_torus_quotient.to_string(), "Z");
        assert!(!i.is_semisimple);
    }

    #[test]
    fn sp4_and_torus() {
        assert_eq!(inv("SC(C,2)").pi1.to_string(), "0");
        assert_eq!(inv("Sp(4)").pi1.to_string(), "0");
        assert_eq!(inv("Torus(3)").pi1.to_string(), "Z^3");
        assert_eq!(inv("SO(5)").pi1.to_string(), "Z/2");
        assert_eq!(inv("ADJ(E,6)").pi1.to_string(), "Z/3");
    }

    #[test]
    fn gamma_descends_to_pi1() {
        let d = standard_group_by_name("SO(4)").unwrap();
        let sl2 = standard_group_by_name("SL(2)").unwrap();
        let sq = RootDatum::permuted_power(&sl2, Arc::new(crate::gammamod::FiniteGroup::symmetric(2))).unwrap();
        let q = crate::rootdata::central_quotient(&sq, &[vec![
            num_rational::BigRational::new(1.into(), 2.into()),
            num_rational::BigRational::new(1.into(), 2.into()),
        ]])
        .unwrap();
        let i = fundamental_invariants(&q).unwrap();
        assert_eq!(i.pi1.to_string(), "Z/2");
        assert!(i.pi1_module.is_some());
        assert_eq!(inv("SO(4)").pi1.to_string(), fundamental_invariants(&d).unwrap().pi1.to_string());
    }
}
