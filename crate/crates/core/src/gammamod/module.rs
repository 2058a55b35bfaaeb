use std::sync::Arc;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::lattice::{same_group, AbHom, FgAbGroup, IntMatrix, Integer};

/// A finitely generated abelian group with an action of a finite group.
/// `action[g]` acts on generator coordinates.
#[derive(Clone, Debug)]
pub struct GammaModule {
    group: Arc<FiniteGroup>,
    carrier: Arc<FgAbGroup>,
    action: Vec<IntMatrix>,
}

impl GammaModule {
    /// Checks that every matrix is well-defined on the carrier, that the identity
    /// acts trivially and that the action is multiplicative.
    pub fn new(
        group: impl Into<Arc<FiniteGroup>>,
        carrier: impl Into<Arc<FgAbGroup>>,
        action: Vec<IntMatrix>,
    ) -> Result<Self> {
        let (group, carrier) = (group.into(), carrier.into());
        if action.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let homs: Vec<AbHom> = action
            .iter()
            .enumerate()
            .map(|(g, m)| {
                AbHom::new(carrier.clone(), carrier.clone(), m.clone())
                    .map_err(|e| Error::InvalidModule(format!("element {g}: {e}")))
            })
            .collect::<Result<_>>()?;
        if !homs[group.identity()].equals(&AbHom::identity(carrier.clone())) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = homs[a].compose(&homs[b])?;
                if !ab.equals(&homs[group.mul(a, b)]) {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GammaModule {
            group,
            carrier,
            action,
        })
    }

    pub(crate) fn new_unchecked(
        group: Arc<FiniteGroup>,
        carrier: Arc<FgAbGroup>,
        action: Vec<IntMatrix>,
    ) -> Self {
        GammaModule {
            group,
            carrier,
            action,
        }
    }

    pub fn trivial(group: impl Into<Arc<FiniteGroup>>, carrier: impl Into<Arc<FgAbGroup>>) -> Self {
        let (group, carrier) = (group.into(), carrier.into());
        let id = IntMatrix::identity(carrier.generators());
        let action = vec![id; group.order()];
        Self::new_unchecked(group, carrier, action)
    }

    /// `Z` with `g` acting by `signs[g]`.
    pub fn from_character(group: impl Into<Arc<FiniteGroup>>, signs: &[i64]) -> Result<Self> {
        let action = signs
            .iter()
            .map(|&s| IntMatrix::from_rows_i64(&[vec![s]]))
            .collect();
        Self::new(group, FgAbGroup::free(1), action)
    }

    /// `Z` with the sign action of a group of order 2, or of any group through
    /// the parity of its permutation representation.
    pub fn sign(group: impl Into<Arc<FiniteGroup>>) -> Result<Self> {
        let group = group.into();
        let signs: Vec<i64> = match group.permutations() {
            Some(perms) => perms.iter().map(|p| parity(p)).collect(),
            None => return Err(Error::InvalidModule("sign action needs a permutation group".into())),
        };
        Self::from_character(group, &signs)
    }

    /// Free module on a finite `Γ`-set: `perms[g]` sends basis vector `i` to `perms[g][i]`.
    pub fn permutation(group: impl Into<Arc<FiniteGroup>>, perms: &[Vec<usize>]) -> Result<Self> {
        let group = group.into();
        let k = perms.first().map_or(0, |p| p.len());
        let action = perms.iter().map(|p| permutation_matrix(p, k)).collect();
        Self::new(group, FgAbGroup::free(k), action)
    }

    /// The permutation module of the group's own permutation representation.
    pub fn natural_permutation(group: impl Into<Arc<FiniteGroup>>) -> Result<Self> {
        let group = group.into();
        let perms = group
            .permutations()
            .ok_or_else(|| Error::InvalidModule("group has no permutation representation".into()))?
            .to_vec();
        Self::permutation(group, &perms)
    }

    /// `Z[Γ] ⊗ Z^k`: block `h` is sent to block `g·h`.
    pub fn induced_free(group: impl Into<Arc<FiniteGroup>>, k: usize) -> Self {
        let group = group.into();
        let n = group.order();
        let action = (0..n)
            .map(|g| {
                let perm: Vec<usize> = (0..n).map(|h| group.mul(g, h)).collect();
                permutation_matrix(&perm, n).kronecker(&IntMatrix::identity(k))
            })
            .collect();
        Self::new_unchecked(group, Arc::new(FgAbGroup::free(n * k)), action)
    }

    pub fn direct_sum(mods: &[&GammaModule]) -> Result<Self> {
        let group = mods
            .first()
            .map(|m| m.group.clone())
            .ok_or_else(|| Error::InvalidModule("empty direct sum".into()))?;
        if mods.iter().any(|m| *m.group != *group) {
            return Err(Error::InvalidModule("direct sum over different groups".into()));
        }
        let carriers: Vec<&FgAbGroup> = mods.iter().map(|m| &*m.carrier).collect();
        let carrier = Arc::new(FgAbGroup::direct_sum(&carriers));
        let action = (0..group.order())
            .map(|g| {
                let blocks: Vec<&IntMatrix> = mods.iter().map(|m| &m.action[g]).collect();
                IntMatrix::block_diag(&blocks)
            })
            .collect();
        Ok(Self::new_unchecked(group, carrier, action))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn carrier(&self) -> &Arc<FgAbGroup> {
        &self.carrier
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn action_hom(&self, g: usize) -> AbHom {
        AbHom::new_unchecked(self.carrier.clone(), self.carrier.clone(), self.action[g].clone())
    }

    /// Same module with the carrier replaced by an equal presentation.
    pub fn with_carrier(&self, carrier: &Arc<FgAbGroup>) -> Result<Self> {
        if !same_group(carrier, &self.carrier) {
            return Err(Error::InvalidModule("carrier presentations differ".into()));
        }
        Ok(Self::new_unchecked(self.group.clone(), carrier.clone(), self.action.clone()))
    }

    /// Dual of a lattice: `Hom(M, Z)` with `g` acting by `ρ(g^{-1})^T`.
    pub fn dual(&self) -> Result<Self> {
        if !self.is_lattice() {
            return Err(Error::DualOfNonLattice(self.carrier.to_string()));
        }
        let action = (0..self.group.order())
            .map(|g| self.action[self.group.inverse(g)].transpose())
            .collect();
        Ok(Self::new_unchecked(
            self.group.clone(),
            Arc::new(FgAbGroup::free(self.carrier.generators())),
            action,
        ))
    }

    /// For a torsion-free carrier: the same module on `Z^r` in canonical coordinates,
    /// with the matrices to and from the original generators.
    pub fn free_basis(&self) -> Result<(Self, IntMatrix, IntMatrix)> {
        if !self.carrier.is_free() {
            return Err(Error::DualOfNonLattice(self.carrier.to_string()));
        }
        let to = self.carrier.to_canonical_matrix().clone();
        let from = self.carrier.from_canonical_matrix().clone();
        let action = self.action.iter().map(|a| &(&to * a) * &from).collect();
        let m = Self::new_unchecked(self.group.clone(), Arc::new(FgAbGroup::free(to.rows())), action);
        Ok((m, to, from))
    }

    /// True when the carrier is presented without relations.
    pub fn is_lattice(&self) -> bool {
        self.carrier.relations().is_zero()
    }

    /// Restricts along the identity of `Γ` to a module over the trivial group.
    pub fn forget_action(&self) -> Self {
        Self::trivial(FiniteGroup::trivial(), self.carrier.clone())
    }
}

fn parity(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub(crate) fn permutation_matrix(p: &[usize], k: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(k, k);
    for (i, &j) in p.iter().enumerate() {
        m[(j, i)] = Integer::from(1);
    }
    m
}

/// A homomorphism of Γ-modules, verified equivariant.
#[derive(Clone, Debug)]
pub struct GammaHom {
    pub source: GammaModule,
    pub target: GammaModule,
    pub map: AbHom,
}

/// Returns `f` packaged with its modules if `f ∘ ρ_M(g) = ρ_N(g) ∘ f` for every `g`.
pub fn equivariant_hom(m: &GammaModule, n: &GammaModule, f: &AbHom) -> Result<GammaHom> {
    if *m.group != *n.group {
        return Err(Error::InvalidModule("modules over different groups".into()));
    }
    if !same_group(f.source_arc(), &m.carrier) || !same_group(f.target_arc(), &n.carrier) {
        return Err(Error::Dimension("hom does not match the module carriers".into()));
    }
    for g in 0..m.group.order() {
        let left = f.compose(&m.action_hom(g))?;
        let right = n.action_hom(g).compose(f)?;
        if !left.equals(&right) {
            return Err(Error::NotEquivariant { element: g });
        }
    }
    Ok(GammaHom {
        source: m.clone(),
        target: n.clone(),
        map: f.clone(),
    })
}

impl GammaHom {
    /// Kernel module with its equivariant inclusion.
    pub fn kernel(&self) -> Result<(GammaModule, GammaHom)> {
        let k = self.map.kernel();
        let action = (0..self.source.group.order())
            .map(|g| {
                let moved = self.source.action_hom(g).compose(&k.inclusion)?;
                Ok(k.factor(&moved)?.matrix().clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let module = GammaModule::new_unchecked(self.source.group.clone(), k.group.clone(), action);
        let inc = GammaHom {
            source: module.clone(),
            target: self.source.clone(),
            map: k.inclusion,
        };
        Ok((module, inc))
    }

    /// Cokernel module with its equivariant projection.
    pub fn cokernel(&self) -> (GammaModule, GammaHom) {
        let (c, proj) = self.map.cokernel();
        let module = GammaModule::new_unchecked(
            self.target.group.clone(),
            c,
            self.target.action.clone(),
        );
        let p = GammaHom {
            source: self.target.clone(),
            target: module.clone(),
            map: proj,
        };
        (module, p)
    }

    pub fn compose(&self, first: &GammaHom) -> Result<GammaHom> {
        Ok(GammaHom {
            source: first.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&first.map)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn sign_and_permutation_modules() {
        let s = GammaModule::sign(z2()).unwrap();
        assert_eq!(s.action(1), &IntMatrix::from_rows_i64(&[vec![-1]]));
        let p = GammaModule::natural_permutation(z2()).unwrap();
        assert_eq!(p.action(1), &IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]));
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        assert!(GammaModule::natural_permutation(s3.clone()).is_ok());
        assert!(GammaModule::sign(s3).is_ok());
    }

    #[test]
    fn non_multiplicative_action_is_rejected() {
        let bad = GammaModule::new(
            z2(),
            FgAbGroup::free(1),
            vec![IntMatrix::from_rows_i64(&[vec![1]]), IntMatrix::from_rows_i64(&[vec![2]])],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn equivariance_checks() {
        let triv = GammaModule::trivial(z2(), FgAbGroup::free(1));
        let sign = GammaModule::sign(z2()).unwrap();
        let one = AbHom::identity(FgAbGroup::free(1));
        let one = AbHom::new(sign.carrier().clone(), triv.carrier().clone(), one.matrix().clone()).unwrap();
        assert_eq!(
            equivariant_hom(&sign, &triv, &one).unwrap_err(),
            Error::NotEquivariant { element: 1 }
        );
        let swap = GammaModule::natural_permutation(z2()).unwrap();
        let sum = AbHom::new(swap.carrier().clone(), triv.carrier().clone(), IntMatrix::from_rows_i64(&[vec![1, 1]])).unwrap();
        let h = equivariant_hom(&swap, &triv, &sum).unwrap();
        let (k, _) = h.kernel().unwrap();
        assert_eq!(k.carrier().to_string(), "Z");
        assert_eq!(k.action(1), &IntMatrix::from_rows_i64(&[vec![-1]]));
    }
}
