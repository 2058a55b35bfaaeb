use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::error::{AxiomError, Error, Result};
use crate::gammamod::FiniteGroup;
use crate::lattice::{int, IntMatrix, Integer, RowLattice};

/// `⟨x, y⟩` for a character `x` and a cocharacter `y`.
pub fn pairing(x: &[Integer], y: &[Integer]) -> Integer {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// An action of a finite group on the character lattice `X = Z^n`.
/// `matrices[g]` acts on column vectors; on `X^∨` the element `g` acts by `ρ(g⁻¹)ᵀ`.
#[derive(Clone, Debug)]
pub struct GammaAction {
    group: Arc<FiniteGroup>,
    matrices: Vec<IntMatrix>,
}

impl GammaAction {
    pub fn new(group: impl Into<Arc<FiniteGroup>>, matrices: Vec<IntMatrix>) -> Self {
        GammaAction {
            group: group.into(),
            matrices,
        }
    }

    /// From matrices acting on `X^∨`.
    pub fn from_cocharacters(group: impl Into<Arc<FiniteGroup>>, cochar: &[IntMatrix]) -> Self {
        let group = group.into();
        let matrices = (0..group.order()).map(|g| cochar[group.inverse(g)].transpose()).collect();
        GammaAction { group, matrices }
    }

    pub fn trivial(group: impl Into<Arc<FiniteGroup>>, rank: usize) -> Self {
        let group = group.into();
        let matrices = vec![IntMatrix::identity(rank); group.order()];
        GammaAction { group, matrices }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn on_characters(&self, g: usize) -> &IntMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn on_cocharacters(&self, g: usize) -> IntMatrix {
        self.matrices[self.group.inverse(g)].transpose()
    }

    pub fn cocharacter_matrices(&self) -> Vec<IntMatrix> {
        (0..self.group.order()).map(|g| self.on_cocharacters(g)).collect()
    }
}

/// `(X, Φ, X^∨, Φ^∨)` with `X = X^∨ = Z^rank` under the standard pairing.
/// Roots are the rows of `roots`, and row `i` of `coroots` is the coroot of root `i`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    rank: usize,
    roots: IntMatrix,
    coroots: IntMatrix,
    gamma: Option<GammaAction>,
    index: OnceLock<HashMap<Vec<Integer>, usize>>,
}

impl RootDatum {
    /// Builds and validates a root datum.
    pub fn new(rank: usize, roots: IntMatrix, coroots: IntMatrix, gamma: Option<GammaAction>) -> Result<Self> {
        let d = Self::new_unchecked(rank, roots, coroots, gamma);
        d.validate()?;
        Ok(d)
    }

    /// No axiom checks; [`RootDatum::validate`] reports violations later.
    pub fn new_unchecked(rank: usize, roots: IntMatrix, coroots: IntMatrix, gamma: Option<GammaAction>) -> Self {
        RootDatum {
            rank,
            roots,
            coroots,
            gamma,
            index: OnceLock::new(),
        }
    }

    pub fn from_i64(rank: usize, roots: &[Vec<i64>], coroots: &[Vec<i64>]) -> Result<Self> {
        let r = if roots.is_empty() {
            IntMatrix::zeros(0, rank)
        } else {
            IntMatrix::from_rows_i64(roots)
        };
        let c = if coroots.is_empty() {
            IntMatrix::zeros(0, rank)
        } else {
            IntMatrix::from_rows_i64(coroots)
        };
        Self::new(rank, r, c, None)
    }

    pub fn torus(rank: usize) -> Self {
        Self::new_unchecked(rank, IntMatrix::zeros(0, rank), IntMatrix::zeros(0, rank), None)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.rows()
    }

    pub fn roots(&self) -> &IntMatrix {
        &self.roots
    }

    pub fn coroots(&self) -> &IntMatrix {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &[Integer] {
        self.roots.row(i)
    }

    pub fn coroot(&self, i: usize) -> &[Integer] {
        self.coroots.row(i)
    }

    pub fn gamma(&self) -> Option<&GammaAction> {
        self.gamma.as_ref()
    }

    /// The same datum with a Γ-action on `X`, validated.
    pub fn with_gamma(&self, gamma: GammaAction) -> Result<Self> {
        Self::new(self.rank, self.roots.clone(), self.coroots.clone(), Some(gamma))
    }

    pub fn without_gamma(&self) -> Self {
        Self::new_unchecked(self.rank, self.roots.clone(), self.coroots.clone(), None)
    }

    /// Index of a root given in `X` coordinates.
    pub fn root_index(&self, x: &[Integer]) -> Option<usize> {
        let index = self.index.get_or_init(|| {
            (0..self.num_roots())
                .map(|i| (self.roots.row_vec(i), i))
                .collect()
        });
        index.get(x).copied()
    }

    /// Checks every axiom, reporting the first violation found.
    pub fn validate(&self) -> std::result::Result<(), AxiomError> {
        let n = self.rank;
        let m = self.roots.rows();
        if self.roots.cols() != n || self.coroots.cols() != n || self.coroots.rows() != m {
            return Err(AxiomError::Dimension(format!(
                "rank {n}: roots are {}x{}, coroots are {}x{}",
                self.roots.rows(),
                self.roots.cols(),
                self.coroots.rows(),
                self.coroots.cols()
            )));
        }
        let mut seen: HashMap<&[Integer], usize> = HashMap::new();
        for i in 0..m {
            if let Some(&j) = seen.get(self.root(i)) {
                return Err(AxiomError::Duplicate(j, i));
            }
            seen.insert(self.root(i), i);
        }
        let two = int(2);
        for i in 0..m {
            let p = pairing(self.root(i), self.coroot(i));
            if p != two {
                return Err(AxiomError::Pairing {
                    index: i,
                    value: p.to_string(),
                });
            }
        }
        for i in 0..m {
            let neg: Vec<Integer> = self.root(i).iter().map(|x| -x).collect();
            let ok = self.root_index(&neg).is_some_and(|j| {
                self.coroot(j).iter().zip(self.coroot(i)).all(|(a, b)| *a == -b)
            });
            if !ok {
                return Err(AxiomError::Negation(i));
            }
            let double: Vec<Integer> = self.root(i).iter().map(|x| x * &two).collect();
            if let Some(j) = self.root_index(&double) {
                return Err(AxiomError::NonReduced { root: i, double: j });
            }
        }
        for i in 0..m {
            let (a, ac) = (self.root(i), self.coroot(i));
            for j in 0..m {
                let c = pairing(self.root(j), ac);
                let image: Vec<Integer> = self.root(j).iter().zip(a).map(|(x, y)| x - &c * y).collect();
                let k = self
                    .root_index(&image)
                    .ok_or(AxiomError::RootReflection { reflection: i, root: j })?;
                let c2 = pairing(a, self.coroot(j));
                let co_ok = self
                    .coroot(j)
                    .iter()
                    .zip(ac)
                    .zip(self.coroot(k))
                    .all(|((x, y), z)| x - &c2 * y == *z);
                if !co_ok {
                    return Err(AxiomError::CorootReflection { reflection: i, coroot: j });
                }
            }
        }
        if let Some(g) = &self.gamma {
            self.validate_gamma(g)?;
        }
        Ok(())
    }

    fn validate_gamma(&self, g: &GammaAction) -> std::result::Result<(), AxiomError> {
        let group = &g.group;
        let err = |s: String| AxiomError::Gamma(s);
        if g.matrices.len() != group.order() {
            return Err(err(format!(
                "{} matrices for a group of order {}",
                g.matrices.len(),
                group.order()
            )));
        }
        for (e, mat) in g.matrices.iter().enumerate() {
            if mat.rows() != self.rank || mat.cols() != self.rank || !mat.is_unimodular() {
                return Err(err(format!("element {e} does not act by an automorphism of X")));
            }
        }
        if g.matrices[group.identity()] != IntMatrix::identity(self.rank) {
            return Err(err("identity does not act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if &g.matrices[a] * &g.matrices[b] != g.matrices[group.mul(a, b)] {
                    return Err(err(format!("action is not multiplicative at ({a}, {b})")));
                }
            }
        }
        for e in 0..group.order() {
            let co = g.on_cocharacters(e);
            for i in 0..self.num_roots() {
                let image = g.matrices[e].mul_vec(self.root(i));
                let Some(k) = self.root_index(&image) else {
                    return Err(err(format!("element {e} sends root {i} outside the root set")));
                };
                if co.mul_vec(self.coroot(i)) != self.coroot(k) {
                    return Err(err(format!("element {e} is incompatible with coroot {i}")));
                }
            }
        }
        Ok(())
    }

    /// Roots whose first nonzero coordinate is positive.
    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.num_roots())
            .filter(|&i| self.root(i).iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()))
            .collect()
    }

    /// Indecomposable positive roots, ordered lexicographically by coordinates.
    pub fn simple_roots(&self) -> Vec<usize> {
        let pos = self.positive_roots();
        let is_pos: Vec<bool> = {
            let mut v = vec![false; self.num_roots()];
            for &i in &pos {
                v[i] = true;
            }
            v
        };
        let mut simple: Vec<usize> = pos
            .iter()
            .copied()
            .filter(|&i| {
                !pos.iter().any(|&j| {
                    let diff: Vec<Integer> = self.root(i).iter().zip(self.root(j)).map(|(a, b)| a - b).collect();
                    self.root_index(&diff).is_some_and(|k| is_pos[k])
                })
            })
            .collect();
        simple.sort_by(|&a, &b| self.root(a).cmp(self.root(b)));
        simple
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots().len()
    }

    /// `⟨α_j, α_i^∨⟩` over the simple roots, row `i`, column `j`.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let s = self.simple_roots();
        let rows = s
            .iter()
            .map(|&i| s.iter().map(|&j| pairing(self.root(j), self.coroot(i))).collect())
            .collect();
        IntMatrix::from_rows(rows, s.len())
    }

    pub fn root_lattice(&self) -> RowLattice {
        RowLattice::from_generators(&self.roots)
    }

    pub fn coroot_lattice(&self) -> RowLattice {
        RowLattice::from_generators(&self.coroots)
    }

    /// Direct product, roots of the factors in order. Γ-actions are dropped.
    pub fn product(factors: &[&RootDatum]) -> RootDatum {
        let rank = factors.iter().map(|d| d.rank).sum();
        let r: Vec<&IntMatrix> = factors.iter().map(|d| &d.roots).collect();
        let c: Vec<&IntMatrix> = factors.iter().map(|d| &d.coroots).collect();
        RootDatum::new_unchecked(rank, IntMatrix::block_diag(&r), IntMatrix::block_diag(&c), None)
    }

    /// `d^k` with Γ permuting the factors through its permutation representation
    /// on `k` points.
    pub fn permuted_power(d: &RootDatum, group: Arc<FiniteGroup>) -> Result<RootDatum> {
        let perms = group
            .permutations()
            .ok_or_else(|| Error::InvalidGroup("group has no permutation representation".into()))?
            .to_vec();
        let k = perms.first().map_or(0, |p| p.len());
        let copies: Vec<&RootDatum> = std::iter::repeat_n(d, k).collect();
        let prod = RootDatum::product(&copies);
        let n = d.rank;
        let matrices = perms
            .iter()
            .map(|p| {
                let mut m = IntMatrix::zeros(n * k, n * k);
                for (src, &dst) in p.iter().enumerate() {
                    for t in 0..n {
                        m[(dst * n + t, src * n + t)] = Integer::one();
                    }
                }
                m
            })
            .collect();
        prod.with_gamma(GammaAction::new(group, matrices))
    }

    /// Same roots and coroots, compared as sets of pairs.
    pub fn same_data(&self, other: &RootDatum) -> bool {
        self.rank == other.rank
            && self.num_roots() == other.num_roots()
            && (0..self.num_roots()).all(|i| {
                other
                    .root_index(self.root(i))
                    .is_some_and(|j| other.coroot(j) == self.coroot(i))
            })
    }
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.roots == other.roots && self.coroots == other.coroots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_and_bad_pairing() {
        assert!(RootDatum::from_i64(1, &[vec![2], vec![-2]], &[vec![1], vec![-1]]).is_ok());
        let e = RootDatum::from_i64(1, &[vec![2], vec![-2]], &[vec![2], vec![-2]]).unwrap_err();
        assert!(matches!(e, Error::Axiom(AxiomError::Pairing { index: 0, .. })));
    }

    #[test]
    fn gl2_is_valid() {
        let d = RootDatum::from_i64(2, &[vec![1, -1], vec![-1, 1]], &[vec![1, -1], vec![-1, 1]]).unwrap();
        assert_eq!(d.simple_roots(), vec![0]);
        assert_eq!(d.cartan_matrix(), IntMatrix::from_rows_i64(&[vec![2]]));
    }

    #[test]
    fn distinct_axiom_errors() {
        let e = RootDatum::from_i64(1, &[vec![2]], &[vec![1]]).unwrap_err();
        assert!(matches!(e, Error::Axiom(AxiomError::Negation(0))));
        let e = RootDatum::from_i64(1, &[vec![1], vec![-1], vec![2], vec![-2]], &[vec![2], vec![-2], vec![1], vec![-1]])
            .unwrap_err();
        assert!(matches!(e, Error::Axiom(AxiomError::NonReduced { root: 0, double: 2 })));
        // A1 x A1 roots with a coroot that does not reflect the other root set
        let e = RootDatum::from_i64(
            2,
            &[vec![2, 0], vec![-2, 0], vec![0, 2], vec![0, -2]],
            &[vec![1, 1], vec![-1, -1], vec![0, 1], vec![0, -1]],
        )
        .unwrap_err();
        assert!(matches!(e, Error::Axiom(AxiomError::RootReflection { .. })));
    }

    #[test]
    fn swap_action_on_sl2_squared() {
        let sl2 = RootDatum::from_i64(1, &[vec![2], vec![-2]], &[vec![1], vec![-1]]).unwrap();
        let g = Arc::new(FiniteGroup::symmetric(2));
        let d = RootDatum::permuted_power(&sl2, g).unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.num_roots(), 4);
        let flip = GammaAction::new(
            Arc::new(FiniteGroup::cyclic(2)),
            vec![IntMatrix::identity(2), IntMatrix::from_rows_i64(&[vec![-1, 0], vec![0, 1]])],
        );
        assert!(d.without_gamma().with_gamma(flip).is_ok());
        let scale = GammaAction::new(
            Arc::new(FiniteGroup::cyclic(2)),
            vec![IntMatrix::identity(2), IntMatrix::from_rows_i64(&[vec![1, 1], vec![0, 1]])],
        );
        assert!(matches!(
            d.without_gamma().with_gamma(scale),
            Err(Error::Axiom(AxiomError::Gamma(_)))
        ));
    }
}
