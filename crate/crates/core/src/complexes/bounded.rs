use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gammamod::{permutation_matrix, GammaModule};
use crate::lattice::{AbHom, CochainWindow, FgAbGroup};

/// A finite cochain complex `terms[0] -> terms[1] -> ...` starting in `base_degree`.
/// Used for cones; not part of the two-term public surface.
#[derive(Clone, Debug)]
pub struct BoundedComplex {
    base_degree: i64,
    terms: Vec<GammaModule>,
    diffs: Vec<AbHom>,
}

impl BoundedComplex {
    pub(crate) fn new_unchecked(base_degree: i64, terms: Vec<GammaModule>, diffs: Vec<AbHom>) -> Self {
        debug_assert_eq!(terms.len(), diffs.len() + 1);
        BoundedComplex {
            base_degree,
            terms,
            diffs,
        }
    }

    pub fn base_degree(&self) -> i64 {
        self.base_degree
    }

    pub fn terms(&self) -> &[GammaModule] {
        &self.terms
    }

    pub fn differentials(&self) -> &[AbHom] {
        &self.diffs
    }

    pub fn window(&self) -> CochainWindow {
        CochainWindow {
            start: self.base_degree,
            groups: self.terms.iter().map(|t| t.carrier().clone()).collect(),
            diffs: self.diffs.clone(),
            closed: true,
        }
    }

    pub fn check(&self) -> Result<()> {
        self.window().check()
    }

    pub fn cohomology(&self, degree: i64) -> Result<FgAbGroup> {
        let w = self.window();
        if degree < self.base_degree || degree >= self.base_degree + self.terms.len() as i64 {
            return Ok(FgAbGroup::trivial());
        }
        Ok((*w.cohomology(degree)?.group).clone())
    }

    /// Cohomology vanishes in every degree.
    pub fn is_acyclic(&self) -> Result<bool> {
        for k in 0..self.terms.len() {
            if !self.cohomology(self.base_degree + k as i64)?.is_trivial() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Termwise dual of a complex of lattices. Degree `n` goes to `-n` and the
    /// differential into degree `-n` is `-(δ^{n-1})^T`.
    pub fn dual(&self) -> Result<BoundedComplex> {
        let len = self.terms.len();
        let mut terms = Vec::with_capacity(len);
        for t in self.terms.iter().rev() {
            terms.push(t.dual()?);
        }
        let diffs = (0..len - 1)
            .map(|k| {
                let orig = &self.diffs[len - 2 - k];
                AbHom::new_unchecked(
                    terms[k].carrier().clone(),
                    terms[k + 1].carrier().clone(),
                    orig.matrix().transpose().neg(),
                )
            })
            .collect();
        Ok(BoundedComplex {
            base_degree: -(self.base_degree + len as i64 - 1),
            terms,
            diffs,
        })
    }

    /// `[n]`: degree `d` moves to `d - n`, differentials times `(-1)^n`.
    pub fn shift(&self, n: i64) -> BoundedComplex {
        let diffs = if n.rem_euclid(2) == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.neg()).collect()
        };
        BoundedComplex {
            base_degree: self.base_degree - n,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Reorders the generators of term `k` by `perm` (new generator `perm[i]` is old `i`).
    pub fn permute_term(&self, k: usize, perm: &[usize]) -> Result<BoundedComplex> {
        let t = &self.terms[k];
        if !t.is_lattice() || perm.len() != t.carrier().generators() {
            return Err(Error::InvalidComplex("can only permute lattice terms".into()));
        }
        let p = permutation_matrix(perm, perm.len());
        let pt = p.transpose();
        let carrier = Arc::new(FgAbGroup::free(perm.len()));
        let action = t.actions().iter().map(|a| &(&p * a) * &pt).collect();
        let module = GammaModule::new_unchecked(t.group().clone(), carrier.clone(), action);
        let mut terms = self.terms.clone();
        terms[k] = module;
        let mut diffs = self.diffs.clone();
        if k > 0 {
            let d = &self.diffs[k - 1];
            diffs[k - 1] = AbHom::new_unchecked(d.source_arc().clone(), carrier.clone(), &p * d.matrix());
        }
        if k < self.diffs.len() {
            let d = &self.diffs[k];
            diffs[k] = AbHom::new_unchecked(carrier, d.target_arc().clone(), d.matrix() * &pt);
        }
        Ok(BoundedComplex {
            base_degree: self.base_degree,
            terms,
            diffs,
        })
    }

    /// Bit-level equality: degrees, presentations, differential and action matrices.
    pub fn structurally_equal(&self, other: &BoundedComplex) -> bool {
        self.base_degree == other.base_degree
            && self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| {
                a.carrier().generators() == b.carrier().generators()
                    && a.carrier().relations() == b.carrier().relations()
                    && a.actions() == b.actions()
            })
            && self
                .diffs
                .iter()
                .zip(&other.diffs)
                .all(|(a, b)| a.matrix() == b.matrix())
    }
}

/// Permutation exchanging two consecutive blocks of sizes `a` and `b`:
/// position `i` of `X ⊕ Y` goes to its place in `Y ⊕ X`.
pub(crate) fn block_swap(a: usize, b: usize) -> Vec<usize> {
    (0..a + b).map(|i| if i < a { b + i } else { i - a }).collect()
}

