use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gammamod::{bar_complex, cochain_map};
use crate::lattice::{AbHom, CochainWindow, ComplexSes, FgAbGroup, IntMatrix, Integer};

use super::two_term::TwoTermComplex;

/// Highest supported degree of hypercohomology, relative to the base degree.
pub const MAX_RELATIVE_DEGREE: i64 = 2;

/// The total complex of `C^p(Γ, C^q)` with `D = d_Γ + (-1)^p δ`, in total degrees
/// `d .. d+3`, together with the stupid filtration by the degree `d+1` term.
pub struct TotalComplex {
    pub total: CochainWindow,
    /// `C^{·-d-1}(Γ, term1)`.
    pub sub: CochainWindow,
    /// `C^{·-d}(Γ, term0)`.
    pub quotient: CochainWindow,
    inclusions: Vec<AbHom>,
    projections: Vec<AbHom>,
    split: Vec<usize>,
}

impl TotalComplex {
    pub fn new(c: &TwoTermComplex) -> Self {
        let top = MAX_RELATIVE_DEGREE as usize;
        let order = c.group().order();
        let b0 = bar_complex(c.term0(), top);
        let b1 = bar_complex(c.term1(), top);
        let fmaps: Vec<AbHom> = (0..=top)
            .map(|p| cochain_map(c.differential(), &b0.cochains[p], &b1.cochains[p], order.pow(p as u32)))
            .collect();
        let trivial = Arc::new(FgAbGroup::trivial());
        let k0 = |j: usize| b0.cochains[j].clone();
        let k1 = |j: usize| if j == 0 { trivial.clone() } else { b1.cochains[j - 1].clone() };

        let mut groups = Vec::new();
        let mut split = Vec::new();
        for j in 0..=top + 1 {
            let (a, b) = (k0(j), k1(j));
            split.push(a.generators());
            groups.push(Arc::new(FgAbGroup::direct_sum(&[&a, &b])));
        }
        let mut diffs = Vec::new();
        for j in 0..=top {
            let a0 = k0(j).generators();
            let b0n = k1(j).generators();
            let a1 = k0(j + 1).generators();
            let b1n = k1(j + 1).generators();
            let mut m = IntMatrix::zeros(a1 + b1n, a0 + b0n);
            let dg0 = b0.differentials[j].matrix();
            put(&mut m, 0, 0, dg0, false);
            put(&mut m, a1, 0, fmaps[j].matrix(), j % 2 == 1);
            if j >= 1 {
                put(&mut m, a1, a0, b1.differentials[j - 1].matrix(), false);
            }
            diffs.push(AbHom::new_unchecked(groups[j].clone(), groups[j + 1].clone(), m));
        }
        let total = CochainWindow {
            start: c.base_degree(),
            groups: groups.clone(),
            diffs,
            closed: false,
        };

        let sub_groups: Vec<_> = (0..=top + 1).map(k1).collect();
        let sub_diffs = (0..=top)
            .map(|j| {
                if j == 0 {
                    AbHom::zero(sub_groups[0].clone(), sub_groups[1].clone())
                } else {
                    b1.differentials[j - 1].clone()
                }
            })
            .collect();
        let sub = CochainWindow {
            start: c.base_degree(),
            groups: sub_groups.clone(),
            diffs: sub_diffs,
            closed: false,
        };
        let quotient = CochainWindow {
            start: c.base_degree(),
            groups: b0.cochains.clone(),
            diffs: b0.differentials.clone(),
            closed: false,
        };
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        for j in 0..=top + 1 {
            let (a, b) = (split[j], sub_groups[j].generators());
            let inc = IntMatrix::zeros(a, b).vstack(&IntMatrix::identity(b));
            let proj = IntMatrix::identity(a).hstack(&IntMatrix::zeros(a, b));
            inclusions.push(AbHom::new_unchecked(sub_groups[j].clone(), groups[j].clone(), inc));
            projections.push(AbHom::new_unchecked(groups[j].clone(), b0.cochains[j].clone(), proj));
        }
        TotalComplex {
            total,
            sub,
            quotient,
            inclusions,
            projections,
            split,
        }
    }

    /// `ℍ^n`, zero below the base degree.
    pub fn hypercohomology(&self, n: i64) -> Result<FgAbGroup> {
        let rel = n - self.total.start;
        if rel < 0 {
            return Ok(FgAbGroup::trivial());
        }
        if rel > MAX_RELATIVE_DEGREE {
            return Err(Error::UnsupportedDegree(n));
        }
        Ok((*self.total.cohomology(n)?.group).clone())
    }

    /// The long exact sequence of `0 -> term1[-d-1] -> C -> term0[-d] -> 0`:
    /// `H^{n-d-1}(Γ, term1) -> ℍ^n -> H^{n-d}(Γ, term0) -> H^{n-d}(Γ, term1) -> ...`
    /// from `n = d` to the `H^2(Γ, term0)` term.
    pub fn filtration_sequence(&self) -> Result<Vec<AbHom>> {
        let start = self.total.start;
        let split = self.split.clone();
        let sub_sizes: Vec<usize> = self.sub.groups.iter().map(|g| g.generators()).collect();
        let ses = ComplexSes {
            a: &self.sub,
            b: &self.total,
            c: &self.quotient,
            i: self.inclusions.clone(),
            p: self.projections.clone(),
            lift_i: Box::new(move |n, v: &[Integer]| {
                let a = split[(n - start) as usize];
                v[..a].iter().all(|x| x.is_zero()).then(|| v[a..].to_vec())
            }),
            lift_p: Box::new(move |n, v: &[Integer]| {
                let mut out = v.to_vec();
                out.resize(v.len() + sub_sizes[(n - start) as usize], Integer::zero());
                Some(out)
            }),
        };
        ses.long_exact_sequence(start, start + MAX_RELATIVE_DEGREE)
    }
}

fn put(m: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix, negate: bool) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            m[(r0 + i, c0 + j)] = if negate {
                -block[(i, j)].clone()
            } else {
                block[(i, j)].clone()
            };
        }
    }
}

/// `ℍ^n(Γ, C)` for `n - d` in `0..=2`; zero below `d`.
pub fn hypercohomology(c: &TwoTermComplex, n: i64) -> Result<FgAbGroup> {
    if n - c.base_degree() > MAX_RELATIVE_DEGREE {
        return Err(Error::UnsupportedDegree(n));
    }
    if n < c.base_degree() {
        return Ok(FgAbGroup::trivial());
    }
    TotalComplex::new(c).hypercohomology(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammamod::{FiniteGroup, GammaModule};
    use crate::lattice::is_exact;

    #[test]
    fn trivial_group_reduces_to_kernel_and_cokernel() {
        let c = TwoTermComplex::lattice(0, IntMatrix::from_rows_i64(&[vec![2]])).unwrap();
        assert_eq!(hypercohomology(&c, 0).unwrap().to_string(), "0");
        assert_eq!(hypercohomology(&c, 1).unwrap().to_string(), "Z/2");
        assert_eq!(hypercohomology(&c, 2).unwrap().to_string(), "0");
        assert_eq!(hypercohomology(&c, 3).unwrap_err(), Error::UnsupportedDegree(3));
        let id = TwoTermComplex::lattice(0, IntMatrix::identity(2)).unwrap();
        for n in 0..=2 {
            assert!(hypercohomology(&id, n).unwrap().is_trivial());
        }
    }

    #[test]
    fn swap_complex() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = GammaModule::natural_permutation(g).unwrap();
        let d = IntMatrix::from_rows_i64(&[vec![1, -1], vec![-1, 1]]);
        let f = AbHom::new(m.carrier().clone(), m.carrier().clone(), d).unwrap();
        let c = TwoTermComplex::new(0, m.clone(), m, f).unwrap();
        assert_eq!(hypercohomology(&c, 0).unwrap().to_string(), "Z");
        let t = TotalComplex::new(&c);
        let seq = t.filtration_sequence().unwrap();
        assert!(is_exact(&seq).unwrap().is_exact());
    }
}
