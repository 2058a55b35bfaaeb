use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{AbHom, FgAbGroup, IntMatrix, Integer};
use crate::rootdata::{fundamental_invariants, RootDatum};

use super::construct::{presentation, EmbeddingChoice};

/// `1 -> μ₁ -> rad(G) × G̃ -> G -> 1`, on characters `0 -> X_G -Bᵀ-> X_{H₀} -> μ₁^* -> 0`.
///
/// `X_{H₀} = Z^n` is dual to `Rad_* ⊕ Q^∨` (radical cocharacters, then simple coroots).
#[derive(Clone, Debug)]
pub struct MResolution {
    base: RootDatum,
    total: RootDatum,
    char_map: IntMatrix,
    kernel_chars: Arc<FgAbGroup>,
    radical_rank: usize,
}

impl MResolution {
    pub fn new(d: &RootDatum) -> Result<Self> {
        let p = presentation(d)?;
        let n = d.rank();
        let r = p.radical_rank;
        let bt = p.basis.transpose();
        let roots = (0..d.num_roots()).map(|i| bt.mul_vec(d.root(i))).collect();
        let coroots = (0..d.num_roots())
            .map(|i| {
                let mut v = vec![Integer::from(0); r];
                v.extend(p.coroot_coords.row(i).iter().cloned());
                v
            })
            .collect();
        let total = if d.num_roots() == 0 {
            RootDatum::torus(n)
        } else {
            RootDatum::new(n, IntMatrix::from_rows(roots, n), IntMatrix::from_rows(coroots, n), None)?
        };
        if !total.coroot_lattice().is_saturated() {
            return Err(Error::Internal("rad(G) × G̃ has a non simply connected derived group".into()));
        }
        let m = MResolution {
            base: d.clone(),
            total,
            char_map: bt,
            kernel_chars: Arc::new(p.mu1_star),
            radical_rank: r,
        };
        let seq = [
            AbHom::zero(FgAbGroup::trivial(), FgAbGroup::free(n)),
            AbHom::new(FgAbGroup::free(n), FgAbGroup::free(n), m.char_map.clone())?,
            AbHom::new(FgAbGroup::free(n), m.kernel_chars.clone(), IntMatrix::identity(n))?,
            AbHom::zero(m.kernel_chars.clone(), FgAbGroup::trivial()),
        ];
        if let Some(f) = crate::lattice::is_exact(&seq)?.failure {
            return Err(Error::Internal(format!("m-resolution character sequence: {f}")));
        }
        Ok(m)
    }

    pub fn base(&self) -> &RootDatum {
        &self.base
    }

    pub fn total(&self) -> &RootDatum {
        &self.total
    }

    /// `X_G -> X_{H₀}`.
    pub fn char_map(&self) -> &IntMatrix {
        &self.char_map
    }

    /// `M^* = μ₁^*`, presented as a quotient of `X_{H₀}`.
    pub fn kernel_chars(&self) -> &Arc<FgAbGroup> {
        &self.kernel_chars
    }

    /// The torus pair `T -> R = (H₀^tor × T)/M` for an embedding `M -> T`, as
    /// `T_* -> R_*` in a basis of `R_*`.
    ///
    /// `X(R) = {(χ_r, χ_T) : [χ_r] = ψ^*(χ_T) in M^*}` and `X(R) -> X(T)` forgets `χ_r`.
    pub fn torus_pair(&self, choice: &EmbeddingChoice) -> Result<AbHom> {
        let p = presentation(&self.base)?;
        let e = p.characters(choice);
        let n = self.base.rank();
        let r = self.radical_rank;
        let t = e.cols();
        let psi = AbHom::new(FgAbGroup::free(t), self.kernel_chars.clone(), e.clone())?;
        if !psi.is_surjective() {
            return Err(Error::NotEmbedding(format!("the characters do not generate {}", self.kernel_chars)));
        }
        let rad_in = IntMatrix::identity(r).vstack(&IntMatrix::zeros(n - r, r));
        let f = AbHom::new(FgAbGroup::free(r + t), self.kernel_chars.clone(), rad_in.hstack(&e.neg()))?;
        let kr = f.kernel().lattice().basis().clone();
        let t_cols: Vec<usize> = (r..r + t).collect();
        let to_t = kr.select_cols(&t_cols);
        AbHom::new(FgAbGroup::free(t), FgAbGroup::free(kr.rows()), to_t)
    }
}

/// `π₁ = cok[T_* -> R_*]` through the m-resolution `rad(G) × G̃`, pushed along the
/// default embedding; checked against `X^∨/Q^∨`.
pub fn pi1_via_m_resolution(d: &RootDatum) -> Result<FgAbGroup> {
    pi1_via_m_resolution_with(d, &EmbeddingChoice::Default)
}

pub fn pi1_via_m_resolution_with(d: &RootDatum, choice: &EmbeddingChoice) -> Result<FgAbGroup> {
    let m = MResolution::new(d)?;
    let f = m.torus_pair(choice)?;
    if !f.is_injective() {
        return Err(Error::Internal("T_* -> R_* is not injective".into()));
    }
    let g = (*f.cokernel().0).clone();
    let expected = fundamental_invariants(d)?.pi1;
    if g.canonical_form() != expected.canonical_form() {
        return Err(Error::Internal(format!("m-resolution gives {g}, expected {expected}")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{central_quotient, standard_group_by_name};
    use num_rational::BigRational;

    #[test]
    fn examples() {
        let p = standard_group_by_name("PGL(2)").unwrap();
        assert_eq!(pi1_via_m_resolution(&p).unwrap().to_string(), "Z/2");
        let t = RootDatum::torus(2);
        assert_eq!(pi1_via_m_resolution(&t).unwrap().to_string(), "Z^2");
        let sl2 = standard_group_by_name("SL(2)").unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let so4 = central_quotient(&RootDatum::product(&[&sl2, &sl2]), &[vec![half.clone(), half]]).unwrap();
        assert_eq!(pi1_via_m_resolution(&so4).unwrap().to_string(), "Z/2");
        let gl3 = standard_group_by_name("GL(3)").unwrap();
        assert_eq!(pi1_via_m_resolution(&gl3).unwrap().to_string(), "Z");
        assert_eq!(MResolution::new(&gl3).unwrap().kernel_chars().to_string(), "Z/3");
    }
}
