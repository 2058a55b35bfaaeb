use std::sync::Arc;

use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::datum::{pairing, GammaAction, RootDatum};
use crate::error::{Error, Result};
use crate::lattice::{solve_matrix, AbHom, FgAbGroup, IntMatrix, Integer, LinearSolver, RowLattice};

/// Transports a Γ-action along a change of cocharacter lattice. `basis` is `n × n`
/// with rows spanning the new `X^∨` (inside `X^∨ ⊗ Q`, scaled by a common factor).
fn transport_gamma(g: &GammaAction, basis: &IntMatrix) -> Option<GammaAction> {
    let bt = basis.transpose();
    let group = g.group().clone();
    // new cocharacter action C' = (Bᵀ)⁻¹ C Bᵀ
    let co: Vec<IntMatrix> = (0..group.order())
        .map(|e| solve_matrix(&bt, &(&g.on_cocharacters(e) * &bt)))
        .collect::<Option<_>>()?;
    let matrices = (0..group.order()).map(|e| co[group.inverse(e)].transpose()).collect();
    Some(GammaAction::new(group, matrices))
}

/// Enlarges `X^∨` by the rational cocharacters `gens` (equivalently shrinks `X`).
/// Every generator must pair integrally with every root; a Γ-action must preserve
/// the enlarged lattice.
pub fn central_quotient(d: &RootDatum, gens: &[Vec<BigRational>]) -> Result<RootDatum> {
    let n = d.rank();
    for (j, g) in gens.iter().enumerate() {
        if g.len() != n {
            return Err(Error::Dimension(format!("generator {j} has length {} for rank {n}", g.len())));
        }
        for i in 0..d.num_roots() {
            let p: BigRational = d
                .root(i)
                .iter()
                .zip(g)
                .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                .sum();
            if !p.is_integer() {
                return Err(Error::NotCentral { generator: j, root: i });
            }
        }
    }
    let big_n = gens
        .iter()
        .flatten()
        .fold(Integer::one(), |acc, q| acc.lcm(q.denom()));
    let mut rows: Vec<Vec<Integer>> = (0..n)
        .map(|i| {
            let mut v = vec![Integer::zero(); n];
            v[i] = big_n.clone();
            v
        })
        .collect();
    for g in gens {
        rows.push(g.iter().map(|q| (q * BigRational::from_integer(big_n.clone())).to_integer()).collect());
    }
    let lattice = RowLattice::from_generators(&IntMatrix::from_rows(rows, n));
    let b = lattice.basis().clone();
    let coroots = (0..d.num_roots())
        .map(|i| {
            let scaled: Vec<Integer> = d.coroot(i).iter().map(|x| x * &big_n).collect();
            lattice.coordinates(&scaled).expect("coroots lie in the enlarged lattice")
        })
        .collect();
    let roots = (0..d.num_roots())
        .map(|i| {
            (0..n)
                .map(|k| pairing(d.root(i), b.row(k)) / &big_n)
                .collect()
        })
        .collect();
    let gamma = match d.gamma() {
        None => None,
        Some(g) => Some(transport_gamma(g, &b).ok_or_else(|| {
            Error::InvalidHom("the Gamma-action does not preserve the enlarged cocharacter lattice".into())
        })?),
    };
    RootDatum::new(
        n,
        IntMatrix::from_rows(roots, n),
        IntMatrix::from_rows(coroots, n),
        gamma,
    )
}

/// Fundamental coweights of `d` in cocharacter coordinates, when `d` is semisimple:
/// generators of `P^∨ = {y : ⟨α, y⟩ ∈ Z for all roots}`.
pub fn coweight_generators(d: &RootDatum) -> Result<Vec<Vec<BigRational>>> {
    let n = d.rank();
    let simple = d.simple_roots();
    if simple.len() != n {
        return Err(Error::InvalidHom("coweight lattice of a non-semisimple datum".into()));
    }
    // rows of S are the simple roots; P^∨ = S⁻¹ Z^n, generated by the columns of S⁻¹
    let s = d.roots().select_rows(&simple);
    let det = s.determinant();
    let scaled = solve_matrix(&s, &IntMatrix::scalar(n, &det)).expect("det · S⁻¹ is integral");
    Ok((0..n)
        .map(|j| {
            scaled
                .col(j)
                .into_iter()
                .map(|x| BigRational::new(x, det.clone()))
                .collect()
        })
        .collect())
}

/// The adjoint quotient `X^∨ = P^∨` of a semisimple datum.
pub fn adjoint_quotient(d: &RootDatum) -> Result<RootDatum> {
    central_quotient(d, &coweight_generators(d)?)
}

/// The simply connected cover of the derived group together with the covering data.
#[derive(Clone, Debug)]
pub struct Cover {
    /// `X̃^∨ = Q^∨` with the simple coroots of `base` as basis; roots in the same order as `base`.
    pub datum: RootDatum,
    /// `∂_*: X̃^∨ -> X^∨`, columns are the simple coroots.
    pub cochar_map: AbHom,
    /// `X -> X̃ = P`, `χ ↦ (⟨χ, α_i^∨⟩)_i`.
    pub char_map: AbHom,
    /// Characters of `ker ∂`, the cokernel of `char_map`.
    pub mu_star: FgAbGroup,
}

pub fn simply_connected_cover(d: &RootDatum) -> Result<Cover> {
    let n = d.rank();
    let simple = d.simple_roots();
    let l = simple.len();
    let sc = d.coroots().select_rows(&simple);
    let cols = sc.transpose();
    let solver = LinearSolver::new(&cols);
    let coroots = (0..d.num_roots())
        .map(|i| {
            solver
                .solve(d.coroot(i))
                .ok_or_else(|| Error::Internal(format!("coroot {i} is not an integral sum of simple coroots")))
        })
        .collect::<Result<Vec<_>>>()?;
    let roots = (0..d.num_roots()).map(|i| sc.mul_vec(d.root(i))).collect();
    let gamma = match d.gamma() {
        None => None,
        Some(g) => {
            let group = g.group().clone();
            let co: Vec<IntMatrix> = (0..group.order())
                .map(|e| solve_matrix(&cols, &(&g.on_cocharacters(e) * &cols)))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Internal("Gamma does not preserve the coroot lattice".into()))?;
            let matrices = (0..group.order()).map(|e| co[group.inverse(e)].transpose()).collect();
            Some(GammaAction::new(group, matrices))
        }
    };
    let datum = RootDatum::new(
        l,
        IntMatrix::from_rows(roots, l),
        IntMatrix::from_rows(coroots, l),
        gamma,
    )?;
    let xt = Arc::new(FgAbGroup::free(l));
    let x = Arc::new(FgAbGroup::free(n));
    let cochar_map = AbHom::new(xt.clone(), x.clone(), cols)?;
    let char_map = AbHom::new(x, xt, sc)?;
    let (mu, _) = char_map.cokernel();
    Ok(Cover {
        datum,
        cochar_map,
        char_map,
        mu_star: (*mu).clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(int(a), int(b))
    }

    fn sl2() -> RootDatum {
        RootDatum::from_i64(1, &[vec![2], vec![-2]], &[vec![1], vec![-1]]).unwrap()
    }

    #[test]
    fn sl2_mod_center_is_pgl2() {
        let p = central_quotient(&sl2(), &[vec![q(1, 2)]]).unwrap();
        assert_eq!(p.roots(), &IntMatrix::from_rows_i64(&[vec![1], vec![-1]]));
        assert_eq!(p.coroots(), &IntMatrix::from_rows_i64(&[vec![2], vec![-2]]));
        let a = adjoint_quotient(&sl2()).unwrap();
        assert_eq!(a, p);
        assert_eq!(central_quotient(&sl2(), &[]).unwrap(), sl2());
    }

    #[test]
    fn non_central_generator() {
        let e = central_quotient(&sl2(), &[vec![q(1, 4)]]).unwrap_err();
        assert_eq!(e, Error::NotCentral { generator: 0, root: 0 });
    }

    #[test]
    fn covers() {
        let gl2 = RootDatum::from_i64(2, &[vec![1, -1], vec![-1, 1]], &[vec![1, -1], vec![-1, 1]]).unwrap();
        let c = simply_connected_cover(&gl2).unwrap();
        assert_eq!(c.cochar_map.matrix(), &IntMatrix::from_rows_i64(&[vec![1], vec![-1]]));
        assert!(c.mu_star.is_trivial());
        assert!(c.datum.same_data(&sl2()));
        let pgl2 = central_quotient(&sl2(), &[vec![q(1, 2)]]).unwrap();
        let c = simply_connected_cover(&pgl2).unwrap();
        assert_eq!(c.cochar_map.matrix(), &IntMatrix::from_rows_i64(&[vec![2]]));
        assert_eq!(c.mu_star.to_string(), "Z/2");
        let c = simply_connected_cover(&sl2()).unwrap();
        assert_eq!(c.cochar_map.matrix(), &IntMatrix::identity(1));
    }
}
