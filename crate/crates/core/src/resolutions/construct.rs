use num_integer::Integer as _;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, solve_matrix, AbHom, FgAbGroup, IntMatrix, Integer};
use crate::rootdata::{simply_connected_cover, GammaAction, RootDatum};

use super::tres::TResolution;

/// How `μ₁ = ker(rad(G) × G̃ -> G)` is embedded into the kernel torus `T`,
/// given on characters as a surjection `X(T) = Z^t -> μ₁^*`.
#[derive(Clone, Debug)]
pub enum EmbeddingChoice {
    /// One generator per invariant factor of `μ₁^*`.
    Default,
    /// The default generators followed by `extra` redundant ones.
    Padded(usize),
    /// `T = T̃`, the maximal torus of `G̃`, with `μ₁ -> T̃` the projection.
    Torus,
    /// Explicit representatives in `X(rad(G) × G̃) = Z^n` (an `n × t` matrix) and,
    /// for a datum with Γ, the action on `T_*`.
    Explicit {
        characters: IntMatrix,
        t_action: Option<Vec<IntMatrix>>,
    },
}

/// The data of `H₀ = rad(G) × G̃ -> G`.
///
/// `basis` is `B = [Y_r | C]`: a basis of the radical cocharacters followed by
/// the simple coroots. `X_G -> X_{H₀} = Z^n` is `Bᵀ`, and `μ₁^* = Z^n / Bᵀ X_G`.
#[derive(Clone, Debug)]
pub(crate) struct Presentation {
    pub basis: IntMatrix,
    pub radical_rank: usize,
    /// Coordinates of each coroot in the simple coroots.
    pub coroot_coords: IntMatrix,
    pub mu1_star: FgAbGroup,
    /// Cocharacter action of Γ on `Q^∨` in simple coroot coordinates.
    pub cover_action: Option<Vec<IntMatrix>>,
}

pub(crate) fn presentation(d: &RootDatum) -> Result<Presentation> {
    let n = d.rank();
    let cover = simply_connected_cover(d)?;
    let c = cover.cochar_map.matrix().clone();
    let y = kernel_basis(d.roots());
    let basis = y.transpose().hstack(&c);
    if basis.cols() != n || basis.determinant().is_zero() {
        return Err(Error::Internal("radical and coroot lattices do not span X^∨ ⊗ Q".into()));
    }
    let mu1_star = FgAbGroup::new(n, basis.clone())?;
    Ok(Presentation {
        radical_rank: y.rows(),
        coroot_coords: cover.datum.coroots().clone(),
        mu1_star,
        cover_action: cover.datum.gamma().map(|g| g.cocharacter_matrices()),
        basis,
    })
}

impl Presentation {
    fn n(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical generators of `μ₁^*` as columns in `Z^n`.
    pub fn default_generators(&self) -> IntMatrix {
        let g = &self.mu1_star;
        let cols: Vec<Vec<Integer>> = (0..g.canonical_len())
            .map(|i| {
                let mut e = vec![Integer::zero(); g.canonical_len()];
                e[i] = Integer::from(1);
                g.from_canonical(&e)
            })
            .collect();
        IntMatrix::from_cols(&cols, self.n())
    }

    pub fn characters(&self, choice: &EmbeddingChoice) -> IntMatrix {
        let n = self.n();
        match choice {
            EmbeddingChoice::Default => self.default_generators(),
            EmbeddingChoice::Padded(extra) => {
                let d = self.default_generators();
                let filler = if d.cols() > 0 { d.col(0) } else { vec![Integer::zero(); n] };
                let cols: Vec<Vec<Integer>> =
                    d.col_list().into_iter().chain(std::iter::repeat_n(filler, *extra)).collect();
                IntMatrix::from_cols(&cols, n)
            }
            EmbeddingChoice::Torus => {
                let r = self.radical_rank;
                IntMatrix::zeros(r, n - r).vstack(&IntMatrix::identity(n - r))
            }
            EmbeddingChoice::Explicit { characters, .. } => characters.clone(),
        }
    }
}

/// Builds `H = (rad(G) × G̃ × T) / μ₁` with `μ₁` embedded by `(φ, inv ∘ ψ)`.
///
/// `X_H` is the fiber product `{(χ₀, χ_T) : [χ₀] = ψ^*(χ_T) in μ₁^*}`, which has the
/// basis `(χ, χ_T) ↦ (Bᵀχ + Eχ_T, χ_T)`; in these coordinates `J = [I; 0]` and
/// `T_* = [0; I]`, and the coroot of `α` is `(α^∨, Eᵀ B⁻¹ α^∨)`.
pub(crate) fn pushout_resolution(d: &RootDatum, choice: &EmbeddingChoice) -> Result<TResolution> {
    let p = presentation(d)?;
    let n = d.rank();
    let e = p.characters(choice);
    if e.rows() != n {
        return Err(Error::Dimension(format!("embedding data has {} rows, expected {n}", e.rows())));
    }
    let t = e.cols();
    let psi = AbHom::new(FgAbGroup::free(t), p.mu1_star.clone(), e.clone())?;
    if !psi.is_surjective() {
        return Err(Error::NotEmbedding(format!(
            "the characters do not generate mu_1^* = {}",
            p.mu1_star
        )));
    }
    let r = p.radical_rank;
    let e_g = e.block(r, n, 0, t);
    let m = n + t;
    let mut coroots = Vec::with_capacity(d.num_roots());
    let mut roots = Vec::with_capacity(d.num_roots());
    for i in 0..d.num_roots() {
        let mut co = d.coroot(i).to_vec();
        co.extend(e_g.transpose().mul_vec(p.coroot_coords.row(i)));
        coroots.push(co);
        let mut ro = d.root(i).to_vec();
        ro.resize(m, Integer::zero());
        roots.push(ro);
    }
    let gamma = match d.gamma() {
        None => None,
        Some(g) => {
            let t_action = match choice {
                EmbeddingChoice::Torus => p.cover_action.clone().expect("cover carries Gamma"),
                EmbeddingChoice::Explicit {
                    t_action: Some(a), ..
                } => a.clone(),
                _ => {
                    return Err(Error::InvalidResolution(
                        "a datum with Gamma needs an explicit action on the kernel torus".into(),
                    ))
                }
            };
            Some(transport_gamma(g, &p.basis, &e, &t_action)?)
        }
    };
    let total = RootDatum::new(
        m,
        IntMatrix::from_rows(roots, m),
        IntMatrix::from_rows(coroots, m),
        gamma,
    )?;
    let j = IntMatrix::identity(n).vstack(&IntMatrix::zeros(t, n));
    let k = IntMatrix::zeros(n, t).vstack(&IntMatrix::identity(t));
    TResolution::new(d.clone(), total, j, (0..d.num_roots()).collect(), k)
}

/// The cocharacter action on `X_H^∨` in pushout coordinates:
/// `[[ρ^∨, 0], [(Λρ^∨ - A_T Λ), A_T]]` with `Λ = Eᵀ B⁻¹`.
fn transport_gamma(g: &GammaAction, b: &IntMatrix, e: &IntMatrix, t_action: &[IntMatrix]) -> Result<GammaAction> {
    let n = b.rows();
    let t = e.cols();
    let group = g.group().clone();
    if t_action.len() != group.order() || t_action.iter().any(|a| a.rows() != t || a.cols() != t) {
        return Err(Error::InvalidResolution("action on T_* has the wrong shape".into()));
    }
    let det = b.determinant();
    let b_adj = solve_matrix(b, &IntMatrix::scalar(n, &det)).expect("det · B⁻¹ is integral");
    let lambda = &e.transpose() * &b_adj;
    let mut cochar = Vec::with_capacity(group.order());
    for (el, at) in t_action.iter().enumerate() {
        let rho = g.on_cocharacters(el);
        let scaled = (&lambda * &rho).sub(&(at * &lambda));
        let mut low = IntMatrix::zeros(t, n);
        for i in 0..t {
            for c in 0..n {
                let (q, rem) = scaled[(i, c)].div_rem(&det);
                if !rem.is_zero() {
                    return Err(Error::NotEquivariant { element: el });
                }
                low[(i, c)] = q;
            }
        }
        let top = rho.hstack(&IntMatrix::zeros(n, t));
        cochar.push(top.vstack(&low.hstack(at)));
    }
    Ok(GammaAction::from_cocharacters(group, &cochar))
}

/// `1 -> T̃ -> (rad(G) × G̃ × T̃)/μ₁ -> G -> 1` with `T̃_* = Q^∨`. Its `H^tor` is
/// identified with the maximal torus of `G`; see [`torus_identification`].
pub fn t_resolution_from_torus(d: &RootDatum) -> Result<TResolution> {
    pushout_resolution(d, &EmbeddingChoice::Torus)
}

/// The pushout resolution for an arbitrary embedding `μ₁ -> T`.
pub fn t_resolution_generic(d: &RootDatum, choice: &EmbeddingChoice) -> Result<TResolution> {
    pushout_resolution(d, choice)
}

/// For the torus resolution: the isomorphism `θ: R_* -> X^∨` induced by
/// `H^tor = (rad(G) × T̃)/μ₁ -> T`, `(r, t) ↦ r^{-1} ∂(t)`, so that `T̃_* -> R_* -> X^∨`
/// is `∂_*`. In pushout coordinates `θ(y, w) = -y + C w`.
///
/// On `π₁` this is minus the reference identification induced by `Jᵀ`.
pub fn torus_identification(r: &TResolution) -> Result<AbHom> {
    let d = r.base();
    let n = d.rank();
    let cover = simply_connected_cover(d)?;
    let c = cover.cochar_map.matrix();
    if r.total().rank() != n + c.cols() {
        return Err(Error::InvalidResolution("not a torus resolution".into()));
    }
    let theta = IntMatrix::identity(n).neg().hstack(c);
    let f = AbHom::new(r.r_star(), FgAbGroup::free(n), theta)?;
    if !f.is_isomorphism() {
        return Err(Error::Internal("H^tor is not identified with the maximal torus".into()));
    }
    if &(f.matrix() * r.kernel_inclusion()) != c {
        return Err(Error::Internal("T̃ -> H^tor -> T is not the isogeny".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;
    use crate::resolutions::pi1_of_resolution;
    use crate::rootdata::standard_group_by_name;

    #[test]
    fn pgl2_torus_resolution_is_gl2() {
        let d = standard_group_by_name("PGL(2)").unwrap();
        let r = t_resolution_from_torus(&d).unwrap();
        assert_eq!(r.total().rank(), 2);
        assert_eq!(r.kernel_rank(), 1);
        assert_eq!(pi1_of_resolution(&r).unwrap().to_string(), "Z/2");
        // T̃ -> H^tor is t ↦ t²
        assert_eq!(torus_identification(&r).unwrap().matrix() * r.kernel_inclusion(), IntMatrix::from_rows_i64(&[vec![2]]));
        assert!(r.total().coroot_lattice().is_saturated());
    }

    #[test]
    fn degenerate_cases() {
        let t = RootDatum::torus(3);
        for choice in [EmbeddingChoice::Torus, EmbeddingChoice::Default] {
            let r = t_resolution_generic(&t, &choice).unwrap();
            assert_eq!(r.kernel_rank(), 0);
            assert_eq!(pi1_of_resolution(&r).unwrap().to_string(), "Z^3");
        }
        let sl2 = standard_group_by_name("SL(2)").unwrap();
        let r = t_resolution_generic(&sl2, &EmbeddingChoice::Default).unwrap();
        assert_eq!(r.kernel_rank(), 0);
        assert!(pi1_of_resolution(&r).unwrap().is_trivial());
        let r = t_resolution_from_torus(&sl2).unwrap();
        assert_eq!(r.kernel_rank(), 1);
        assert!(pi1_of_resolution(&r).unwrap().is_trivial());
    }

    #[test]
    fn padded_and_bad_embeddings() {
        let d = standard_group_by_name("PGL(2)").unwrap();
        let r = t_resolution_generic(&d, &EmbeddingChoice::Padded(1)).unwrap();
        assert_eq!(r.kernel_rank(), 2);
        assert_eq!(pi1_of_resolution(&r).unwrap().to_string(), "Z/2");
        let bad = EmbeddingChoice::Explicit {
            characters: IntMatrix::from_rows(vec![vec![int(2)]], 1),
            t_action: None,
        };
        assert!(matches!(t_resolution_generic(&d, &bad), Err(Error::NotEmbedding(_))));
    }

    #[test]
    fn torus_identification_is_minus_reference() {
        let d = standard_group_by_name("PGL(3)").unwrap();
        let r = t_resolution_from_torus(&d).unwrap();
        let theta = torus_identification(&r).unwrap();
        let target = FgAbGroup::new(3 - 1, d.coroots().clone()).unwrap();
        let on_pi1 = AbHom::new(r.pi1_group(), target, theta.matrix().clone()).unwrap();
        assert!(on_pi1.equals(&r.to_reference().unwrap().neg()));
        assert!(!on_pi1.equals(&r.to_reference().unwrap()));
    }
}
