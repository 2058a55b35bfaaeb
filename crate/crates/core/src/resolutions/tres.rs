use std::sync::Arc;

use num_traits::Zero;

use crate::complexes::{is_quasi_isomorphism, ComplexMorphism, TwoTermComplex};
use crate::error::{Error, Result};
use crate::gammamod::{FiniteGroup, GammaModule};
use crate::lattice::{
    is_exact, kernel_basis, solve_matrix, AbHom, FgAbGroup, IntMatrix, RowLattice,
};
use crate::rootdata::{pairing, simply_connected_cover, RootDatum};

/// A central extension `1 -> T -> H -> G -> 1` with `T` a torus and `H^der`
/// simply connected, recorded on lattices.
///
/// `char_injection` is `J: X_G -> X_H` (`rank_H × rank_G`); the cocharacter
/// projection is `Jᵀ`. `kernel_inclusion` is `T_* -> X_H^∨` (`rank_H × t`).
#[derive(Clone, Debug)]
pub struct TResolution {
    base: RootDatum,
    total: RootDatum,
    char_injection: IntMatrix,
    root_match: Vec<usize>,
    kernel_inclusion: IntMatrix,
}

impl TResolution {
    /// Validates exactness on characters and cocharacters, centrality of `T`,
    /// the root matching and simple connectedness of `H^der`.
    pub fn new(
        base: RootDatum,
        total: RootDatum,
        char_injection: IntMatrix,
        root_match: Vec<usize>,
        kernel_inclusion: IntMatrix,
    ) -> Result<Self> {
        let r = TResolution {
            base,
            total,
            char_injection,
            root_match,
            kernel_inclusion,
        };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidResolution(m));
        let (g, h, j, k) = (&self.base, &self.total, &self.char_injection, &self.kernel_inclusion);
        let (n, m) = (g.rank(), h.rank());
        if j.rows() != m || j.cols() != n || k.rows() != m {
            return bad(format!(
                "matrix shapes {}x{} and {}x{} do not fit ranks {n} and {m}",
                j.rows(),
                j.cols(),
                k.rows(),
                k.cols()
            ));
        }
        if k.cols() + n != m {
            return bad(format!("kernel rank {} + base rank {n} != total rank {m}", k.cols()));
        }
        let jt = j.transpose();
        let proj = AbHom::new(FgAbGroup::free(m), FgAbGroup::free(n), jt.clone())?;
        if !proj.is_surjective() {
            return bad("X_H^∨ -> X_G^∨ is not surjective".into());
        }
        if !(&jt * k).is_zero()
            || RowLattice::from_generators(&k.transpose()) != RowLattice::from_generators(&kernel_basis(&jt))
        {
            return bad("T_* is not the kernel of X_H^∨ -> X_G^∨".into());
        }
        if self.root_match.len() != h.num_roots() || h.num_roots() != g.num_roots() {
            return bad("root counts of H and G differ".into());
        }
        let mut seen = vec![false; g.num_roots()];
        for (i, &a) in self.root_match.iter().enumerate() {
            if a >= g.num_roots() || std::mem::replace(&mut seen[a], true) {
                return bad(format!("root match is not a bijection at {i}"));
            }
            if j.mul_vec(g.root(a)) != h.root(i) {
                return bad(format!("root {i} of H is not the image of root {a} of G"));
            }
            if jt.mul_vec(h.coroot(i)) != g.coroot(a) {
                return bad(format!("coroot {i} of H does not map to coroot {a} of G"));
            }
            for c in 0..k.cols() {
                if !pairing(h.root(i), &k.col(c)).is_zero() {
                    return bad(format!("root {i} of H is not trivial on T"));
                }
            }
        }
        if !h.coroot_lattice().is_saturated() {
            return bad("H^der is not simply connected".into());
        }
        match (g.gamma(), h.gamma()) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                if **a.group() != **b.group() {
                    return bad("Gamma differs between G and H".into());
                }
                for e in 0..a.group().order() {
                    if (b.on_characters(e) * j) != (j * a.on_characters(e)) {
                        return bad(format!("X_G -> X_H is not equivariant at element {e}"));
                    }
                }
            }
            _ => return bad("only one of G and H carries a Gamma-action".into()),
        }
        Ok(())
    }

    pub fn base(&self) -> &RootDatum {
        &self.base
    }

    pub fn total(&self) -> &RootDatum {
        &self.total
    }

    pub fn char_injection(&self) -> &IntMatrix {
        &self.char_injection
    }

    /// `Jᵀ: X_H^∨ -> X_G^∨`.
    pub fn cochar_projection(&self) -> IntMatrix {
        self.char_injection.transpose()
    }

    pub fn root_match(&self) -> &[usize] {
        &self.root_match
    }

    pub fn kernel_inclusion(&self) -> &IntMatrix {
        &self.kernel_inclusion
    }

    pub fn kernel_rank(&self) -> usize {
        self.kernel_inclusion.cols()
    }

    pub fn group(&self) -> Arc<FiniteGroup> {
        self.base
            .gamma()
            .map(|g| g.group().clone())
            .unwrap_or_else(|| Arc::new(FiniteGroup::trivial()))
    }

    /// `R_* = X_H^∨ / Q_H^∨`, the cocharacters of `H^tor`.
    pub fn r_star(&self) -> Arc<FgAbGroup> {
        Arc::new(FgAbGroup::new(self.total.rank(), self.total.coroots().clone()).expect("coroot relations"))
    }

    pub fn t_star(&self) -> Arc<FgAbGroup> {
        Arc::new(FgAbGroup::free(self.kernel_rank()))
    }

    /// `T_* -> R_*`.
    pub fn t_to_r(&self) -> AbHom {
        AbHom::new(self.t_star(), self.r_star(), self.kernel_inclusion.clone()).expect("free source")
    }

    /// `π₁(𝓡) = X_H^∨ / (Q_H^∨ + T_*)`.
    pub fn pi1_group(&self) -> Arc<FgAbGroup> {
        let rel = self.total.coroots().vstack(&self.kernel_inclusion.transpose());
        Arc::new(FgAbGroup::new(self.total.rank(), rel).expect("relations"))
    }

    /// The identification `π₁(𝓡) -> X_G^∨ / Q_G^∨` induced by `Jᵀ`, compatible
    /// with every morphism of resolutions.
    pub fn to_reference(&self) -> Result<AbHom> {
        let target = FgAbGroup::new(self.base.rank(), self.base.coroots().clone())?;
        let f = AbHom::new(self.pi1_group(), target, self.cochar_projection())?;
        if !f.is_isomorphism() {
            return Err(Error::Internal("pi_1 of the resolution is not identified with X^∨/Q^∨".into()));
        }
        Ok(f)
    }

    /// `T_*` and `R_*` as Γ-modules, with the equivariant map between them.
    pub fn cochar_complex(&self, base_degree: i64) -> Result<TwoTermComplex> {
        let group = self.group();
        let order = group.order();
        let h_actions: Vec<IntMatrix> = match self.total.gamma() {
            Some(g) => g.cocharacter_matrices(),
            None => vec![IntMatrix::identity(self.total.rank()); order],
        };
        let k = &self.kernel_inclusion;
        let t_actions = h_actions
            .iter()
            .map(|a| solve_matrix(k, &(a * k)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidResolution("Gamma does not preserve T_*".into()))?;
        let t = GammaModule::new(group.clone(), self.t_star(), t_actions)?;
        let r = GammaModule::new(group, self.r_star(), h_actions)?;
        let d = AbHom::new(t.carrier().clone(), r.carrier().clone(), k.clone())?;
        TwoTermComplex::new(base_degree, t, r, d)
    }
}

/// `π₁(𝓡) = cok[T_* -> R_*]`, after checking that `T_* -> R_*` is injective.
pub fn pi1_of_resolution(r: &TResolution) -> Result<Arc<FgAbGroup>> {
    if !r.t_to_r().is_injective() {
        return Err(Error::Internal("T_* -> R_* is not injective".into()));
    }
    Ok(r.pi1_group())
}

/// `0 -> X(G^tor) -> X(R) -> X(T) -> μ^* -> 0` with `R = H^tor`.
#[derive(Clone, Debug)]
pub struct FundamentalSequence {
    /// Six maps starting and ending at the zero group.
    pub maps: Vec<AbHom>,
    /// Characters of `μ = T ∩ H^der`.
    pub mu_star: Arc<FgAbGroup>,
    /// Characters of `M = T/μ`, the image of `X(R)` in `X(T)`.
    pub m_star: Arc<FgAbGroup>,
}

/// Builds the character side of the fundamental sequence and checks exactness
/// and that `μ^*` matches the fundamental group of `G^der`.
pub fn fundamental_sequence(r: &TResolution) -> Result<FundamentalSequence> {
    let (g, h) = (r.base(), r.total());
    let j = r.char_injection();
    let a_g = kernel_basis(g.coroots());
    let a_h = kernel_basis(h.coroots());
    let lat_h = RowLattice::from_generators(&a_h);
    let cols = (0..a_g.rows())
        .map(|i| {
            lat_h
                .coordinates(&j.mul_vec(a_g.row(i)))
                .ok_or_else(|| Error::InvalidResolution("X(G^tor) does not land in X(R)".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let x_gtor = Arc::new(FgAbGroup::free(a_g.rows()));
    let x_r = Arc::new(FgAbGroup::free(a_h.rows()));
    let x_t = Arc::new(FgAbGroup::new(h.rank(), j.transpose())?);
    let tor_to_r = AbHom::new(x_gtor.clone(), x_r.clone(), IntMatrix::from_cols(&cols, a_h.rows()))?;
    let r_to_t = AbHom::new(x_r.clone(), x_t.clone(), a_h.transpose())?;
    let (mu_star, to_mu) = r_to_t.cokernel();
    let (m_star, _, _) = r_to_t.image();
    let zero = Arc::new(FgAbGroup::trivial());
    let maps = vec![
        AbHom::zero(zero.clone(), x_gtor),
        tor_to_r,
        r_to_t,
        to_mu,
        AbHom::zero(mu_star.clone(), zero),
    ];
    if let Some(f) = is_exact(&maps)?.failure {
        return Err(Error::InvalidResolution(format!("fundamental sequence: {f}")));
    }
    let expected = simply_connected_cover(g)?.mu_star;
    if !mu_star.is_finite() || !mu_star.is_isomorphic(&expected) {
        return Err(Error::InvalidResolution(format!(
            "mu^* of the resolution is {mu_star}, expected {expected}"
        )));
    }
    Ok(FundamentalSequence {
        maps,
        mu_star,
        m_star,
    })
}

/// A zig-zag `A -> C <- B` of quasi-isomorphisms between the character complexes
/// `A = (Z(G)^* -> Z(G̃)^*)` and `B = (X(R) -> X(T))`, both in degrees `0, 1`.
/// `C = (Z(H)^* -> Z(G̃)^* ⊕ X(T))` is dual to `Z(G̃) × T -> Z(H)`, `(z, t) ↦ zt`.
#[derive(Clone, Debug)]
pub struct QisoCertificate {
    pub center: TwoTermComplex,
    pub torus_pair: TwoTermComplex,
    pub middle: TwoTermComplex,
    pub from_center: ComplexMorphism,
    pub from_torus_pair: ComplexMorphism,
}

pub fn qiso_certificate(r: &TResolution) -> Result<QisoCertificate> {
    let (g, h) = (r.base(), r.total());
    let j = r.char_injection();
    let cover = simply_connected_cover(g)?;
    let l = cover.datum.rank();
    let simple = g.simple_roots();
    let mut res_rows = Vec::with_capacity(l);
    for &s in &simple {
        let i = r
            .root_match()
            .iter()
            .position(|&a| a == s)
            .ok_or_else(|| Error::InvalidResolution("simple root without partner in H".into()))?;
        res_rows.push(h.coroot(i).to_vec());
    }
    let res_h = IntMatrix::from_rows(res_rows, h.rank());

    let z_g = FgAbGroup::new(g.rank(), g.roots().clone())?;
    let z_gt = FgAbGroup::new(l, cover.datum.roots().clone())?;
    let z_h = FgAbGroup::new(h.rank(), h.roots().clone())?;
    let x_t = FgAbGroup::new(h.rank(), j.transpose())?;
    let a_h = kernel_basis(h.coroots());
    let x_r = FgAbGroup::free(a_h.rows());

    let center = TwoTermComplex::plain(0, z_g, z_gt.clone(), cover.char_map.matrix().clone())?;
    let torus_pair = TwoTermComplex::plain(0, x_r, x_t.clone(), a_h.transpose())?;
    let sum = FgAbGroup::direct_sum(&[&z_gt, &x_t]);
    let middle = TwoTermComplex::plain(0, z_h, sum, res_h.vstack(&IntMatrix::identity(h.rank())))?;
    let from_center = ComplexMorphism::from_matrices(
        &center,
        &middle,
        j.clone(),
        IntMatrix::identity(l).vstack(&IntMatrix::zeros(h.rank(), l)),
    )?;
    let from_torus_pair = ComplexMorphism::from_matrices(
        &torus_pair,
        &middle,
        a_h.transpose(),
        IntMatrix::zeros(l, h.rank()).vstack(&IntMatrix::identity(h.rank())),
    )?;
    for (name, f) in [("center", &from_center), ("torus pair", &from_torus_pair)] {
        if !is_quasi_isomorphism(f)? {
            return Err(Error::InvalidResolution(format!("{name} -> middle is not a quasi-isomorphism")));
        }
    }
    Ok(QisoCertificate {
        center,
        torus_pair,
        middle,
        from_center,
        from_torus_pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{render_sequence, Integer};
    use crate::resolutions::{t_resolution_from_torus, t_resolution_generic, EmbeddingChoice};
    use crate::rootdata::standard_group_by_name;

    fn group(name: &str) -> RootDatum {
        standard_group_by_name(name).unwrap()
    }

    #[test]
    fn pgl2_fundamental_sequence() {
        let r = t_resolution_from_torus(&group("PGL(2)")).unwrap();
        let s = fundamental_sequence(&r).unwrap();
        // det restricted to the scalars of GL(2) is squaring
        assert_eq!(render_sequence(&s.maps), "0 -> 0 -> Z -> Z -> Z/2 -> 0");
        assert_eq!(s.m_star.to_string(), "Z");
    }

    #[test]
    fn mu_star_is_torsion_of_pi1() {
        for name in ["GL(2)", "PGL(3)", "SO(5)", "Sp(4)", "SO(8)", "Torus(2)", "Product(PGL(2),GL(3))"] {
            let g = group(name);
            let torsion: Vec<Integer> = {
                let c = g.coroots();
                let pi1 = FgAbGroup::new(g.rank(), c.clone()).unwrap();
                pi1.torsion().to_vec()
            };
            for choice in [EmbeddingChoice::Torus, EmbeddingChoice::Default] {
                let r = t_resolution_generic(&g, &choice).unwrap();
                let s = fundamental_sequence(&r).unwrap();
                assert_eq!(s.mu_star.torsion(), &torsion[..], "{name}");
                assert_eq!(s.mu_star.free_rank(), 0);
            }
        }
    }

    #[test]
    fn gl2_mu_is_trivial() {
        let s = fundamental_sequence(&t_resolution_from_torus(&group("GL(2)")).unwrap()).unwrap();
        assert!(s.mu_star.is_trivial());
    }

    #[test]
    fn qiso_zig_zag() {
        for name in ["PGL(2)", "GL(2)", "SO(3)", "PGL(4)", "Torus(1)", "ADJ(G,2)"] {
            let r = t_resolution_from_torus(&group(name)).unwrap();
            let q = qiso_certificate(&r).unwrap();
            for d in 0..2 {
                let a = q.from_center.induced(d).unwrap();
                let b = q.from_torus_pair.induced(d).unwrap();
                assert!(a.is_isomorphism() && b.is_isomorphism(), "{name} H^{d}");
                assert!(q.center.cohomology(d).is_isomorphic(&q.torus_pair.cohomology(d)));
            }
        }
    }

    #[test]
    fn pgl2_direct_morphism() {
        // a morphism (X(R) -> X(T)) -> (Z(G)^* -> Z(G̃)^*) found by search
        let r = t_resolution_from_torus(&group("PGL(2)")).unwrap();
        let q = qiso_certificate(&r).unwrap();
        let (b, a) = (&q.torus_pair, &q.center);
        let n0 = b.term0().carrier().generators();
        let n1 = b.term1().carrier().generators();
        let (m0r, m1r) = (a.term0().carrier().generators(), a.term1().carrier().generators());
        assert_eq!((m0r, m1r), (1, 1));
        let mut found = false;
        for x in -2i64..=2 {
            for y in -2i64..=2 {
                let m1 = IntMatrix::from_rows_i64(&[[x, y][..n1].to_vec()]);
                let Ok(f) = ComplexMorphism::from_matrices(b, a, IntMatrix::zeros(1, n0), m1) else {
                    continue;
                };
                if is_quasi_isomorphism(&f).unwrap() {
                    found = true;
                }
            }
        }
        assert!(found);
    }
}
