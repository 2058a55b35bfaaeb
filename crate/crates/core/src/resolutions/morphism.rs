use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, AbHom, FgAbGroup, IntMatrix, Integer, LinearSolver, RowLattice};
use crate::rootdata::{GammaAction, GroupHomData, RootDatum};

use super::construct::t_resolution_from_torus;
use super::tres::TResolution;

/// A morphism of resolutions lying over a homomorphism of the bases, given by
/// `φ_T: T_* -> T'_*` and `φ_H: X_H^∨ -> X_{H'}^∨`.
#[derive(Clone, Debug)]
pub struct ResolutionMorphism {
    source: TResolution,
    target: TResolution,
    over: GroupHomData,
    phi_t: IntMatrix,
    phi_h: IntMatrix,
}

impl ResolutionMorphism {
    /// Checks `Jᵀ' φ_H = κ_* Jᵀ`, `φ_H ι = ι' φ_T` and `φ_H(Q_H^∨) ⊂ Q_{H'}^∨`.
    pub fn new(
        source: TResolution,
        target: TResolution,
        over: GroupHomData,
        phi_t: IntMatrix,
        phi_h: IntMatrix,
    ) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidResolution(format!("morphism: {m}")));
        if !over.source().same_data(source.base()) || !over.target().same_data(target.base()) {
            return bad("bases do not match the underlying homomorphism");
        }
        if phi_h.rows() != target.total().rank()
            || phi_h.cols() != source.total().rank()
            || phi_t.rows() != target.kernel_rank()
            || phi_t.cols() != source.kernel_rank()
        {
            return bad("matrix shapes");
        }
        if &target.cochar_projection() * &phi_h != over.cochar_matrix() * &source.cochar_projection() {
            return bad("square over the bases does not commute");
        }
        if &phi_h * source.kernel_inclusion() != target.kernel_inclusion() * &phi_t {
            return bad("square on the kernels does not commute");
        }
        let q = target.total().coroot_lattice();
        for i in 0..source.total().num_roots() {
            if !q.contains(&phi_h.mul_vec(source.total().coroot(i))) {
                return bad("coroots of H are not sent into the coroot lattice");
            }
        }
        Ok(ResolutionMorphism {
            source,
            target,
            over,
            phi_t,
            phi_h,
        })
    }

    pub fn identity(r: &TResolution) -> Self {
        ResolutionMorphism {
            source: r.clone(),
            target: r.clone(),
            over: GroupHomData::identity(r.base()),
            phi_t: IntMatrix::identity(r.kernel_rank()),
            phi_h: IntMatrix::identity(r.total().rank()),
        }
    }

    pub fn source(&self) -> &TResolution {
        &self.source
    }

    pub fn target(&self) -> &TResolution {
        &self.target
    }

    pub fn over(&self) -> &GroupHomData {
        &self.over
    }

    pub fn phi_t(&self) -> &IntMatrix {
        &self.phi_t
    }

    pub fn phi_h(&self) -> &IntMatrix {
        &self.phi_h
    }

    fn is_over_identity(&self) -> bool {
        self.over.cochar_matrix() == &IntMatrix::identity(self.source.base().rank())
            && self.source.base().same_data(self.target.base())
    }

    /// `π₁(𝓡) -> π₁(𝓡')`.
    pub fn induced_map(&self) -> Result<AbHom> {
        AbHom::new(self.source.pi1_group(), self.target.pi1_group(), self.phi_h.clone())
    }

    /// Adds `ι' ∘ λ ∘ q` to `φ_H`, where `q: X_H^∨ -> R_*` is the projection in free
    /// coordinates and `λ: R_* -> T'_*` is arbitrary (`t' × rank R_*`). Corresponds to
    /// multiplying by a homomorphism `H -> H^tor -> T'`.
    pub fn perturb(&self, lambda: &IntMatrix) -> Result<Self> {
        let r = self.source.r_star();
        if !r.is_free() || lambda.cols() != r.canonical_len() || lambda.rows() != self.target.kernel_rank() {
            return Err(Error::Dimension("perturbation has the wrong shape".into()));
        }
        let q = r.to_canonical_matrix();
        let lq = lambda * q;
        let phi_h = self.phi_h.add(&(self.target.kernel_inclusion() * &lq));
        let phi_t = self.phi_t.add(&(&lq * self.source.kernel_inclusion()));
        Self::new(self.source.clone(), self.target.clone(), self.over.clone(), phi_t, phi_h)
    }
}

/// `π₁(𝓡) -> π₁(𝓡')` for a morphism over the identity, checked to be an isomorphism.
pub fn pi1_of_morphism(m: &ResolutionMorphism) -> Result<AbHom> {
    let f = m.induced_map()?;
    if m.is_over_identity() && !f.is_isomorphism() {
        return Err(Error::Internal("morphism of resolutions does not induce an isomorphism".into()));
    }
    Ok(f)
}

/// `H₁ ×_{G₂} H₂` as a resolution of `G₁` with kernel `T₁ × T₂`, together with the
/// projections to `r1` (over the identity) and to `r2` (over `κ`).
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub resolution: TResolution,
    pub to_first: ResolutionMorphism,
    pub to_second: ResolutionMorphism,
}

pub fn fiber_product_resolution(r1: &TResolution, r2: &TResolution, kappa: &GroupHomData) -> Result<FiberProduct> {
    if !kappa.source().same_data(r1.base()) || !kappa.target().same_data(r2.base()) {
        return Err(Error::InvalidResolution("fiber product: incompatible bases".into()));
    }
    let (h1, h2) = (r1.total(), r2.total());
    let (m1, m2) = (h1.rank(), h2.rank());
    let j1t = r1.cochar_projection();
    let j2t = r2.cochar_projection();
    // X_{H'}^∨ = ker[κ J₁ᵀ | -J₂ᵀ]
    let phi = (kappa.cochar_matrix() * &j1t).hstack(&j2t.neg());
    let lattice = RowLattice::from_generators(&kernel_basis(&phi));
    let f = lattice.basis().clone();
    let mp = f.rows();
    let coords = |v: Vec<Integer>| {
        lattice
            .coordinates(&v)
            .ok_or_else(|| Error::Internal("fiber product: vector outside the lattice".into()))
    };

    // lift κ(α^∨) from Q₂^∨ to Q_{H₂}^∨ along J₂ᵀ
    let qb2 = h2.coroot_lattice().basis().clone();
    let lift = LinearSolver::new(&(&j2t * &qb2.transpose()));
    let mut roots = Vec::with_capacity(h1.num_roots());
    let mut coroots = Vec::with_capacity(h1.num_roots());
    for i in 0..h1.num_roots() {
        let y1 = h1.coroot(i).to_vec();
        let g = kappa.cochar_matrix().mul_vec(&j1t.mul_vec(&y1));
        let c = lift
            .solve(&g)
            .ok_or_else(|| Error::Internal("image coroot does not lift to H₂".into()))?;
        let mut v = y1;
        v.extend(qb2.transpose().mul_vec(&c));
        coroots.push(coords(v)?);
        let mut a = h1.root(i).to_vec();
        a.resize(m1 + m2, Integer::from(0));
        roots.push(f.mul_vec(&a));
    }

    let j1 = r1.char_injection();
    let jp = &f * &j1.vstack(&IntMatrix::zeros(m2, j1.cols()));
    let (t1, t2) = (r1.kernel_rank(), r2.kernel_rank());
    let big_k = IntMatrix::block_diag(&[r1.kernel_inclusion(), r2.kernel_inclusion()]);
    let kp_cols = big_k.col_list().into_iter().map(coords).collect::<Result<Vec<_>>>()?;
    let kp = IntMatrix::from_cols(&kp_cols, mp);

    let gamma = match (h1.gamma(), h2.gamma()) {
        (Some(a), Some(b)) => {
            let group = a.group().clone();
            let mut cochar = Vec::with_capacity(group.order());
            for e in 0..group.order() {
                let big = IntMatrix::block_diag(&[&a.on_cocharacters(e), &b.on_cocharacters(e)]);
                let cols = f.row_list().into_iter().map(|row| coords(big.mul_vec(&row))).collect::<Result<Vec<_>>>()?;
                cochar.push(IntMatrix::from_cols(&cols, mp));
            }
            Some(GammaAction::from_cocharacters(group, &cochar))
        }
        _ => None,
    };
    let total = RootDatum::new(mp, IntMatrix::from_rows(roots, mp), IntMatrix::from_rows(coroots, mp), gamma)?;
    let resolution = TResolution::new(r1.base().clone(), total, jp, r1.root_match().to_vec(), kp)?;

    let top: Vec<usize> = (0..m1).collect();
    let bottom: Vec<usize> = (m1..m1 + m2).collect();
    let ft = f.transpose();
    let to_first = ResolutionMorphism::new(
        resolution.clone(),
        r1.clone(),
        GroupHomData::identity(r1.base()),
        IntMatrix::identity(t1).hstack(&IntMatrix::zeros(t1, t2)),
        ft.select_rows(&top),
    )?;
    let to_second = ResolutionMorphism::new(
        resolution.clone(),
        r2.clone(),
        kappa.clone(),
        IntMatrix::zeros(t2, t1).hstack(&IntMatrix::identity(t2)),
        ft.select_rows(&bottom),
    )?;
    Ok(FiberProduct {
        resolution,
        to_first,
        to_second,
    })
}

/// The isomorphism `π₁(𝓡₁) -> π₁(𝓡₂)` through the dominating resolution
/// `𝓡₁ ×_G 𝓡₂`. It is recomputed through `𝓡₂ ×_G 𝓡₁` and compared, and checked
/// against the identifications with `X^∨/Q^∨`.
pub fn canonical_iso(r1: &TResolution, r2: &TResolution) -> Result<AbHom> {
    if !r1.base().same_data(r2.base()) || r1.base().rank() != r2.base().rank() {
        return Err(Error::InvalidResolution("canonical iso between resolutions of different groups".into()));
    }
    let id = GroupHomData::identity(r1.base());
    let fp = fiber_product_resolution(r1, r2, &id)?;
    let a = pi1_of_morphism(&fp.to_first)?;
    let b = pi1_of_morphism(&fp.to_second)?;
    let psi = b.compose(&a.inverse()?)?;

    let fq = fiber_product_resolution(r2, r1, &id)?;
    let a2 = pi1_of_morphism(&fq.to_second)?;
    let b2 = pi1_of_morphism(&fq.to_first)?;
    let psi2 = b2.compose(&a2.inverse()?)?;
    if !psi.equals(&psi2) {
        return Err(Error::Internal("canonical isomorphism depends on the dominating resolution".into()));
    }
    if !r2.to_reference()?.compose(&psi)?.equals(&r1.to_reference()?) {
        return Err(Error::Internal("canonical isomorphism is incompatible with X^∨/Q^∨".into()));
    }
    Ok(psi)
}

/// `π₁(κ)` between the reference groups `X^∨/Q^∨`, computed through the fiber
/// product of torus resolutions over `κ`.
pub fn pi1_via_resolutions(kappa: &GroupHomData) -> Result<AbHom> {
    let r1 = t_resolution_from_torus(kappa.source())?;
    let r2 = t_resolution_from_torus(kappa.target())?;
    let fp = fiber_product_resolution(&r1, &r2, kappa)?;
    let back = pi1_of_morphism(&fp.to_first)?.inverse()?;
    let forward = fp.to_second.induced_map()?;
    let ref1 = fp.to_first.target().to_reference()?;
    let ref2 = fp.to_second.target().to_reference()?;
    ref2.compose(&forward.compose(&back)?)?.compose(&ref1.inverse()?)
}

/// `π₁(κ): X₁^∨/Q₁^∨ -> X₂^∨/Q₂^∨`, with the resolution route checked against
/// the direct formula.
pub fn pi1_functor(kappa: &GroupHomData) -> Result<AbHom> {
    let direct = kappa.pi1_direct()?;
    let via = pi1_via_resolutions(kappa)?;
    if !direct.equals(&via) {
        return Err(Error::Internal("pi_1 of a homomorphism depends on the route".into()));
    }
    Ok(direct)
}

/// `π₁(G)` as a group, the reference object.
pub fn reference_pi1(d: &RootDatum) -> Arc<FgAbGroup> {
    Arc::new(FgAbGroup::new(d.rank(), d.coroots().clone()).expect("coroot relations"))
}
