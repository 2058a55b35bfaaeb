//! Abelian cohomology in the Γ-module model.
//!
//! The coefficient sheaf `G_m` is not modeled. Everything here is the lattice-level
//! data over a finite group Γ: the hypercohomology `ℍ^i(Γ, T_* -> R_*)` with the
//! complex in degrees `(-1, 0)`, the dual complex `R^* -> T^*` in the same degrees,
//! and `RHom(π₁, Z)`. Values are labelled as Γ-model values; no flat or étale
//! cohomology of schemes is computed.

mod samples;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::complexes::{TotalComplex, TwoTermComplex};
use crate::error::{Error, Result};
use crate::gammamod::{cohomology_long_sequence, equivariant_hom, group_cohomology, FiniteGroup, GammaModule};
use crate::lattice::{derived_dual, is_exact, AbHom, FgAbGroup};
use crate::resolutions::{check_pi1_exact, SesData, TResolution};
use crate::rootdata::{fundamental_invariants, RootDatum};

pub use samples::{permuted_gl2_cube, permuted_sl2_cube_quotient, twisted_gl2};

/// Degrees of the abelian cohomology table.
pub const AB_DEGREES: RangeInclusive<i64> = -1..=2;
/// Degrees of the dual table.
pub const DUAL_DEGREES: RangeInclusive<i64> = -1..=1;

/// Γ-model abelian cohomology of a group together with the resolution used.
#[derive(Clone, Debug)]
pub struct AbCohProfile {
    pub datum: RootDatum,
    pub resolution: TResolution,
    /// `ℍ^i(Γ, T_* -> R_*)` for `i` in [`AB_DEGREES`].
    pub ab: BTreeMap<i64, FgAbGroup>,
    /// `ℍ^i(Γ, R^* -> T^*)` for `i` in [`DUAL_DEGREES`].
    pub dual: BTreeMap<i64, FgAbGroup>,
    /// `... -> H^i(Γ, R_*) -> ℍ^i -> H^{i+1}(Γ, T_*) -> H^{i+1}(Γ, R_*) -> ...`
    pub ab_sequence: Vec<AbHom>,
    /// `... -> H^i(Γ, T^*) -> ℍ^i(R^* -> T^*) -> H^{i+1}(Γ, R^*) -> ...`
    pub dual_sequence: Vec<AbHom>,
}

/// Degree-indexed canonical forms, for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub ab: BTreeMap<i64, String>,
    pub dual: BTreeMap<i64, String>,
    pub rhom: [String; 2],
}

impl AbCohProfile {
    pub fn summary(&self) -> ProfileSummary {
        let render = |m: &BTreeMap<i64, FgAbGroup>| m.iter().map(|(k, v)| (*k, v.to_string())).collect();
        let (hom, ext) = dual_profile(&self.datum).expect("datum validated by the resolution");
        ProfileSummary {
            ab: render(&self.ab),
            dual: render(&self.dual),
            rhom: [hom.to_string(), ext.to_string()],
        }
    }

    /// Degreewise agreement of canonical forms.
    pub fn agrees_with(&self, other: &AbCohProfile) -> bool {
        let same = |a: &BTreeMap<i64, FgAbGroup>, b: &BTreeMap<i64, FgAbGroup>| {
            a.len() == b.len()
                && a.iter().zip(b).all(|((i, x), (j, y))| i == j && x.canonical_form() == y.canonical_form())
        };
        same(&self.ab, &other.ab) && same(&self.dual, &other.dual)
    }
}

fn gamma_group(d: &RootDatum) -> FiniteGroup {
    d.gamma().map_or_else(FiniteGroup::trivial, |g| (**g.group()).clone())
}

fn check_sequence(name: &str, maps: &[AbHom]) -> Result<()> {
    match is_exact(maps)?.failure {
        None => Ok(()),
        Some(f) => Err(Error::NotExact(format!("{name}: {f}"))),
    }
}

/// `π₁` of the resolution as a Γ-module, `cok[T_* -> R_*]`.
fn pi1_module(c: &TwoTermComplex) -> Result<GammaModule> {
    let d = equivariant_hom(c.term0(), c.term1(), c.differential())?;
    Ok(d.cokernel().0)
}

/// Hypercohomology of the cocharacter complex of `r`, its dual, and the two long
/// exact sequences, all checked.
///
/// `T_* -> R_*` is injective with cokernel `π₁`, so `ℍ^i = H^i(Γ, π₁)`; degrees
/// `-1..=1` come from the total complex and are compared with this, degree 2 is
/// read off `π₁`.
pub fn ab_cohomology_profile(d: &RootDatum, r: &TResolution) -> Result<AbCohProfile> {
    if r.base() != d {
        return Err(Error::InvalidResolution("the resolution is for a different group".into()));
    }
    if gamma_group(d) != *r.group() || (d.gamma().is_some() && r.base().gamma().is_none()) {
        return Err(Error::InvalidResolution("the resolution does not carry the Gamma-action of the group".into()));
    }
    let c = r.cochar_complex(-1)?;
    let total = TotalComplex::new(&c);
    let pi1 = pi1_module(&c)?;
    let mut ab = BTreeMap::new();
    for i in -1..=1 {
        ab.insert(i, total.hypercohomology(i)?);
    }
    for (i, h) in &ab {
        let expected = if *i < 0 {
            FgAbGroup::trivial()
        } else {
            group_cohomology(&pi1, *i)?
        };
        if !h.is_isomorphic(&expected) {
            return Err(Error::Internal(format!("H^{i} is {h}, but H^{i}(Gamma, pi_1) is {expected}")));
        }
    }
    ab.insert(2, group_cohomology(&pi1, 2)?);
    let ab_sequence = total.filtration_sequence()?;
    check_sequence("sequence of T -> R", &ab_sequence)?;

    let dc = c.in_free_basis()?.dual()?.shift(1);
    let dual_total = TotalComplex::new(&dc);
    let mut dual = BTreeMap::new();
    for i in DUAL_DEGREES {
        dual.insert(i, dual_total.hypercohomology(i)?);
    }
    let dual_sequence = dual_total.filtration_sequence()?;
    check_sequence("sequence of R^* -> T^*", &dual_sequence)?;
    if c.group().is_trivial() {
        let (hom, ext) = dual_profile(d)?;
        if !dual[&-1].is_isomorphic(&hom) || !dual[&0].is_isomorphic(&ext) {
            return Err(Error::Internal("dual complex disagrees with RHom(pi_1, Z)".into()));
        }
    }
    Ok(AbCohProfile {
        datum: d.clone(),
        resolution: r.clone(),
        ab,
        dual,
        ab_sequence,
        dual_sequence,
    })
}

/// `(Hom(π₁, Z), Ext¹(π₁, Z))`, checked against `(G^tor)_*` and `μ(-1)`.
pub fn dual_profile(d: &RootDatum) -> Result<(FgAbGroup, FgAbGroup)> {
    let inv = fundamental_invariants(d)?;
    let (hom, ext) = derived_dual(&inv.pi1);
    if hom.free_rank() != inv.cochar_torus_quotient.free_rank() || !hom.is_free() {
        return Err(Error::Internal("Hom(pi_1, Z) does not match (G^tor)_*".into()));
    }
    if !ext.is_isomorphic(&inv.mu_minus_one) {
        return Err(Error::Internal("Ext(pi_1, Z) does not match mu(-1)".into()));
    }
    Ok((hom, ext))
}

/// The Γ-cohomology sequence of `0 -> π₁(G₁) -> π₁(G₂) -> π₁(G₃) -> 0`, nine maps
/// starting at the zero group, checked exact.
pub fn ab_long_sequence(s: &SesData) -> Result<Vec<AbHom>> {
    let seq = check_pi1_exact(s)?;
    let [g1, g2, g3] = s.groups();
    let group = gamma_group(g2);
    let module = |d: &RootDatum, carrier: &std::sync::Arc<FgAbGroup>| -> Result<GammaModule> {
        match d.gamma() {
            Some(g) => GammaModule::new(g.group().clone(), carrier.clone(), g.cocharacter_matrices()),
            None if group.is_trivial() => Ok(GammaModule::trivial(group.clone(), carrier.clone())),
            None => Err(Error::InvalidSes("Gamma is not transported to every group".into())),
        }
    };
    let m1 = module(g1, seq.maps[1].source_arc())?;
    let m2 = module(g2, seq.maps[1].target_arc())?;
    let m3 = module(g3, seq.maps[2].target_arc())?;
    let i = equivariant_hom(&m1, &m2, &seq.maps[1])?;
    let p = equivariant_hom(&m2, &m3, &seq.maps[2])?;
    let les = cohomology_long_sequence(&i, &p)?;
    check_sequence("cohomology sequence", &les)?;
    Ok(les)
}
