use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{is_exact, kernel_basis, snake_sequence, AbHom, FgAbGroup, IntMatrix, RowLattice, SnakeDiagram};
use crate::rootdata::{simply_connected_cover, GammaAction, GroupHomData, RootDatum};

use super::morphism::{pi1_functor, reference_pi1};

/// Where a root of `G₂` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootPart {
    /// `ι` of root `i` of `G₁`.
    Sub(usize),
    /// A lift of root `j` of `G₃`.
    Quot(usize),
}

/// `1 -> G₁ -ι-> G₂ -π-> G₃ -> 1` with the root partition of `Φ₂`.
#[derive(Clone, Debug)]
pub struct SesData {
    iota: GroupHomData,
    pi: GroupHomData,
    partition: Vec<RootPart>,
}

impl SesData {
    /// Checks that `0 -> X₁^∨ -> X₂^∨ -> X₃^∨ -> 0` is exact and that the partition
    /// is a bijection compatible with roots and coroots.
    pub fn new(iota: GroupHomData, pi: GroupHomData, partition: Vec<RootPart>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidSes(m));
        if !iota.target().same_data(pi.source()) || iota.target().rank() != pi.source().rank() {
            return bad("the two maps are not composable".into());
        }
        let (g1, g2, g3) = (iota.source(), iota.target(), pi.target());
        let zero = Arc::new(FgAbGroup::trivial());
        let x1 = Arc::new(FgAbGroup::free(g1.rank()));
        let x3 = Arc::new(FgAbGroup::free(g3.rank()));
        let seq = [
            AbHom::zero(zero.clone(), x1),
            iota.cochar_hom(),
            pi.cochar_hom(),
            AbHom::zero(x3, zero),
        ];
        if let Some(f) = is_exact(&seq)?.failure {
            return bad(format!("cocharacter sequence: {f}"));
        }
        if partition.len() != g2.num_roots() {
            return bad(format!("partition has {} entries for {} roots", partition.len(), g2.num_roots()));
        }
        let (a, b) = (iota.cochar_matrix(), pi.cochar_matrix());
        let mut hit1 = vec![false; g1.num_roots()];
        let mut hit3 = vec![false; g3.num_roots()];
        for (k, part) in partition.iter().enumerate() {
            let ok = match *part {
                RootPart::Sub(i) => {
                    i < g1.num_roots()
                        && !std::mem::replace(&mut hit1[i], true)
                        && a.mul_vec(g1.coroot(i)) == g2.coroot(k)
                        && a.transpose().mul_vec(g2.root(k)) == g1.root(i)
                        && b.mul_vec(g2.coroot(k)).iter().all(|x| x == &0.into())
                }
                RootPart::Quot(j) => {
                    j < g3.num_roots()
                        && !std::mem::replace(&mut hit3[j], true)
                        && b.mul_vec(g2.coroot(k)) == g3.coroot(j)
                        && b.transpose().mul_vec(g3.root(j)) == g2.root(k)
                }
            };
            if !ok {
                return bad(format!("root {k} of G2 does not match its partition entry {part:?}"));
            }
        }
        if hit1.contains(&false) || hit3.contains(&false) {
            return bad("partition misses a root of G1 or G3".into());
        }
        Ok(SesData { iota, pi, partition })
    }

    pub fn iota(&self) -> &GroupHomData {
        &self.iota
    }

    pub fn pi(&self) -> &GroupHomData {
        &self.pi
    }

    pub fn partition(&self) -> &[RootPart] {
        &self.partition
    }

    pub fn groups(&self) -> [&RootDatum; 3] {
        [self.iota.source(), self.iota.target(), self.pi.target()]
    }
}

/// The sequence determined by a normal subgroup of `G₂`: the roots `sub` together
/// with the central cocharacters `central` (rows) generate `X₁^∨` after saturation,
/// and `X₃^∨ = X₂^∨ / X₁^∨`. A Γ-action on `G₂` must preserve `X₁^∨` and is
/// transported to both ends.
pub fn ses_from_normal_subgroup(g2: &RootDatum, sub: &[usize], central: &IntMatrix) -> Result<SesData> {
    let n = g2.rank();
    if central.cols() != n {
        return Err(Error::Dimension("central cocharacters have the wrong length".into()));
    }
    let gens = g2.coroots().select_rows(sub).vstack(central);
    let nb = RowLattice::from_generators(&gens).saturation().basis().clone();
    let kb = kernel_basis(&nb);
    let k = nb.rows();
    let lat1 = RowLattice::from_generators(&nb);
    let lat3 = RowLattice::from_generators(&kb);
    let in_sub: Vec<bool> = (0..g2.num_roots()).map(|i| sub.contains(&i)).collect();

    let mut r1 = Vec::new();
    let mut c1 = Vec::new();
    let mut r3 = Vec::new();
    let mut c3 = Vec::new();
    let mut partition = Vec::with_capacity(g2.num_roots());
    for i in 0..g2.num_roots() {
        if in_sub[i] {
            partition.push(RootPart::Sub(r1.len()));
            r1.push(nb.mul_vec(g2.root(i)));
            c1.push(lat1.coordinates(g2.coroot(i)).expect("sub coroots lie in X₁^∨"));
        } else {
            partition.push(RootPart::Quot(r3.len()));
            r3.push(lat3.coordinates(g2.root(i)).ok_or_else(|| {
                Error::InvalidSes(format!("root {i} is not orthogonal to the normal subgroup"))
            })?);
            c3.push(kb.mul_vec(g2.coroot(i)));
        }
    }
    let (gamma1, gamma3) = match g2.gamma() {
        None => (None, None),
        Some(g) => {
            let group = g.group().clone();
            let mut a1 = Vec::new();
            let mut a3 = Vec::new();
            let s1 = crate::lattice::LinearSolver::new(&nb.transpose());
            let s3 = crate::lattice::LinearSolver::new(&kb.transpose());
            for e in 0..group.order() {
                let rho = g.on_cocharacters(e);
                a1.push(s1.solve_matrix(&(&rho * &nb.transpose())).ok_or_else(|| {
                    Error::InvalidSes("Gamma does not preserve the normal subgroup".into())
                })?);
                // X₃^∨ = Hom(X₃, Z) with X₃ = ann X₁^∨ spanned by the rows of kb
                let on_chars = g.on_characters(e);
                let m = s3
                    .solve_matrix(&(on_chars * &kb.transpose()))
                    .ok_or_else(|| Error::InvalidSes("Gamma does not preserve the quotient".into()))?;
                a3.push(m);
            }
            (
                Some(GammaAction::from_cocharacters(group.clone(), &a1)),
                Some(GammaAction::new(group, a3)),
            )
        }
    };
    let g1 = RootDatum::new(k, rows(r1, k), rows(c1, k), gamma1)?;
    let g3 = RootDatum::new(n - k, rows(r3, n - k), rows(c3, n - k), gamma3)?;
    let iota = GroupHomData::new(g1, g2.clone(), nb.transpose(), true)?;
    let pi = GroupHomData::new(g2.clone(), g3, kb, true)?;
    SesData::new(iota, pi, partition)
}

fn rows(v: Vec<Vec<crate::lattice::Integer>>, n: usize) -> IntMatrix {
    if v.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_rows(v, n)
    }
}

/// The verified sequence `0 -> π₁(G₁) -> π₁(G₂) -> π₁(G₃) -> 0`.
#[derive(Clone, Debug)]
pub struct Pi1Sequence {
    /// Four maps starting and ending at the zero group.
    pub maps: Vec<AbHom>,
}

/// Builds the `π₁` sequence through [`pi1_functor`], checks exactness, and compares
/// it with the cokernel part of the snake sequence of `∂_{i*}: Q_i^∨ -> X_i^∨`.
pub fn check_pi1_exact(s: &SesData) -> Result<Pi1Sequence> {
    let f = pi1_functor(s.iota())?;
    let g = pi1_functor(s.pi())?;
    let zero = Arc::new(FgAbGroup::trivial());
    let maps = vec![
        AbHom::zero(zero.clone(), f.source_arc().clone()),
        f,
        g,
        AbHom::zero(reference_pi1(s.pi().target()), zero),
    ];
    if let Some(fl) = is_exact(&maps)?.failure {
        return Err(Error::NotExact(format!("pi_1 sequence, {fl}")));
    }
    let snake = snake_route(s)?;
    if !snake[0].equals(&maps[1]) || !snake[1].equals(&maps[2]) {
        return Err(Error::Internal("snake route and functor route disagree".into()));
    }
    Ok(Pi1Sequence { maps })
}

/// `cok ∂₁ -> cok ∂₂ -> cok ∂₃` from the snake lemma, after checking that the
/// kernel part and the connecting map vanish.
pub fn snake_route(s: &SesData) -> Result<[AbHom; 2]> {
    let [g1, g2, g3] = s.groups();
    let cs: Vec<IntMatrix> = [g1, g2, g3]
        .iter()
        .map(|g| simply_connected_cover(g).map(|c| c.cochar_map.matrix().clone()))
        .collect::<Result<_>>()?;
    let (a, b) = (s.iota().cochar_matrix(), s.pi().cochar_matrix());
    let top_i = crate::lattice::solve_matrix(&cs[1], &(a * &cs[0]))
        .ok_or_else(|| Error::InvalidSes("iota does not map Q₁^∨ into Q₂^∨".into()))?;
    let top_p = crate::lattice::solve_matrix(&cs[2], &(b * &cs[1]))
        .ok_or_else(|| Error::InvalidSes("pi does not map Q₂^∨ into Q₃^∨".into()))?;
    let free = |k: usize| Arc::new(FgAbGroup::free(k));
    let (q1, q2, q3) = (free(cs[0].cols()), free(cs[1].cols()), free(cs[2].cols()));
    let (x1, x2, x3) = (free(g1.rank()), free(g2.rank()), free(g3.rank()));
    let d = SnakeDiagram {
        i: AbHom::new(q1.clone(), q2.clone(), top_i)?,
        p: AbHom::new(q2.clone(), q3.clone(), top_p)?,
        i2: AbHom::new(x1.clone(), x2.clone(), a.clone())?,
        p2: AbHom::new(x2.clone(), x3.clone(), b.clone())?,
        a: AbHom::new(q1, x1, cs[0].clone())?,
        b: AbHom::new(q2, x2, cs[1].clone())?,
        c: AbHom::new(q3, x3, cs[2].clone())?,
    };
    let seq = snake_sequence(&d)?;
    if seq[1..4].iter().any(|m| !m.is_zero()) || !seq[2].source().is_trivial() {
        return Err(Error::Internal("kernels of the coroot inclusions are not zero".into()));
    }
    let p1 = reference_pi1(g1);
    let p2 = reference_pi1(g2);
    let p3 = reference_pi1(g3);
    Ok([seq[4].retarget(&p1, &p2)?, seq[5].retarget(&p2, &p3)?])
}
