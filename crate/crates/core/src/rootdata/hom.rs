use std::sync::Arc;

use super::datum::{pairing, RootDatum};
use crate::error::{Error, Result};
use crate::lattice::{AbHom, FgAbGroup, IntMatrix};

/// A torus-compatible homomorphism `G₁ -> G₂`, recorded by its cocharacter map
/// `X₁^∨ -> X₂^∨` (matrix `rank₂ × rank₁`).
#[derive(Clone, Debug)]
pub struct GroupHomData {
    source: RootDatum,
    target: RootDatum,
    cochar_map: IntMatrix,
    normal: bool,
}

impl GroupHomData {
    /// Validates that `Q₁^∨` lands in `Q₂^∨`, and the root conditions when `normal`:
    /// each source coroot goes to a target coroot (compatibly with roots) or to zero,
    /// distinct coroots stay distinct, and target roots outside the image are
    /// orthogonal to the image.
    pub fn new(source: RootDatum, target: RootDatum, cochar_map: IntMatrix, normal: bool) -> Result<Self> {
        if cochar_map.rows() != target.rank() || cochar_map.cols() != source.rank() {
            return Err(Error::InvalidHom(format!(
                "cocharacter matrix is {}x{}, expected {}x{}",
                cochar_map.rows(),
                cochar_map.cols(),
                target.rank(),
                source.rank()
            )));
        }
        let q2 = target.coroot_lattice();
        for i in 0..source.num_roots() {
            if !q2.contains(&cochar_map.mul_vec(source.coroot(i))) {
                return Err(Error::InvalidHom(format!(
                    "coroot {i} of the source does not map into the coroot lattice of the target"
                )));
            }
        }
        let h = GroupHomData {
            source,
            target,
            cochar_map,
            normal,
        };
        if normal {
            h.root_map()?;
        }
        Ok(h)
    }

    pub fn identity(d: &RootDatum) -> Self {
        GroupHomData {
            source: d.clone(),
            target: d.clone(),
            cochar_map: IntMatrix::identity(d.rank()),
            normal: true,
        }
    }

    pub fn source(&self) -> &RootDatum {
        &self.source
    }

    pub fn target(&self) -> &RootDatum {
        &self.target
    }

    pub fn cochar_matrix(&self) -> &IntMatrix {
        &self.cochar_map
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// `X₁^∨ -> X₂^∨` as a map of free groups.
    pub fn cochar_hom(&self) -> AbHom {
        AbHom::new(
            FgAbGroup::free(self.source.rank()),
            FgAbGroup::free(self.target.rank()),
            self.cochar_map.clone(),
        )
        .expect("maps of free groups are well-defined")
    }

    /// `X₂ -> X₁`, the transpose.
    pub fn char_matrix(&self) -> IntMatrix {
        self.cochar_map.transpose()
    }

    /// For a normal map: the target root of each source root, `None` for killed roots.
    pub fn root_map(&self) -> Result<Vec<Option<usize>>> {
        let (s, t) = (&self.source, &self.target);
        let ct = self.char_matrix();
        let mut out = Vec::with_capacity(s.num_roots());
        let mut hit = vec![false; t.num_roots()];
        for i in 0..s.num_roots() {
            let img = self.cochar_map.mul_vec(s.coroot(i));
            if img.iter().all(|x| x == &num_traits::Zero::zero()) {
                out.push(None);
                continue;
            }
            let k = (0..t.num_roots()).find(|&k| t.coroot(k) == img.as_slice()).ok_or_else(|| {
                Error::InvalidHom(format!("normal map: coroot {i} does not map to a coroot"))
            })?;
            if ct.mul_vec(t.root(k)) != s.root(i) {
                return Err(Error::InvalidHom(format!(
                    "normal map: root {k} of the target does not restrict to root {i}"
                )));
            }
            if std::mem::replace(&mut hit[k], true) {
                return Err(Error::InvalidHom(format!("normal map: two roots map to root {k}")));
            }
            out.push(Some(k));
        }
        for k in (0..t.num_roots()).filter(|&k| !hit[k]) {
            for i in 0..s.num_roots() {
                let img = self.cochar_map.mul_vec(s.coroot(i));
                if pairing(t.root(k), &img) != num_traits::Zero::zero() {
                    return Err(Error::InvalidHom(format!(
                        "normal map: root {k} of the target is neither in the image nor orthogonal to it"
                    )));
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ first`; normal when both are and the composite passes the root test.
    pub fn compose(&self, first: &GroupHomData) -> Result<GroupHomData> {
        if !first.target.same_data(&self.source) || first.target.rank() != self.source.rank() {
            return Err(Error::InvalidHom("composition of non-composable homomorphisms".into()));
        }
        let m = &self.cochar_map * &first.cochar_map;
        let mut h = GroupHomData::new(first.source.clone(), self.target.clone(), m, false)?;
        h.normal = self.normal && first.normal && h.root_map().is_ok();
        Ok(h)
    }

    /// `π₁(κ)` by descending the cocharacter map to `X₁^∨/Q₁^∨ -> X₂^∨/Q₂^∨`.
    pub fn pi1_direct(&self) -> Result<AbHom> {
        let p1 = Arc::new(FgAbGroup::new(self.source.rank(), self.source.coroots().clone())?);
        let p2 = Arc::new(FgAbGroup::new(self.target.rank(), self.target.coroots().clone())?);
        AbHom::new(p1, p2, self.cochar_map.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::standard_group_by_name;

    fn g(s: &str) -> RootDatum {
        standard_group_by_name(s).unwrap()
    }

    #[test]
    fn sl2_into_gl2() {
        let h = GroupHomData::new(g("SL(2)"), g("GL(2)"), IntMatrix::from_rows_i64(&[vec![1], vec![-1]]), true).unwrap();
        assert_eq!(h.root_map().unwrap(), vec![Some(0), Some(1)]);
        assert!(h.pi1_direct().unwrap().is_zero());
    }

    #[test]
    fn gl2_onto_pgl2() {
        let h = GroupHomData::new(g("GL(2)"), g("PGL(2)"), IntMatrix::from_rows_i64(&[vec![1, -1]]), true).unwrap();
        let p = h.pi1_direct().unwrap();
        assert!(p.is_surjective());
        assert_eq!(p.target().to_string(), "Z/2");
    }

    #[test]
    fn coroot_lattice_must_be_preserved() {
        let e = GroupHomData::new(g("SL(2)"), g("PGL(2)"), IntMatrix::from_rows_i64(&[vec![1]]), false).unwrap_err();
        assert!(matches!(e, Error::InvalidHom(_)));
    }

    #[test]
    fn determinant_kills_roots() {
        let h = GroupHomData::new(g("GL(3)"), g("Torus(1)"), IntMatrix::from_rows_i64(&[vec![1, 1, 1]]), true).unwrap();
        assert!(h.root_map().unwrap().iter().all(|r| r.is_none()));
        let c = h.compose(&GroupHomData::identity(&g("GL(3)"))).unwrap();
        assert!(c.is_normal());
    }
}
