//! Finitely generated abelian groups given by generators and relations.

use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::hermite::RowLattice;
use super::matrix::{int, IntMatrix, Integer};
use super::smith::{smith_with, Tracking};
use crate::error::{Error, Result};

/// Isomorphism type `Z^r x Z/d_1 x ... x Z/d_k` with `d_1 | ... | d_k`, all `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub free_rank: usize,
    pub torsion: Vec<Integer>,
}

impl CanonicalForm {
    pub fn trivial() -> Self {
        CanonicalForm {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> Integer {
        self.torsion.iter().fold(Integer::one(), |a, b| a * b)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

#[derive(Clone, Debug)]
struct Canonical {
    form: CanonicalForm,
    /// Moduli of canonical coordinates: zero for free ones, `d_i` for torsion ones.
    moduli: Vec<Integer>,
    to_canon: IntMatrix,
    from_canon: IntMatrix,
}

/// `Z^g / L` where `L` is spanned by the rows of the relation matrix.
#[derive(Clone)]
pub struct FgAbGroup {
    generators: usize,
    relations: IntMatrix,
    lattice: OnceLock<RowLattice>,
    canon: OnceLock<Canonical>,
}

impl FgAbGroup {
    /// Group on `generators` generators subject to the rows of `relations`.
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != generators {
            return Err(Error::Dimension(format!(
                "relation matrix has {} columns but there are {} generators",
                relations.cols(),
                generators
            )));
        }
        Ok(Self::from_parts(generators, relations))
    }

    pub(crate) fn from_parts(generators: usize, relations: IntMatrix) -> Self {
        FgAbGroup {
            generators,
            relations,
            lattice: OnceLock::new(),
            canon: OnceLock::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::from_parts(rank, IntMatrix::zeros(0, rank))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: i64) -> Self {
        Self::from_parts(1, IntMatrix::from_rows_i64(&[vec![n]]))
    }

    /// Canonical presentation of `Z^free x Z/t_1 x ...`.
    pub fn from_invariants(free: usize, torsion: &[Integer]) -> Self {
        let g = free + torsion.len();
        let mut rel = IntMatrix::zeros(torsion.len(), g);
        for (i, d) in torsion.iter().enumerate() {
            rel[(i, free + i)] = d.clone();
        }
        Self::from_parts(g, rel)
    }

    pub fn from_form(form: &CanonicalForm) -> Self {
        Self::from_invariants(form.free_rank, &form.torsion)
    }

    pub fn direct_sum(groups: &[&FgAbGroup]) -> Self {
        let g = groups.iter().map(|x| x.generators).sum();
        let blocks: Vec<&IntMatrix> = groups.iter().map(|x| &x.relations).collect();
        Self::from_parts(g, IntMatrix::block_diag(&blocks))
    }

    /// `n` copies of `self`, generators ordered copy by copy.
    pub fn power(&self, n: usize) -> Self {
        let v: Vec<&FgAbGroup> = std::iter::repeat_n(self, n).collect();
        Self::direct_sum(&v)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Hermite basis of the relation subgroup.
    pub fn relation_lattice(&self) -> &RowLattice {
        self.lattice
            .get_or_init(|| RowLattice::from_generators(&self.relations))
    }

    fn canon(&self) -> &Canonical {
        self.canon.get_or_init(|| compute_canonical(self))
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.canon().form.clone()
    }

    pub fn free_rank(&self) -> usize {
        self.canon().form.free_rank
    }

    pub fn torsion(&self) -> &[Integer] {
        &self.canon().form.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.canon().form.is_trivial()
    }

    pub fn is_free(&self) -> bool {
        self.torsion().is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Group order for finite groups.
    pub fn order(&self) -> Option<Integer> {
        self.is_finite().then(|| self.canon().form.torsion_order())
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.canon().form == other.canon().form
    }

    /// Number of canonical coordinates (free rank plus number of torsion factors).
    pub fn canonical_len(&self) -> usize {
        self.canon().moduli.len()
    }

    /// Moduli of the canonical coordinates (`0` marks a free coordinate).
    pub fn canonical_moduli(&self) -> &[Integer] {
        &self.canon().moduli
    }

    /// Matrix sending generator coordinates to canonical coordinates (before reduction).
    pub fn to_canonical_matrix(&self) -> &IntMatrix {
        &self.canon().to_canon
    }

    /// Matrix sending canonical coordinates to generator coordinates.
    pub fn from_canonical_matrix(&self) -> &IntMatrix {
        &self.canon().from_canon
    }

    /// Canonical coordinates of an element, torsion coordinates reduced into `[0, d)`.
    pub fn to_canonical(&self, x: &[Integer]) -> Vec<Integer> {
        let c = self.canon();
        let mut y = c.to_canon.mul_vec(x);
        for (v, m) in y.iter_mut().zip(&c.moduli) {
            if !m.is_zero() {
                *v = v.mod_floor(m);
            }
        }
        y
    }

    pub fn from_canonical(&self, c: &[Integer]) -> Vec<Integer> {
        self.canon().from_canon.mul_vec(c)
    }

    pub fn contains_relation(&self, x: &[Integer]) -> bool {
        self.relation_lattice().contains(x)
    }

    pub fn is_zero_element(&self, x: &[Integer]) -> bool {
        self.contains_relation(x)
    }

    pub fn elements_equal(&self, a: &[Integer], b: &[Integer]) -> bool {
        let d: Vec<Integer> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&d)
    }

    pub fn zero_element(&self) -> Vec<Integer> {
        vec![Integer::zero(); self.generators]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Integer> {
        let mut v = self.zero_element();
        v[i] = Integer::one();
        v
    }

    /// The presentation `Z^r x Z/d_1 x ...` isomorphic to `self`.
    pub fn canonical_group(&self) -> FgAbGroup {
        Self::from_form(&self.canon().form)
    }

    /// All elements of a finite group as generator vectors, or `None` when the
    /// group is infinite or larger than `limit`.
    pub fn enumerate_elements(&self, limit: usize) -> Option<Vec<Vec<Integer>>> {
        let c = self.canon();
        if !c.form.free_rank.is_zero() {
            return None;
        }
        let order = c.form.torsion_order();
        if order > Integer::from(limit) {
            return None;
        }
        let mut out = Vec::new();
        let mut coords = vec![Integer::zero(); c.moduli.len()];
        loop {
            out.push(self.from_canonical(&coords));
            let mut k = 0;
            loop {
                if k == coords.len() {
                    return Some(out);
                }
                coords[k] += 1;
                if coords[k] == c.moduli[k] {
                    coords[k] = Integer::zero();
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }
}

/// Torsion moduli when the relations already have the canonical shape
/// `[0 | diag(d_1, ..., d_k)]` with `2 <= d_1 | d_2 | ...`.
fn canonical_shape(g: &FgAbGroup) -> Option<Vec<Integer>> {
    let (k, n) = (g.relations.rows(), g.generators);
    if k > n {
        return None;
    }
    let mut torsion: Vec<Integer> = Vec::with_capacity(k);
    for i in 0..k {
        for j in 0..n {
            let x = &g.relations[(i, j)];
            if j == n - k + i {
                if *x < int(2) || torsion.last().is_some_and(|p| !x.is_multiple_of(p)) {
                    return None;
                }
            } else if !x.is_zero() {
                return None;
            }
        }
        torsion.push(g.relations[(i, n - k + i)].clone());
    }
    Some(torsion)
}

fn compute_canonical(g: &FgAbGroup) -> Canonical {
    let n = g.generators;
    if let Some(torsion) = canonical_shape(g) {
        let free_rank = n - torsion.len();
        let mut moduli = vec![Integer::zero(); free_rank];
        moduli.extend(torsion.iter().cloned());
        return Canonical {
            form: CanonicalForm { free_rank, torsion },
            moduli,
            to_canon: IntMatrix::identity(n),
            from_canon: IntMatrix::identity(n),
        };
    }
    let parts = smith_with(
        &g.relations,
        Tracking {
            u: false,
            v: true,
            v_inv: true,
        },
    );
    let v = parts.v.unwrap();
    let v_inv = parts.v_inv.unwrap();
    let rank = parts.rank;
    let mut free_idx: Vec<usize> = (rank..n).collect();
    let mut tors_idx = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..rank {
        let d = parts.d[(i, i)].abs();
        if d > Integer::one() {
            tors_idx.push(i);
            torsion.push(d);
        }
    }
    let mut moduli = vec![Integer::zero(); free_idx.len()];
    moduli.extend(torsion.iter().cloned());
    let free_rank = free_idx.len();
    free_idx.extend(tors_idx);
    let idx = free_idx;
    let to_canon = v.select_cols(&idx).transpose();
    let from_canon = v_inv.select_rows(&idx).transpose();
    Canonical {
        form: CanonicalForm { free_rank, torsion },
        moduli,
        to_canon,
        from_canon,
    }
}

impl PartialEq for FgAbGroup {
    /// Equal presentations: same generator count and same relation subgroup.
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.relation_lattice() == other.relation_lattice()
    }
}

impl Eq for FgAbGroup {}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_form())
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FgAbGroup(<{}> / {:?}) = {}",
            self.generators,
            self.relations,
            self.canonical_form()
        )
    }
}

/// Parses the canonical rendering `"Z^r x Z/d1 x ..."` (or `"0"`).
pub fn parse_canonical(s: &str) -> Option<CanonicalForm> {
    let s = s.trim();
    if s == "0" {
        return Some(CanonicalForm::trivial());
    }
    let mut free_rank = 0usize;
    let mut torsion = Vec::new();
    for part in s.split(" x ") {
        let part = part.trim();
        if part == "Z" {
            free_rank += 1;
        } else if let Some(r) = part.strip_prefix("Z^") {
            free_rank += r.parse::<usize>().ok()?;
        } else {
            let d = part.strip_prefix("Z/")?;
            let d: Integer = d.parse().ok()?;
            if d < int(2) {
                return None;
            }
            torsion.push(d);
        }
    }
    Some(CanonicalForm { free_rank, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(g: usize, rows: &[Vec<i64>]) -> FgAbGroup {
        if rows.is_empty() {
            return FgAbGroup::free(g);
        }
        FgAbGroup::new(g, IntMatrix::from_rows_i64(rows)).unwrap()
    }

    #[test]
    fn canonical_presentation_has_identity_coordinates() {
        let g = FgAbGroup::from_invariants(2, &[int(5)]);
        assert_eq!(g.to_canonical_matrix(), &IntMatrix::identity(3));
        assert_eq!(g.to_canonical(&[int(1), int(2), int(7)]), vec![int(1), int(2), int(2)]);
    }

    #[test]
    fn rendering() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::free(1).to_string(), "Z");
        assert_eq!(FgAbGroup::free(3).to_string(), "Z^3");
        assert_eq!(group(2, &[vec![2, 0], vec![0, 3]]).to_string(), "Z/6");
        assert_eq!(group(3, &[vec![2, 0, 0], vec![0, 4, 0]]).to_string(), "Z x Z/2 x Z/4");
        assert_eq!(FgAbGroup::cyclic(1).to_string(), "0");
        assert_eq!(FgAbGroup::cyclic(0).to_string(), "Z");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "Z", "Z^4", "Z/2", "Z^2 x Z/2 x Z/6"] {
            assert_eq!(parse_canonical(s).unwrap().to_string(), s);
        }
        assert!(parse_canonical("Z/1").is_none());
        assert!(parse_canonical("Q").is_none());
    }

    #[test]
    fn canonical_coordinates_detect_zero() {
        let g = group(2, &[vec![2, 4], vec![6, 8]]);
        assert_eq!(g.to_string(), "Z/2 x Z/4");
        let x = vec![int(2), int(4)];
        assert!(g.to_canonical(&x).iter().all(|c| c.is_zero()));
        let y = vec![int(1), int(0)];
        assert!(!g.is_zero_element(&y));
        let back = g.from_canonical(&g.to_canonical(&y));
        assert!(g.elements_equal(&back, &y));
    }

    #[test]
    fn enumerate_small_group() {
        let g = group(2, &[vec![2, 0], vec![0, 3]]);
        let els = g.enumerate_elements(100).unwrap();
        assert_eq!(els.len(), 6);
        for (i, a) in els.iter().enumerate() {
            for b in &els[i + 1..] {
                assert!(!g.elements_equal(a, b));
            }
        }
        assert!(FgAbGroup::free(1).enumerate_elements(100).is_none());
    }

    #[test]
    fn equality_is_by_relation_subgroup() {
        let a = group(2, &[vec![2, 0], vec![0, 2]]);
        let b = group(2, &[vec![2, 2], vec![0, 2]]);
        let c = group(2, &[vec![4, 0], vec![0, 1]]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(!a.is_isomorphic(&c));
    }
}
