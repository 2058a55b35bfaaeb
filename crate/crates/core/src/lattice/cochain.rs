//! Finite windows of cochain complexes and the long exact sequence of a short
//! exact sequence of such windows.

use std::sync::Arc;

use super::exact::{homology, Homology};
use super::group::FgAbGroup;
use super::hom::AbHom;
use super::matrix::{IntMatrix, Integer};
use crate::error::{Error, Result};

/// Degrees `start, ..., start + len - 1` of a cochain complex. `diffs[k]` leaves
/// `groups[k]`. When `closed` is set the complex is zero above the window,
/// otherwise the last group has no outgoing map and its cohomology is unknown.
#[derive(Clone, Debug)]
pub struct CochainWindow {
    pub start: i64,
    pub groups: Vec<Arc<FgAbGroup>>,
    pub diffs: Vec<AbHom>,
    pub closed: bool,
}

impl CochainWindow {
    /// Degrees `n` where cohomology is available.
    pub fn computable(&self, n: i64) -> bool {
        let k = n - self.start;
        k >= 0 && ((k as usize) < self.diffs.len() || (self.closed && (k as usize) < self.groups.len()))
    }

    pub fn group(&self, n: i64) -> &Arc<FgAbGroup> {
        &self.groups[(n - self.start) as usize]
    }

    fn outgoing(&self, k: usize) -> AbHom {
        match self.diffs.get(k) {
            Some(d) => d.clone(),
            None => AbHom::zero(self.groups[k].clone(), FgAbGroup::trivial()),
        }
    }

    /// Cohomology at degree `n`; below the window the complex is zero.
    pub fn cohomology(&self, n: i64) -> Result<Homology> {
        if !self.computable(n) {
            return Err(Error::UnsupportedDegree(n));
        }
        let k = (n - self.start) as usize;
        let incoming = if k == 0 {
            AbHom::zero(FgAbGroup::trivial(), self.groups[0].clone())
        } else {
            self.diffs[k - 1].clone()
        };
        homology(&incoming, &self.outgoing(k))
    }

    /// Checks `d ∘ d = 0` throughout the window.
    pub fn check(&self) -> Result<()> {
        for k in 1..self.diffs.len() {
            if !self.diffs[k].compose(&self.diffs[k - 1])?.is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d^2 != 0 at degree {}",
                    self.start + k as i64
                )));
            }
        }
        Ok(())
    }
}

/// Map on cohomology induced by a degreewise chain map `f` (cycles to cycles).
pub fn induced_map(f: &AbHom, from: &Homology, to: &Homology) -> Result<AbHom> {
    let k = from.group.generators();
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let rep = from.representative(&from.group.basis_element(j));
        let img = f.apply(&rep);
        let class = to
            .class_of(&img)
            .ok_or_else(|| Error::Internal("induced map does not send cycles to cycles".into()))?;
        cols.push(class);
    }
    AbHom::new(
        from.group.clone(),
        to.group.clone(),
        IntMatrix::from_cols(&cols, to.group.generators()),
    )
}

type Lift<'a> = Box<dyn Fn(i64, &[Integer]) -> Option<Vec<Integer>> + 'a>;

/// A degreewise short exact sequence `0 -> A -i-> B -p-> C -> 0` of cochain windows
/// aligned on the same degrees, with set-theoretic lifts through `i` and `p`.
pub struct ComplexSes<'a> {
    pub a: &'a CochainWindow,
    pub b: &'a CochainWindow,
    pub c: &'a CochainWindow,
    /// `i[k]` and `p[k]` act in degree `start + k`.
    pub i: Vec<AbHom>,
    pub p: Vec<AbHom>,
    pub lift_i: Lift<'a>,
    pub lift_p: Lift<'a>,
}

impl<'a> ComplexSes<'a> {
    /// Lifts through `i[k]`, `p[k]` using generic integer solving.
    pub fn with_generic_lifts(
        a: &'a CochainWindow,
        b: &'a CochainWindow,
        c: &'a CochainWindow,
        i: Vec<AbHom>,
        p: Vec<AbHom>,
    ) -> Self {
        let start = b.start;
        let (i2, p2) = (i.clone(), p.clone());
        ComplexSes {
            a,
            b,
            c,
            i,
            p,
            lift_i: Box::new(move |n, v| i2[(n - start) as usize].lift(v)),
            lift_p: Box::new(move |n, v| p2[(n - start) as usize].lift(v)),
        }
    }

    /// `H^lo(A) -> H^lo(B) -> H^lo(C) -> H^{lo+1}(A) -> ... -> H^hi(C)`.
    pub fn long_exact_sequence(&self, lo: i64, hi: i64) -> Result<Vec<AbHom>> {
        let start = self.b.start;
        if self.a.start != start || self.c.start != start {
            return Err(Error::InvalidComplex("windows are not aligned".into()));
        }
        let ha: Vec<Homology> = (lo..=hi).map(|n| self.a.cohomology(n)).collect::<Result<_>>()?;
        let hb: Vec<Homology> = (lo..=hi).map(|n| self.b.cohomology(n)).collect::<Result<_>>()?;
        let hc: Vec<Homology> = (lo..=hi).map(|n| self.c.cohomology(n)).collect::<Result<_>>()?;
        let mut seq = Vec::new();
        for n in lo..=hi {
            let k = (n - lo) as usize;
            let d = (n - start) as usize;
            seq.push(induced_map(&self.i[d], &ha[k], &hb[k])?);
            seq.push(induced_map(&self.p[d], &hb[k], &hc[k])?);
            if n < hi {
                seq.push(self.connecting(n, &hc[k], &ha[k + 1])?);
            }
        }
        Ok(seq)
    }

    fn connecting(&self, n: i64, hc: &Homology, ha_next: &Homology) -> Result<AbHom> {
        let d = (n - self.b.start) as usize;
        let k = hc.group.generators();
        let mut cols = Vec::with_capacity(k);
        for j in 0..k {
            let z = hc.representative(&hc.group.basis_element(j));
            let y = (self.lift_p)(n, &z)
                .ok_or_else(|| Error::Internal("connecting map: cocycle does not lift".into()))?;
            let dy = self.b.diffs[d].apply(&y);
            let x = (self.lift_i)(n + 1, &dy)
                .ok_or_else(|| Error::Internal("connecting map: coboundary not in the image".into()))?;
            let class = ha_next
                .class_of(&x)
                .ok_or_else(|| Error::Internal("connecting map: pullback is not a cocycle".into()))?;
            cols.push(class);
        }
        AbHom::new(
            hc.group.clone(),
            ha_next.group.clone(),
            IntMatrix::from_cols(&cols, ha_next.group.generators()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{is_exact, render_sequence};

    fn arc(g: FgAbGroup) -> Arc<FgAbGroup> {
        Arc::new(g)
    }

    #[test]
    fn doubling_les() {
        // 0 -> (Z -2-> Z) -> (Z -1-> Z) ... degreewise Z -2-> Z -> Z/2 sequence
        let z = arc(FgAbGroup::free(1));
        let z2 = arc(FgAbGroup::cyclic(2));
        let zero = arc(FgAbGroup::trivial());
        let win = |g: &Arc<FgAbGroup>| CochainWindow {
            start: 0,
            groups: vec![g.clone()],
            diffs: vec![],
            closed: true,
        };
        let (a, b, c) = (win(&z), win(&z), win(&z2));
        let i = vec![AbHom::from_i64(z.clone(), z.clone(), &[vec![2]]).unwrap()];
        let p = vec![AbHom::from_i64(z.clone(), z2.clone(), &[vec![1]]).unwrap()];
        let ses = ComplexSes::with_generic_lifts(&a, &b, &c, i, p);
        let mut seq = vec![AbHom::zero(zero.clone(), z.clone())];
        seq.extend(ses.long_exact_sequence(0, 0).unwrap());
        seq.push(AbHom::zero(z2, zero));
        assert!(is_exact(&seq).unwrap().is_exact());
        assert_eq!(render_sequence(&seq), "0 -> Z -> Z -> Z/2 -> 0");
    }
}
