use std::sync::Arc;

use super::group::FiniteGroup;
use super::module::{GammaHom, GammaModule};
use crate::error::{Error, Result};
use crate::lattice::{
    is_exact, same_group, AbHom, CochainWindow, ComplexSes, FgAbGroup, Homology, IntMatrix,
    Integer,
};

/// Highest cohomological degree supported.
pub const MAX_DEGREE: usize = 2;

/// Decodes index `idx` into an `n`-tuple of group elements, most significant first.
pub(crate) fn decode_tuple(mut idx: usize, n: usize, order: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = idx % order;
        idx /= order;
    }
    t
}

pub(crate) fn encode_tuple(t: &[usize], order: usize) -> usize {
    t.iter().fold(0, |acc, &g| acc * order + g)
}

fn add_block(m: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix, sign: i64) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = &block[(i, j)];
            if sign > 0 {
                m[(r0 + i, c0 + j)] += v;
            } else {
                m[(r0 + i, c0 + j)] -= v;
            }
        }
    }
}

/// Matrix of the inhomogeneous bar differential `C^n -> C^{n+1}` for a carrier
/// with `k` generators and action matrices `action`.
pub(crate) fn bar_differential(group: &FiniteGroup, k: usize, action: &[IntMatrix], n: usize) -> IntMatrix {
    let order = group.order();
    let rows = k * order.pow(n as u32 + 1);
    let cols = k * order.pow(n as u32);
    let mut m = IntMatrix::zeros(rows, cols);
    let id = IntMatrix::identity(k);
    for out in 0..order.pow(n as u32 + 1) {
        let t = decode_tuple(out, n + 1, order);
        let r0 = out * k;
        // g1 · f(g2, ..., g_{n+1})
        let c = encode_tuple(&t[1..], order);
        add_block(&mut m, r0, c * k, &action[t[0]], 1);
        // (-1)^i f(..., g_i g_{i+1}, ...)
        for i in 1..=n {
            let mut s = Vec::with_capacity(n);
            s.extend_from_slice(&t[..i - 1]);
            s.push(group.mul(t[i - 1], t[i]));
            s.extend_from_slice(&t[i + 1..]);
            let c = encode_tuple(&s, order);
            add_block(&mut m, r0, c * k, &id, if i % 2 == 0 { 1 } else { -1 });
        }
        // (-1)^{n+1} f(g1, ..., g_n)
        let c = encode_tuple(&t[..n], order);
        add_block(&mut m, r0, c * k, &id, if (n + 1).is_multiple_of(2) { 1 } else { -1 });
    }
    m
}

/// The cochain groups `C^0, ..., C^{top+1}` and differentials `d^0, ..., d^top`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub cochains: Vec<Arc<FgAbGroup>>,
    pub differentials: Vec<AbHom>,
}

pub fn bar_complex(m: &GammaModule, top: usize) -> BarComplex {
    let group = m.group();
    let order = group.order();
    let k = m.carrier().generators();
    let cochains: Vec<Arc<FgAbGroup>> = (0..=top + 1)
        .map(|n| Arc::new(m.carrier().power(order.pow(n as u32))))
        .collect();
    let differentials = (0..=top)
        .map(|n| {
            AbHom::new_unchecked(
                cochains[n].clone(),
                cochains[n + 1].clone(),
                bar_differential(group, k, m.actions(), n),
            )
        })
        .collect();
    BarComplex {
        cochains,
        differentials,
    }
}

impl BarComplex {
    /// Homology at `C^n` for `n <= top`.
    pub fn cohomology(&self, n: usize) -> Result<Homology> {
        self.window().cohomology(n as i64)
    }

    pub fn window(&self) -> CochainWindow {
        CochainWindow {
            start: 0,
            groups: self.cochains.clone(),
            diffs: self.differentials.clone(),
            closed: false,
        }
    }
}

/// `H^i(Γ, M)` for `i` in `0..=2`, in canonical presentation.
pub fn group_cohomology(m: &GammaModule, degree: i64) -> Result<FgAbGroup> {
    if !(0..=MAX_DEGREE as i64).contains(&degree) {
        return Err(Error::UnsupportedDegree(degree));
    }
    let bar = bar_complex(m, degree as usize);
    Ok((*bar.cohomology(degree as usize)?.group).clone())
}

/// Cochain map `C^n(M) -> C^n(N)` induced by a carrier map.
pub(crate) fn cochain_map(f: &AbHom, src: &Arc<FgAbGroup>, tgt: &Arc<FgAbGroup>, copies: usize) -> AbHom {
    let m = IntMatrix::identity(copies).kronecker(f.matrix());
    AbHom::new_unchecked(src.clone(), tgt.clone(), m)
}

/// Applies `lift` blockwise to a vector made of `blocks` consecutive blocks.
pub(crate) fn lift_blockwise(
    f: &AbHom,
    v: &[Integer],
    blocks: usize,
) -> Option<Vec<Integer>> {
    let (ks, kt) = (f.source().generators(), f.target().generators());
    let mut out = Vec::with_capacity(ks * blocks);
    for b in 0..blocks {
        let x = f.lift(&v[b * kt..(b + 1) * kt])?;
        out.extend(x);
    }
    Some(out)
}

/// `0 -> A -i-> B -p-> C -> 0` checked exact on carriers.
pub(crate) fn check_ses(i: &AbHom, p: &AbHom) -> Result<()> {
    if !same_group(i.target_arc(), p.source_arc()) {
        return Err(Error::NotComposable { index: 0, next: 1 });
    }
    let seq = [
        AbHom::zero(FgAbGroup::trivial(), i.source_arc().clone()),
        i.clone(),
        p.clone(),
        AbHom::zero(p.target_arc().clone(), FgAbGroup::trivial()),
    ];
    match is_exact(&seq)?.failure {
        None => Ok(()),
        Some(f) => Err(Error::NotExact(f.to_string())),
    }
}

/// `0 -> H^0(A) -> H^0(B) -> H^0(C) -> H^1(A) -> ... -> H^2(C)`, nine maps
/// starting with the zero map into `H^0(A)`.
pub fn cohomology_long_sequence(i: &GammaHom, p: &GammaHom) -> Result<Vec<AbHom>> {
    check_ses(&i.map, &p.map)?;
    let order = i.source.group().order();
    let wa = bar_complex(&i.source, MAX_DEGREE).window();
    let wb = bar_complex(&i.target, MAX_DEGREE).window();
    let wc = bar_complex(&p.target, MAX_DEGREE).window();
    let im: Vec<AbHom> = (0..=MAX_DEGREE + 1)
        .map(|n| cochain_map(&i.map, &wa.groups[n], &wb.groups[n], order.pow(n as u32)))
        .collect();
    let pm: Vec<AbHom> = (0..=MAX_DEGREE + 1)
        .map(|n| cochain_map(&p.map, &wb.groups[n], &wc.groups[n], order.pow(n as u32)))
        .collect();
    let (fi, fp) = (i.map.clone(), p.map.clone());
    let ses = ComplexSes {
        a: &wa,
        b: &wb,
        c: &wc,
        i: im,
        p: pm,
        lift_i: Box::new(move |n, v| lift_blockwise(&fi, v, order.pow(n as u32))),
        lift_p: Box::new(move |n, v| lift_blockwise(&fp, v, order.pow(n as u32))),
    };
    let body = ses.long_exact_sequence(0, MAX_DEGREE as i64)?;
    let mut seq = vec![AbHom::zero(FgAbGroup::trivial(), body[0].source_arc().clone())];
    seq.extend(body);
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammamod::equivariant_hom;
    use crate::lattice::render_sequence;

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn cyclic_of_order_two() {
        let triv = GammaModule::trivial(z2(), FgAbGroup::free(1));
        let sign = GammaModule::sign(z2()).unwrap();
        let h = |m: &GammaModule, i| group_cohomology(m, i).unwrap().to_string();
        assert_eq!(h(&triv, 0), "Z");
        assert_eq!(h(&triv, 1), "0");
        assert_eq!(h(&triv, 2), "Z/2");
        assert_eq!(h(&sign, 0), "0");
        assert_eq!(h(&sign, 1), "Z/2");
        assert_eq!(h(&sign, 2), "0");
        assert_eq!(group_cohomology(&triv, 3).unwrap_err(), Error::UnsupportedDegree(3));
    }

    #[test]
    fn permutation_module_invariants() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let p = GammaModule::natural_permutation(s3).unwrap();
        assert_eq!(group_cohomology(&p, 0).unwrap().to_string(), "Z");
        assert_eq!(group_cohomology(&p, 1).unwrap().to_string(), "0");
    }

    #[test]
    fn long_sequence_for_swap() {
        let sign = GammaModule::sign(z2()).unwrap();
        let swap = GammaModule::natural_permutation(z2()).unwrap();
        let triv = GammaModule::trivial(z2(), FgAbGroup::free(1));
        let i = AbHom::new(sign.carrier().clone(), swap.carrier().clone(), IntMatrix::from_rows_i64(&[vec![1], vec![-1]])).unwrap();
        let p = AbHom::new(swap.carrier().clone(), triv.carrier().clone(), IntMatrix::from_rows_i64(&[vec![1, 1]])).unwrap();
        let i = equivariant_hom(&sign, &swap, &i).unwrap();
        let p = equivariant_hom(&swap, &triv, &p).unwrap();
        let seq = cohomology_long_sequence(&i, &p).unwrap();
        assert_eq!(seq.len(), 9);
        assert!(is_exact(&seq).unwrap().is_exact());
        assert_eq!(
            render_sequence(&seq),
            "0 -> 0 -> Z -> Z -> Z/2 -> 0 -> 0 -> 0 -> 0 -> Z/2"
        );
    }
}
