//! Exactness checks, homology of composable pairs, and the snake lemma.

use std::fmt;
use std::sync::Arc;

use super::group::FgAbGroup;
use super::hom::{canonical_isomorphism, same_group, AbHom, Kernel};
use super::matrix::{IntMatrix, Integer};
use crate::error::{Error, Result};

/// How exactness fails at a node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// The composite through the node is nonzero; the witness is `f(e_j)`.
    CompositeNonzero,
    /// The witness lies in the kernel of the outgoing map but not in the image
    /// of the incoming one.
    KernelNotImage,
}

/// The first node where a sequence fails to be exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessFailure {
    /// Index of the failing node: node `i` is the target of map `i - 1`.
    pub node: usize,
    pub group: String,
    pub kind: FailureKind,
    pub witness: Vec<Integer>,
    /// `"surjectivity"`, `"injectivity"` or `"exactness"`.
    pub label: &'static str,
}

impl fmt::Display for ExactnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "node {} ({}): {} fails, witness [{}]",
            self.node,
            self.group,
            self.label,
            w.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub failure: Option<ExactnessFailure>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.failure.is_none()
    }
}

/// Exactness at every interior node of `maps[0], maps[1], ...`.
///
/// Consecutive maps must share a presentation. For a sequence of `k` maps
/// the interior nodes are `1..k`.
pub fn is_exact(maps: &[AbHom]) -> Result<ExactnessReport> {
    for i in 0..maps.len().saturating_sub(1) {
        if !same_group(maps[i].target_arc(), maps[i + 1].source_arc()) {
            return Err(Error::NotComposable { index: i, next: i + 1 });
        }
    }
    for i in 0..maps.len().saturating_sub(1) {
        let (f, g) = (&maps[i], &maps[i + 1]);
        let node = i + 1;
        let label = if f.source().is_trivial() {
            "injectivity"
        } else if g.target().is_trivial() {
            "surjectivity"
        } else {
            "exactness"
        };
        let gf = g.compose(f)?;
        for j in 0..f.matrix().cols() {
            let img = gf.matrix().col(j);
            if !g.target().is_zero_element(&img) {
                return Ok(ExactnessReport {
                    failure: Some(ExactnessFailure {
                        node,
                        group: f.target().to_string(),
                        kind: FailureKind::CompositeNonzero,
                        witness: f.matrix().col(j),
                        label,
                    }),
                });
            }
        }
        let k = g.kernel();
        let basis = k.inclusion.matrix();
        for j in 0..basis.cols() {
            let v = basis.col(j);
            if f.target().is_zero_element(&v) {
                continue;
            }
            if f.lift(&v).is_none() {
                return Ok(ExactnessReport {
                    failure: Some(ExactnessFailure {
                        node,
                        group: f.target().to_string(),
                        kind: FailureKind::KernelNotImage,
                        witness: v,
                        label,
                    }),
                });
            }
        }
    }
    Ok(ExactnessReport { failure: None })
}

/// Renders a sequence as `"A -> B -> C"` using canonical forms.
pub fn render_sequence(maps: &[AbHom]) -> String {
    let mut parts = Vec::with_capacity(maps.len() + 1);
    if let Some(first) = maps.first() {
        parts.push(first.source().to_string());
    }
    for m in maps {
        parts.push(m.target().to_string());
    }
    parts.join(" -> ")
}

/// Homology `ker g / im f` of a composable pair `A -f-> B -g-> C`.
#[derive(Clone, Debug)]
pub struct Homology {
    /// The homology group in canonical presentation.
    pub group: Arc<FgAbGroup>,
    /// `ker g` with its inclusion into `B`.
    pub cycles: Kernel,
    /// `ker g -> H`.
    pub projection: AbHom,
}

impl Homology {
    /// Class of a cycle given in `B` coordinates.
    pub fn class_of(&self, b: &[Integer]) -> Option<Vec<Integer>> {
        let c = self.cycles.coordinates(b)?;
        Some(self.group.to_canonical(&self.projection.apply(&c)))
    }

    /// A representative cycle in `B` coordinates for an element of `H`.
    pub fn representative(&self, h: &[Integer]) -> Vec<Integer> {
        let k = self
            .projection
            .lift(h)
            .expect("projection onto homology is surjective");
        self.cycles.inclusion.apply(&k)
    }
}

/// Requires `g ∘ f = 0`.
pub fn homology(f: &AbHom, g: &AbHom) -> Result<Homology> {
    if !same_group(f.target_arc(), g.source_arc()) {
        return Err(Error::NotComposable { index: 0, next: 1 });
    }
    let cycles = g.kernel();
    let into = cycles.factor(f)?;
    let (cok, proj) = into.cokernel();
    let (canon, to, _) = canonical_isomorphism(&cok);
    let projection = to.compose(&proj)?;
    Ok(Homology {
        group: canon,
        cycles,
        projection,
    })
}

/// Two short exact rows `0 -> A -i-> B -p-> C -> 0` over `0 -> A' -> B' -> C' -> 0`
/// with vertical maps `a, b, c`.
#[derive(Clone, Debug)]
pub struct SnakeDiagram {
    pub i: AbHom,
    pub p: AbHom,
    pub i2: AbHom,
    pub p2: AbHom,
    pub a: AbHom,
    pub b: AbHom,
    pub c: AbHom,
}

fn check_short_exact(i: &AbHom, p: &AbHom, row: &str) -> Result<()> {
    let z_a = AbHom::zero(FgAbGroup::trivial(), i.source_arc().clone());
    let z_c = AbHom::zero(p.target_arc().clone(), FgAbGroup::trivial());
    let rep = is_exact(&[z_a, i.clone(), p.clone(), z_c])?;
    match rep.failure {
        None => Ok(()),
        Some(fl) => Err(Error::NotExact(format!("{row} row, {fl}"))),
    }
}

fn check_square(top: &AbHom, right: &AbHom, left: &AbHom, bottom: &AbHom, name: &str) -> Result<()> {
    let x = right.compose(top)?;
    let y = bottom.compose(left)?;
    if x.equals(&y) {
        Ok(())
    } else {
        Err(Error::NotCommutative(name.to_string()))
    }
}

/// `0 -> ker a -> ker b -> ker c -> cok a -> cok b -> cok c -> 0`, seven maps.
pub fn snake_sequence(d: &SnakeDiagram) -> Result<Vec<AbHom>> {
    let composable = same_group(d.i.target_arc(), d.p.source_arc())
        && same_group(d.i2.target_arc(), d.p2.source_arc())
        && same_group(d.a.source_arc(), d.i.source_arc())
        && same_group(d.a.target_arc(), d.i2.source_arc())
        && same_group(d.b.source_arc(), d.i.target_arc())
        && same_group(d.b.target_arc(), d.i2.target_arc())
        && same_group(d.c.source_arc(), d.p.target_arc())
        && same_group(d.c.target_arc(), d.p2.target_arc());
    if !composable {
        return Err(Error::Dimension("snake diagram maps do not fit together".into()));
    }
    check_short_exact(&d.i, &d.p, "top")?;
    check_short_exact(&d.i2, &d.p2, "bottom")?;
    check_square(&d.i, &d.b, &d.a, &d.i2, "left square")?;
    check_square(&d.p, &d.c, &d.b, &d.p2, "right square")?;

    let ka = d.a.kernel();
    let kb = d.b.kernel();
    let kc = d.c.kernel();
    let (ca, pa) = d.a.cokernel();
    let (cb, _) = d.b.cokernel();
    let (cc, _) = d.c.cokernel();

    let ker_ab = kb.factor(&d.i.compose(&ka.inclusion)?)?;
    let ker_bc = kc.factor(&d.p.compose(&kb.inclusion)?)?;

    // connecting map: lift through p, apply b, pull back through i', project
    let inc_c = kc.inclusion.matrix();
    let mut cols = Vec::with_capacity(inc_c.cols());
    for j in 0..inc_c.cols() {
        let z = inc_c.col(j);
        let y = d.p.lift(&z).ok_or_else(|| Error::Internal("snake: p not surjective".into()))?;
        let by = d.b.apply(&y);
        let w = d
            .i2
            .lift(&by)
            .ok_or_else(|| Error::Internal("snake: b(y) not in the image of i'".into()))?;
        cols.push(pa.apply(&w));
    }
    let delta = AbHom::new(
        kc.group.clone(),
        ca.clone(),
        IntMatrix::from_cols(&cols, ca.generators()),
    )?;
    let cok_ab = AbHom::new(ca.clone(), cb.clone(), d.i2.matrix().clone())?;
    let cok_bc = AbHom::new(cb.clone(), cc.clone(), d.p2.matrix().clone())?;
    Ok(vec![
        AbHom::zero(FgAbGroup::trivial(), ka.group.clone()),
        ker_ab,
        ker_bc,
        delta,
        cok_ab,
        cok_bc,
        AbHom::zero(cc, FgAbGroup::trivial()),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: FgAbGroup) -> Arc<FgAbGroup> {
        Arc::new(g)
    }

    #[test]
    fn doubling_sequence_is_exact() {
        let z = arc(FgAbGroup::free(1));
        let z2 = arc(FgAbGroup::cyclic(2));
        let zero = arc(FgAbGroup::trivial());
        let seq = vec![
            AbHom::zero(zero.clone(), z.clone()),
            AbHom::from_i64(z.clone(), z.clone(), &[vec![2]]).unwrap(),
            AbHom::from_i64(z.clone(), z2.clone(), &[vec![1]]).unwrap(),
            AbHom::zero(z2, zero),
        ];
        assert!(is_exact(&seq).unwrap().is_exact());
        assert_eq!(render_sequence(&seq), "0 -> Z -> Z -> Z/2 -> 0");
    }

    #[test]
    fn z_mod_4_fails_surjectivity() {
        let z = arc(FgAbGroup::free(1));
        let z4 = arc(FgAbGroup::cyclic(4));
        let zero = arc(FgAbGroup::trivial());
        let seq = vec![
            AbHom::zero(zero.clone(), z.clone()),
            AbHom::from_i64(z.clone(), z.clone(), &[vec![2]]).unwrap(),
            AbHom::from_i64(z.clone(), z4.clone(), &[vec![2]]).unwrap(),
            AbHom::zero(z4, zero),
        ];
        let rep = is_exact(&seq).unwrap();
        let f = rep.failure.unwrap();
        assert_eq!(f.node, 3);
        assert_eq!(f.label, "surjectivity");
        assert_eq!(f.group, "Z/4");
    }

    #[test]
    fn trivial_sequence_and_noncomposable() {
        let zero = arc(FgAbGroup::trivial());
        let seq = vec![AbHom::identity(zero.clone()), AbHom::identity(zero)];
        assert!(is_exact(&seq).unwrap().is_exact());
        let bad = vec![
            AbHom::identity(FgAbGroup::free(1)),
            AbHom::identity(FgAbGroup::free(2)),
        ];
        assert_eq!(
            is_exact(&bad).unwrap_err(),
            Error::NotComposable { index: 0, next: 1 }
        );
    }

    #[test]
    fn homology_of_doubling() {
        let z = arc(FgAbGroup::free(1));
        let zero = arc(FgAbGroup::trivial());
        let f = AbHom::from_i64(z.clone(), z.clone(), &[vec![2]]).unwrap();
        let g = AbHom::zero(z, zero);
        let h = homology(&f, &g).unwrap();
        assert_eq!(h.group.to_string(), "Z/2");
    }

    #[test]
    fn snake_with_doubling_verticals() {
        let z = arc(FgAbGroup::free(1));
        let z2 = arc(FgAbGroup::free(2));
        let i = AbHom::from_i64(z.clone(), z2.clone(), &[vec![1], vec![0]]).unwrap();
        let p = AbHom::from_i64(z2.clone(), z.clone(), &[vec![0, 1]]).unwrap();
        let two1 = AbHom::from_i64(z.clone(), z.clone(), &[vec![2]]).unwrap();
        let two2 = AbHom::from_i64(z2.clone(), z2.clone(), &[vec![2, 0], vec![0, 2]]).unwrap();
        let d = SnakeDiagram {
            i: i.clone(),
            p: p.clone(),
            i2: i,
            p2: p,
            a: two1.clone(),
            b: two2,
            c: two1,
        };
        let seq = snake_sequence(&d).unwrap();
        assert_eq!(
            render_sequence(&seq),
            "0 -> 0 -> 0 -> 0 -> Z/2 -> Z/2 x Z/2 -> Z/2 -> 0"
        );
        assert!(is_exact(&seq).unwrap().is_exact());
    }
}
