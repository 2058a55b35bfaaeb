//! Mapping cylinder of a morphism of two-term complexes, used to cross-check the cone:
//! `0 -> P -> Cyl(f) -> C(f) -> 0` is degreewise split exact and `Cyl(f) ≃ Q`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::{is_exact, AbHom, CochainWindow, ComplexSes, FgAbGroup, IntMatrix};

use super::duality::{random_lattice_complex, random_quasi_isomorphism};
use super::two_term::{is_quasi_isomorphism, ComplexMorphism};

fn carrier(g: &crate::gammamod::GammaModule) -> Arc<FgAbGroup> {
    g.carrier().clone()
}

fn sum(gs: &[&Arc<FgAbGroup>]) -> Arc<FgAbGroup> {
    let refs: Vec<&FgAbGroup> = gs.iter().map(|g| g.as_ref()).collect();
    Arc::new(FgAbGroup::direct_sum(&refs))
}

fn hom(s: &Arc<FgAbGroup>, t: &Arc<FgAbGroup>, m: IntMatrix) -> AbHom {
    AbHom::new(s.clone(), t.clone(), m).expect("well-defined")
}

/// Checks the long exact sequence of `0 -> P -> Cyl(f) -> C(f) -> 0` and that the
/// cylinder has the cohomology of the target.
fn check_cylinder(f: &ComplexMorphism) {
    let (p, q) = (f.source(), f.target());
    let d = p.base_degree();
    let (p0, p1, q0, q1) = (carrier(p.term0()), carrier(p.term1()), carrier(q.term0()), carrier(q.term1()));
    let (np0, np1, nq0) = (p0.generators(), p1.generators(), q0.generators());
    let a = p.differential().matrix();
    let b = q.differential().matrix();
    let zero = Arc::new(FgAbGroup::trivial());

    let mid = sum(&[&p0, &p1, &q0]);
    let top = sum(&[&p1, &q1]);
    let d0 = IntMatrix::identity(np0)
        .neg()
        .vstack(&a.neg())
        .vstack(f.f0().matrix());
    let d1 = a
        .hstack(&IntMatrix::identity(np1).neg())
        .hstack(&IntMatrix::zeros(np1, nq0))
        .vstack(&IntMatrix::zeros(q1.generators(), np0).hstack(f.f1().matrix()).hstack(b));
    let cyl = CochainWindow {
        start: d - 1,
        groups: vec![p0.clone(), mid.clone(), top.clone()],
        diffs: vec![hom(&p0, &mid, d0), hom(&mid, &top, d1)],
        closed: true,
    };
    cyl.check().unwrap();
    let pw = CochainWindow {
        start: d - 1,
        groups: vec![zero.clone(), p0.clone(), p1.clone()],
        diffs: vec![AbHom::zero(zero.clone(), p0.clone()), p.differential().clone()],
        closed: true,
    };
    let cw = f.cone().window();
    let inc = vec![
        AbHom::zero(zero.clone(), p0.clone()),
        hom(&p0, &mid, IntMatrix::identity(np0).vstack(&IntMatrix::zeros(np1 + nq0, np0))),
        hom(&p1, &top, IntMatrix::identity(np1).vstack(&IntMatrix::zeros(q1.generators(), np1))),
    ];
    let proj = vec![
        hom(&p0, &cw.groups[0], IntMatrix::identity(np0)),
        hom(&mid, &cw.groups[1], IntMatrix::zeros(np1 + nq0, np0).hstack(&IntMatrix::identity(np1 + nq0))),
        hom(&top, &cw.groups[2], IntMatrix::zeros(q1.generators(), np1).hstack(&IntMatrix::identity(q1.generators()))),
    ];
    let ses = ComplexSes::with_generic_lifts(&pw, &cyl, &cw, inc, proj);
    let mut seq = vec![AbHom::zero(zero.clone(), pw.groups[0].clone())];
    seq.extend(ses.long_exact_sequence(d - 1, d + 1).unwrap());
    let last = seq.last().unwrap().target_arc().clone();
    seq.push(AbHom::zero(last, zero));
    let report = is_exact(&seq).unwrap();
    assert!(report.is_exact(), "{}", crate::lattice::render_sequence(&seq));

    for n in d - 1..=d + 1 {
        let hq = if n == d - 1 { FgAbGroup::trivial() } else { q.cohomology(n) };
        assert!(cyl.cohomology(n).unwrap().group.is_isomorphic(&hq));
    }
    // the cone is acyclic exactly when P -> Cyl(f) is a quasi-isomorphism
    let acyclic = f.cone().is_acyclic().unwrap();
    assert_eq!(acyclic, is_quasi_isomorphism(f).unwrap());
}

#[test]
fn cylinder_of_quasi_isomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        check_cylinder(&random_quasi_isomorphism(&mut rng).unwrap());
    }
}

#[test]
fn cylinder_of_arbitrary_morphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let c = random_lattice_complex(&mut rng, 0, 4);
        let twice = |m: &IntMatrix| m.scale(&crate::lattice::int(2));
        let id = ComplexMorphism::identity(&c);
        let f = ComplexMorphism::from_matrices(&c, &c, twice(id.f0().matrix()), twice(id.f1().matrix())).unwrap();
        check_cylinder(&f);
        let z = ComplexMorphism::from_matrices(
            &c,
            &c,
            IntMatrix::zeros(id.f0().matrix().rows(), id.f0().matrix().cols()),
            IntMatrix::zeros(id.f1().matrix().rows(), id.f1().matrix().cols()),
        )
        .unwrap();
        check_cylinder(&z);
    }
}
