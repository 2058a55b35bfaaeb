mod common;

use algpi::lattice::{
    derived_dual, is_exact, smith_normal_form, snake_sequence, AbHom, FgAbGroup, IntMatrix, Integer, SnakeDiagram,
};
use algpi::verify::generate::rng;
use proptest::collection::vec;
use proptest::prelude::*;
use rand::Rng;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=5usize, 1..=5usize).prop_flat_map(|(m, n)| vec(vec(-10i64..=10, n), m))
}

/// A random unimodular matrix and its inverse.
fn unimodular(seed: u64, n: usize) -> (IntMatrix, IntMatrix) {
    let mut r = rng(seed);
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);
    if n < 2 {
        return (u, v);
    }
    for _ in 0..3 * n {
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        match r.gen_range(0..3) {
            0 => {
                let c = Integer::from(r.gen_range(-3..=3));
                u.add_row_multiple(i, j, &c);
                v.add_col_multiple(j, i, &-c);
            }
            1 => {
                u.swap_rows(i, j);
                v.swap_cols(i, j);
            }
            _ => {
                u.negate_row(i);
                v.negate_col(i);
            }
        }
    }
    (u, v)
}

fn block(a: usize, b: usize, top: bool) -> IntMatrix {
    // [I; 0] when `top`, otherwise [0 I]
    if top {
        IntMatrix::identity(a).vstack(&IntMatrix::zeros(b, a))
    } else {
        IntMatrix::zeros(b, a).hstack(&IntMatrix::identity(b))
    }
}

fn hom(a: usize, b: usize, m: IntMatrix) -> AbHom {
    AbHom::new(FgAbGroup::free(a), FgAbGroup::free(b), m).unwrap()
}

/// `0 -> Z^a -> Z^(a+b) -> Z^b -> 0` split by a random basis `u` of the middle.
fn split_ses(seed: u64, a: usize, b: usize) -> (AbHom, AbHom, IntMatrix, IntMatrix) {
    let (u, ui) = unimodular(seed, a + b);
    let i = &u * &block(a, b, true);
    let p = &block(a, b, false) * &ui;
    (hom(a, a + b, i), hom(a + b, b, p), u, ui)
}

fn framed(i: &AbHom, p: &AbHom) -> Vec<AbHom> {
    vec![
        AbHom::zero(FgAbGroup::trivial(), i.source_arc().clone()),
        i.clone(),
        p.clone(),
        AbHom::zero(p.target_arc().clone(), FgAbGroup::trivial()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_valid_decomposition(rows in matrix()) {
        let a = IntMatrix::from_rows_i64(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let d = s.diagonal();
        for k in 0..d.len() {
            if k + 1 < s.rank {
                prop_assert!((&d[k + 1] % &d[k]) == Integer::from(0));
            }
            prop_assert_eq!(d[k] != Integer::from(0), k < s.rank);
        }
        let oracle = common::invariant_factors(&common::to_mat(&a), a.cols());
        prop_assert_eq!(oracle.len(), s.rank);
    }

    #[test]
    fn cokernel_is_invariant_under_presentation_change(rows in matrix(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = IntMatrix::from_rows_i64(&rows);
        let (u, _) = unimodular(s1, a.rows());
        let (v, _) = unimodular(s2, a.cols());
        let b = &(&u * &a) * &v;
        let g = FgAbGroup::new(a.cols(), a).unwrap();
        let h = FgAbGroup::new(b.cols(), b).unwrap();
        prop_assert_eq!(g.to_string(), h.to_string());
    }

    #[test]
    fn kernel_inclusion_composes_to_zero(rows in matrix(), torsion in vec(0i64..6, 1..=5)) {
        let a = IntMatrix::from_rows_i64(&rows);
        let m = a.rows();
        let rel: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| if i == j { torsion[i % torsion.len()] } else { 0 }).collect()).collect();
        let target = FgAbGroup::new(m, IntMatrix::from_rows_i64(&rel)).unwrap();
        let f = AbHom::new(FgAbGroup::free(a.cols()), target, a).unwrap();
        let k = f.kernel();
        prop_assert!(f.compose(&k.inclusion).unwrap().is_zero());
        prop_assert!(k.inclusion.is_injective());
    }

    #[test]
    fn split_sequences_are_exact_and_perturbations_are_caught(seed in any::<u64>(), a in 1..4usize, b in 1..4usize, r in 0..4usize) {
        let (i, p, _, _) = split_ses(seed, a, b);
        prop_assert!(is_exact(&framed(&i, &p)).unwrap().is_exact());
        let row = r % b;
        let col = (0..a + b).find(|&c| i.matrix().row(c).iter().any(|x| *x != Integer::from(0))).unwrap();
        let mut bad = p.matrix().clone();
        bad[(row, col)] += Integer::from(1);
        let seq = framed(&i, &hom(a + b, b, bad));
        let rep = is_exact(&seq).unwrap();
        let fl = rep.failure.expect("perturbed sequence is not exact");
        let node_group = if fl.node == 0 { seq[0].source() } else { seq[fl.node - 1].target() };
        prop_assert_eq!(fl.witness.len(), node_group.generators());
    }

    #[test]
    fn derived_dual_is_an_involution_on_free_groups(r in 0..6usize, torsion in vec(2i64..9, 0..3)) {
        let f = FgAbGroup::free(r);
        let (hom0, ext) = derived_dual(&f);
        prop_assert!(ext.is_trivial());
        let (again, ext2) = derived_dual(&hom0);
        prop_assert_eq!(again.to_string(), f.to_string());
        prop_assert!(ext2.is_trivial());
        let t: Vec<Integer> = torsion.iter().map(|x| Integer::from(*x)).collect();
        let m = FgAbGroup::from_invariants(r, &t);
        let (h, e) = derived_dual(&m);
        prop_assert_eq!(h.to_string(), f.to_string());
        prop_assert_eq!(e.to_string(), FgAbGroup::from_invariants(0, &t).to_string());
    }

    #[test]
    fn snake_sequence_is_exact(s1 in any::<u64>(), s2 in any::<u64>(), a in 1..3usize, b in 1..3usize, blocks in vec(-3i64..=3, 16)) {
        let (i, p, _, ui) = split_ses(s1, a, b);
        let (i2, p2, u2, _) = split_ses(s2, a, b);
        let n = a + b;
        let mut x = blocks.iter().cycle();
        let mut take = |r: usize, c: usize| -> IntMatrix {
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| *x.next().unwrap()).collect()).collect();
            if r == 0 { IntMatrix::zeros(0, c) } else { IntMatrix::from_rows_i64(&rows) }
        };
        let (am, xm, cm) = (take(a, a), take(a, b), take(b, b));
        let inner = am.hstack(&xm).vstack(&IntMatrix::zeros(b, a).hstack(&cm));
        let bm = &(&u2 * &inner) * &ui;
        let d = SnakeDiagram {
            i, p, i2, p2,
            a: hom(a, a, am),
            b: hom(n, n, bm),
            c: hom(b, b, cm),
        };
        let seq = snake_sequence(&d).unwrap();
        prop_assert!(is_exact(&seq).unwrap().is_exact());
    }
}
