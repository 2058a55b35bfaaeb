use std::sync::Arc;

use algpi::gammamod::{cohomology_long_sequence, equivariant_hom, group_cohomology, FiniteGroup, GammaModule};
use algpi::lattice::{is_exact, AbHom, FgAbGroup, IntMatrix, Integer};
use algpi::verify::generate::gamma_module_sequences;
use proptest::collection::vec;
use proptest::prelude::*;

/// Permutation of `Z/n` acting on a Γ-set made of orbits of the given sizes
/// (each dividing `n`): element `g` rotates every orbit by `g` steps.
fn cyclic_gamma_set(n: usize, orbits: &[usize]) -> Vec<Vec<usize>> {
    (0..n)
        .map(|g| {
            let mut p = Vec::new();
            let mut start = 0;
            for &k in orbits {
                p.extend((0..k).map(|i| start + (i + g) % k));
                start += k;
            }
            p
        })
        .collect()
}

fn orbit_sizes(n: usize) -> impl Strategy<Value = Vec<usize>> {
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    vec(proptest::sample::select(divisors), 1..=3)
}

fn cyclic_module() -> impl Strategy<Value = (usize, Vec<usize>, bool)> {
    (2..=4usize).prop_flat_map(|n| (Just(n), orbit_sizes(n), any::<bool>()))
}

fn build(n: usize, orbits: &[usize], twist: bool) -> GammaModule {
    let g = Arc::new(FiniteGroup::cyclic(n));
    let perm = GammaModule::permutation(g.clone(), &cyclic_gamma_set(n, orbits)).unwrap();
    if twist && n.is_multiple_of(2) {
        let signs: Vec<i64> = (0..n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        let sign = GammaModule::from_character(g, &signs).unwrap();
        GammaModule::direct_sum(&[&perm, &sign]).unwrap()
    } else {
        perm
    }
}

fn divides_order(h: &FgAbGroup, order: usize) -> bool {
    h.free_rank() == 0 && h.torsion().iter().all(|d| (Integer::from(order as u64) % d) == Integer::from(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn higher_cohomology_is_killed_by_the_group_order((n, orbits, twist) in cyclic_module()) {
        let m = build(n, &orbits, twist);
        for k in 1..=2 {
            let h = group_cohomology(&m, k).unwrap();
            prop_assert!(divides_order(&h, n), "H^{} = {}", k, h);
        }
    }

    #[test]
    fn invariants_of_a_permutation_module_count_orbits((n, orbits, _) in cyclic_module()) {
        let m = build(n, &orbits, false);
        let h0 = group_cohomology(&m, 0).unwrap();
        prop_assert_eq!(h0.to_string(), FgAbGroup::free(orbits.len()).to_string());
    }

    #[test]
    fn trivial_group_recovers_the_module(r in 0..4usize, torsion in vec(2i64..8, 0..3)) {
        let t: Vec<Integer> = torsion.iter().map(|x| Integer::from(*x)).collect();
        let carrier = FgAbGroup::from_invariants(r, &t);
        let m = GammaModule::trivial(FiniteGroup::trivial(), carrier.clone());
        prop_assert_eq!(group_cohomology(&m, 0).unwrap().to_string(), carrier.to_string());
        prop_assert!(group_cohomology(&m, 1).unwrap().is_trivial());
        prop_assert!(group_cohomology(&m, 2).unwrap().is_trivial());
    }

    #[test]
    fn long_sequences_of_split_extensions_are_exact(a in cyclic_module(), b in 0..3usize) {
        let (n, orbits, twist) = a;
        let m = build(n, &orbits, twist);
        // regular, trivial, or regular plus sign
        let other = build(n, &[if b == 1 { 1 } else { n }], b == 2);
        let sum = GammaModule::direct_sum(&[&m, &other]).unwrap();
        let (k, l) = (m.carrier().generators(), other.carrier().generators());
        let inc = IntMatrix::identity(k).vstack(&IntMatrix::zeros(l, k));
        let proj = IntMatrix::zeros(l, k).hstack(&IntMatrix::identity(l));
        let i = equivariant_hom(&m, &sum, &AbHom::new(m.carrier().clone(), sum.carrier().clone(), inc).unwrap()).unwrap();
        let p = equivariant_hom(&sum, &other, &AbHom::new(sum.carrier().clone(), other.carrier().clone(), proj).unwrap()).unwrap();
        let seq = cohomology_long_sequence(&i, &p).unwrap();
        prop_assert!(is_exact(&seq).unwrap().is_exact());
    }
}

#[test]
fn long_sequences_of_sample_extensions_are_exact() {
    for (label, i, p) in gamma_module_sequences().unwrap() {
        let seq = cohomology_long_sequence(&i, &p).unwrap();
        assert!(is_exact(&seq).unwrap().is_exact(), "{label}");
    }
}
