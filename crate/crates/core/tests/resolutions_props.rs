use algpi::lattice::{is_exact, IntMatrix, Integer};
use algpi::resolutions::{
    canonical_iso, check_pi1_exact, fiber_product_resolution, fundamental_sequence, pi1_of_morphism, pi1_of_resolution,
    pi1_via_m_resolution, qiso_certificate, ses_from_normal_subgroup, t_resolution_from_torus, t_resolution_generic,
    EmbeddingChoice,
};
use algpi::rootdata::{fundamental_invariants, GroupHomData, RootDatum};
use algpi::verify::generate::{random_central_quotient, rng};
use proptest::prelude::*;
use rand::Rng;

fn quotient(seed: u64) -> RootDatum {
    random_central_quotient(&mut rng(seed), 3).unwrap().1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn every_route_gives_the_same_pi1(seed in any::<u64>(), pad in 0..3usize) {
        let d = quotient(seed);
        let direct = fundamental_invariants(&d).unwrap().pi1.to_string();
        for choice in [EmbeddingChoice::Torus, EmbeddingChoice::Default, EmbeddingChoice::Padded(pad)] {
            let r = t_resolution_generic(&d, &choice).unwrap();
            prop_assert_eq!(pi1_of_resolution(&r).unwrap().to_string(), direct.clone());
        }
        prop_assert_eq!(pi1_via_m_resolution(&d).unwrap().to_string(), direct);
    }

    #[test]
    fn canonical_isomorphisms_compose(seed in any::<u64>(), pad in 1..3usize) {
        let d = quotient(seed);
        let r1 = t_resolution_from_torus(&d).unwrap();
        let r2 = t_resolution_generic(&d, &EmbeddingChoice::Default).unwrap();
        let r3 = t_resolution_generic(&d, &EmbeddingChoice::Padded(pad)).unwrap();
        let i12 = canonical_iso(&r1, &r2).unwrap();
        let i23 = canonical_iso(&r2, &r3).unwrap();
        let i13 = canonical_iso(&r1, &r3).unwrap();
        prop_assert!(i23.compose(&i12).unwrap().equals(&i13));
    }

    #[test]
    fn induced_maps_do_not_depend_on_the_morphism(seed in any::<u64>(), entries in proptest::collection::vec(-3i64..=3, 64)) {
        let d = quotient(seed);
        let r1 = t_resolution_from_torus(&d).unwrap();
        let r2 = t_resolution_generic(&d, &EmbeddingChoice::Padded(1)).unwrap();
        let fp = fiber_product_resolution(&r1, &r2, &GroupHomData::identity(&d)).unwrap();
        let m = &fp.to_second;
        let rows = m.target().kernel_rank();
        let cols = m.source().r_star().canonical_len();
        let mut lambda = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                lambda[(i, j)] = Integer::from(entries[(i * cols + j) % entries.len()]);
            }
        }
        let perturbed = m.perturb(&lambda).unwrap();
        prop_assert!(pi1_of_morphism(m).unwrap().equals(&pi1_of_morphism(&perturbed).unwrap()));
    }

    #[test]
    fn random_sequences_are_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, d, ranges) = random_central_quotient(&mut r, 4).unwrap();
        let sub: Vec<usize> = ranges.iter().filter(|_| r.gen_bool(0.5)).flat_map(|x| x.clone()).collect();
        let s = ses_from_normal_subgroup(&d, &sub, &IntMatrix::zeros(0, d.rank())).unwrap();
        let seq = check_pi1_exact(&s).unwrap();
        prop_assert!(is_exact(&seq.maps).unwrap().is_exact());
    }

    #[test]
    fn constructed_resolutions_are_sound(seed in any::<u64>(), pad in 0..3usize) {
        let d = quotient(seed);
        for r in [t_resolution_from_torus(&d).unwrap(), t_resolution_generic(&d, &EmbeddingChoice::Padded(pad)).unwrap()] {
            prop_assert!(r.t_to_r().is_injective());
            let fs = fundamental_sequence(&r).unwrap();
            prop_assert!(is_exact(&fs.maps).unwrap().is_exact());
            prop_assert!(qiso_certificate(&r).is_ok());
        }
    }
}
