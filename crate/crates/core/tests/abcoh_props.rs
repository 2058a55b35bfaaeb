use std::sync::Arc;

use algpi::abcoh::{ab_cohomology_profile, ab_long_sequence, dual_profile, permuted_gl2_cube, twisted_gl2};
use algpi::gammamod::FiniteGroup;
use algpi::lattice::{is_exact, FgAbGroup};
use algpi::resolutions::{fiber_product_resolution, t_resolution_from_torus, t_resolution_generic, EmbeddingChoice};
use algpi::rootdata::{fundamental_invariants, standard_group_by_name, GroupHomData, RootDatum};
use algpi::verify::generate::{gamma_ses_instances, random_central_quotient, rng};
use proptest::prelude::*;
use proptest::sample::select;

fn gamma_datum(k: usize) -> RootDatum {
    let power = |name: &str, g: FiniteGroup| RootDatum::permuted_power(&standard_group_by_name(name).unwrap(), Arc::new(g)).unwrap();
    match k {
        0 => twisted_gl2(),
        1 => permuted_gl2_cube(),
        2 => power("GL(2)", FiniteGroup::cyclic(2)),
        3 => power("PGL(2)", FiniteGroup::cyclic(3)),
        4 => power("Torus(1)", FiniteGroup::symmetric(3)),
        _ => power("SL(2)", FiniteGroup::cyclic(2)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dual_profile_matches_the_mu_sequence(seed in any::<u64>(), extra in select(&["Torus(1)", "GL(2)", "PGL(3)"][..])) {
        let (_, q, _) = random_central_quotient(&mut rng(seed), 2).unwrap();
        let d = RootDatum::product(&[&q, &standard_group_by_name(extra).unwrap()]);
        let inv = fundamental_invariants(&d).unwrap();
        let (hom, ext) = dual_profile(&d).unwrap();
        prop_assert_eq!(hom.free_rank(), inv.cochar_torus_quotient.free_rank());
        prop_assert_eq!(ext.to_string(), FgAbGroup::from_invariants(0, inv.mu_minus_one.torsion()).to_string());
    }

}

#[test]
fn profiles_do_not_depend_on_the_resolution() {
    for k in 0..6 {
        let d = gamma_datum(k);
        let r1 = t_resolution_from_torus(&d).unwrap();
        let r2 = t_resolution_generic(&d, &EmbeddingChoice::Torus).unwrap();
        let fp = fiber_product_resolution(&r1, &r2, &GroupHomData::identity(&d)).unwrap();
        let a = ab_cohomology_profile(&d, &r1).unwrap();
        let b = ab_cohomology_profile(&d, &fp.resolution).unwrap();
        assert!(a.agrees_with(&b), "{:?} vs {:?}", a.summary(), b.summary());
    }
}

#[test]
fn ab_long_sequences_are_exact() {
    for (label, s) in gamma_ses_instances().unwrap() {
        let seq = ab_long_sequence(&s).unwrap();
        assert!(is_exact(&seq).unwrap().is_exact(), "{label}");
    }
}
