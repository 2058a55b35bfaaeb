//! Seeded instance generators for the verification suites.

use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abcoh::{permuted_gl2_cube, permuted_sl2_cube_quotient, twisted_gl2};
use crate::error::Result;
use crate::gammamod::{equivariant_hom, FiniteGroup, GammaHom, GammaModule};
use crate::lattice::{kernel_basis, FgAbGroup, IntMatrix, Integer};
use crate::resolutions::{ses_from_normal_subgroup, SesData};
use crate::rootdata::{
    central_quotient, coweight_generators, root_count, standard_group_by_name, CartanType, GroupHomData, RootDatum,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let v: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    if rows == 0 {
        return IntMatrix::zeros(0, cols);
    }
    IntMatrix::from_rows_i64(&v)
}

fn group(name: &str) -> RootDatum {
    standard_group_by_name(name).expect("catalog name")
}

/// Catalog π₁ values as canonical strings.
pub fn catalog_pi1_table() -> Vec<(String, String)> {
    let mut t = Vec::new();
    for n in 2..=9 {
        t.push((format!("SL({n})"), "0".to_string()));
        t.push((format!("PGL({n})"), format!("Z/{n}")));
        t.push((format!("GL({n})"), "Z".to_string()));
    }
    for n in 1..=4 {
        t.push((format!("Sp({})", 2 * n), "0".to_string()));
        t.push((format!("SO({})", 2 * n + 1), "Z/2".to_string()));
    }
    for n in 2..=5 {
        t.push((format!("SO({})", 2 * n), "Z/2".to_string()));
    }
    for m in 3..=10 {
        t.push((format!("Spin({m})"), "0".to_string()));
    }
    for s in ["SC(E,6)", "SC(E,7)", "SC(E,8)", "SC(F,4)", "SC(G,2)"] {
        t.push((s.to_string(), "0".to_string()));
    }
    for r in 0..=4 {
        let v = match r {
            0 => "0".to_string(),
            1 => "Z".to_string(),
            _ => format!("Z^{r}"),
        };
        t.push((format!("Torus({r})"), v));
    }
    t
}

/// Groups used for the resolution suites: one or two of each family and type.
pub const RESOLUTION_CATALOG: &[&str] = &[
    "Torus(0)",
    "Torus(1)",
    "Torus(3)",
    "GL(1)",
    "GL(2)",
    "GL(4)",
    "SL(2)",
    "SL(4)",
    "PGL(2)",
    "PGL(3)",
    "PGL(6)",
    "Sp(4)",
    "Sp(6)",
    "SO(3)",
    "SO(5)",
    "SO(7)",
    "SO(4)",
    "SO(6)",
    "SO(8)",
    "Spin(5)",
    "Spin(8)",
    "SC(G,2)",
    "SC(F,4)",
    "SC(E,6)",
    "ADJ(E,6)",
    "ADJ(E,7)",
    "ADJ(B,3)",
    "ADJ(C,3)",
    "ADJ(D,4)",
    "ADJ(D,5)",
    "Product(GL(2),PGL(3))",
    "Product(Torus(1),SO(5))",
    "CentralQuotient(Product(SL(2),SL(2));1/2,1/2)",
    "CentralQuotient(Product(SL(4),SL(2));1/2,0,1/2,1/2)",
];

const SC_FACTORS: &[(CartanType, usize)] = &[
    (CartanType::A, 1),
    (CartanType::A, 2),
    (CartanType::A, 3),
    (CartanType::B, 2),
    (CartanType::B, 3),
    (CartanType::C, 3),
    (CartanType::D, 4),
    (CartanType::G, 2),
];

/// A product of `1..=max_factors` simply connected factors, with the root index
/// range of each factor.
pub fn random_sc_product<R: Rng>(rng: &mut R, max_factors: usize) -> (String, RootDatum, Vec<std::ops::Range<usize>>) {
    let k = rng.gen_range(1..=max_factors);
    let mut names = Vec::new();
    let mut ranges = Vec::new();
    let mut start = 0;
    for _ in 0..k {
        let (t, l) = *SC_FACTORS.choose(rng).expect("nonempty");
        names.push(format!("SC({t},{l})"));
        let c = root_count(t, l);
        ranges.push(start..start + c);
        start += c;
    }
    let name = format!("Product({})", names.join(","));
    (name.clone(), group(&name), ranges)
}

/// `P / Z` for a random subgroup `Z` of the center of a random simply connected
/// product `P`, generated by random combinations of fundamental coweights.
pub fn random_central_quotient<R: Rng>(rng: &mut R, max_factors: usize) -> Result<(String, RootDatum, Vec<std::ops::Range<usize>>)> {
    let (name, p, ranges) = random_sc_product(rng, max_factors);
    let cw = coweight_generators(&p)?;
    let gens: Vec<Vec<BigRational>> = (0..rng.gen_range(1..=2))
        .map(|_| {
            let mut v = vec![BigRational::from_integer(Integer::from(0)); p.rank()];
            for w in &cw {
                let c = BigRational::from_integer(Integer::from(rng.gen_range(0..3)));
                for (x, y) in v.iter_mut().zip(w) {
                    *x += &c * y;
                }
            }
            v
        })
        .collect();
    let label = format!("{name} / {} central generator(s)", gens.len());
    Ok((label, central_quotient(&p, &gens)?, ranges))
}

fn all_roots(d: &RootDatum) -> Vec<usize> {
    (0..d.num_roots()).collect()
}

fn scalars(n: usize) -> IntMatrix {
    IntMatrix::from_rows_i64(&[vec![1; n]])
}

/// Standard families plus `random` seeded central quotients of products of at
/// most four simply connected factors.
pub fn ses_instances(seed: u64, random: usize) -> Result<Vec<(String, SesData)>> {
    let mut out = Vec::new();
    let none = |d: &RootDatum| IntMatrix::zeros(0, d.rank());
    for n in 2..=5 {
        let g = group(&format!("GL({n})"));
        out.push((format!("G_m -> GL({n}) -> PGL({n})"), ses_from_normal_subgroup(&g, &[], &scalars(n))?));
        out.push((format!("SL({n}) -> GL({n}) -> G_m"), ses_from_normal_subgroup(&g, &all_roots(&g), &none(&g))?));
    }
    let products: [(&str, usize); 4] = [
        ("Product(SL(2),PGL(3))", 2),
        ("Product(GL(2),SO(5))", 2),
        ("Product(Sp(4),GL(3))", 8),
        ("Product(PGL(2),Torus(2))", 2),
    ];
    for (name, first) in products {
        let g = group(name);
        let sub: Vec<usize> = (0..first).collect();
        out.push((format!("first factor of {name}"), ses_from_normal_subgroup(&g, &sub, &none(&g))?));
    }
    // (G_m × SL(2))/μ₂ is GL(2) in another basis
    let q = group("CentralQuotient(Product(Torus(1),SL(2));1/2,1/2)");
    out.push(("SL(2) -> (G_m x SL(2))/mu_2 -> G_m".into(), ses_from_normal_subgroup(&q, &all_roots(&q), &none(&q))?));
    // the roots are ±(1, 2), so (2, -1) spans the central cocharacters
    let central = IntMatrix::from_rows_i64(&[vec![2, -1]]);
    out.push(("G_m -> (G_m x SL(2))/mu_2 -> PGL(2)".into(), ses_from_normal_subgroup(&q, &[], &central)?));
    let t = group("Product(Torus(2),SO(5))");
    let tc = IntMatrix::from_rows_i64(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    out.push(("torus by group".into(), ses_from_normal_subgroup(&t, &[], &tc)?));
    out.push(("group by torus".into(), ses_from_normal_subgroup(&t, &all_roots(&t), &none(&t))?));
    out.push(("trivial quotient of SO(5)".into(), ses_from_normal_subgroup(&group("SO(5)"), &all_roots(&group("SO(5)")), &IntMatrix::zeros(0, 2))?));

    let mut rng = rng(seed);
    let mut made = 0;
    while made < random {
        let (label, d, ranges) = random_central_quotient(&mut rng, 4)?;
        let mut sub = Vec::new();
        for r in &ranges {
            if rng.gen_bool(0.5) {
                sub.extend(r.clone());
            }
        }
        out.push((format!("{label}, {} sub roots", sub.len()), ses_from_normal_subgroup(&d, &sub, &none(&d))?));
        made += 1;
    }
    Ok(out)
}

/// Sequences with a nontrivial Γ-action.
pub fn gamma_ses_instances() -> Result<Vec<(String, SesData)>> {
    let tw = twisted_gl2();
    let cube = permuted_gl2_cube();
    let q = permuted_sl2_cube_quotient();
    let cube_central = IntMatrix::from_rows_i64(&[
        vec![1, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 1, 0, 0],
        vec![0, 0, 0, 0, 1, 1],
    ]);
    Ok(vec![
        ("twisted G_m -> GL(2) -> PGL(2)".into(), ses_from_normal_subgroup(&tw, &[], &scalars(2))?),
        ("SL(2) -> twisted GL(2) -> G_m".into(), ses_from_normal_subgroup(&tw, &all_roots(&tw), &IntMatrix::zeros(0, 2))?),
        ("G_m^3 -> GL(2)^3 -> PGL(2)^3, S_3".into(), ses_from_normal_subgroup(&cube, &[], &cube_central)?),
        ("SL(2)^3 -> GL(2)^3 -> G_m^3, S_3".into(), ses_from_normal_subgroup(&cube, &all_roots(&cube), &IntMatrix::zeros(0, 6))?),
        ("SL(2)^3 -> (G_m x SL(2)^3)/mu_2 -> G_m, S_3".into(), ses_from_normal_subgroup(&q, &all_roots(&q), &IntMatrix::zeros(0, 4))?),
    ])
}

/// Short exact sequences of Γ-modules over `Z/2`, `Z/3` and `S_3`.
pub fn gamma_module_sequences() -> Result<Vec<(String, GammaHom, GammaHom)>> {
    let mut out = Vec::new();
    let groups: Vec<(&str, Arc<FiniteGroup>)> = vec![
        ("Z/2", Arc::new(FiniteGroup::cyclic(2))),
        ("Z/3", Arc::new(FiniteGroup::cyclic(3))),
        ("S_3", Arc::new(FiniteGroup::symmetric(3))),
    ];
    for (name, g) in &groups {
        let k = g.order();
        let regular = GammaModule::permutation(g.clone(), g.table())?;
        let triv = GammaModule::trivial(g.clone(), FgAbGroup::free(1));
        // 0 -> I -> Z[Γ] -> Z -> 0
        let aug = crate::lattice::AbHom::new(regular.carrier().clone(), triv.carrier().clone(), IntMatrix::from_rows_i64(&[vec![1; k]]))?;
        let aug = equivariant_hom(&regular, &triv, &aug)?;
        let (_, inc) = aug.kernel()?;
        out.push((format!("I -> Z[{name}] -> Z"), inc, aug.clone()));
        // 0 -> Z -N-> Z[Γ] -> Z[Γ]/N -> 0
        let norm = crate::lattice::AbHom::new(triv.carrier().clone(), regular.carrier().clone(), IntMatrix::from_rows_i64(&vec![vec![1]; k]))?;
        let norm = equivariant_hom(&triv, &regular, &norm)?;
        let (_, proj) = norm.cokernel();
        out.push((format!("Z -> Z[{name}] -> Z[{name}]/N"), norm, proj));
        // multiplication by m on a lattice
        for (m, module) in [(2, regular.clone()), (3, triv.clone())] {
            let n = module.carrier().generators();
            let by_m = crate::lattice::AbHom::new(module.carrier().clone(), module.carrier().clone(), IntMatrix::scalar(n, &Integer::from(m)))?;
            let by_m = equivariant_hom(&module, &module, &by_m)?;
            let (_, proj) = by_m.cokernel();
            out.push((format!("multiplication by {m} on a {name}-lattice of rank {n}"), by_m, proj));
        }
    }
    let z2 = groups[0].1.clone();
    let sign = GammaModule::sign(z2.clone())?;
    let sum = GammaModule::direct_sum(&[&sign, &GammaModule::trivial(z2, FgAbGroup::free(1))])?;
    let first = crate::lattice::AbHom::new(sign.carrier().clone(), sum.carrier().clone(), IntMatrix::from_rows_i64(&[vec![1], vec![0]]))?;
    let first = equivariant_hom(&sign, &sum, &first)?;
    let (_, proj) = first.cokernel();
    out.push(("Z_sign -> Z_sign + Z -> Z".into(), first, proj));
    Ok(out)
}

/// A homomorphism `g1 -> g2` whose cocharacter map sends `Q₁^∨` into `Q₂^∨`:
/// `M = C₂ V + Z R` with `C₂` a basis of `Q₂^∨` and `R Q₁^∨ = 0`.
pub fn random_torus_compatible_hom<R: Rng>(rng: &mut R, g1: &RootDatum, g2: &RootDatum) -> Result<GroupHomData> {
    let (n1, n2) = (g1.rank(), g2.rank());
    let c2 = g2.coroot_lattice().basis().transpose();
    let v = random_matrix(rng, c2.cols(), n1, 2);
    let r = if g1.num_roots() == 0 { IntMatrix::identity(n1) } else { kernel_basis(g1.coroots()) };
    let z = random_matrix(rng, n2, r.rows(), 2);
    let mut m = &c2 * &v;
    if r.rows() > 0 {
        m = m.add(&(&z * &r));
    }
    GroupHomData::new(g1.clone(), g2.clone(), m, false)
}

const HOM_POOL: &[&str] = &[
    "Torus(1)", "Torus(2)", "GL(2)", "GL(3)", "SL(2)", "SL(3)", "PGL(2)", "PGL(3)", "SO(5)", "Sp(4)", "SO(4)",
    "Product(GL(2),Torus(1))",
];

/// `count` composable pairs `G₁ -κ-> G₂ -λ-> G₃` among catalog groups.
pub fn composable_pairs(seed: u64, count: usize) -> Result<Vec<(String, GroupHomData, GroupHomData)>> {
    let mut rng = rng(seed);
    let pool: Vec<(&str, RootDatum)> = HOM_POOL.iter().map(|n| (*n, group(n))).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let a = pool.choose(&mut rng).expect("nonempty");
        let b = pool.choose(&mut rng).expect("nonempty");
        let c = pool.choose(&mut rng).expect("nonempty");
        let kappa = random_torus_compatible_hom(&mut rng, &a.1, &b.1)?;
        let lambda = random_torus_compatible_hom(&mut rng, &b.1, &c.1)?;
        out.push((format!("{} -> {} -> {}", a.0, b.0, c.0), kappa, lambda));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = ses_instances(1, 5).unwrap();
        let b = ses_instances(1, 5).unwrap();
        assert_eq!(a.len(), b.len());
        for ((la, _), (lb, _)) in a.iter().zip(&b) {
            assert_eq!(la, lb);
        }
        let p = composable_pairs(2, 3).unwrap();
        let q = composable_pairs(2, 3).unwrap();
        for (x, y) in p.iter().zip(&q) {
            assert_eq!(x.1.cochar_matrix(), y.1.cochar_matrix());
        }
    }
}
