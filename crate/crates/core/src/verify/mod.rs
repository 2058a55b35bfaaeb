//! Property suites over seeded instance families, one per acceptance criterion.

pub mod generate;
pub mod oracle;

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::abcoh::{ab_cohomology_profile, ab_long_sequence, permuted_sl2_cube_quotient, twisted_gl2};
use crate::complexes::{cone_shift_identity, is_quasi_isomorphism, random_quasi_isomorphism};
use crate::error::{Error, Result};
use crate::gammamod::{cohomology_long_sequence, group_cohomology, FiniteGroup, GammaModule};
use crate::lattice::{is_exact, smith_normal_form, AbHom, FgAbGroup, IntMatrix, Integer};
use crate::resolutions::{
    canonical_iso, fiber_product_resolution, fundamental_sequence, pi1_functor, pi1_of_resolution, pi1_via_m_resolution,
    qiso_certificate, reference_pi1, t_resolution_from_torus, t_resolution_generic, EmbeddingChoice, TResolution,
};
use crate::rootdata::{fundamental_invariants, standard_group_by_name, GroupHomData, RootDatum};

use generate::{
    catalog_pi1_table, composable_pairs, gamma_module_sequences, gamma_ses_instances, random_matrix, rng, ses_instances,
    RESOLUTION_CATALOG,
};

/// Number of random central quotients added to the standard exact sequences.
pub const RANDOM_SES: usize = 20;
pub const QISO_SAMPLES: usize = 200;
pub const SNF_SAMPLES: usize = 500;
pub const HOM_PAIRS: usize = 50;
/// Largest order of the finite groups in the brute-force kernel/cokernel check.
pub const MAX_BRUTE_ORDER: u64 = 64;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub criterion: u8,
    pub title: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

impl SuiteResult {
    pub fn within_limit(&self) -> bool {
        self.limit_ms.is_none_or(|l| self.elapsed_ms <= l)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.within_limit()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}. {}: {} checks, {} failures", self.criterion, self.title, self.checked, self.failures.len())?;
        if !self.within_limit() {
            write!(f, ", over the {} ms limit", self.limit_ms.unwrap_or_default())?;
        }
        for x in self.failures.iter().take(5) {
            write!(f, "\n    {x}")?;
        }
        Ok(())
    }
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: impl fmt::Display, r: Result<bool>) {
        self.checked += 1;
        match r {
            Ok(true) => {}
            Ok(false) => self.failures.push(format!("{label}: check failed")),
            Err(e) => self.failures.push(format!("{label}: {e}")),
        }
    }
}

fn finish(criterion: u8, title: &'static str, t: Tally, start: Instant, limit: Option<Duration>) -> SuiteResult {
    SuiteResult {
        criterion,
        title,
        checked: t.checked,
        failures: t.failures,
        elapsed_ms: start.elapsed().as_millis(),
        limit_ms: limit.map(|d| d.as_millis()),
    }
}

fn group(name: &str) -> Result<RootDatum> {
    standard_group_by_name(name)
}

/// Catalog `π₁` values, each also computed from determinantal divisors of the
/// simple coroots.
pub fn catalog_suite() -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    for (name, expected) in catalog_pi1_table() {
        t.check(&name, (|| {
            let d = group(&name)?;
            let pi1 = fundamental_invariants(&d)?.pi1;
            let simple = d.simple_roots();
            let (free, torsion) = oracle::quotient_by_minors(d.rank(), &d.coroots().select_rows(&simple));
            let oracle = FgAbGroup::from_invariants(free, &torsion);
            Ok(pi1.to_string() == expected && oracle.to_string() == expected)
        })());
    }
    finish(1, "catalog pi_1 values", t, start, Some(Duration::from_secs(5)))
}

/// `check_pi1_exact` on the standard and random exact sequences; it compares
/// the functor route with the snake-lemma route internally.
pub fn exactness_suite(seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    match ses_instances(seed, RANDOM_SES) {
        Err(e) => t.check("generating sequences", Err(e)),
        Ok(list) => {
            for (label, s) in &list {
                t.check(label, crate::resolutions::check_pi1_exact(s).map(|_| true));
            }
        }
    }
    finish(2, "pi_1 exactness on short exact sequences", t, start, Some(Duration::from_secs(60)))
}

fn resolutions_of(d: &RootDatum) -> Result<Vec<(&'static str, TResolution)>> {
    Ok(vec![
        ("torus", t_resolution_from_torus(d)?),
        ("default", t_resolution_generic(d, &EmbeddingChoice::Default)?),
        ("padded", t_resolution_generic(d, &EmbeddingChoice::Padded(1))?),
    ])
}

/// Five routes to `π₁` agree, and canonical isomorphisms compose.
pub fn independence_suite() -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    for name in RESOLUTION_CATALOG {
        t.check(name, (|| {
            let d = group(name)?;
            let direct = fundamental_invariants(&d)?.pi1.canonical_form();
            let rs = resolutions_of(&d)?;
            for (_, r) in &rs {
                if pi1_of_resolution(r)?.canonical_form() != direct {
                    return Ok(false);
                }
            }
            if pi1_via_m_resolution(&d)?.canonical_form() != direct {
                return Ok(false);
            }
            let i01 = canonical_iso(&rs[0].1, &rs[1].1)?;
            let i12 = canonical_iso(&rs[1].1, &rs[2].1)?;
            let i02 = canonical_iso(&rs[0].1, &rs[2].1)?;
            Ok(i12.compose(&i01)?.equals(&i02))
        })());
    }
    finish(3, "resolution independence", t, start, None)
}

/// Duals of random quasi-isomorphisms, and the cone-shift identity.
pub fn duality_suite(seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut r = rng(seed);
    for i in 0..QISO_SAMPLES {
        t.check(format!("sample {i}"), (|| {
            let f = random_quasi_isomorphism(&mut r)?;
            if !is_quasi_isomorphism(&f)? {
                return Err(Error::Internal("generator produced a non quasi-isomorphism".into()));
            }
            Ok(is_quasi_isomorphism(&f.dual()?)? && cone_shift_identity(&f)?)
        })());
    }
    finish(4, "duality of quasi-isomorphisms", t, start, Some(Duration::from_secs(30)))
}

fn check_resolution(r: &TResolution) -> Result<bool> {
    fundamental_sequence(r)?;
    qiso_certificate(r)?;
    Ok(true)
}

/// Fundamental sequence and quasi-isomorphism certificates, and the
/// `μ(-1) -> π₁ -> (G^tor)_*` sequence.
pub fn fundamental_suite(seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    for name in RESOLUTION_CATALOG {
        match group(name).and_then(|d| resolutions_of(&d)) {
            Err(e) => t.check(name, Err(e)),
            Ok(rs) => {
                for (kind, r) in &rs {
                    t.check(format!("{name} {kind}"), check_resolution(r));
                }
            }
        }
        t.check(format!("{name} mu(-1) sequence"), (|| {
            let d = group(name)?;
            let inv = fundamental_invariants(&d)?;
            let torsion = FgAbGroup::from_invariants(0, inv.pi1.torsion());
            let torus_rank = d.rank() - d.semisimple_rank();
            Ok(torsion.is_isomorphic(&inv.mu_minus_one)
                && inv.cochar_torus_quotient.is_isomorphic(&FgAbGroup::free(torus_rank))
                && inv.pi1.free_rank() == torus_rank
                && is_exact(&inv.mu_sequence)?.is_exact())
        })());
    }
    match ses_instances(seed, RANDOM_SES) {
        Err(e) => t.check("generating sequences", Err(e)),
        Ok(list) => {
            for (label, s) in &list {
                for (k, g) in s.groups().iter().enumerate() {
                    t.check(format!("{label}, group {}", k + 1), t_resolution_from_torus(g).and_then(|r| check_resolution(&r)));
                }
            }
        }
    }
    finish(5, "fundamental diagram", t, start, None)
}

fn sign_z2() -> Result<GammaModule> {
    GammaModule::sign(FiniteGroup::cyclic(2))
}

/// Γ-cohomology against the periodic-resolution oracle, long exact sequences, and
/// resolution independence of the abelian cohomology profile.
pub fn gamma_suite() -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let triv = || GammaModule::trivial(FiniteGroup::cyclic(2), FgAbGroup::free(1));
    let known: [(&str, Result<GammaModule>, i64, &str); 3] = [
        ("H^1(Z/2, Z_sign)", sign_z2(), 1, "Z/2"),
        ("H^2(Z/2, Z)", Ok(triv()), 2, "Z/2"),
        ("H^1(Z/2, Z)", Ok(triv()), 1, "0"),
    ];
    for (label, m, n, expected) in known {
        t.check(label, m.and_then(|m| {
            let h = group_cohomology(&m, n)?;
            Ok(h.to_string() == expected && oracle::cyclic_cohomology(&m, n)?.is_isomorphic(&h))
        }));
    }
    match gamma_module_sequences() {
        Err(e) => t.check("generating module sequences", Err(e)),
        Ok(list) => {
            for (label, i, p) in &list {
                t.check(format!("long sequence of {label}"), (|| {
                    let les = cohomology_long_sequence(i, p)?;
                    Ok(les.len() == 9 && is_exact(&les)?.is_exact())
                })());
                if i.source.group().order() <= 3 {
                    for m in [&i.source, &i.target, &p.target] {
                        t.check(format!("cohomology of a module in {label}"), (|| {
                            for n in 0..=2 {
                                if !group_cohomology(m, n)?.is_isomorphic(&oracle::cyclic_cohomology(m, n)?) {
                                    return Ok(false);
                                }
                            }
                            Ok(true)
                        })());
                    }
                }
            }
        }
    }
    match gamma_ses_instances() {
        Err(e) => t.check("generating Gamma sequences", Err(e)),
        Ok(list) => {
            for (label, s) in &list {
                t.check(format!("ab sequence of {label}"), ab_long_sequence(s).map(|les| les.len() == 9));
            }
        }
    }
    let data: Vec<(&str, Result<RootDatum>)> = vec![
        ("twisted GL(2)", Ok(twisted_gl2())),
        ("(G_m x SL(2)^3)/mu_2 with S_3", Ok(permuted_sl2_cube_quotient())),
        ("PGL(2)", group("PGL(2)")),
        ("GL(3)", group("GL(3)")),
        ("SO(5)", group("SO(5)")),
    ];
    for (label, d) in data {
        t.check(format!("profile independence for {label}"), d.and_then(|d| {
            let r1 = t_resolution_from_torus(&d)?;
            let r2 = fiber_product_resolution(&r1, &r1, &GroupHomData::identity(&d))?.resolution;
            let p1 = ab_cohomology_profile(&d, &r1)?;
            let mut ok = p1.agrees_with(&ab_cohomology_profile(&d, &r2)?);
            if d.gamma().is_none() {
                let r3 = t_resolution_generic(&d, &EmbeddingChoice::Padded(2))?;
                ok &= p1.agrees_with(&ab_cohomology_profile(&d, &r3)?);
            }
            Ok(ok)
        }));
    }
    finish(6, "Gamma-cohomology", t, start, None)
}

/// All invariant-factor lists of finite abelian groups of order at most `max`.
pub fn finite_abelian_groups(max: u64) -> Vec<Vec<u64>> {
    fn rec(prefix: &mut Vec<u64>, order: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = last.max(2);
        while order * d <= max {
            if d % last == 0 {
                prefix.push(d);
                rec(prefix, order * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 1, max, &mut out);
    out
}

fn random_finite_hom<R: Rng>(rng: &mut R, a: &[u64], b: &[u64]) -> Vec<Vec<i64>> {
    b.iter()
        .map(|&bj| {
            a.iter()
                .map(|&ai| {
                    let step = bj / num_integer::gcd(ai, bj);
                    rng.gen_range(0..bj as i64) * step as i64
                })
                .collect()
        })
        .collect()
}

fn cyclic_sum(d: &[u64]) -> FgAbGroup {
    let torsion: Vec<Integer> = d.iter().map(|&x| Integer::from(x)).collect();
    FgAbGroup::from_invariants(0, &torsion)
}

/// SNF against gcd elimination, and kernels and cokernels against enumeration.
pub fn integer_suite(seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut r = rng(seed);
    for i in 0..SNF_SAMPLES {
        let (rows, cols) = (r.gen_range(1..=5), r.gen_range(1..=5));
        let a = random_matrix(&mut r, rows, cols, 10);
        let s = smith_normal_form(&a);
        let ours: Vec<Integer> = s.diagonal().into_iter().filter(|x| *x != Integer::from(0)).collect();
        t.check(format!("matrix {i}"), Ok(ours == oracle::naive_invariant_factors(&a)));
    }
    let groups = finite_abelian_groups(MAX_BRUTE_ORDER);
    for a in &groups {
        for _ in 0..2 {
            let b = &groups[r.gen_range(0..groups.len())];
            let m = random_finite_hom(&mut r, a, b);
            t.check(format!("hom {a:?} -> {b:?}"), (|| {
                let rows: Vec<Vec<i64>> = if b.is_empty() { vec![] } else { m.clone() };
                let mat = if rows.is_empty() { IntMatrix::zeros(0, a.len()) } else { IntMatrix::from_rows_i64(&rows) };
                let f = AbHom::new(cyclic_sum(a), cyclic_sum(b), mat)?;
                let (bk, bc) = oracle::brute_kernel_cokernel(a, b, &m, MAX_BRUTE_ORDER);
                let k = oracle::order_profile(&f.kernel().group, MAX_BRUTE_ORDER);
                let c = oracle::order_profile(&f.cokernel().0, MAX_BRUTE_ORDER);
                Ok(k == Some(bk) && c == Some(bc))
            })());
        }
    }
    finish(7, "integer algebra oracles", t, start, None)
}

/// `π₁(λ∘κ) = π₁(λ)∘π₁(κ)` on random composable pairs, and `π₁(id) = id`.
pub fn functoriality_suite(seed: u64) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new();
    match composable_pairs(seed, HOM_PAIRS) {
        Err(e) => t.check("generating pairs", Err(e)),
        Ok(pairs) => {
            for (label, kappa, lambda) in &pairs {
                t.check(label, (|| {
                    let composite = pi1_functor(&lambda.compose(kappa)?)?;
                    let parts = pi1_functor(lambda)?.compose(&pi1_functor(kappa)?)?;
                    Ok(composite.equals(&parts))
                })());
            }
        }
    }
    for name in RESOLUTION_CATALOG.iter().take(12) {
        t.check(format!("identity of {name}"), group(name).and_then(|d| {
            let f = pi1_functor(&GroupHomData::identity(&d))?;
            Ok(f.equals(&AbHom::identity(reference_pi1(&d))))
        }));
    }
    finish(8, "functoriality", t, start, None)
}

pub fn run_criterion(k: u8, seed: u64) -> Option<SuiteResult> {
    Some(match k {
        1 => catalog_suite(),
        2 => exactness_suite(seed),
        3 => independence_suite(),
        4 => duality_suite(seed),
        5 => fundamental_suite(seed),
        6 => gamma_suite(),
        7 => integer_suite(seed),
        8 => functoriality_suite(seed),
        _ => return None,
    })
}

pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    (1..=8).filter_map(|k| run_criterion(k, seed)).collect()
}
