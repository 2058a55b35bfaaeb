use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{int, kernel_basis, FgAbGroup, IntMatrix, LinearSolver};

use super::bounded::block_swap;
use super::two_term::{ComplexMorphism, TwoTermComplex};

/// Compares `C(f)^∨` with `C(f^∨)[-1]` term by term, after exchanging the two
/// summands of the middle term of the latter.
pub fn cone_shift_identity(f: &ComplexMorphism) -> Result<bool> {
    let lhs = f.cone().dual()?;
    let rhs = f.dual()?.cone().shift(-1);
    let q0 = f.target().term0().carrier().generators();
    let p1 = f.source().term1().carrier().generators();
    let rhs = rhs.permute_term(1, &block_swap(q0, p1))?;
    Ok(lhs.structurally_equal(&rhs))
}

/// Largest term rank produced by the random generators.
pub const MAX_RANK: usize = 6;

fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            m.negate_row(0);
        }
        return m;
    }
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = int(rng.gen_range(-2..=2));
        m.add_row_multiple(i, j, &c);
        if rng.gen_bool(0.2) {
            m.swap_rows(i, j);
        }
    }
    m
}

fn inverse_unimodular(m: &IntMatrix) -> IntMatrix {
    let s = LinearSolver::new(m);
    let n = m.rows();
    let cols: Vec<_> = (0..n)
        .map(|j| {
            let mut e = vec![int(0); n];
            e[j] = int(1);
            s.solve(&e).expect("unimodular matrix is invertible")
        })
        .collect();
    IntMatrix::from_cols(&cols, n)
}

/// A random complex `Z^a -> Z^b` of lattices with `a, b <= max_rank`.
pub fn random_lattice_complex<R: Rng>(rng: &mut R, base_degree: i64, max_rank: usize) -> TwoTermComplex {
    let a = rng.gen_range(0..=max_rank);
    let b = rng.gen_range(0..=max_rank);
    let mut m = IntMatrix::zeros(b, a);
    // low rank differentials appear often so that both cohomology groups are interesting
    let r = rng.gen_range(0..=a.min(b));
    let left = IntMatrix::from_rows(
        (0..b).map(|_| (0..r).map(|_| int(rng.gen_range(-3..=3))).collect()).collect(),
        r,
    );
    let right = IntMatrix::from_rows(
        (0..r).map(|_| (0..a).map(|_| int(rng.gen_range(-3..=3))).collect()).collect(),
        a,
    );
    if r > 0 {
        m = &left * &right;
    }
    TwoTermComplex::lattice(base_degree, m).expect("lattice complex")
}

/// Basis change `(U0, U1): C -> (U1 δ U0^{-1})`.
pub fn basis_change<R: Rng>(rng: &mut R, c: &TwoTermComplex) -> Result<ComplexMorphism> {
    let a = c.term0().carrier().generators();
    let b = c.term1().carrier().generators();
    let u0 = random_unimodular(rng, a);
    let u1 = random_unimodular(rng, b);
    let d = &(&u1 * c.differential().matrix()) * &inverse_unimodular(&u0);
    let t = TwoTermComplex::lattice(c.base_degree(), d)?;
    ComplexMorphism::from_matrices(c, &t, u0, u1)
}

/// Inclusion `C -> C ⊕ (Z =id= Z)` or the projection `C ⊕ (Z = Z) -> C`.
pub fn stabilization(c: &TwoTermComplex, include: bool) -> Result<ComplexMorphism> {
    let a = c.term0().carrier().generators();
    let b = c.term1().carrier().generators();
    let d = IntMatrix::block_diag(&[c.differential().matrix(), &IntMatrix::identity(1)]);
    let big = TwoTermComplex::lattice(c.base_degree(), d)?;
    let inc = |n: usize| IntMatrix::identity(n).vstack(&IntMatrix::zeros(1, n));
    if include {
        ComplexMorphism::from_matrices(c, &big, inc(a), inc(b))
    } else {
        ComplexMorphism::from_matrices(&big, c, inc(a).transpose(), inc(b).transpose())
    }
}

/// When `cok δ` is free: `C -> (ker δ -0-> cok δ)`, a retraction onto the
/// kernel in degree `d` and the projection onto the cokernel in degree `d+1`.
pub fn to_cohomology(c: &TwoTermComplex) -> Result<Option<ComplexMorphism>> {
    let d = c.differential();
    let (cok, proj) = d.cokernel();
    if !cok.is_free() {
        return Ok(None);
    }
    let k = kernel_basis(d.matrix());
    let kdim = k.rows();
    // retraction r with r·k^T = I exists because the kernel is saturated
    let solver = LinearSolver::new(&k);
    let mut rows = Vec::with_capacity(kdim);
    for j in 0..kdim {
        let mut e = vec![int(0); kdim];
        e[j] = int(1);
        rows.push(
            solver
                .solve(&e)
                .ok_or_else(|| Error::Internal("kernel is not saturated".into()))?,
        );
    }
    let a = c.term0().carrier().generators();
    let r = IntMatrix::from_cols(&rows, a).transpose();
    let to_free = cok.to_canonical_matrix() * proj.matrix();
    let t = TwoTermComplex::plain(
        c.base_degree(),
        FgAbGroup::free(kdim),
        FgAbGroup::free(cok.free_rank()),
        IntMatrix::zeros(cok.free_rank(), kdim),
    )?;
    Ok(Some(ComplexMorphism::from_matrices(c, &t, r, to_free)?))
}

/// When `δ` is surjective: `(ker δ -> 0) -> C`.
pub fn kernel_inclusion(c: &TwoTermComplex) -> Result<Option<ComplexMorphism>> {
    let d = c.differential();
    if !d.is_surjective() {
        return Ok(None);
    }
    let k = kernel_basis(d.matrix());
    let b = c.term1().carrier().generators();
    let s = TwoTermComplex::lattice(c.base_degree(), IntMatrix::zeros(0, k.rows()))?;
    Ok(Some(ComplexMorphism::from_matrices(
        &s,
        c,
        k.transpose(),
        IntMatrix::zeros(b, 0),
    )?))
}

fn rank_ok(c: &TwoTermComplex) -> bool {
    c.term0().carrier().generators() <= MAX_RANK && c.term1().carrier().generators() <= MAX_RANK
}

/// A quasi-isomorphism of lattice complexes with ranks at most [`MAX_RANK`],
/// composed from one to four elementary quasi-isomorphisms.
pub fn random_quasi_isomorphism<R: Rng>(rng: &mut R) -> Result<ComplexMorphism> {
    let base = rng.gen_range(-2..=1);
    let start = random_lattice_complex(rng, base, 4);
    let mut f = ComplexMorphism::identity(&start);
    let steps = rng.gen_range(1..=4);
    for _ in 0..steps {
        let cur = f.target().clone();
        let src = f.source().clone();
        match rng.gen_range(0..6) {
            0 => f = ComplexMorphism::identity(&cur).compose(&f)?,
            1 => f = basis_change(rng, &cur)?.compose(&f)?,
            2 => {
                let s = stabilization(&cur, true)?;
                if rank_ok(s.target()) {
                    f = s.compose(&f)?;
                }
            }
            3 => {
                let s = stabilization(&src, false)?;
                if rank_ok(s.source()) {
                    f = f.compose(&s)?;
                }
            }
            4 => {
                if let Some(s) = to_cohomology(&cur)? {
                    f = s.compose(&f)?;
                }
            }
            _ => {
                if let Some(k) = kernel_inclusion(&src)? {
                    f = f.compose(&k)?;
                }
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::is_quasi_isomorphism;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cone_shift_identity_for_multiplication_by_three() {
        let c = TwoTermComplex::lattice(0, IntMatrix::from_rows_i64(&[vec![1]])).unwrap();
        let f = ComplexMorphism::from_matrices(
            &c,
            &c,
            IntMatrix::from_rows_i64(&[vec![3]]),
            IntMatrix::from_rows_i64(&[vec![3]]),
        )
        .unwrap();
        assert!(cone_shift_identity(&f).unwrap());
    }

    #[test]
    fn random_quasi_isomorphisms_dualize() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let f = random_quasi_isomorphism(&mut rng).unwrap();
            assert!(is_quasi_isomorphism(&f).unwrap());
            assert!(is_quasi_isomorphism(&f.dual().unwrap()).unwrap());
            assert!(cone_shift_identity(&f).unwrap());
        }
    }

    #[test]
    fn elementary_generators() {
        let c = TwoTermComplex::lattice(0, IntMatrix::from_rows_i64(&[vec![1, 1, 0]])).unwrap();
        let k = kernel_inclusion(&c).unwrap().unwrap();
        assert!(is_quasi_isomorphism(&k).unwrap());
        let h = to_cohomology(&c).unwrap().unwrap();
        assert!(is_quasi_isomorphism(&h).unwrap());
        let s = stabilization(&c, false).unwrap();
        assert!(is_quasi_isomorphism(&s).unwrap());
        let d = TwoTermComplex::lattice(0, IntMatrix::from_rows_i64(&[vec![2]])).unwrap();
        assert!(to_cohomology(&d).unwrap().is_none());
    }

    #[test]
    fn composites_of_quasi_isomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let f = random_quasi_isomorphism(&mut rng).unwrap();
            let g = basis_change(&mut rng, f.target()).unwrap();
            assert!(is_quasi_isomorphism(&g.compose(&f).unwrap()).unwrap());
        }
    }
}
