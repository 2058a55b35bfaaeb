//! Slow reference computations that share no code with the lattice algorithms.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gammamod::GammaModule;
use crate::lattice::{homology, AbHom, FgAbGroup, IntMatrix, Integer};

fn to_rows(a: &IntMatrix) -> Vec<Vec<Integer>> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

/// Nonzero invariant factors by repeated gcd elimination on rows and columns.
pub fn naive_invariant_factors(a: &IntMatrix) -> Vec<Integer> {
    let mut m = to_rows(a);
    let (rows, cols) = (a.rows(), a.cols());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let p = m[t][t].clone();
        let mut dirty = false;
        for i in t + 1..rows {
            let q = m[i][t].div_floor(&p);
            for j in t..cols {
                let v = &m[t][j] * &q;
                m[i][j] -= v;
            }
            dirty |= !m[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = m[t][j].div_floor(&p);
            for row in m.iter_mut().skip(t) {
                let v = &row[t] * &q;
                row[j] -= v;
            }
            dirty |= !m[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
        if let Some(i) = bad {
            for j in t..cols {
                let v = m[i][j].clone();
                m[t][j] += v;
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

fn bareiss_det(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Integer::zero();
            };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors `d_k = D_k / D_{k-1}`, `D_k` the gcd of the `k × k` minors.
/// Exponential in the size; meant for matrices with at most eight rows.
pub fn determinantal_invariant_factors(a: &IntMatrix) -> Vec<Integer> {
    let rows = to_rows(a);
    let mut out = Vec::new();
    let mut prev = Integer::one();
    for k in 1..=a.rows().min(a.cols()) {
        let mut g = Integer::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let minor = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                g = g.gcd(&bareiss_det(minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// `(free rank, torsion)` of `Z^n / rowspan(a)` from determinantal divisors.
pub fn quotient_by_minors(n: usize, a: &IntMatrix) -> (usize, Vec<Integer>) {
    let f = determinantal_invariant_factors(a);
    let torsion = f.iter().filter(|d| !d.is_one()).cloned().collect();
    (n - f.len(), torsion)
}

/// `m ↦ #{x : m x = 0}` for `m = 1..=max`, a complete invariant of a finite abelian group.
pub type OrderProfile = Vec<u64>;

fn elements(moduli: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &d in moduli {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..d).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn profile_of(set: &[Vec<u64>], moduli: &[u64], max: u64) -> OrderProfile {
    (1..=max)
        .map(|m| set.iter().filter(|x| x.iter().zip(moduli).all(|(a, d)| (a * m) % d == 0)).count() as u64)
        .collect()
}

/// Order profile of `⊕ Z/d_i` from the formula `∏ gcd(m, d_i)`.
pub fn order_profile(g: &FgAbGroup, max: u64) -> Option<OrderProfile> {
    if !g.is_finite() {
        return None;
    }
    let d: Vec<u64> = g.torsion().iter().map(|x| u64::try_from(x).ok()).collect::<Option<_>>()?;
    Some((1..=max).map(|m| d.iter().map(|&di| m.gcd(&di)).product()).collect())
}

/// Brute-force order profiles of the kernel and cokernel of `f: ⊕Z/a_i -> ⊕Z/b_j`
/// given by an integer matrix (columns are images of generators).
pub fn brute_kernel_cokernel(a: &[u64], b: &[u64], f: &[Vec<i64>], max: u64) -> (OrderProfile, OrderProfile) {
    let apply = |x: &[u64]| -> Vec<u64> {
        b.iter()
            .enumerate()
            .map(|(j, &bj)| {
                let s: i64 = x.iter().enumerate().map(|(i, &xi)| f[j][i] * xi as i64).sum();
                s.rem_euclid(bj as i64) as u64
            })
            .collect()
    };
    let src = elements(a);
    let kernel: Vec<Vec<u64>> = src.iter().filter(|x| apply(x).iter().all(|v| *v == 0)).cloned().collect();
    let mut image: Vec<Vec<u64>> = src.iter().map(|x| apply(x)).collect();
    image.sort();
    image.dedup();
    let tgt = elements(b);
    let cok: OrderProfile = (1..=max)
        .map(|m| {
            let hits = tgt
                .iter()
                .filter(|y| {
                    let my: Vec<u64> = y.iter().zip(b).map(|(v, d)| (v * m) % d).collect();
                    image.binary_search(&my).is_ok()
                })
                .count();
            (hits / image.len()) as u64
        })
        .collect();
    (profile_of(&kernel, a, max), cok)
}

/// `H^n(Z/k, M)` from the periodic resolution: `ker(s-1)` in degree 0, then
/// `ker N / im(s-1)` in odd and `ker(s-1) / im N` in positive even degrees.
pub fn cyclic_cohomology(m: &GammaModule, degree: i64) -> Result<FgAbGroup> {
    let g = m.group();
    let k = g.order();
    let gen = (0..k)
        .find(|&x| {
            let mut y = x;
            let mut ord = 1;
            while y != g.identity() {
                y = g.mul(y, x);
                ord += 1;
            }
            ord == k
        })
        .ok_or_else(|| Error::InvalidGroup("group is not cyclic".into()))?;
    let n = m.carrier().generators();
    let s = m.action(gen).clone();
    let mut norm = IntMatrix::zeros(n, n);
    let mut p = IntMatrix::identity(n);
    for _ in 0..k {
        norm = norm.add(&p);
        p = &s * &p;
    }
    let c = m.carrier().clone();
    let hom = |a: IntMatrix| AbHom::new(c.clone(), c.clone(), a);
    let s1 = hom(s.sub(&IntMatrix::identity(n)))?;
    let nm = hom(norm)?;
    let zero_in = AbHom::zero(FgAbGroup::trivial(), c.clone());
    let h = match degree {
        0 => homology(&zero_in, &s1)?,
        d if d > 0 && d % 2 == 1 => homology(&s1, &nm)?,
        d if d > 0 => homology(&nm, &s1)?,
        d => return Err(Error::UnsupportedDegree(d)),
    };
    Ok((*h.group).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammamod::FiniteGroup;
    use crate::lattice::int;

    #[test]
    fn small_cases() {
        let a = IntMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(naive_invariant_factors(&a), vec![int(2), int(6), int(12)]);
        assert_eq!(determinantal_invariant_factors(&a), vec![int(2), int(6), int(12)]);
        assert_eq!(quotient_by_minors(2, &IntMatrix::from_rows_i64(&[vec![1, -1]])), (1, vec![]));
    }

    #[test]
    fn brute_force_on_multiplication_by_two() {
        let (k, c) = brute_kernel_cokernel(&[4], &[4], &[vec![2]], 4);
        assert_eq!(k, vec![1, 2, 1, 2]);
        assert_eq!(c, vec![1, 2, 1, 2]);
        assert_eq!(order_profile(&FgAbGroup::cyclic(2), 4).unwrap(), vec![1, 2, 1, 2]);
    }

    #[test]
    fn sign_module() {
        let s = GammaModule::sign(FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(cyclic_cohomology(&s, 1).unwrap().to_string(), "Z/2");
        assert_eq!(cyclic_cohomology(&s, 2).unwrap().to_string(), "0");
    }
}
