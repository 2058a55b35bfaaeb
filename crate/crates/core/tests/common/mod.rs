//! Test-local reference computations over `i128`. They share no code with the
//! library algorithms and are only meant for small inputs.

#![allow(dead_code)]

use algpi::lattice::IntMatrix;

pub type Mat = Vec<Vec<i128>>;

pub fn to_mat(a: &IntMatrix) -> Mat {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|x| i128::try_from(x).expect("small entries")).collect())
        .collect()
}

pub fn transpose(a: &Mat, cols: usize) -> Mat {
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Nonzero invariant factors by Euclidean elimination on the smallest pivot.
pub fn invariant_factors(a: &Mat, cols: usize) -> Vec<i128> {
    let mut m = a.clone();
    let rows = m.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for r in m.iter_mut() {
            r.swap(t, pj);
        }
        let p = m[t][t];
        let mut again = false;
        for i in t + 1..rows {
            let q = m[i][t].div_euclid(p);
            for j in t..cols {
                m[i][j] -= q * m[t][j];
            }
            again |= m[i][t] != 0;
        }
        for j in t + 1..cols {
            let q = m[t][j].div_euclid(p);
            for r in m.iter_mut().skip(t) {
                r[j] -= q * r[t];
            }
            again |= m[t][j] != 0;
        }
        if again {
            continue;
        }
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0)) {
            for j in t..cols {
                m[t][j] += m[i][j];
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out.sort();
    out
}

pub fn rank(a: &Mat, cols: usize) -> usize {
    invariant_factors(a, cols).len()
}

/// Canonical rendering of `Z^r x Z/d1 x ...`.
pub fn render(free: usize, torsion: &[i128]) -> String {
    let mut parts = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().filter(|d| **d > 1).map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" x ")
    }
}

/// `Z^n / rowspan(rows)`.
pub fn quotient(n: usize, rows: &Mat) -> String {
    let f = invariant_factors(rows, n);
    render(n - f.len(), &f)
}

/// Torsion part of `Z^n / rowspan(rows)`, rendered.
pub fn quotient_torsion(n: usize, rows: &Mat) -> String {
    render(0, &invariant_factors(rows, n))
}

/// Membership in a row lattice: adding `v` changes neither the rank nor the
/// product of the invariant factors.
pub fn in_lattice(rows: &Mat, v: &[i128]) -> bool {
    let n = v.len();
    let a = invariant_factors(rows, n);
    let mut ext = rows.clone();
    ext.push(v.to_vec());
    let b = invariant_factors(&ext, n);
    a.len() == b.len() && a.iter().product::<i128>() == b.iter().product::<i128>()
}

/// Cohomology of a two-term lattice complex `Z^n0 -> Z^n1`, with `d` given in
/// the column convention (`n1 × n0`): `(ker d, coker d)`.
pub fn two_term_cohomology(d: &Mat, n0: usize, n1: usize) -> (String, String) {
    let r = rank(d, n0);
    let dt = transpose(d, n0);
    (render(n0 - r, &[]), quotient(n1, &if n0 == 0 { Vec::new() } else { dt }))
}

/// A finite group by its multiplication table, acting on `Z^n` by matrices.
pub struct LatticeModule {
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub action: Vec<Mat>,
}

impl LatticeModule {
    fn order(&self) -> usize {
        self.table.len()
    }

    fn dim(&self) -> usize {
        self.action[0].len()
    }

    fn tuples(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..self.order()).map(move |g| {
                        let mut u = t.clone();
                        u.push(g);
                        u
                    })
                })
                .collect();
        }
        out
    }

    /// Inhomogeneous coboundary `C^k -> C^{k+1}` as a matrix in the column
    /// convention, cochains indexed by (tuple, coordinate).
    pub fn coboundary(&self, k: usize) -> Mat {
        let n = self.dim();
        let src = self.tuples(k);
        let dst = self.tuples(k + 1);
        let index = |t: &[usize]| t.iter().fold(0, |acc, g| acc * self.order() + g);
        let mut d = vec![vec![0i128; src.len() * n]; dst.len() * n];
        for (row_t, t) in dst.iter().enumerate() {
            // g1 · f(g2, ..., g_{k+1})
            let first = index(&t[1..]);
            for a in 0..n {
                for b in 0..n {
                    d[row_t * n + a][first * n + b] += self.action[t[0]][a][b];
                }
            }
            for i in 0..k {
                let mut merged = t[..i].to_vec();
                merged.push(self.table[t[i]][t[i + 1]]);
                merged.extend_from_slice(&t[i + 2..]);
                let s = if (i + 1) % 2 == 0 { 1 } else { -1 };
                let c = index(&merged);
                for a in 0..n {
                    d[row_t * n + a][c * n + a] += s;
                }
            }
            let s = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
            let c = index(&t[..k]);
            for a in 0..n {
                d[row_t * n + a][c * n + a] += s;
            }
        }
        d
    }

    /// `H^k` from the explicit cochain complex.
    pub fn cohomology(&self, k: usize) -> String {
        let n = self.dim();
        let c = |j: usize| self.order().pow(j as u32) * n;
        let r_out = rank(&self.coboundary(k), c(k));
        let (r_in, torsion) = if k == 0 {
            (0, Vec::new())
        } else {
            let d = self.coboundary(k - 1);
            let f = invariant_factors(&transpose(&d, c(k - 1)), c(k));
            (f.len(), f)
        };
        render(c(k) - r_out - r_in, &torsion)
    }
}

/// Every finite abelian group of order at most `max`, as lists of cyclic orders
/// `d1 | d2 | ...`.
pub fn finite_abelian_groups(max: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: Vec<u64>, max: u64, out: &mut Vec<Vec<u64>>) {
        let order: u64 = prefix.iter().product();
        out.push(prefix.clone());
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = if prefix.is_empty() { 2 } else { last };
        while order * d <= max {
            if d % last == 0 {
                let mut p = prefix.clone();
                p.push(d);
                extend(p, max, out);
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(Vec::new(), max, &mut out);
    out
}

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

/// Orders of kernel and cokernel of `f: ⊕Z/a_i -> ⊕Z/b_j` by enumeration.
pub fn kernel_cokernel_orders(a: &[u64], b: &[u64], f: &[Vec<i64>]) -> (u64, u64) {
    let src = elements(a);
    let mut image: Vec<Vec<u64>> = src
        .iter()
        .map(|x| {
            b.iter()
                .enumerate()
                .map(|(j, &bj)| {
                    let s: i64 = x.iter().enumerate().map(|(i, &xi)| f[j][i] * xi as i64).sum();
                    s.rem_euclid(bj as i64) as u64
                })
                .collect()
        })
        .collect();
    image.sort();
    image.dedup();
    let total_b: u64 = b.iter().product();
    let kernel = src.len() as u64 / image.len() as u64;
    (kernel, total_b / image.len() as u64)
}
