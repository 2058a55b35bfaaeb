//! Smith normal form with a fixed pivoting rule.
//!
//! The pivot at every stage is the nonzero entry of smallest absolute value in
//! the active block; ties go to the leftmost column, then the topmost row. With
//! that rule the output `(U, D, V)` is a deterministic function of the input.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, Integer};

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Smith {
    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Integer> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero invariant factors `d_1 | d_2 | ... | d_rank`.
    pub fn invariant_factors(&self) -> Vec<Integer> {
        self.diagonal().into_iter().take(self.rank).collect()
    }
}

/// Which transforms to accumulate.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Tracking {
    pub u: bool,
    pub v: bool,
    pub v_inv: bool,
}

pub(crate) struct SmithParts {
    pub d: IntMatrix,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
    pub rank: usize,
}

/// Computes `U, D, V` with `U`, `V` unimodular, `U·A·V = D` diagonal and
/// `d_1 | d_2 | ...` with nonnegative entries.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let parts = smith_with(
        a,
        Tracking {
            u: true,
            v: true,
            v_inv: false,
        },
    );
    Smith {
        u: parts.u.unwrap(),
        d: parts.d,
        v: parts.v.unwrap(),
        rank: parts.rank,
    }
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(Integer, usize, usize)> = None;
    // column-major scan gives the leftmost-topmost tiebreak for free
    for j in t..a.cols() {
        for i in t..a.rows() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            let better = match &best {
                None => true,
                Some((b, _, _)) => ax < *b,
            };
            if better {
                best = Some((ax, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub(crate) fn smith_with(a: &IntMatrix, track: Tracking) -> SmithParts {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = track.u.then(|| IntMatrix::identity(m));
    let mut v = track.v.then(|| IntMatrix::identity(n));
    let mut v_inv = track.v_inv.then(|| IntMatrix::identity(n));

    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            if let Some(u) = u.as_mut() {
                u.swap_rows($a, $b);
            }
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            if let Some(v) = v.as_mut() {
                v.swap_cols($a, $b);
            }
            if let Some(w) = v_inv.as_mut() {
                w.swap_rows($a, $b);
            }
        }};
    }
    // row[dst] += f * row[src]
    macro_rules! row_add {
        ($dst:expr, $src:expr, $f:expr) => {{
            let f: &Integer = $f;
            d.add_row_multiple($dst, $src, f);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple($dst, $src, f);
            }
        }};
    }
    // col[dst] += f * col[src]; inverse gets row[src] -= f * row[dst]
    macro_rules! col_add {
        ($dst:expr, $src:expr, $f:expr) => {{
            let f: &Integer = $f;
            d.add_col_multiple($dst, $src, f);
            if let Some(v) = v.as_mut() {
                v.add_col_multiple($dst, $src, f);
            }
            if let Some(w) = v_inv.as_mut() {
                w.add_row_multiple($src, $dst, &(-f));
            }
        }};
    }

    let mut t = 0;
    while t < m && t < n {
        let Some((pi, pj)) = find_pivot(&d, t) else {
            break;
        };
        row_swap!(t, pi);
        col_swap!(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                row_add!(i, t, &(-q));
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                col_add!(j, t, &(-q));
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = find_pivot(&d, t).expect("active block is nonzero");
                row_swap!(t, pi);
                col_swap!(t, pj);
                continue;
            }
            // row and column t are clear; enforce divisibility of the rest
            let p = d[(t, t)].clone();
            let mut offender = None;
            'scan: for j in t + 1..n {
                for i in t + 1..m {
                    if !d[(i, j)].is_multiple_of(&p) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    row_add!(t, i, &Integer::from(1));
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }
    SmithParts {
        d,
        u,
        v,
        v_inv,
        rank: t,
    }
}

/// Solves `A x = b` over the integers, reusing one Smith decomposition of `A`.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    u: IntMatrix,
    v: IntMatrix,
    diag: Vec<Integer>,
    rank: usize,
    cols: usize,
}

impl LinearSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let s = smith_normal_form(a);
        LinearSolver {
            diag: s.diagonal(),
            rank: s.rank,
            cols: a.cols(),
            u: s.u,
            v: s.v,
        }
    }

    /// Some integer solution of `A x = b`, or `None` if there is none.
    pub fn solve(&self, b: &[Integer]) -> Option<Vec<Integer>> {
        let ub = self.u.mul_vec(b);
        let mut y = vec![Integer::zero(); self.cols];
        for (i, c) in ub.iter().enumerate() {
            if i < self.rank {
                let (q, r) = c.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &IntMatrix) -> Option<IntMatrix> {
        let cols = (0..b.cols()).map(|j| self.solve(&b.col(j))).collect::<Option<Vec<_>>>()?;
        Some(IntMatrix::from_cols(&cols, self.cols))
    }
}

/// Some integer solution of `A X = B`, or `None`.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    LinearSolver::new(a).solve_matrix(b)
}
