//! Row Hermite normal form, sublattice membership and integer kernels.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, Integer};

/// Row-style Hermite normal form `H = U·M`.
///
/// Nonzero rows come first, pivot columns strictly increase, pivots are
/// positive, and entries above a pivot lie in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct RowHermite {
    pub h: IntMatrix,
    pub u: Option<IntMatrix>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn row_hermite(m: &IntMatrix, with_transform: bool) -> RowHermite {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = with_transform.then(|| IntMatrix::identity(rows));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero entry at or below row r in column c
            let mut best: Option<(Integer, usize)> = None;
            for i in r..rows {
                let x = &h[(i, c)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(b, _)| ax < *b) {
                    best = Some((ax, i));
                }
            }
            let Some((_, i)) = best else {
                break;
            };
            h.swap_rows(r, i);
            if let Some(u) = u.as_mut() {
                u.swap_rows(r, i);
            }
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, c)] / &h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, r, &q);
                }
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            if let Some(u) = u.as_mut() {
                u.negate_row(r);
            }
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            if h[(i, c)].is_zero() {
                continue;
            }
            let q = -h[(i, c)].div_floor(&p);
            h.add_row_multiple(i, r, &q);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple(i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowHermite {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// A sublattice of `Z^n` held by its Hermite basis (rows).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowLattice {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl RowLattice {
    /// Lattice spanned by the rows of `generators`.
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let hnf = row_hermite(generators, false);
        let idx: Vec<usize> = (0..hnf.rank).collect();
        RowLattice {
            ambient: generators.cols(),
            basis: hnf.h.select_rows(&idx),
            pivots: hnf.pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        RowLattice {
            ambient,
            basis: IntMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        RowLattice {
            ambient,
            basis: IntMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Hermite basis, one row per basis vector.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Integer]) -> Option<Vec<Integer>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (k, &c) in self.pivots.iter().enumerate() {
            let p = &self.basis[(k, c)];
            let (q, r) = w[c].div_rem(p);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for j in c..self.ambient {
                    let b = &self.basis[(k, j)];
                    if !b.is_zero() {
                        w[j] -= &q * b;
                    }
                }
            }
            coords.push(q);
        }
        w.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[Integer]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &RowLattice) -> bool {
        (0..other.basis.rows()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Canonical representative of `v` modulo the lattice: pivot coordinates
    /// are reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[Integer]) -> Vec<Integer> {
        let mut w = v.to_vec();
        for (k, &c) in self.pivots.iter().enumerate() {
            let p = &self.basis[(k, c)];
            let q = w[c].div_floor(p);
            if !q.is_zero() {
                for j in c..self.ambient {
                    let b = &self.basis[(k, j)];
                    if !b.is_zero() {
                        w[j] -= &q * b;
                    }
                }
            }
        }
        w
    }

    /// `(L ⊗ Q) ∩ Z^n`.
    pub fn saturation(&self) -> RowLattice {
        let annihilator = kernel_basis(&self.basis);
        RowLattice::from_generators(&kernel_basis(&annihilator))
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// Sum of two sublattices of the same ambient space.
    pub fn sum(&self, other: &RowLattice) -> RowLattice {
        RowLattice::from_generators(&self.basis.vstack(&other.basis))
    }
}

/// Basis of `{x : A x = 0}` as the rows of the returned matrix, in Hermite form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    if a.rows() == 0 {
        return IntMatrix::identity(n);
    }
    let hnf = row_hermite(&a.transpose(), true);
    let u = hnf.u.unwrap();
    let idx: Vec<usize> = (hnf.rank..n).collect();
    let raw = u.select_rows(&idx);
    if raw.rows() == 0 {
        return raw;
    }
    let lat = RowLattice::from_generators(&raw);
    lat.basis
}

/// Rank of an integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    row_hermite(a, false).rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::int;

    fn v(xs: &[i64]) -> Vec<Integer> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn hermite_transform_is_consistent() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 4, 6], vec![1, 3, 5], vec![3, 7, 11]]);
        let h = row_hermite(&m, true);
        assert_eq!(&h.u.clone().unwrap() * &m, h.h);
        assert!(h.u.unwrap().is_unimodular());
        assert_eq!(h.rank, 2);
    }

    #[test]
    fn membership_by_reduction() {
        let lat = RowLattice::from_generators(&IntMatrix::from_rows_i64(&[vec![2, 0], vec![1, 3]]));
        assert!(lat.contains(&v(&[3, 3])));
        assert!(lat.contains(&v(&[0, 6])));
        assert!(!lat.contains(&v(&[0, 3])));
        assert!(!lat.contains(&v(&[1, 0])));
        let c = lat.coordinates(&v(&[5, 9])).unwrap();
        let back = lat.basis().transpose().mul_vec(&c);
        assert_eq!(back, v(&[5, 9]));
    }

    #[test]
    fn kernel_of_sum_map() {
        let k = kernel_basis(&IntMatrix::from_rows_i64(&[vec![1, 1]]));
        assert_eq!(k.rows(), 1);
        let row = k.row_vec(0);
        assert!(row == v(&[1, -1]) || row == v(&[-1, 1]));
    }

    #[test]
    fn kernel_of_injective_is_empty() {
        let k = kernel_basis(&IntMatrix::from_rows_i64(&[vec![2], vec![3]]));
        assert_eq!(k.rows(), 0);
    }

    #[test]
    fn reduce_is_canonical() {
        let lat = RowLattice::from_generators(&IntMatrix::from_rows_i64(&[vec![4, 2]]));
        let a = lat.reduce(&v(&[9, 5]));
        let b = lat.reduce(&v(&[1, 1]));
        assert_eq!(a, b);
    }
}
