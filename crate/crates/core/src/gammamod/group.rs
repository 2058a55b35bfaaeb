use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Largest group order accepted.
pub const MAX_ORDER: usize = 48;

/// A finite group given by its multiplication table; `table[a][b] = a·b`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    /// Optional faithful permutation representation, one permutation per element.
    perms: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {n} exceeds the limit {MAX_ORDER}"
            )));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range in row {a}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
            perms: None,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with element `k` acting on `0..n` by rotation.
    pub fn cyclic(n: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&n), "cyclic order out of range");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let perms = (0..n).map(|k| (0..n).map(|i| (i + k) % n).collect()).collect();
        let mut g = Self::new(table).expect("cyclic table is a group");
        g.perms = Some(perms);
        g
    }

    /// Closure of permutation generators of `0..degree`, identity first, then in
    /// breadth-first order.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for p in gens {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut index = BTreeMap::new();
        let mut elems = vec![id.clone()];
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                // (g·h)(x) = g(h(x))
                let prod: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() == MAX_ORDER {
                        return Err(Error::InvalidGroup(format!(
                            "generated group exceeds order {MAX_ORDER}"
                        )));
                    }
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = elems[b].iter().map(|&x| elems[a][x]).collect();
                table[a][b] = index[&prod];
            }
        }
        let mut g = Self::new(table)?;
        g.perms = Some(elems);
        Ok(g)
    }

    /// Symmetric group on `n <= 4` letters.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=4).contains(&n), "symmetric group degree out of range");
        if n == 1 {
            return Self::trivial();
        }
        let swap: Vec<usize> = (0..n).map(|i| match i {
            0 => 1,
            1 => 0,
            _ => i,
        }).collect();
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(n, &[swap, cycle]).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// The permutation representation, when the group was built from one.
    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.perms.as_deref()
    }

    /// Elements other than the identity, in index order.
    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&g| g != self.identity)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        assert_eq!(FiniteGroup::cyclic(3).order(), 3);
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        // S3 is not abelian
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::new(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        let big = (0..49).map(|a| (0..49).map(|b| (a + b) % 49).collect()).collect();
        assert!(FiniteGroup::new(big).is_err());
    }
}
