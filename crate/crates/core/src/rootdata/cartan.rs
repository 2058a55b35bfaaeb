use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;

use super::datum::RootDatum;
use crate::error::{Error, Result};
use crate::lattice::{int, IntMatrix, Integer};

/// Dynkin types of irreducible reduced root systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
        };
        write!(f, "{c}")
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            "D" | "d" => Ok(CartanType::D),
            "E" | "e" => Ok(CartanType::E),
            "F" | "f" => Ok(CartanType::F),
            "G" | "g" => Ok(CartanType::G),
            other => Err(Error::UnknownGroup(format!("Cartan type {other}"))),
        }
    }
}

fn check_rank(t: CartanType, l: usize) -> Result<()> {
    let ok = match t {
        CartanType::A | CartanType::B | CartanType::C => l >= 1,
        CartanType::D => l >= 2,
        CartanType::E => (6..=8).contains(&l),
        CartanType::F => l == 4,
        CartanType::G => l == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnknownGroup(format!("type {t}{l}")))
    }
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] += 1;
    v[j] -= 1;
    v
}

/// Simple roots in a Euclidean realization, scaled to integers (Bourbaki numbering).
fn euclidean_simple_roots(t: CartanType, l: usize) -> Vec<Vec<i64>> {
    match t {
        CartanType::A => (0..l).map(|i| diff(l + 1, i, i + 1)).collect(),
        CartanType::B | CartanType::C | CartanType::D => {
            let mut s: Vec<Vec<i64>> = (0..l - 1).map(|i| diff(l, i, i + 1)).collect();
            s.push(match t {
                CartanType::B => unit(l, l - 1, 1),
                CartanType::C => unit(l, l - 1, 2),
                _ => {
                    let mut v = vec![0; l];
                    v[l - 2] = 1;
                    v[l - 1] = 1;
                    v
                }
            });
            s
        }
        CartanType::G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
        CartanType::F => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        CartanType::E => {
            // doubled coordinates in R^8
            let mut s = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], vec![2, 2, 0, 0, 0, 0, 0, 0]];
            for i in 0..6 {
                let mut v = vec![0; 8];
                v[i] = -2;
                v[i + 1] = 2;
                s.push(v);
            }
            s.truncate(l);
            s
        }
    }
}

/// Cartan matrix `a_ij = ⟨α_j, α_i^∨⟩ = 2(α_i, α_j)/(α_i, α_i)`.
pub fn cartan_matrix(t: CartanType, l: usize) -> Result<IntMatrix> {
    check_rank(t, l)?;
    let s = euclidean_simple_roots(t, l);
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let rows = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let (num, den) = (2 * dot(&s[i], &s[j]), dot(&s[i], &s[i]));
                    debug_assert_eq!(num.mod_floor(&den), 0);
                    num / den
                })
                .collect()
        })
        .collect::<Vec<Vec<i64>>>();
    Ok(IntMatrix::from_rows_i64(&rows))
}

/// Simply connected datum of a Cartan matrix: `X^∨` has the simple coroots as basis,
/// `X` the fundamental weights. Simple roots come first, in Cartan order.
pub fn simply_connected_from_cartan(a: &IntMatrix) -> Result<RootDatum> {
    let l = a.rows();
    // simple root j has weight coordinates (a_ij)_i, simple coroot i is e_i
    let simple: Vec<(Vec<Integer>, Vec<Integer>)> = (0..l)
        .map(|j| {
            let mut e = vec![Integer::from(0); l];
            e[j] = int(1);
            (a.col(j), e)
        })
        .collect();
    let mut pairs: Vec<(Vec<Integer>, Vec<Integer>)> = Vec::new();
    let mut seen: HashMap<Vec<Integer>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for (r, c) in &simple {
        seen.insert(r.clone(), pairs.len());
        queue.push_back(pairs.len());
        pairs.push((r.clone(), c.clone()));
    }
    while let Some(k) = queue.pop_front() {
        let (r, c) = pairs[k].clone();
        for (i, (ar, ac)) in simple.iter().enumerate() {
            // s_i(x) = x - x_i α_i and s_i(y) = y - ⟨α_i, y⟩ α_i^∨
            let ri = r[i].clone();
            let nr: Vec<Integer> = r.iter().zip(ar).map(|(x, y)| x - &ri * y).collect();
            let p: Integer = ar.iter().zip(&c).map(|(x, y)| x * y).sum();
            let nc: Vec<Integer> = c.iter().zip(ac).map(|(x, y)| x - &p * y).collect();
            if !seen.contains_key(&nr) {
                seen.insert(nr.clone(), pairs.len());
                queue.push_back(pairs.len());
                pairs.push((nr, nc));
            }
        }
    }
    let roots = IntMatrix::from_rows(pairs.iter().map(|p| p.0.clone()).collect(), l);
    let coroots = IntMatrix::from_rows(pairs.iter().map(|p| p.1.clone()).collect(), l);
    RootDatum::new(l, roots, coroots, None)
}

/// Number of roots of an irreducible system.
pub fn root_count(t: CartanType, l: usize) -> usize {
    match t {
        CartanType::A => l * (l + 1),
        CartanType::B | CartanType::C => 2 * l * l,
        CartanType::D => 2 * l * (l - 1),
        CartanType::E => match l {
            6 => 72,
            7 => 126,
            _ => 240,
        },
        CartanType::F => 48,
        CartanType::G => 12,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_matrices() {
        assert_eq!(cartan_matrix(CartanType::A, 1).unwrap(), IntMatrix::from_rows_i64(&[vec![2]]));
        assert_eq!(
            cartan_matrix(CartanType::G, 2).unwrap(),
            IntMatrix::from_rows_i64(&[vec![2, -3], vec![-1, 2]])
        );
        assert_eq!(
            cartan_matrix(CartanType::B, 2).unwrap(),
            IntMatrix::from_rows_i64(&[vec![2, -1], vec![-2, 2]])
        );
        assert!(cartan_matrix(CartanType::E, 5).is_err());
    }

    #[test]
    fn determinants() {
        let cases = [
            (CartanType::A, 4, 5),
            (CartanType::B, 3, 2),
            (CartanType::C, 3, 2),
            (CartanType::D, 5, 4),
            (CartanType::E, 6, 3),
            (CartanType::E, 7, 2),
            (CartanType::E, 8, 1),
            (CartanType::F, 4, 1),
            (CartanType::G, 2, 1),
        ];
        for (t, l, det) in cases {
            assert_eq!(cartan_matrix(t, l).unwrap().determinant(), int(det), "{t}{l}");
        }
    }

    #[test]
    fn root_counts() {
        for (t, l) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 2), (CartanType::D, 4), (CartanType::G, 2), (CartanType::F, 4), (CartanType::E, 6)] {
            let d = simply_connected_from_cartan(&cartan_matrix(t, l).unwrap()).unwrap();
            assert_eq!(d.num_roots(), root_count(t, l), "{t}{l}");
        }
    }
}
