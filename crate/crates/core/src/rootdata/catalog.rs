use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::cartan::{cartan_matrix, simply_connected_from_cartan, CartanType};
use super::datum::RootDatum;
use super::quotient::{adjoint_quotient, central_quotient};
use crate::error::{Error, Result};
use crate::lattice::Integer;

/// Names accepted by [`standard_group`].
pub const CATALOG_NAMES: &[&str] = &[
    "Torus(r)",
    "GL(n)",
    "SL(n)",
    "PGL(n)",
    "Sp(2n)",
    "SO(2n+1)",
    "SO(2n)",
    "Spin(n)",
    "SC(type,rank)",
    "ADJ(type,rank)",
    "Product(G1,G2,...)",
    "CentralQuotient(G;v1;v2;...)",
];

/// A catalog group. `Sp`, `SO` and `Spin` take the matrix size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Torus(usize),
    GL(usize),
    SL(usize),
    PGL(usize),
    Sp(usize),
    SO(usize),
    Spin(usize),
    SC(CartanType, usize),
    ADJ(CartanType, usize),
    Product(Vec<GroupSpec>),
    /// Rational cocharacters adjoined to `X^∨`, one vector per generator.
    CentralQuotient(Box<GroupSpec>, Vec<Vec<BigRational>>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Torus(r) => write!(f, "Torus({r})"),
            GroupSpec::GL(n) => write!(f, "GL({n})"),
            GroupSpec::SL(n) => write!(f, "SL({n})"),
            GroupSpec::PGL(n) => write!(f, "PGL({n})"),
            GroupSpec::Sp(n) => write!(f, "Sp({n})"),
            GroupSpec::SO(n) => write!(f, "SO({n})"),
            GroupSpec::Spin(n) => write!(f, "Spin({n})"),
            GroupSpec::SC(t, l) => write!(f, "SC({t},{l})"),
            GroupSpec::ADJ(t, l) => write!(f, "ADJ({t},{l})"),
            GroupSpec::Product(gs) => {
                let parts: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
                write!(f, "Product({})", parts.join(","))
            }
            GroupSpec::CentralQuotient(g, vs) => {
                write!(f, "CentralQuotient({g}")?;
                for v in vs {
                    let parts: Vec<String> = v.iter().map(|q| q.to_string()).collect();
                    write!(f, ";{}", parts.join(","))?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Splits on `sep` at parenthesis depth zero.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_usize(s: &str, whole: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::UnknownGroup(format!("{whole}: bad parameter {s:?}")))
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::UnknownGroup(format!("{whole}: bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: Integer = a.trim().parse().map_err(|_| bad())?;
            let b: Integer = b.trim().parse().map_err(|_| bad())?;
            if b == Integer::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `NAME(p1,p2)` as well as the whitespace form `NAME p1 p2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownGroup(s.to_string());
        let (name, args) = match s.find('(') {
            Some(i) => {
                if !s.ends_with(')') {
                    return Err(unknown());
                }
                (s[..i].trim(), &s[i + 1..s.len() - 1])
            }
            None => match s.split_once(char::is_whitespace) {
                Some((n, rest)) => (n, rest.trim()),
                None => (s, ""),
            },
        };
        let sep = if s.contains('(') { ',' } else { ' ' };
        let plain: Vec<&str> = if args.is_empty() {
            Vec::new()
        } else if sep == ',' {
            split_top(args, ',')
        } else {
            args.split_whitespace().collect()
        };
        let one = |what: &str| -> Result<usize> {
            match plain.as_slice() {
                [x] => parse_usize(x, s),
                _ => Err(Error::UnknownGroup(format!("{s}: {what} takes one parameter"))),
            }
        };
        let typed = || -> Result<(CartanType, usize)> {
            match plain.as_slice() {
                [t, l] => Ok((t.parse()?, parse_usize(l, s)?)),
                [tl] if tl.len() >= 2 => Ok((tl[..1].parse()?, parse_usize(&tl[1..], s)?)),
                _ => Err(Error::UnknownGroup(format!("{s}: expected a type and a rank"))),
            }
        };
        let spec = match name.to_ascii_lowercase().as_str() {
            "torus" | "gm" => GroupSpec::Torus(if plain.is_empty() { 1 } else { one("Torus")? }),
            "gl" => GroupSpec::GL(one("GL")?),
            "sl" => GroupSpec::SL(one("SL")?),
            "pgl" => GroupSpec::PGL(one("PGL")?),
            "sp" => GroupSpec::Sp(one("Sp")?),
            "so" => GroupSpec::SO(one("SO")?),
            "spin" => GroupSpec::Spin(one("Spin")?),
            "sc" => {
                let (t, l) = typed()?;
                GroupSpec::SC(t, l)
            }
            "adj" => {
                let (t, l) = typed()?;
                GroupSpec::ADJ(t, l)
            }
            "product" => GroupSpec::Product(
                split_top(args, ',')
                    .into_iter()
                    .map(str::parse)
                    .collect::<Result<_>>()?,
            ),
            "centralquotient" => {
                let parts = split_top(args, ';');
                let base: GroupSpec = parts[0].parse()?;
                let gens = parts[1..]
                    .iter()
                    .map(|v| v.split(',').map(|x| parse_rational(x, s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                GroupSpec::CentralQuotient(Box::new(base), gens)
            }
            _ => return Err(unknown()),
        };
        Ok(spec)
    }
}

fn pm_pairs(n: usize, long_roots: bool, short: Option<i64>, short_coroot: i64) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    if long_roots {
        for i in 0..n {
            for j in i + 1..n {
                for (a, b) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
                    let mut v = vec![0; n];
                    v[i] = a;
                    v[j] = b;
                    roots.push(v.clone());
                    coroots.push(v);
                }
            }
        }
    }
    if let Some(c) = short {
        for i in 0..n {
            for s in [1, -1] {
                let mut r = vec![0; n];
                r[i] = s * c;
                let mut co = vec![0; n];
                co[i] = s * short_coroot;
                roots.push(r);
                coroots.push(co);
            }
        }
    }
    (roots, coroots)
}

fn bad(spec: &GroupSpec) -> Error {
    Error::UnknownGroup(format!("{spec}: parameter out of range"))
}

/// Builds a catalog group.
pub fn standard_group(spec: &GroupSpec) -> Result<RootDatum> {
    match spec {
        GroupSpec::Torus(r) => Ok(RootDatum::torus(*r)),
        GroupSpec::GL(n) => {
            if *n == 0 {
                return Err(bad(spec));
            }
            let mut roots = Vec::new();
            for i in 0..*n {
                for j in 0..*n {
                    if i != j {
                        let mut v = vec![0; *n];
                        v[i] = 1;
                        v[j] = -1;
                        roots.push(v);
                    }
                }
            }
            RootDatum::from_i64(*n, &roots, &roots)
        }
        GroupSpec::SL(n) | GroupSpec::PGL(n) => match n {
            0 => Err(bad(spec)),
            1 => Ok(RootDatum::torus(0)),
            _ if matches!(spec, GroupSpec::SL(_)) => standard_group(&GroupSpec::SC(CartanType::A, n - 1)),
            _ => standard_group(&GroupSpec::ADJ(CartanType::A, n - 1)),
        },
        GroupSpec::Sp(m) => {
            if *m < 2 || m % 2 == 1 {
                return Err(bad(spec));
            }
            let (r, c) = pm_pairs(m / 2, true, Some(2), 1);
            RootDatum::from_i64(m / 2, &r, &c)
        }
        GroupSpec::SO(m) => {
            if *m < 2 {
                return Err(bad(spec));
            }
            let n = m / 2;
            let (r, c) = if m % 2 == 1 {
                pm_pairs(n, true, Some(1), 2)
            } else {
                pm_pairs(n, true, None, 0)
            };
            RootDatum::from_i64(n, &r, &c)
        }
        GroupSpec::Spin(m) => {
            if *m < 3 {
                return Err(bad(spec));
            }
            if m % 2 == 1 {
                standard_group(&GroupSpec::SC(CartanType::B, m / 2))
            } else {
                standard_group(&GroupSpec::SC(CartanType::D, m / 2))
            }
        }
        GroupSpec::SC(t, l) => simply_connected_from_cartan(&cartan_matrix(*t, *l)?),
        GroupSpec::ADJ(t, l) => adjoint_quotient(&standard_group(&GroupSpec::SC(*t, *l))?),
        GroupSpec::Product(gs) => {
            let ds = gs.iter().map(standard_group).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&RootDatum> = ds.iter().collect();
            let d = RootDatum::product(&refs);
            d.validate()?;
            Ok(d)
        }
        GroupSpec::CentralQuotient(g, gens) => central_quotient(&standard_group(g)?, gens),
    }
}

/// Parses and builds a catalog group.
pub fn standard_group_by_name(name: &str) -> Result<RootDatum> {
    standard_group(&name.parse()?)
}
