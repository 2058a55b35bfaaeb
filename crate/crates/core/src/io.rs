//! JSON encodings. Matrices are arrays of rows of integers; every referenced
//! object is inline.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gammamod::{FiniteGroup, GammaModule};
use crate::lattice::{FgAbGroup, IntMatrix, Integer};
use crate::resolutions::{RootPart, SesData, TResolution};
use crate::rootdata::{GammaAction, GroupHomData, RootDatum};

pub type Rows = Vec<Vec<i64>>;

/// A finite group by multiplication table or by permutation generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteGroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
}

/// Γ-action on the character lattice, one matrix per group element.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaJson {
    pub group: FiniteGroupJson,
    pub on_characters: Vec<Rows>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumJson {
    pub rank: usize,
    pub roots: Rows,
    pub coroots: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaModuleJson {
    pub group: FiniteGroupJson,
    pub generators: usize,
    #[serde(default)]
    pub relations: Rows,
    pub action: Vec<Rows>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupHomJson {
    pub source: RootDatumJson,
    pub target: RootDatumJson,
    pub cochar_map: Rows,
    #[serde(default)]
    pub normal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesJson {
    pub iota: GroupHomJson,
    pub pi: GroupHomJson,
    pub partition: Vec<RootPart>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TResolutionJson {
    pub base: RootDatumJson,
    pub total: RootDatumJson,
    pub char_injection: Rows,
    pub root_match: Vec<usize>,
    pub kernel_inclusion: Rows,
}

pub enum Input {
    Datum(RootDatum),
    Ses(SesData),
    Resolution(TResolution),
    Module(GammaModule),
}

fn matrix(rows: &Rows, cols: usize, what: &str) -> Result<IntMatrix> {
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("{what}: row {i} has length {}, expected {cols}", rows[i].len())));
    }
    Ok(if rows.is_empty() {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows_i64(rows)
    })
}

fn square(rows: &Rows, n: usize, what: &str) -> Result<IntMatrix> {
    if rows.len() != n {
        return Err(Error::Dimension(format!("{what}: {} rows, expected {n}", rows.len())));
    }
    matrix(rows, n, what)
}

fn width(rows: &Rows) -> usize {
    rows.first().map_or(0, |r| r.len())
}

fn to_i64(x: &Integer) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Internal(format!("{x} does not fit into a JSON integer")))
}

pub fn rows_of(m: &IntMatrix) -> Result<Rows> {
    (0..m.rows()).map(|i| m.row(i).iter().map(to_i64).collect()).collect()
}

impl FiniteGroupJson {
    pub fn build(&self) -> Result<FiniteGroup> {
        match (&self.table, &self.permutations) {
            (Some(t), None) => FiniteGroup::new(t.clone()),
            (None, Some(p)) => {
                let degree = p.first().map_or(1, |x| x.len());
                FiniteGroup::from_permutations(degree, p)
            }
            _ => Err(Error::InvalidGroup("give exactly one of `table` and `permutations`".into())),
        }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        FiniteGroupJson {
            table: Some(g.table().to_vec()),
            permutations: None,
        }
    }
}

impl GammaJson {
    pub fn build(&self, rank: usize) -> Result<GammaAction> {
        let group = self.group.build()?;
        if self.on_characters.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for a group of order {}",
                self.on_characters.len(),
                group.order()
            )));
        }
        let m = self
            .on_characters
            .iter()
            .enumerate()
            .map(|(g, r)| square(r, rank, &format!("on_characters[{g}]")))
            .collect::<Result<_>>()?;
        Ok(GammaAction::new(group, m))
    }
}

impl RootDatumJson {
    pub fn build(&self) -> Result<RootDatum> {
        let roots = matrix(&self.roots, self.rank, "roots")?;
        let coroots = matrix(&self.coroots, self.rank, "coroots")?;
        let gamma = self.gamma.as_ref().map(|g| g.build(self.rank)).transpose()?;
        RootDatum::new(self.rank, roots, coroots, gamma)
    }

    pub fn from_datum(d: &RootDatum) -> Result<Self> {
        let gamma = match d.gamma() {
            None => None,
            Some(g) => Some(GammaJson {
                group: FiniteGroupJson::from_group(g.group()),
                on_characters: g.matrices().iter().map(rows_of).collect::<Result<_>>()?,
            }),
        };
        Ok(RootDatumJson {
            rank: d.rank(),
            roots: rows_of(d.roots())?,
            coroots: rows_of(d.coroots())?,
            gamma,
        })
    }
}

impl GammaModuleJson {
    pub fn build(&self) -> Result<GammaModule> {
        let group = self.group.build()?;
        let carrier = FgAbGroup::new(self.generators, matrix(&self.relations, self.generators, "relations")?)?;
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(g, r)| square(r, self.generators, &format!("action[{g}]")))
            .collect::<Result<_>>()?;
        GammaModule::new(group, carrier, action)
    }

    pub fn from_module(m: &GammaModule) -> Result<Self> {
        Ok(GammaModuleJson {
            group: FiniteGroupJson::from_group(m.group()),
            generators: m.carrier().generators(),
            relations: rows_of(m.carrier().relations())?,
            action: m.actions().iter().map(rows_of).collect::<Result<_>>()?,
        })
    }
}

impl GroupHomJson {
    pub fn build(&self) -> Result<GroupHomData> {
        let (s, t) = (self.source.build()?, self.target.build()?);
        let m = matrix(&self.cochar_map, s.rank(), "cochar_map")?;
        GroupHomData::new(s, t, m, self.normal)
    }

    pub fn from_hom(h: &GroupHomData) -> Result<Self> {
        Ok(GroupHomJson {
            source: RootDatumJson::from_datum(h.source())?,
            target: RootDatumJson::from_datum(h.target())?,
            cochar_map: rows_of(h.cochar_matrix())?,
            normal: h.is_normal(),
        })
    }
}

impl SesJson {
    pub fn build(&self) -> Result<SesData> {
        SesData::new(self.iota.build()?, self.pi.build()?, self.partition.clone())
    }

    pub fn from_ses(s: &SesData) -> Result<Self> {
        Ok(SesJson {
            iota: GroupHomJson::from_hom(s.iota())?,
            pi: GroupHomJson::from_hom(s.pi())?,
            partition: s.partition().to_vec(),
        })
    }
}

impl TResolutionJson {
    pub fn build(&self) -> Result<TResolution> {
        let (g, h) = (self.base.build()?, self.total.build()?);
        let j = matrix(&self.char_injection, g.rank(), "char_injection")?;
        let k = matrix(&self.kernel_inclusion, width(&self.kernel_inclusion), "kernel_inclusion")?;
        TResolution::new(g, h, j, self.root_match.clone(), k)
    }

    pub fn from_resolution(r: &TResolution) -> Result<Self> {
        Ok(TResolutionJson {
            base: RootDatumJson::from_datum(r.base())?,
            total: RootDatumJson::from_datum(r.total())?,
            char_injection: rows_of(r.char_injection())?,
            root_match: r.root_match().to_vec(),
            kernel_inclusion: rows_of(r.kernel_inclusion())?,
        })
    }
}

/// Deserializes `text`, reporting the JSON path of the first schema violation.
pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn read_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    from_str(&text)
}

/// Reads any input file. The kind is taken from the top-level keys so that
/// schema errors point into the intended type.
pub fn parse_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: ".".into(),
        message: e.to_string(),
    })?;
    let has = |k: &str| value.get(k).is_some();
    if has("iota") || has("pi") {
        from_str::<SesJson>(&text)?.build().map(Input::Ses)
    } else if has("char_injection") || has("total") {
        from_str::<TResolutionJson>(&text)?.build().map(Input::Resolution)
    } else if has("action") || has("generators") {
        from_str::<GammaModuleJson>(&text)?.build().map(Input::Module)
    } else {
        from_str::<RootDatumJson>(&text)?.build().map(Input::Datum)
    }
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolutions::{t_resolution_from_torus, ses_from_normal_subgroup};
    use crate::rootdata::standard_group_by_name;

    #[test]
    fn round_trips() {
        let gl2 = standard_group_by_name("GL(2)").unwrap();
        let j = RootDatumJson::from_datum(&gl2).unwrap();
        assert_eq!(from_str::<RootDatumJson>(&to_json(&j)).unwrap().build().unwrap(), gl2);

        let r = t_resolution_from_torus(&standard_group_by_name("PGL(3)").unwrap()).unwrap();
        let back = from_str::<TResolutionJson>(&to_json(&TResolutionJson::from_resolution(&r).unwrap()))
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(back.total(), r.total());

        let s = ses_from_normal_subgroup(&gl2, &[], &IntMatrix::from_rows_i64(&[vec![1, 1]])).unwrap();
        let back = from_str::<SesJson>(&to_json(&SesJson::from_ses(&s).unwrap())).unwrap().build().unwrap();
        assert_eq!(back.partition(), s.partition());

        let tw = crate::abcoh::twisted_gl2();
        let back = from_str::<RootDatumJson>(&to_json(&RootDatumJson::from_datum(&tw).unwrap())).unwrap().build().unwrap();
        assert_eq!(back.gamma().unwrap().matrices(), tw.gamma().unwrap().matrices());
    }

    #[test]
    fn schema_errors_carry_a_path() {
        let e = from_str::<RootDatumJson>(r#"{"rank": 1, "roots": [[2], ["x"]], "coroots": [[1]]}"#).unwrap_err();
        match e {
            Error::Parse { path, .. } => assert_eq!(path, "roots[1][0]"),
            other => panic!("{other}"),
        }
        let e = from_str::<SesJson>(r#"{"iota": {}, "pi": {}}"#).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }

    #[test]
    fn bad_pairing_names_the_axiom() {
        let j: RootDatumJson = from_str(r#"{"rank": 1, "roots": [[2], [-2]], "coroots": [[2], [-2]]}"#).unwrap();
        let e = j.build().unwrap_err();
        assert!(e.to_string().contains("pairing"), "{e}");
    }
}
