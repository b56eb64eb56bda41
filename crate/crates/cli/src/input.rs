//! Input files.
//!
//! Every file is TOML with a `schema` key naming its format and version.
//! Coefficients, degrees and exponents are written exactly; floats are
//! rejected by the schemas.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use novikov_core::cone::ConeSpec;
use novikov_core::degree::Enclosure;
use novikov_core::homology::{FreeComplex, Matrix};
use novikov_core::morse::{ChainKind, CriticalPoint, FlowLineRecord, LambdaChain, MorseData};
use novikov_core::syntax::{parse_degree, parse_series};
use novikov_core::{CoeffDomain, Cutoff, DegreeForm, DegreeValue, FormalRealBasis, LatticePoint};

use crate::CliError;

pub const MORSE_SCHEMA: &str = "novikov-morse/1";
pub const CHAINS_SCHEMA: &str = "novikov-chains/1";
pub const COMPLEX_SCHEMA: &str = "novikov-complex/1";
pub const RING_SCHEMA: &str = "novikov-ring/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt: Option<u64>,
    /// Nested `[lo, hi]` enclosures, coarsest first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub enclosures: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<BasisSpec>,
    pub periods: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub id: String,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSpec {
    pub from: String,
    pub to: String,
    pub deck: Vec<i64>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseFile {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    /// Degree below which the flow list is complete; absent means complete.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    pub form: FormSpec,
    #[serde(default)]
    pub points: Vec<PointSpec>,
    #[serde(default)]
    pub flows: Vec<FlowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainsFile {
    pub schema: String,
    #[serde(default)]
    pub unstable: BTreeMap<String, String>,
    #[serde(default)]
    pub stable: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySpec {
    pub degree: usize,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<Vec<String>>,
    pub form: FormSpec,
    #[serde(default)]
    pub boundaries: Vec<BoundarySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeFileSpec {
    pub generators: Vec<Vec<i64>>,
    #[serde(default)]
    pub points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub schema: String,
    #[serde(default)]
    pub expr: Option<String>,
    /// Defaults to `q = 1`, `χ = (1)`.
    #[serde(default)]
    pub form: Option<FormSpec>,
    #[serde(default)]
    pub cone: Option<ConeFileSpec>,
}

#[derive(Deserialize)]
struct Header {
    schema: Option<String>,
}

/// Reads the `schema` key without validating the rest.
pub fn schema_of(origin: &str, text: &str) -> Result<String, CliError> {
    let header: Header = toml::from_str(text).map_err(|e| CliError::Syntax {
        origin: origin.to_string(),
        message: e.message().to_string(),
        location: location(text, e.span()),
    })?;
    header.schema.ok_or_else(|| CliError::field(origin, "schema", "missing schema key"))
}

fn location(text: &str, span: Option<std::ops::Range<usize>>) -> Option<(usize, usize)> {
    let start = span?.start.min(text.len());
    let before = &text[..start];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Some((line, column))
}

/// Deserializes a file of the expected schema, reporting the field path of
/// the first violation.
pub fn load<T: DeserializeOwned>(origin: &str, text: &str, schema: &str) -> Result<T, CliError> {
    let found = schema_of(origin, text)?;
    if found != schema {
        return Err(CliError::field(
            origin,
            "schema",
            format!("expected `{schema}`, found `{found}`"),
        ));
    }
    let de = toml::Deserializer::new(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Schema {
            origin: origin.to_string(),
            field: path,
            message: inner.message().to_string(),
            location: location(text, inner.span()),
        }
    })
}

fn rational(origin: &str, field: &str, text: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(text.trim())
        .map_err(|_| CliError::field(origin, field, format!("`{text}` is not an exact rational")))
}

impl FormSpec {
    pub fn build(&self, origin: &str) -> Result<Arc<DegreeForm>, CliError> {
        let mut basis = FormalRealBasis::rational();
        for (i, b) in self.basis.iter().enumerate() {
            let field = format!("form.basis[{i}]");
            let pushed = match (b.sqrt, b.enclosures.is_empty()) {
                (Some(n), true) => basis.push_sqrt(&b.name, n),
                (None, false) => {
                    let mut encl = Vec::new();
                    for (j, [lo, hi]) in b.enclosures.iter().enumerate() {
                        let f = format!("{field}.enclosures[{j}]");
                        encl.push(Enclosure::new(rational(origin, &f, lo)?, rational(origin, &f, hi)?));
                    }
                    basis.push(&b.name, encl)
                }
                _ => {
                    return Err(CliError::field(
                        origin,
                        &field,
                        "give exactly one of `sqrt` or `enclosures`",
                    ))
                }
            };
            pushed.map_err(|e| CliError::at(origin, &field, e))?;
        }
        let mut periods = Vec::new();
        for (i, p) in self.periods.iter().enumerate() {
            let d = parse_degree(p, &basis).map_err(|e| CliError::at(origin, &format!("form.periods[{i}]"), e))?;
            periods.push(d);
        }
        DegreeForm::new(basis, periods)
            .map(Arc::new)
            .map_err(|e| CliError::at(origin, "form.periods", e))
    }

    pub fn describe(form: &DegreeForm) -> FormSpec {
        let basis = form
            .basis()
            .elements()
            .iter()
            .map(|e| BasisSpec {
                name: e.name().to_string(),
                sqrt: None,
                enclosures: e
                    .refinements()
                    .iter()
                    .map(|r| [r.lo.to_string(), r.hi.to_string()])
                    .collect(),
            })
            .collect();
        FormSpec {
            basis,
            periods: form.periods().iter().map(|p| form.render(p)).collect(),
        }
    }

    pub fn cyclic() -> FormSpec {
        FormSpec {
            basis: Vec::new(),
            periods: vec!["1".into()],
        }
    }
}

/// Parses a degree over the form's basis.
pub fn degree(origin: &str, field: &str, form: &DegreeForm, text: &str) -> Result<DegreeValue, CliError> {
    parse_degree(text, form.basis()).map_err(|e| CliError::at(origin, field, e))
}

impl MorseFile {
    pub fn to_data(&self, origin: &str) -> Result<MorseData, CliError> {
        let form = self.form.build(origin)?;
        let window = match &self.window {
            None => Cutoff::Infinite,
            Some(w) => Cutoff::Finite(degree(origin, "window", &form, w)?),
        };
        let mut index = BTreeMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if p.index > self.dimension {
                return Err(CliError::field(
                    origin,
                    &format!("points[{i}].index"),
                    format!("index {} exceeds the dimension {}", p.index, self.dimension),
                ));
            }
            if index.insert(p.id.as_str(), p.index).is_some() {
                return Err(CliError::field(
                    origin,
                    &format!("points[{i}].id"),
                    format!("critical point `{}` declared twice", p.id),
                ));
            }
        }
        let mut records = Vec::new();
        for (i, f) in self.flows.iter().enumerate() {
            let field = format!("flows[{i}]");
            let lookup = |id: &str, key: &str| {
                index.get(id).copied().ok_or_else(|| {
                    CliError::field(origin, &format!("{field}.{key}"), format!("unknown critical point `{id}`"))
                })
            };
            let (a, b) = (lookup(&f.from, "from")?, lookup(&f.to, "to")?);
            if b != a + 1 {
                return Err(CliError::field(
                    origin,
                    &field,
                    format!("flow from `{}` (index {a}) to `{}` (index {b}) must raise the index by one", f.from, f.to),
                ));
            }
            if f.deck.len() != form.q() {
                return Err(CliError::field(
                    origin,
                    &format!("{field}.deck"),
                    format!("deck label has {} entries, the form has q = {}", f.deck.len(), form.q()),
                ));
            }
            records.push(FlowLineRecord {
                from: f.from.clone(),
                to: f.to.clone(),
                deck: LatticePoint::new(f.deck.clone()),
                orientation_agrees: f.agrees,
            });
        }
        let data = MorseData {
            dimension: self.dimension,
            form,
            points: self
                .points
                .iter()
                .map(|p| CriticalPoint {
                    id: p.id.clone(),
                    index: p.index,
                })
                .collect(),
            records,
            window,
        };
        data.validate().map_err(|e| CliError::at(origin, "", e))?;
        Ok(data)
    }

    pub fn describe(name: Option<&str>, data: &MorseData) -> MorseFile {
        MorseFile {
            schema: MORSE_SCHEMA.into(),
            name: name.map(str::to_string),
            dimension: data.dimension,
            window: data.window.finite().map(|w| data.form.render(w)),
            form: FormSpec::describe(&data.form),
            points: data
                .points
                .iter()
                .map(|p| PointSpec {
                    id: p.id.clone(),
                    index: p.index,
                })
                .collect(),
            flows: data
                .records
                .iter()
                .map(|r| FlowSpec {
                    from: r.from.clone(),
                    to: r.to.clone(),
                    deck: r.deck.coords().to_vec(),
                    agrees: r.orientation_agrees,
                })
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("Morse files always serialize")
    }
}

impl ChainsFile {
    pub fn to_chains(
        &self,
        origin: &str,
        form: &Arc<DegreeForm>,
        domain: CoeffDomain,
    ) -> Result<(LambdaChain, LambdaChain), CliError> {
        let build = |kind: ChainKind, key: &str, map: &BTreeMap<String, String>| {
            let mut chain = LambdaChain::new(kind);
            for (id, text) in map {
                let s = parse_series(text, form, domain)
                    .map_err(|e| CliError::at(origin, &format!("{key}.{id}"), e))?;
                chain = chain.with(id, s);
            }
            Ok::<_, CliError>(chain)
        };
        Ok((
            build(ChainKind::Unstable, "unstable", &self.unstable)?,
            build(ChainKind::Stable, "stable", &self.stable)?,
        ))
    }
}

impl ComplexFile {
    pub fn to_complex(&self, origin: &str, domain: CoeffDomain) -> Result<FreeComplex, CliError> {
        let form = self.form.build(origin)?;
        let mut boundaries: Vec<Option<Matrix>> = vec![None; self.generators.len().saturating_sub(1)];
        for (i, b) in self.boundaries.iter().enumerate() {
            let field = format!("boundaries[{i}]");
            let Some(slot) = boundaries.get_mut(b.degree) else {
                return Err(CliError::field(
                    origin,
                    &format!("{field}.degree"),
                    format!("no boundary map starts in degree {}", b.degree),
                ));
            };
            if slot.is_some() {
                return Err(CliError::field(
                    origin,
                    &format!("{field}.degree"),
                    format!("boundary in degree {} given twice", b.degree),
                ));
            }
            let cols = self.generators[b.degree].len();
            let want_rows = self.generators[b.degree + 1].len();
            if b.rows.len() != want_rows {
                return Err(CliError::field(
                    origin,
                    &format!("{field}.rows"),
                    format!("expected {want_rows} rows, found {}", b.rows.len()),
                ));
            }
            let mut rows = Vec::new();
            for (r, row) in b.rows.iter().enumerate() {
                if row.len() != cols {
                    return Err(CliError::field(
                        origin,
                        &format!("{field}.rows[{r}]"),
                        format!("expected {cols} entries, found {}", row.len()),
                    ));
                }
                let mut out = Vec::new();
                for (c, text) in row.iter().enumerate() {
                    let s = parse_series(text, &form, domain)
                        .map_err(|e| CliError::at(origin, &format!("{field}.rows[{r}][{c}]"), e))?;
                    out.push(s);
                }
                rows.push(out);
            }
            *slot = Some(
                Matrix::from_rows(&form, domain, cols, rows).map_err(|e| CliError::at(origin, &field, e))?,
            );
        }
        let boundaries = boundaries
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                m.unwrap_or_else(|| {
                    Matrix::zeros(&form, domain, self.generators[k + 1].len(), self.generators[k].len())
                })
            })
            .collect();
        FreeComplex::new(&form, self.generators.clone(), boundaries).map_err(|e| CliError::at(origin, "", e))
    }
}

impl RingFile {
    pub fn form(&self, origin: &str) -> Result<Arc<DegreeForm>, CliError> {
        self.form.clone().unwrap_or_else(FormSpec::cyclic).build(origin)
    }

    pub fn cone(&self, origin: &str, form: &DegreeForm) -> Result<Option<(ConeSpec, Vec<LatticePoint>)>, CliError> {
        let Some(c) = &self.cone else {
            return Ok(None);
        };
        let gens = c.generators.iter().map(|g| LatticePoint::new(g.clone())).collect();
        let cone = ConeSpec::new(form, gens).map_err(|e| CliError::at(origin, "cone.generators", e))?;
        let mut points = Vec::new();
        for (i, p) in c.points.iter().enumerate() {
            let p = LatticePoint::new(p.clone());
            form.check_point(&p)
                .map_err(|e| CliError::at(origin, &format!("cone.points[{i}]"), e))?;
            points.push(p);
        }
        Ok(Some((cone, points)))
    }
}
