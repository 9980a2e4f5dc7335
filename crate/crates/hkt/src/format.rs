//! The JSON interchange format for catalog entries.
//!
//! Loading happens in two stages. [`parse_raw`] turns text into a [`RawEntry`]
//! and reports syntax problems (including malformed scalar literals) with a
//! line and column. [`RawEntry::build`] then runs structural validation and
//! reports semantic failures through [`hkt_core::Error`].
//!
//! Serialization is canonical: fixed field order, scalars in the
//! `a`, `p/q`, `a+b*sqrt2` grammar, forms in `e^{...}` monomial notation.

use std::fmt;

use hkt_core::catalog::{
    CatalogEntry, ConstructionKind, Expectation, ExpectedValue, Origin, Provenance,
};
use hkt_core::constructions::QuatRep;
use hkt_core::geometry::{ComplexStructure, Connection, GeomStructure, Metric};
use hkt_core::{KForm, LieAlgebra, Matrix, Scalar};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub const SCALARS: &str = "Q(sqrt2)";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// A field that is well-formed JSON but cannot be read, located by path.
    #[error("invalid field {path}: {message}")]
    Field { path: String, message: String },
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Semantic(hkt_core::Error),
}

impl From<hkt_core::Error> for LoadError {
    fn from(e: hkt_core::Error) -> Self {
        LoadError::Semantic(e)
    }
}

/// A scalar literal; deserialization parses it so errors carry a position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lit(pub Scalar);

impl Serialize for Lit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Lit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Lit;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a scalar literal such as \"-1/2\" or \"0+1/2*sqrt2\", or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Lit, E> {
                v.parse()
                    .map(Lit)
                    .map_err(|e| E::custom(format!("bad scalar: {e}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Lit, E> {
                Ok(Lit(Scalar::from_int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Lit, E> {
                i64::try_from(v)
                    .map(|v| Lit(Scalar::from_int(v)))
                    .map_err(|_| E::custom("integer literal out of range"))
            }
        }
        d.deserialize_any(V)
    }
}

pub type Grid = Vec<Vec<Lit>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub c: Lit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub out: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    #[serde(rename = "J1")]
    pub j1: Grid,
    #[serde(rename = "J2", default, skip_serializing_if = "Option::is_none")]
    pub j2: Option<Grid>,
    #[serde(rename = "J3", default, skip_serializing_if = "Option::is_none")]
    pub j3: Option<Grid>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedConnection {
    pub name: String,
    /// `matrices[i]` is `∇_{e_{i+1}}`; column `j` is the image of `e_{j+1}`.
    pub matrices: Vec<Grid>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedQuatRep {
    pub name: String,
    pub q: usize,
    pub matrices: Vec<Grid>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameter {
    pub name: String,
    pub value: Lit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OriginRecord {
    pub kind: String,
    pub base: String,
    pub using: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueRecord {
    Flag(bool),
    Form { form: String, degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationRecord {
    pub key: String,
    pub value: ValueRecord,
    pub provenance: String,
    pub citation: String,
}

/// A parsed but unvalidated entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub name: String,
    pub dim: usize,
    pub scalars: String,
    pub brackets: Vec<BracketRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub connections: Vec<NamedConnection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quat_reps: Vec<NamedQuatRep>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<Parameter>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<OriginRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<ExpectationRecord>,
}

pub fn parse_raw(text: &str) -> Result<RawEntry, FormatError> {
    let raw: RawEntry = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    if raw.scalars != SCALARS {
        return Err(field(
            "scalars",
            format!("expected {SCALARS:?}, found {:?}", raw.scalars),
        ));
    }
    Ok(raw)
}

/// serde_json appends " at line L column C"; the position is reported
/// separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn field(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses and validates in one step.
pub fn parse(text: &str) -> Result<CatalogEntry, LoadError> {
    parse_raw(text)?.build()
}

pub fn serialize(entry: &CatalogEntry) -> String {
    let mut s = serde_json::to_string_pretty(&RawEntry::from_entry(entry)).expect("plain data");
    s.push('\n');
    s
}

fn grid_to_matrix(g: &Grid, n: usize, path: &str) -> Result<Matrix, FormatError> {
    if g.len() != n || g.iter().any(|r| r.len() != n) {
        return Err(field(path, format!("expected a {n}x{n} grid")));
    }
    Ok(Matrix::from_fn(n, n, |r, c| g[r][c].0.clone()))
}

fn matrix_to_grid(m: &Matrix) -> Grid {
    (0..m.rows())
        .map(|r| m.row(r).iter().cloned().map(Lit).collect())
        .collect()
}

fn matrices(list: &[Grid], count: usize, n: usize, path: &str) -> Result<Vec<Matrix>, FormatError> {
    if list.len() != count {
        return Err(field(
            path,
            format!("expected {count} matrices, found {}", list.len()),
        ));
    }
    list.iter()
        .enumerate()
        .map(|(i, g)| grid_to_matrix(g, n, &format!("{path}[{i}]")))
        .collect()
}

/// The pieces of a raw entry, decoded but not yet cross-validated. `check`
/// inspects these one property at a time.
#[derive(Clone, Debug)]
pub struct Decoded {
    pub algebra: LieAlgebra,
    pub metric: Option<Matrix>,
    pub complex: Vec<Matrix>,
    pub connections: Vec<(String, Vec<Matrix>)>,
    pub quat_reps: Vec<(String, usize, Vec<Matrix>)>,
}

impl RawEntry {
    /// Decodes dimensions and indices. Only bracket-table errors (unordered
    /// pairs, indices out of range) are semantic at this stage.
    pub fn decode(&self) -> Result<Decoded, LoadError> {
        let n = self.dim;
        let entries = self.brackets.iter().map(|b| {
            (
                b.i,
                b.j,
                b.out
                    .iter()
                    .map(|t| (t.k, t.c.0.clone()))
                    .collect::<Vec<_>>(),
            )
        });
        let algebra = LieAlgebra::from_brackets(n, entries)?;
        let metric = self
            .metric
            .as_ref()
            .map(|g| grid_to_matrix(g, n, "metric"))
            .transpose()?;
        let complex = match &self.complex {
            None => Vec::new(),
            Some(c) => {
                let j1 = grid_to_matrix(&c.j1, n, "complex.J1")?;
                match &c.j2 {
                    None => {
                        if c.j3.is_some() {
                            return Err(field("complex.J3", "J3 given without J2").into());
                        }
                        vec![j1]
                    }
                    Some(j2) => {
                        let j2 = grid_to_matrix(j2, n, "complex.J2")?;
                        let j3 = match &c.j3 {
                            Some(j3) => grid_to_matrix(j3, n, "complex.J3")?,
                            None => &j1 * &j2,
                        };
                        vec![j1, j2, j3]
                    }
                }
            }
        };
        let connections = self
            .connections
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let path = format!("connections[{i}].matrices");
                Ok((c.name.clone(), matrices(&c.matrices, n, n, &path)?))
            })
            .collect::<Result<_, FormatError>>()?;
        let quat_reps = self
            .quat_reps
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let path = format!("quat_reps[{i}].matrices");
                Ok((
                    r.name.clone(),
                    r.q,
                    matrices(&r.matrices, n, 4 * r.q, &path)?,
                ))
            })
            .collect::<Result<_, FormatError>>()?;
        Ok(Decoded {
            algebra,
            metric,
            complex,
            connections,
            quat_reps,
        })
    }

    /// Full structural validation.
    pub fn build(&self) -> Result<CatalogEntry, LoadError> {
        let d = self.decode()?;
        let metric = d.metric.map(Metric::new).transpose()?;
        let complex = match d.complex.len() {
            0 => ComplexStructure::None,
            1 => ComplexStructure::Single(d.complex[0].clone()),
            _ => {
                let [a, b, c]: [Matrix; 3] = d.complex.try_into().expect("three structures");
                ComplexStructure::Triple([a, b, c])
            }
        };
        let structure = GeomStructure::new(d.algebra, metric, complex)?;
        let connections = d
            .connections
            .into_iter()
            .map(|(name, ms)| Ok((name, Connection::new(ms)?)))
            .collect::<Result<_, hkt_core::Error>>()?;
        let quat_reps = d
            .quat_reps
            .into_iter()
            .map(|(name, q, ms)| Ok((name, QuatRep::new(q, ms)?)))
            .collect::<Result<_, hkt_core::Error>>()?;
        let origin = self
            .origin
            .as_ref()
            .map(|o| {
                let kind = ConstructionKind::parse(&o.kind).ok_or_else(|| {
                    field("origin.kind", format!("unknown construction {:?}", o.kind))
                })?;
                Ok::<_, FormatError>(Origin {
                    kind,
                    base: o.base.clone(),
                    using: o.using.clone(),
                })
            })
            .transpose()?;
        let expected = self
            .expected
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let provenance = Provenance::parse(&e.provenance).ok_or_else(|| {
                    field(
                        format!("expected[{i}].provenance"),
                        format!("unknown provenance {:?}", e.provenance),
                    )
                })?;
                let value = match &e.value {
                    ValueRecord::Flag(b) => ExpectedValue::Flag(*b),
                    ValueRecord::Form { form, degree } => {
                        ExpectedValue::Form(KForm::parse(form, self.dim, *degree).map_err(
                            |err| field(format!("expected[{i}].value.form"), err.to_string()),
                        )?)
                    }
                };
                Ok(Expectation {
                    key: e.key.clone(),
                    value,
                    provenance,
                    citation: e.citation.clone(),
                })
            })
            .collect::<Result<_, FormatError>>()?;
        Ok(CatalogEntry {
            name: self.name.clone(),
            structure,
            connections,
            quat_reps,
            parameters: self
                .parameters
                .iter()
                .map(|p| (p.name.clone(), p.value.0.clone()))
                .collect(),
            origin,
            expected,
        })
    }

    pub fn from_entry(e: &CatalogEntry) -> RawEntry {
        let s = &e.structure;
        let js = s.complex_structures();
        let complex = match js.len() {
            0 => None,
            1 => Some(ComplexRecord {
                j1: matrix_to_grid(&js[0]),
                j2: None,
                j3: None,
            }),
            // J3 is always J1 J2 after validation, so it is derived on load
            _ => Some(ComplexRecord {
                j1: matrix_to_grid(&js[0]),
                j2: Some(matrix_to_grid(&js[1])),
                j3: None,
            }),
        };
        RawEntry {
            name: e.name.clone(),
            dim: s.dim(),
            scalars: SCALARS.to_string(),
            brackets: s
                .algebra()
                .brackets()
                .into_iter()
                .map(|(i, j, out)| BracketRecord {
                    i,
                    j,
                    out: out
                        .into_iter()
                        .map(|(k, c)| Term { k, c: Lit(c) })
                        .collect(),
                })
                .collect(),
            metric: s.metric().map(|g| matrix_to_grid(g.gram())),
            complex,
            connections: e
                .connections
                .iter()
                .map(|(name, c)| NamedConnection {
                    name: name.clone(),
                    matrices: c.maps().iter().map(matrix_to_grid).collect(),
                })
                .collect(),
            quat_reps: e
                .quat_reps
                .iter()
                .map(|(name, r)| NamedQuatRep {
                    name: name.clone(),
                    q: r.q(),
                    matrices: r.matrices().iter().map(matrix_to_grid).collect(),
                })
                .collect(),
            parameters: e
                .parameters
                .iter()
                .map(|(name, v)| Parameter {
                    name: name.clone(),
                    value: Lit(v.clone()),
                })
                .collect(),
            origin: e.origin.as_ref().map(|o| OriginRecord {
                kind: o.kind.as_str().to_string(),
                base: o.base.clone(),
                using: o.using.clone(),
            }),
            expected: e
                .expected
                .iter()
                .map(|x| ExpectationRecord {
                    key: x.key.clone(),
                    value: match &x.value {
                        ExpectedValue::Flag(b) => ValueRecord::Flag(*b),
                        ExpectedValue::Form(f) => ValueRecord::Form {
                            form: f.to_string(),
                            degree: f.degree(),
                        },
                    },
                    provenance: x.provenance.as_str().to_string(),
                    citation: x.citation.clone(),
                })
                .collect(),
        }
    }
}

/// `builtin:NAME` or a file path.
pub fn load(source: &str) -> Result<CatalogEntry, InputError> {
    match source.strip_prefix("builtin:") {
        Some(name) => hkt_core::catalog::builtin(name).map_err(InputError::UnknownBuiltin),
        None => {
            let text = std::fs::read_to_string(source)
                .map_err(|e| InputError::Io(source.to_string(), e))?;
            parse(&text).map_err(InputError::Load)
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{0}")]
    UnknownBuiltin(hkt_core::Error),
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Load(LoadError),
}
