//! Algebra-description documents and their resolved form.
//!
//! A document is JSON:
//!
//! ```json
//! {
//!   "field": "Q",
//!   "vertices": ["1", "2"],
//!   "arrows": [{"name": "a", "source": "1", "target": "2", "degree": 1}],
//!   "relations": [[{"coeff": 1, "path": ["a", "b"]}, {"coeff": "-1/2", "path": ["c", "d"]}]],
//!   "options": {"path_cap": 32}
//! }
//! ```
//!
//! Paths are written left to right in the order the arrows are traversed,
//! so `["a", "b"]` means "a, then b" and requires `target(a) = source(b)`.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_scalar, parse_rational, Field, Scalar};

pub const DEFAULT_PATH_CAP: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelDoc {
    Text(String),
    Number(i64),
}

impl LabelDoc {
    fn text(&self) -> String {
        match self {
            LabelDoc::Text(s) => s.clone(),
            LabelDoc::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDoc {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub source: LabelDoc,
    pub target: LabelDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: CoeffDoc,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_cap: Option<usize>,
}

/// The raw document tree, as read from disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub field: String,
    pub vertices: Vec<LabelDoc>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<Vec<TermDoc>>,
    #[serde(default)]
    pub options: OptionsDoc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn max_arrow_degree(&self) -> u32 {
        self.arrows.iter().map(|a| a.degree).max().unwrap_or(0)
    }

    /// Source and target of a nonempty arrow sequence, or `None` if it is
    /// not composable.
    pub fn endpoints(&self, arrows: &[usize]) -> Option<(usize, usize)> {
        let first = arrows.first()?;
        let mut at = self.arrows[*first].source;
        for &a in arrows {
            if self.arrows[a].source != at {
                return None;
            }
            at = self.arrows[a].target;
        }
        Some((self.arrows[*first].source, at))
    }

    pub fn path_degree(&self, arrows: &[usize]) -> u32 {
        arrows.iter().map(|&a| self.arrows[a].degree).sum()
    }
}

/// A homogeneous linear combination of parallel paths of length ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
    pub source: usize,
    pub target: usize,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub path_cap: usize,
}

impl Presentation {
    /// Parses the JSON text of an algebra-description document.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
        })?;
        Self::from_document(&doc)
    }

    pub fn from_document(doc: &AlgebraDocument) -> Result<Self> {
        let field = Field::parse(&doc.field)?;

        let vertices: Vec<String> = doc.vertices.iter().map(LabelDoc::text).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::Validation(format!("duplicate vertex label `{v}`")));
            }
        }
        if vertices.is_empty() {
            return Err(Error::Validation("quiver has no vertices".into()));
        }
        let vindex: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();

        let mut arrows = Vec::with_capacity(doc.arrows.len());
        let mut arrow_names = HashSet::new();
        for a in &doc.arrows {
            if !arrow_names.insert(a.name.as_str()) {
                return Err(Error::Validation(format!("duplicate arrow label `{}`", a.name)));
            }
            let lookup = |l: &LabelDoc| {
                let t = l.text();
                vindex.get(t.as_str()).copied().ok_or_else(|| {
                    Error::Parse(format!("arrow `{}` refers to unknown vertex `{t}`", a.name))
                })
            };
            let degree = a.degree.unwrap_or(1);
            if degree < 1 {
                return Err(Error::Validation(format!(
                    "arrow `{}` has degree {degree}; arrow degrees must be at least 1",
                    a.name
                )));
            }
            let degree = u32::try_from(degree)
                .map_err(|_| Error::Validation(format!("arrow `{}` degree too large", a.name)))?;
            arrows.push(Arrow {
                name: a.name.clone(),
                source: lookup(&a.source)?,
                target: lookup(&a.target)?,
                degree,
            });
        }
        let quiver = Quiver { vertices, arrows };

        let mut relations = Vec::new();
        for (ri, terms) in doc.relations.iter().enumerate() {
            if let Some(r) = resolve_relation(field, &quiver, ri, terms)? {
                relations.push(r);
            }
        }

        let path_cap = doc.options.path_cap.unwrap_or(DEFAULT_PATH_CAP);
        if path_cap == 0 {
            return Err(Error::Validation("path_cap must be positive".into()));
        }
        Ok(Presentation { field, quiver, relations, path_cap })
    }

    /// Canonical document for this presentation. Degrees and the path cap
    /// are always written out.
    pub fn to_document(&self) -> AlgebraDocument {
        let q = &self.quiver;
        AlgebraDocument {
            field: self.field.to_string(),
            vertices: q.vertices.iter().cloned().map(LabelDoc::Text).collect(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowDoc {
                    name: a.name.clone(),
                    source: LabelDoc::Text(q.vertices[a.source].clone()),
                    target: LabelDoc::Text(q.vertices[a.target].clone()),
                    degree: Some(a.degree as i64),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| TermDoc {
                            coeff: coeff_doc(c),
                            path: p.iter().map(|&a| q.arrows[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            options: OptionsDoc { path_cap: Some(self.path_cap) },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }
}

fn coeff_doc(c: &Scalar) -> CoeffDoc {
    if c.is_integer() {
        if let Ok(n) = i64::try_from(c.numer().clone()) {
            return CoeffDoc::Int(n);
        }
    }
    CoeffDoc::Text(format_scalar(c))
}

fn resolve_relation(
    field: Field,
    quiver: &Quiver,
    index: usize,
    terms: &[TermDoc],
) -> Result<Option<Relation>> {
    let mut combined: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    let mut shape: Option<(usize, usize, u32)> = None;
    for t in terms {
        let coeff = match &t.coeff {
            CoeffDoc::Int(n) => Scalar::from_integer((*n).into()),
            CoeffDoc::Text(s) => parse_rational(s).ok_or_else(|| {
                Error::Parse(format!("relation {index}: malformed coefficient `{s}`"))
            })?,
        };
        let coeff = field.element(coeff)?;
        let path = t
            .path
            .iter()
            .map(|name| {
                quiver.arrow_index(name).ok_or_else(|| {
                    Error::Parse(format!("relation {index}: unknown arrow `{name}`"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if path.len() < 2 {
            return Err(Error::Validation(format!(
                "relation {index}: path of length {} (relations need length ≥ 2)",
                path.len()
            )));
        }
        let (s, e) = quiver.endpoints(&path).ok_or_else(|| {
            Error::Validation(format!("relation {index}: path {:?} is not composable", t.path))
        })?;
        let deg = quiver.path_degree(&path);
        match shape {
            None => shape = Some((s, e, deg)),
            Some((s0, e0, d0)) => {
                if (s0, e0) != (s, e) {
                    return Err(Error::Validation(format!(
                        "relation {index}: paths are not parallel"
                    )));
                }
                if d0 != deg {
                    return Err(Error::Validation(format!(
                        "relation {index}: inhomogeneous (degrees {d0} and {deg})"
                    )));
                }
            }
        }
        let entry = combined.entry(path).or_insert_with(Scalar::zero);
        *entry = field.add(entry, &coeff);
    }
    let terms: Vec<(Scalar, Vec<usize>)> =
        combined.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect();
    match (shape, terms.is_empty()) {
        (Some((source, target, degree)), false) => {
            Ok(Some(Relation { terms, source, target, degree }))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = r#"{"field":"Q","vertices":["1"],
        "arrows":[{"name":"x","source":"1","target":"1"}],
        "relations":[[{"coeff":1,"path":["x","x"]}]]}"#;

    #[test]
    fn one_loop_with_square_relation() {
        let p = Presentation::parse(DUAL).unwrap();
        assert_eq!(p.quiver.vertex_count(), 1);
        assert_eq!(p.quiver.arrows.len(), 1);
        assert_eq!(p.quiver.arrows[0].degree, 1);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.path_cap, DEFAULT_PATH_CAP);
    }

    #[test]
    fn a2_without_relations() {
        let p = Presentation::parse(
            r#"{"field":"F3","vertices":["1","2"],"arrows":[{"name":"a","source":"1","target":"2"}]}"#,
        )
        .unwrap();
        assert_eq!(p.field, Field::Prime(3));
        assert_eq!(p.quiver.arrows[0].source, 0);
        assert_eq!(p.quiver.arrows[0].target, 1);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let text = r#"{"field":"Q","vertices":["1"],
            "arrows":[{"name":"x","source":"1","target":"1","degree":1}],
            "relations":[[{"coeff":1,"path":["x","x"]},{"coeff":1,"path":["x","x","x"]}]]}"#;
        let err = Presentation::parse(text).unwrap_err();
        assert!(matches!(err, Error::Validation(ref m) if m.contains("inhomogeneous")), "{err}");
    }

    #[test]
    fn error_kinds() {
        let syntax = Presentation::parse("{\"field\": \"Q\",\n \"vertices\": [").unwrap_err();
        assert!(matches!(syntax, Error::Parse(ref m) if m.contains("line 2")), "{syntax}");

        let unknown = r#"{"field":"Q","vertices":["1"],"arrows":[{"name":"x","source":"1","target":"9"}]}"#;
        assert!(matches!(Presentation::parse(unknown), Err(Error::Parse(_))));

        let nonprime = r#"{"field":"F4","vertices":["1"]}"#;
        assert!(matches!(Presentation::parse(nonprime), Err(Error::Validation(_))));

        let nonparallel = r#"{"field":"Q","vertices":["1","2"],
            "arrows":[{"name":"x","source":"1","target":"1"},{"name":"y","source":"2","target":"2"}],
            "relations":[[{"coeff":1,"path":["x","x"]},{"coeff":1,"path":["y","y"]}]]}"#;
        assert!(matches!(Presentation::parse(nonparallel), Err(Error::Validation(ref m)) if m.contains("parallel")));

        let short = r#"{"field":"Q","vertices":["1"],"arrows":[{"name":"x","source":"1","target":"1"}],
            "relations":[[{"coeff":1,"path":["x"]}]]}"#;
        assert!(matches!(Presentation::parse(short), Err(Error::Validation(_))));

        let zero_degree = r#"{"field":"Q","vertices":["1"],"arrows":[{"name":"x","source":"1","target":"1","degree":0}]}"#;
        assert!(matches!(Presentation::parse(zero_degree), Err(Error::Validation(_))));
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let text = r#"{"field":"F5","vertices":["1"],
            "arrows":[{"name":"x","source":"1","target":"1"},{"name":"y","source":"1","target":"1"}],
            "relations":[[{"coeff":7,"path":["x","y"]},{"coeff":"1/2","path":["y","x"]}]]}"#;
        let p = Presentation::parse(text).unwrap();
        let f = Field::Prime(5);
        assert_eq!(p.relations[0].terms[0].0, f.from_int(2));
        assert_eq!(p.relations[0].terms[1].0, f.from_int(3));
    }

    #[test]
    fn reserialization_is_stable() {
        let p = Presentation::parse(DUAL).unwrap();
        let again = Presentation::parse(&p.to_json()).unwrap();
        assert_eq!(p, again);
        assert_eq!(p.to_json(), again.to_json());
    }
}
