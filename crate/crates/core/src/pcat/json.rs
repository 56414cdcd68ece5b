//! The JSON morphism format.
//!
//! ```json
//! {"source":1,"target":1,"ring":"Q","t":"1","terms":[{"blocks":[[0],[1]],"coeff":"1"}]}
//! ```
//!
//! Writers emit terms sorted by diagram with canonical block order; readers
//! accept any order and sum repeated diagrams.

use serde::{Deserialize, Serialize};
use serde_path_to_error::{Path, Segment};

use super::{Morphism, PartitionDiagram};
use crate::coeff::{parse_polynomial, Ring, RingTag};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub source: usize,
    pub target: usize,
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<String>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub blocks: Vec<Vec<usize>>,
    pub coeff: String,
}

fn pointer(path: &Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        let part = match seg {
            Segment::Seq { index } => index.to_string(),
            Segment::Map { key } => key.replace('~', "~0").replace('/', "~1"),
            Segment::Enum { variant } => variant.clone(),
            // A syntax error inside a value we never reached.
            Segment::Unknown => break,
        };
        out.push('/');
        out.push_str(&part);
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

fn at(path: &str, e: impl std::fmt::Display) -> Error {
    Error::Json {
        path: path.into(),
        msg: e.to_string(),
    }
}

/// Builds a ring from its JSON name and the optional `t` / `minpoly` fields.
pub fn ring_from_fields(name: &str, t: Option<&str>, minpoly: Option<&str>) -> Result<Ring> {
    let misplaced = |field: &str| at(&format!("/{field}"), format!("not allowed for ring {name}"));
    match name {
        "Q" => {
            if minpoly.is_some() {
                return Err(misplaced("minpoly"));
            }
            let t = t.ok_or_else(|| at("/t", "ring Q needs a value for t"))?;
            let t0 = crate::coeff::parse_coefficient(t, &RingTag::Q)
                .map_err(|e| at("/t", e))?
                .as_rational()
                .expect("Q element is rational");
            Ok(Ring::rational(t0))
        }
        "Qt" | "Qratfun" => {
            if t.is_some() {
                return Err(misplaced("t"));
            }
            if minpoly.is_some() {
                return Err(misplaced("minpoly"));
            }
            Ok(if name == "Qt" { Ring::poly() } else { Ring::ratfun() })
        }
        "Qdelta" => {
            if t.is_some() {
                return Err(misplaced("t"));
            }
            let m = minpoly.ok_or_else(|| at("/minpoly", "ring Qdelta needs a minimal polynomial"))?;
            let m = parse_polynomial(m, 'd').map_err(|e| at("/minpoly", e))?;
            Ring::number_field(m).map_err(|e| at("/minpoly", e))
        }
        other => Err(at("/ring", format!("unknown ring '{other}'"))),
    }
}

/// The `(ring, t, minpoly)` fields describing `ring`.
pub fn ring_fields(ring: &Ring) -> (String, Option<String>, Option<String>) {
    let t = ring.t_value().map(|q| q.to_string());
    let minpoly = match ring.tag() {
        RingTag::NumberFieldDelta(m) => Some(m.render('d')),
        _ => None,
    };
    (ring.tag().name().to_string(), t, minpoly)
}

pub fn to_doc(m: &Morphism, kind: Option<&str>) -> MorphismDoc {
    let (ring, t, minpoly) = ring_fields(m.ring());
    MorphismDoc {
        kind: kind.map(str::to_string),
        source: m.source(),
        target: m.target(),
        ring,
        t,
        minpoly,
        terms: m
            .sorted_terms()
            .into_iter()
            .map(|(d, c)| TermDoc {
                blocks: d.blocks(),
                coeff: c.render(),
            })
            .collect(),
    }
}

pub fn from_doc(doc: &MorphismDoc) -> Result<Morphism> {
    let ring = ring_from_fields(&doc.ring, doc.t.as_deref(), doc.minpoly.as_deref())?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (i, term) in doc.terms.iter().enumerate() {
        let d = PartitionDiagram::from_blocks(doc.source, doc.target, &term.blocks)
            .map_err(|e| at(&format!("/terms/{i}/blocks"), e))?;
        let c = ring.parse(&term.coeff).map_err(|e| at(&format!("/terms/{i}/coeff"), e))?;
        terms.push((d, c));
    }
    Morphism::from_terms(&ring, doc.source, doc.target, terms)
}

/// Parses a document, reporting schema errors with a JSON pointer.
pub fn parse_doc(text: &str) -> Result<MorphismDoc> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = pointer(e.path());
        at(&path, e.into_inner())
    })
}

pub fn render_doc(doc: &MorphismDoc) -> String {
    let mut s = serde_json::to_string(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Reads a partition morphism (documents without `kind` or with `"kind":"partition"`).
pub fn read_morphism(text: &str) -> Result<Morphism> {
    let doc = parse_doc(text)?;
    match doc.kind.as_deref() {
        None | Some("partition") => from_doc(&doc),
        Some(other) => Err(at("/kind", format!("expected a partition morphism, found '{other}'"))),
    }
}

pub fn write_morphism(m: &Morphism) -> String {
    render_doc(&to_doc(m, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_then_stable() {
        let text = r#"{"source":1,"target":1,"ring":"Qt","terms":[{"blocks":[[1],[0]],"coeff":"t"},{"blocks":[[0,1]],"coeff":"-1"}]}"#;
        let once = write_morphism(&read_morphism(text).unwrap());
        let twice = write_morphism(&read_morphism(&once).unwrap());
        assert_eq!(once, twice);
        assert_eq!(
            once,
            "{\"source\":1,\"target\":1,\"ring\":\"Qt\",\"terms\":[{\"blocks\":[[0,1]],\"coeff\":\"-1\"},{\"blocks\":[[0],[1]],\"coeff\":\"t\"}]}\n"
        );
    }

    #[test]
    fn errors_carry_pointers() {
        let bad = r#"{"source":1,"target":1,"ring":"Qt","terms":[{"blocks":[[0,1]],"coeff":"t//2"}]}"#;
        match read_morphism(bad) {
            Err(Error::Json { path, msg }) => {
                assert_eq!(path, "/terms/0/coeff");
                assert!(msg.contains("position 2"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
        let bad = r#"{"source":1,"target":1,"ring":"Qt","terms":[{"blocks":"x","coeff":"1"}]}"#;
        assert!(matches!(read_morphism(bad), Err(Error::Json { path, .. }) if path == "/terms/0/blocks"));
        let bad = r#"{"source":1,"target":1,"ring":"Q","terms":[]}"#;
        assert!(matches!(read_morphism(bad), Err(Error::Json { path, .. }) if path == "/t"));
    }

    #[test]
    fn number_field_round_trip() {
        let text = r#"{"source":0,"target":0,"ring":"Qdelta","minpoly":"d^2 - 2","terms":[{"blocks":[],"coeff":"d^3"}]}"#;
        let m = read_morphism(text).unwrap();
        assert!(write_morphism(&m).contains("\"coeff\":\"2*d\""));
    }
}
