//! The JSON graph interchange format.
//!
//! ```text
//! {"m": int, "n": int,
//!  "vertices": [{"id": int, "in": int, "out": int, "label": string?}],
//!  "edges": [{"src": ["input", i] | ["vout", vid, k],
//!             "dst": ["output", j] | ["vin", vid, k]}]}
//! ```
//!
//! Field order is fixed as above. Vertices are written sorted by id and
//! edges sorted by source (inputs before vertex outputs, then id, then
//! index). Vertices may carry extension fields after `label`:
//! `alphabet` (`"P"` or `"M"`, mixed graphs), `slot` (numbered vertices of
//! partially labeled graphs) and `inner` (a nested graph). A top-level
//! `source` string records where a fixture comes from.

use std::collections::BTreeSet;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Source, Target, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub m: usize,
    pub n: usize,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: u32,
    #[serde(rename = "in")]
    pub inputs: usize,
    #[serde(rename = "out")]
    pub outputs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Alphabet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<GraphDoc>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    P,
    M,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    #[serde(serialize_with = "ser_source", deserialize_with = "de_source")]
    pub src: Source,
    #[serde(serialize_with = "ser_target", deserialize_with = "de_target")]
    pub dst: Target,
}

fn ser_source<S: Serializer>(s: &Source, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match *s {
        Source::Input(i) => {
            let mut seq = ser.serialize_seq(Some(2))?;
            seq.serialize_element("input")?;
            seq.serialize_element(&i)?;
            seq.end()
        }
        Source::VertexOut(v, k) => {
            let mut seq = ser.serialize_seq(Some(3))?;
            seq.serialize_element("vout")?;
            seq.serialize_element(&v)?;
            seq.serialize_element(&k)?;
            seq.end()
        }
    }
}

fn ser_target<S: Serializer>(t: &Target, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match *t {
        Target::Output(j) => {
            let mut seq = ser.serialize_seq(Some(2))?;
            seq.serialize_element("output")?;
            seq.serialize_element(&j)?;
            seq.end()
        }
        Target::VertexIn(v, k) => {
            let mut seq = ser.serialize_seq(Some(3))?;
            seq.serialize_element("vin")?;
            seq.serialize_element(&v)?;
            seq.serialize_element(&k)?;
            seq.end()
        }
    }
}

fn endpoint<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<(String, Vec<u64>), D::Error> {
    let items = Vec::<Value>::deserialize(de)?;
    let (kind, rest) = items.split_first().ok_or_else(|| de::Error::custom("empty endpoint"))?;
    let kind = kind.as_str().ok_or_else(|| de::Error::custom("endpoint kind must be a string"))?;
    let nums = rest
        .iter()
        .map(|v| v.as_u64().ok_or_else(|| de::Error::custom("endpoint indices must be non-negative integers")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((kind.to_owned(), nums))
}

fn de_source<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Source, D::Error> {
    match endpoint(de)? {
        (k, n) if k == "input" && n.len() == 1 => Ok(Source::Input(n[0] as usize)),
        (k, n) if k == "vout" && n.len() == 2 => Ok(Source::VertexOut(n[0] as u32, n[1] as usize)),
        (k, _) => Err(de::Error::custom(format!("bad edge source `{k}`"))),
    }
}

fn de_target<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Target, D::Error> {
    match endpoint(de)? {
        (k, n) if k == "output" && n.len() == 1 => Ok(Target::Output(n[0] as usize)),
        (k, n) if k == "vin" && n.len() == 2 => Ok(Target::VertexIn(n[0] as u32, n[1] as usize)),
        (k, _) => Err(de::Error::custom(format!("bad edge target `{k}`"))),
    }
}

/// How a vertex label is stored in a [`VertexDoc`].
pub trait DocLabel: Sized {
    fn write(&self, vertex: &mut VertexDoc);
    fn read(vertex: &VertexDoc) -> Result<Self>;
}

impl DocLabel for () {
    fn write(&self, _: &mut VertexDoc) {}
    fn read(_: &VertexDoc) -> Result<Self> {
        Ok(())
    }
}

impl DocLabel for Option<String> {
    fn write(&self, vertex: &mut VertexDoc) {
        vertex.label = self.clone();
    }
    fn read(vertex: &VertexDoc) -> Result<Self> {
        Ok(vertex.label.clone())
    }
}

impl DocLabel for String {
    fn write(&self, vertex: &mut VertexDoc) {
        vertex.label = Some(self.clone());
    }
    fn read(vertex: &VertexDoc) -> Result<Self> {
        vertex.label.clone().ok_or_else(|| Error::Parse(format!("vertex {} has no label", vertex.id)))
    }
}

impl GraphDoc {
    pub fn from_graph<L: DocLabel>(g: &Graph<L>) -> GraphDoc {
        GraphDoc {
            m: g.inputs(),
            n: g.outputs(),
            vertices: g
                .vertices()
                .iter()
                .map(|(&id, v)| {
                    let mut doc = VertexDoc { id, inputs: v.arity, outputs: v.coarity, ..Default::default() };
                    v.label.write(&mut doc);
                    doc
                })
                .collect(),
            edges: g.edges().iter().map(|e| EdgeDoc { src: e.src, dst: e.dst }).collect(),
            source: None,
        }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> GraphDoc {
        self.source = Some(source.into());
        self
    }

    pub fn to_graph<L: DocLabel>(&self) -> Result<Graph<L>> {
        let mut ids = BTreeSet::new();
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            if !ids.insert(v.id) {
                return Err(Error::Parse(format!("duplicate vertex id {}", v.id)));
            }
            vertices.push((v.id, Vertex::new(v.inputs, v.outputs, L::read(v)?)));
        }
        Ok(Graph::from_parts(self.m, self.n, vertices, self.edges.iter().map(|e| Edge::new(e.src, e.dst))))
    }

    pub fn parse(text: &str) -> Result<GraphDoc> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Single-line form, used for JSON-lines output.
    pub fn to_compact(&self) -> String {
        serde_json::to_string(self).expect("graph documents always serialize")
    }

    /// File form: one vertex or edge per line, terminated by a newline.
    pub fn to_pretty(&self) -> String {
        fn list<T: Serialize>(out: &mut String, key: &str, items: &[T]) {
            out.push_str(&format!("  \"{key}\": ["));
            if items.is_empty() {
                out.push(']');
                return;
            }
            out.push('\n');
            for (i, item) in items.iter().enumerate() {
                out.push_str("    ");
                out.push_str(&serde_json::to_string(item).expect("serializable"));
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str("  ]");
        }
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"m\": {},\n  \"n\": {},\n", self.m, self.n));
        list(&mut out, "vertices", &self.vertices);
        out.push_str(",\n");
        list(&mut out, "edges", &self.edges);
        if let Some(source) = &self.source {
            out.push_str(",\n  \"source\": ");
            out.push_str(&serde_json::to_string(source).expect("serializable"));
        }
        out.push_str("\n}\n");
        out
    }
}

impl<L: DocLabel> Graph<L> {
    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc::from_graph(self)
    }

    pub fn from_json(text: &str) -> Result<Graph<L>> {
        GraphDoc::parse(text)?.to_graph()
    }

    pub fn to_json(&self) -> String {
        self.to_doc().to_compact()
    }
}
