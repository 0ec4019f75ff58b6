//! Reading input documents and shared option parsing.

use std::path::{Path, PathBuf};

use propcalc::canonical::EnumLimits;
use propcalc::coproduct::MixedGraph;
use propcalc::free_prop::{PartialLabeledGraph, PropElement, Signature};
use propcalc::graph::Graph;
use propcalc::json::{DocLabel, GraphDoc};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub const MAX_VERTICES_VAR: &str = "PROPCALC_MAX_VERTICES";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] propcalc::Error),

    /// A check ran to completion and reported a failure on stdout.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Usage(_) => 2,
            CliError::Domain(e) if e.is_malformed_input() => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })
}

pub fn read_doc(path: &Path) -> CliResult<GraphDoc> {
    Ok(GraphDoc::parse(&read(path)?)?)
}

pub fn read_graph<L: DocLabel>(path: &Path) -> CliResult<Graph<L>> {
    Ok(read_doc(path)?.to_graph()?)
}

pub fn read_element(path: &Path) -> CliResult<PropElement> {
    Ok(PropElement::from_graph(&read_graph::<String>(path)?)?)
}

pub fn read_signature(path: &Path) -> CliResult<Signature> {
    Ok(Signature::from_json(&read(path)?)?)
}

pub fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| propcalc::Error::Parse(e.to_string()).into())
}

/// The label kind of a graph document, read off its vertex fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocKind {
    Plain,
    Mixed,
    Partial,
    Nested,
}

impl DocKind {
    pub fn of(doc: &GraphDoc) -> DocKind {
        if doc.vertices.iter().any(|v| v.alphabet.is_some()) {
            DocKind::Mixed
        } else if doc.vertices.iter().any(|v| v.slot.is_some()) {
            DocKind::Partial
        } else if doc.vertices.iter().any(|v| v.inner.is_some()) {
            DocKind::Nested
        } else {
            DocKind::Plain
        }
    }
}

/// A graph document read with the label type its fields call for.
pub enum AnyGraph {
    Plain(Graph<Option<String>>),
    Mixed(MixedGraph),
    Partial(PartialLabeledGraph),
    Nested(Graph<PropElement>),
}

impl AnyGraph {
    pub fn from_doc(doc: &GraphDoc) -> CliResult<AnyGraph> {
        Ok(match DocKind::of(doc) {
            DocKind::Plain => AnyGraph::Plain(doc.to_graph()?),
            DocKind::Mixed => AnyGraph::Mixed(doc.to_graph()?),
            DocKind::Partial => AnyGraph::Partial(doc.to_graph()?),
            DocKind::Nested => AnyGraph::Nested(doc.to_graph()?),
        })
    }

    pub fn read(path: &Path) -> CliResult<AnyGraph> {
        AnyGraph::from_doc(&read_doc(path)?)
    }
}

/// Runs `$body` with `$g` bound to the graph inside an [`AnyGraph`].
macro_rules! with_graph {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            $crate::input::AnyGraph::Plain($g) => $body,
            $crate::input::AnyGraph::Mixed($g) => $body,
            $crate::input::AnyGraph::Partial($g) => $body,
            $crate::input::AnyGraph::Nested($g) => $body,
        }
    };
}
pub(crate) use with_graph;

pub fn doc_value<L: DocLabel>(g: &Graph<L>) -> Value {
    serde_json::to_value(GraphDoc::from_graph(g)).expect("graph documents serialize")
}

/// Enumeration caps, with the vertex cap taken from the environment when
/// set.
pub fn enum_limits() -> CliResult<EnumLimits> {
    let mut limits = EnumLimits::default();
    if let Ok(value) = std::env::var(MAX_VERTICES_VAR) {
        let cap: usize = value.trim().parse().map_err(|_| {
            CliError::Usage(format!("{MAX_VERTICES_VAR} must be a non-negative integer, got `{value}`"))
        })?;
        limits.max_vertices = cap;
        limits.max_edges = limits.max_edges.max(4 * cap);
    }
    Ok(limits)
}

/// Parses `a:b,c:d` into arity pairs.
pub fn parse_arities(text: &str) -> Result<Vec<(usize, usize)>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|pair| {
            let (a, b) = pair.split_once(':').ok_or_else(|| format!("`{pair}` is not of the form in:out"))?;
            let a = a.trim().parse().map_err(|_| format!("bad arity `{a}`"))?;
            let b = b.trim().parse().map_err(|_| format!("bad coarity `{b}`"))?;
            Ok((a, b))
        })
        .collect()
}

/// Parses a comma-separated list of names; the empty string is the empty
/// list.
pub fn parse_names(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::to_owned).collect()
}
