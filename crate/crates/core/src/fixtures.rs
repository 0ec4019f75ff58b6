//! Graph documents transcribed from worked examples, embedded at build
//! time. The files live in the workspace `fixtures/` directory.

use crate::error::{Error, Result};
use crate::json::GraphDoc;

/// `(name, file contents)` of every fixture.
pub const FIXTURES: &[(&str, &str)] = &[
    ("fig1", include_str!("../../../fixtures/fig1.json")),
    ("fig2-left", include_str!("../../../fixtures/fig2-left.json")),
    ("fig2-right", include_str!("../../../fixtures/fig2-right.json")),
    ("fig2h", include_str!("../../../fixtures/fig2h.json")),
    ("fig2v", include_str!("../../../fixtures/fig2v.json")),
    ("fig4", include_str!("../../../fixtures/fig4.json")),
    ("fig4-flat", include_str!("../../../fixtures/fig4-flat.json")),
    ("fig7", include_str!("../../../fixtures/fig7.json")),
    ("fig8", include_str!("../../../fixtures/fig8.json")),
    ("nonacyclic-p2", include_str!("../../../fixtures/nonacyclic-p2.json")),
    ("remark-witness", include_str!("../../../fixtures/remark-witness.json")),
];

pub fn text(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Parse(format!("no fixture named `{name}`")))
}

pub fn doc(name: &str) -> Result<GraphDoc> {
    GraphDoc::parse(text(name)?)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}
