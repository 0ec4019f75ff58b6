//! Partially labeled graphs: some vertices carry generator labels, the
//! others carry slot numbers.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::json::{DocLabel, VertexDoc};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartialLabel {
    Labeled(String),
    Slot(u32),
}

impl DocLabel for PartialLabel {
    fn write(&self, vertex: &mut VertexDoc) {
        match self {
            PartialLabel::Labeled(name) => vertex.label = Some(name.clone()),
            PartialLabel::Slot(k) => vertex.slot = Some(*k),
        }
    }

    fn read(vertex: &VertexDoc) -> Result<Self> {
        match (&vertex.label, vertex.slot) {
            (Some(name), None) => Ok(PartialLabel::Labeled(name.clone())),
            (None, Some(k)) => Ok(PartialLabel::Slot(k)),
            _ => Err(Error::Parse(format!("vertex {} needs exactly one of `label` and `slot`", vertex.id))),
        }
    }
}

pub type PartialLabeledGraph = Graph<PartialLabel>;

/// Number of labeled (as opposed to numbered) vertices.
pub fn filtration_degree(g: &PartialLabeledGraph) -> usize {
    g.vertices().values().filter(|v| matches!(v.label, PartialLabel::Labeled(_))).count()
}

/// Keeps the graphs of degree at most `e`.
pub fn filter_upto<'a>(
    graphs: impl IntoIterator<Item = &'a PartialLabeledGraph>,
    e: usize,
) -> impl Iterator<Item = &'a PartialLabeledGraph> {
    graphs.into_iter().filter(move |g| filtration_degree(g) <= e)
}

/// Checks that slots are numbered `1..=k` without repetition.
pub fn check_slots(g: &PartialLabeledGraph) -> Result<()> {
    let mut slots: Vec<u32> = g
        .vertices()
        .values()
        .filter_map(|v| match v.label {
            PartialLabel::Slot(k) => Some(k),
            PartialLabel::Labeled(_) => None,
        })
        .collect();
    slots.sort_unstable();
    if slots.iter().enumerate().any(|(i, &k)| k as usize != i + 1) {
        return Err(Error::Precondition(format!("slots {slots:?} are not 1..k")));
    }
    Ok(())
}

/// Every way of keeping the labels of a subset of the vertices and
/// numbering the rest in increasing id order, one graph per subset.
pub fn partial_labelings(g: &Graph<String>) -> Vec<PartialLabeledGraph> {
    let ids: Vec<VertexId> = g.vertices().keys().copied().collect();
    (0u64..1 << ids.len())
        .map(|keep| {
            let mut slot = 0;
            g.map_labels(|v, l| {
                let i = ids.binary_search(&v).expect("vertex id");
                if keep & (1 << i) != 0 {
                    PartialLabel::Labeled(l.clone())
                } else {
                    slot += 1;
                    PartialLabel::Slot(slot)
                }
            })
        })
        .collect()
}
