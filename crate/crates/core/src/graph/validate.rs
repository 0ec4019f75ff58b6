use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Graph, Port, Source, Target, VertexId};

/// A failed graph condition, naming the offending port or vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    /// A boundary index or port index outside the declared range.
    PortOutOfRange(Port),
    /// An edge endpoint names a vertex that does not exist.
    UnknownVertex(Port),
    /// A boundary position or vertex port without an edge.
    MissingEdge(Port),
    /// A boundary position or vertex port used by several edges.
    MultipleEdges { port: Port, count: usize },
    /// Vertices on a directed cycle, in path order.
    Cycle(Vec<VertexId>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PortOutOfRange(p) => write!(f, "{p} is out of range"),
            Violation::UnknownVertex(p) => write!(f, "{p} refers to a missing vertex"),
            Violation::MissingEdge(p) => write!(f, "{p} is not the endpoint of any edge"),
            Violation::MultipleEdges { port, count } => {
                write!(f, "{port} is the endpoint of {count} edges")
            }
            Violation::Cycle(vs) => write!(f, "directed cycle through vertices {vs:?}"),
        }
    }
}

impl Violation {
    /// Short name of the violated condition.
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::PortOutOfRange(_) => "range",
            Violation::UnknownVertex(_) => "vertex",
            Violation::MissingEdge(Port::Input(_)) | Violation::MultipleEdges { port: Port::Input(_), .. } => "inputs",
            Violation::MissingEdge(Port::Output(_)) | Violation::MultipleEdges { port: Port::Output(_), .. } => {
                "outputs"
            }
            Violation::MissingEdge(_) | Violation::MultipleEdges { .. } => "ports",
            Violation::Cycle(_) => "acyclicity",
        }
    }
}

pub(super) fn violations<L>(g: &Graph<L>) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut src_uses: BTreeMap<Source, usize> = BTreeMap::new();
    let mut dst_uses: BTreeMap<Target, usize> = BTreeMap::new();

    for e in g.edges() {
        if let Some(p) = bad_source(g, e.src) {
            out.push(p);
        } else {
            *src_uses.entry(e.src).or_default() += 1;
        }
        if let Some(p) = bad_target(g, e.dst) {
            out.push(p);
        } else {
            *dst_uses.entry(e.dst).or_default() += 1;
        }
    }

    let mut expected_sources: Vec<Source> = (1..=g.inputs()).map(Source::Input).collect();
    let mut expected_targets: Vec<Target> = (1..=g.outputs()).map(Target::Output).collect();
    for (&id, v) in g.vertices() {
        expected_sources.extend((1..=v.coarity).map(|k| Source::VertexOut(id, k)));
        expected_targets.extend((1..=v.arity).map(|k| Target::VertexIn(id, k)));
    }
    for s in expected_sources {
        match src_uses.get(&s).copied().unwrap_or(0) {
            0 => out.push(Violation::MissingEdge(s.into())),
            1 => {}
            count => out.push(Violation::MultipleEdges { port: s.into(), count }),
        }
    }
    for t in expected_targets {
        match dst_uses.get(&t).copied().unwrap_or(0) {
            0 => out.push(Violation::MissingEdge(t.into())),
            1 => {}
            count => out.push(Violation::MultipleEdges { port: t.into(), count }),
        }
    }

    if let Some(cycle) = find_cycle(g) {
        out.push(Violation::Cycle(cycle));
    }
    out
}

fn bad_source<L>(g: &Graph<L>, s: Source) -> Option<Violation> {
    match s {
        Source::Input(i) if i == 0 || i > g.inputs() => Some(Violation::PortOutOfRange(s.into())),
        Source::Input(_) => None,
        Source::VertexOut(v, k) => match g.vertex(v) {
            None => Some(Violation::UnknownVertex(s.into())),
            Some(vx) if k == 0 || k > vx.coarity => Some(Violation::PortOutOfRange(s.into())),
            Some(_) => None,
        },
    }
}

fn bad_target<L>(g: &Graph<L>, t: Target) -> Option<Violation> {
    match t {
        Target::Output(j) if j == 0 || j > g.outputs() => Some(Violation::PortOutOfRange(t.into())),
        Target::Output(_) => None,
        Target::VertexIn(v, k) => match g.vertex(v) {
            None => Some(Violation::UnknownVertex(t.into())),
            Some(vx) if k == 0 || k > vx.arity => Some(Violation::PortOutOfRange(t.into())),
            Some(_) => None,
        },
    }
}

/// Depth-first search over vertex-to-vertex edges between existing vertices.
fn find_cycle<L>(g: &Graph<L>) -> Option<Vec<VertexId>> {
    let mut succ: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for e in g.edges() {
        if let (Some(u), Some(v)) = (e.src.vertex(), e.dst.vertex()) {
            if g.vertex(u).is_some() && g.vertex(v).is_some() {
                succ.entry(u).or_default().insert(v);
            }
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark: BTreeMap<VertexId, Mark> = g.vertices().keys().map(|&v| (v, Mark::New)).collect();
    let empty = BTreeSet::new();

    for &root in g.vertices().keys() {
        if mark[&root] != Mark::New {
            continue;
        }
        // Explicit stack of (vertex, remaining successors).
        let mut path: Vec<VertexId> = vec![root];
        let mut stack: Vec<Vec<VertexId>> = vec![succ.get(&root).unwrap_or(&empty).iter().rev().copied().collect()];
        mark.insert(root, Mark::Active);
        while let Some(pending) = stack.last_mut() {
            match pending.pop() {
                Some(next) => match mark[&next] {
                    Mark::Active => {
                        let start = path.iter().position(|&v| v == next).unwrap();
                        return Some(path[start..].to_vec());
                    }
                    Mark::Done => {}
                    Mark::New => {
                        mark.insert(next, Mark::Active);
                        path.push(next);
                        stack.push(succ.get(&next).unwrap_or(&empty).iter().rev().copied().collect());
                    }
                },
                None => {
                    let v = path.pop().unwrap();
                    mark.insert(v, Mark::Done);
                    stack.pop();
                }
            }
        }
    }
    None
}
