//! Algebra assignments and evaluation of graphs by tensor contraction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::rat::RatTensor;
use crate::error::{Error, Result};
use crate::free_prop::{PropElement, Signature};
use crate::graph::{Graph, Source, Target, VertexId};

/// An algebra structure on `X = Q^dim`: one matrix of shape
/// `dim^n × dim^m` per generator of shape `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraAssignment {
    pub dim: usize,
    pub matrices: BTreeMap<String, RatTensor>,
}

impl AlgebraAssignment {
    pub fn new(dim: usize, matrices: impl IntoIterator<Item = (String, RatTensor)>) -> Self {
        AlgebraAssignment { dim, matrices: matrices.into_iter().collect() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let a: AlgebraAssignment = serde_json::from_str(text)?;
        if a.dim == 0 {
            return Err(Error::Parse("`dim` must be positive".into()));
        }
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("assignments serialize")
    }

    /// The matrix of `label`, checked against a vertex of shape
    /// `(arity, coarity)`.
    pub fn matrix(&self, label: &str, arity: usize, coarity: usize) -> Result<&RatTensor> {
        let t = self.matrices.get(label).ok_or_else(|| Error::UnassignedLabel(label.to_owned()))?;
        let (rows, cols) = (pow(self.dim, coarity)?, pow(self.dim, arity)?);
        if t.shape() != [rows, cols] {
            return Err(Error::DimensionMismatch(format!(
                "`{label}` has shape {:?} but a ({arity}, {coarity})-vertex at dimension {} needs [{rows}, {cols}]",
                t.shape(),
                self.dim
            )));
        }
        Ok(t)
    }

    /// Checks that every generator of `sig` is assigned a matrix of the
    /// right shape.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        for g in sig.generators() {
            self.matrix(&g.name, g.m, g.n)?;
        }
        Ok(())
    }
}

pub(crate) fn pow(d: usize, k: usize) -> Result<usize> {
    u32::try_from(k)
        .ok()
        .and_then(|k| d.checked_pow(k))
        .ok_or_else(|| Error::ResourceLimit(format!("{d}^{k} overflows")))
}

/// Size caps for evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalLimits {
    pub max_dim: usize,
    /// Cap on `m + n` of the evaluated element.
    pub max_boundary: usize,
    /// Cap on the entry count of every intermediate tensor.
    pub max_entries: usize,
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits { max_dim: 4, max_boundary: 6, max_entries: 1 << 20 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    In(usize),
    Out(usize),
    Wire(VertexId, usize),
}

/// The linear map `X^{⊗m} → X^{⊗n}` of `g`, as a `d^n × d^m` matrix,
/// contracting vertices in a topological order.
pub fn evaluate<L: AsRef<str>>(g: &Graph<L>, a: &AlgebraAssignment) -> Result<RatTensor> {
    evaluate_with(g, a, EvalLimits::default())
}

pub fn evaluate_with<L: AsRef<str>>(g: &Graph<L>, a: &AlgebraAssignment, limits: EvalLimits) -> Result<RatTensor> {
    g.check()?;
    let order = g.topological_order().expect("checked graphs are acyclic");
    evaluate_in_order(g, a, &order, limits)
}

pub fn evaluate_element(e: &PropElement, a: &AlgebraAssignment) -> Result<RatTensor> {
    evaluate(e.graph(), a)
}

/// Contracts the vertices of `g` in the given order, which must list every
/// vertex exactly once.
pub fn evaluate_in_order<L: AsRef<str>>(
    g: &Graph<L>,
    a: &AlgebraAssignment,
    order: &[VertexId],
    limits: EvalLimits,
) -> Result<RatTensor> {
    let d = a.dim;
    if d == 0 || d > limits.max_dim {
        return Err(Error::ResourceLimit(format!("dimension {d} is outside 1..={}", limits.max_dim)));
    }
    let (m, n) = g.boundary();
    if m + n > limits.max_boundary {
        return Err(Error::ResourceLimit(format!("boundary ({m}, {n}) exceeds m + n ≤ {}", limits.max_boundary)));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if !sorted.iter().copied().eq(g.vertices().keys().copied()) {
        return Err(Error::Precondition("contraction order must list every vertex once".into()));
    }
    let wiring = g.wiring();
    let mut acc = RatTensor::identity(1).reshape(Vec::new())?;
    let mut labels: Vec<Axis> = Vec::new();
    let absorb = |t: RatTensor, t_labels: Vec<Axis>, acc: &mut RatTensor, labels: &mut Vec<Axis>| -> Result<()> {
        let open = labels.len() + t_labels.len() - 2 * labels.iter().filter(|l| t_labels.contains(l)).count();
        if pow(d, open)? > limits.max_entries {
            return Err(Error::ResourceLimit(format!("intermediate tensor with {open} axes of size {d}")));
        }
        let (next, next_labels) = acc.contract(labels, &t, &t_labels)?;
        *acc = next;
        *labels = next_labels;
        Ok(())
    };
    for e in g.edges() {
        if let (Source::Input(i), Target::Output(j)) = (e.src, e.dst) {
            absorb(RatTensor::identity(d), vec![Axis::Out(j), Axis::In(i)], &mut acc, &mut labels)?;
        }
    }
    for &v in order {
        let vertex = g.vertex(v).expect("order lists vertices of g");
        let (arity, coarity) = (vertex.arity, vertex.coarity);
        let t = a.matrix(vertex.label.as_ref(), arity, coarity)?.reshape(vec![d; arity + coarity])?;
        let outs = (1..=coarity).map(|k| match wiring.target_of[&Source::VertexOut(v, k)] {
            Target::Output(j) => Axis::Out(j),
            Target::VertexIn(..) => Axis::Wire(v, k),
        });
        let ins = (1..=arity).map(|k| match wiring.source_of[&Target::VertexIn(v, k)] {
            Source::Input(i) => Axis::In(i),
            Source::VertexOut(u, j) => Axis::Wire(u, j),
        });
        absorb(t, outs.chain(ins).collect(), &mut acc, &mut labels)?;
    }
    let target: Vec<Axis> = (1..=n).map(Axis::Out).chain((1..=m).map(Axis::In)).collect();
    let axes: Vec<usize> =
        target.iter().map(|x| labels.iter().position(|l| l == x).expect("every boundary axis stays open")).collect();
    acc.permute_axes(&axes)?.reshape(vec![pow(d, n)?, pow(d, m)?])
}
