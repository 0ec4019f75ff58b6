use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_order, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::VertexId;

use super::mixed::{check_mixed, merge, mergeable, mergeable_pairs, normal_form, MixedGraph, MixedLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Repeatedly merge the mergeable pair that comes first in the
    /// canonical vertex order.
    Greedy,
    /// Explore every merge sequence.
    Exhaustive,
}

/// A collapsed graph and a merge sequence reaching it. Merged vertices
/// keep the id of their first vertex, so steps refer to ids of the input
/// graph.
#[derive(Clone, Debug)]
pub struct Irreducible {
    pub graph: MixedGraph,
    pub form: CanonicalForm<MixedLabel>,
    pub steps: Vec<(VertexId, VertexId)>,
}

pub fn collapse_greedy(g: &MixedGraph) -> Result<Irreducible> {
    check_mixed(g)?;
    let mut current = g.clone();
    let mut steps = Vec::new();
    'outer: loop {
        let (order, _) = canonical_order(&current)?;
        for (i, &u) in order.iter().enumerate() {
            if !current.vertex(u).expect("ordered vertex").label.is_p() {
                continue;
            }
            for &v in &order[i + 1..] {
                if current.vertex(v).expect("ordered vertex").label.is_p() && mergeable(&current, u, v)? {
                    current = merge(&current, u, v)?;
                    steps.push((u, v));
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(Irreducible { form: normal_form(&current)?, graph: current, steps })
}

/// Default bound on the number of distinct states explored.
pub const MAX_STATES: usize = 100_000;

/// Every irreducible graph reachable by some merge sequence, one per
/// normal form, sorted by normal form.
pub fn collapse_exhaustive(g: &MixedGraph, max_states: usize) -> Result<Vec<Irreducible>> {
    check_mixed(g)?;
    let mut seen: BTreeSet<CanonicalForm<MixedLabel>> = BTreeSet::new();
    let mut results: BTreeMap<CanonicalForm<MixedLabel>, Irreducible> = BTreeMap::new();
    let mut queue: VecDeque<(MixedGraph, Vec<(VertexId, VertexId)>)> = VecDeque::new();
    seen.insert(normal_form(g)?);
    queue.push_back((g.clone(), Vec::new()));
    while let Some((state, steps)) = queue.pop_front() {
        let pairs = mergeable_pairs(&state)?;
        if pairs.is_empty() {
            let form = normal_form(&state)?;
            results.entry(form.clone()).or_insert(Irreducible { graph: state, form, steps });
            continue;
        }
        for (u, v) in pairs {
            let next = merge(&state, u, v)?;
            if seen.insert(normal_form(&next)?) {
                if seen.len() > max_states {
                    return Err(Error::ResourceLimit(format!("more than {max_states} collapse states")));
                }
                let mut path = steps.clone();
                path.push((u, v));
                queue.push_back((next, path));
            }
        }
    }
    Ok(results.into_values().collect())
}

pub fn collapse(g: &MixedGraph, strategy: Strategy) -> Result<Vec<Irreducible>> {
    match strategy {
        Strategy::Greedy => Ok(vec![collapse_greedy(g)?]),
        Strategy::Exhaustive => collapse_exhaustive(g, MAX_STATES),
    }
}
