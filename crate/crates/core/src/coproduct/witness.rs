//! Search for mixed graphs whose collapse is not confluent.

use crate::canonical::{iso_classes, EnumLimits};
use crate::error::Result;
use crate::free_prop::{multisets, PropElement};
use crate::graph::Vertex;

use super::collapse::{collapse_exhaustive, Irreducible, MAX_STATES};
use super::mixed::{expand_all, MixedGraph, MixedLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessBounds {
    pub max_vertices: usize,
    /// Largest number of `P` vertices considered.
    pub max_p_vertices: usize,
    /// Largest arity and coarity of a vertex.
    pub max_degree: usize,
}

impl Default for WitnessBounds {
    fn default() -> Self {
        WitnessBounds { max_vertices: 6, max_p_vertices: 6, max_degree: 2 }
    }
}

/// A mixed graph with two different irreducible collapses.
#[derive(Clone, Debug)]
pub struct Witness {
    pub graph: MixedGraph,
    pub first: Irreducible,
    pub second: Irreducible,
}

/// Returns `Some` when `g` collapses to at least two irreducible graphs;
/// fails if those have different expansions, which would make merging
/// unsound.
pub fn check_witness(g: &MixedGraph) -> Result<Option<Witness>> {
    let forms = collapse_exhaustive(g, MAX_STATES)?;
    if forms.len() < 2 {
        return Ok(None);
    }
    let expected = expand_all(g)?;
    for f in &forms {
        if expand_all(&f.graph)? != expected {
            return Err(crate::Error::Inconsistent("merging changed the expanded element".into()));
        }
    }
    let mut it = forms.into_iter();
    let first = it.next().expect("two forms");
    let second = it.next().expect("two forms");
    Ok(Some(Witness { graph: g.clone(), first, second }))
}

/// Searches `(0, 0)`-graphs by increasing vertex count. Vertices have
/// arity and coarity at most `max_degree` (not both zero); `P` vertices are
/// corollas of atoms named after their shape.
pub fn non_confluence_witness(bounds: WitnessBounds) -> Result<Option<Witness>> {
    let d = bounds.max_degree;
    let mut types: Vec<Vertex<MixedLabel>> = Vec::new();
    for a in 0..=d {
        for b in 0..=d {
            if a + b == 0 {
                continue;
            }
            types.push(Vertex::new(a, b, MixedLabel::P(PropElement::corolla(a, b, format!("p{a}{b}")))));
            types.push(Vertex::new(a, b, MixedLabel::M(format!("x{a}{b}"))));
        }
    }
    types.sort();
    let limits = EnumLimits { max_vertices: bounds.max_vertices, max_edges: bounds.max_vertices * d };
    for r in 3..=bounds.max_vertices {
        for choice in multisets(types.len(), r) {
            let profile: Vec<Vertex<MixedLabel>> = choice.iter().map(|&i| types[i].clone()).collect();
            let p_count = profile.iter().filter(|v| v.label.is_p()).count();
            if p_count < 3 || p_count > bounds.max_p_vertices || p_count == r {
                continue;
            }
            let ins: usize = profile.iter().map(|v| v.arity).sum();
            let outs: usize = profile.iter().map(|v| v.coarity).sum();
            if ins != outs {
                continue;
            }
            for class in iso_classes(&profile, 0, 0, limits)? {
                if let Some(w) = check_witness(class.graph())? {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}
