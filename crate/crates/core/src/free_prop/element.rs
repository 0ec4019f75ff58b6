use std::fmt;

use crate::canonical::{canonicalize, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Source, Target, Vertex, VertexId};
use crate::json::{DocLabel, GraphDoc, VertexDoc};
use crate::perm::Perm;

use super::signature::Signature;

/// An element of the free prop on labels `L`: the isomorphism class of an
/// `L`-labeled graph, stored as its canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropElement<L = String>(CanonicalForm<L>);

impl<L: fmt::Debug> fmt::Debug for PropElement<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("PropElement").field(self.graph()).finish()
    }
}

impl<L: Ord + Clone> PropElement<L> {
    pub fn from_graph(g: &Graph<L>) -> Result<Self> {
        Ok(PropElement(canonicalize(g)?))
    }

    pub fn identity(n: usize) -> Self {
        PropElement(canonicalize(&Graph::identity(n)).expect("identity graphs are valid"))
    }

    /// The one-vertex graph with input `i` wired to input port `i` and
    /// output port `j` wired to output `j`.
    pub fn corolla(arity: usize, coarity: usize, label: L) -> Self {
        let edges = (1..=arity)
            .map(|i| Edge::new(Source::Input(i), Target::VertexIn(1, i)))
            .chain((1..=coarity).map(|j| Edge::new(Source::VertexOut(1, j), Target::Output(j))));
        let g = Graph::from_parts(arity, coarity, [(1, Vertex::new(arity, coarity, label))], edges);
        PropElement(canonicalize(&g).expect("corollas are valid"))
    }

    pub fn hcompose(&self, other: &Self) -> Result<Self> {
        Self::from_graph(&self.graph().hcompose(other.graph())?)
    }

    /// `self` on top, `bottom` plugged into its outputs.
    pub fn vcompose(&self, bottom: &Self) -> Result<Self> {
        Self::from_graph(&self.graph().vcompose(bottom.graph())?)
    }

    pub fn permute_inputs(&self, w: &Perm) -> Result<Self> {
        Self::from_graph(&self.graph().permute_inputs(w)?)
    }

    pub fn permute_outputs(&self, w: &Perm) -> Result<Self> {
        Self::from_graph(&self.graph().permute_outputs(w)?)
    }

    pub fn map_labels<M: Ord + Clone>(&self, mut f: impl FnMut(&L) -> M) -> Result<PropElement<M>> {
        PropElement::from_graph(&self.graph().map_labels(|_, l| f(l)))
    }
}

impl<L> PropElement<L> {
    /// The canonical representative: vertices numbered `1..=r`.
    pub fn graph(&self) -> &Graph<L> {
        self.0.graph()
    }

    pub fn form(&self) -> &CanonicalForm<L> {
        &self.0
    }

    pub fn boundary(&self) -> (usize, usize) {
        self.graph().boundary()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph().vertex_count()
    }
}

impl PropElement<String> {
    /// Checks every vertex label against the signature.
    pub fn check_signature(&self, sig: &Signature) -> Result<()> {
        for v in self.graph().vertices().values() {
            sig.check_vertex(&v.label, v.arity, v.coarity)?;
        }
        Ok(())
    }
}

/// The corolla of a generator.
pub fn corolla(sig: &Signature, name: &str) -> Result<PropElement> {
    let g = sig.get(name)?;
    Ok(PropElement::corolla(g.m, g.n, g.name.clone()))
}

/// The universal composition product: replaces each vertex of `outer` by
/// the graph of its label and splices the boundary wires.
pub fn expand<L: Ord + Clone>(outer: &Graph<PropElement<L>>) -> Result<PropElement<L>> {
    PropElement::from_graph(&outer.substitute(|_, v: &Vertex<PropElement<L>>| Ok(v.label.graph().clone()))?)
}

impl<L: Ord + Clone> PropElement<PropElement<L>> {
    pub fn flatten(&self) -> Result<PropElement<L>> {
        expand(self.graph())
    }
}

/// Lifts every label of `g` to its corolla.
pub fn corolla_labels<L: Ord + Clone>(g: &Graph<L>) -> Graph<PropElement<L>> {
    g.map_labels(|id: VertexId, l| {
        let v = g.vertex(id).expect("vertex of g");
        PropElement::corolla(v.arity, v.coarity, l.clone())
    })
}

/// Nested graphs store a vertex label either as an `inner` graph or, for a
/// corolla, as a plain `label`.
impl DocLabel for PropElement<String> {
    fn write(&self, vertex: &mut VertexDoc) {
        vertex.inner = Some(Box::new(GraphDoc::from_graph(self.graph())));
    }

    fn read(vertex: &VertexDoc) -> Result<Self> {
        match (&vertex.inner, &vertex.label) {
            (Some(inner), _) => PropElement::from_graph(&inner.to_graph::<String>()?),
            (None, Some(label)) => Ok(PropElement::corolla(vertex.inputs, vertex.outputs, label.clone())),
            (None, None) => Err(Error::Parse(format!("vertex {} has neither a label nor an inner graph", vertex.id))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        use super::super::signature::Generator;
        Signature::new([Generator::new("p", 2, 1), Generator::new("s", 1, 2)]).unwrap()
    }

    #[test]
    fn corollas_are_valid() {
        let p = corolla(&sig(), "p").unwrap();
        assert!(p.graph().is_valid());
        assert_eq!(p.boundary(), (2, 1));
        assert!(matches!(corolla(&sig(), "q"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn empty_element_is_the_horizontal_unit() {
        let p = corolla(&sig(), "p").unwrap();
        assert_eq!(p.hcompose(&PropElement::identity(0)).unwrap(), p);
    }

    #[test]
    fn expand_of_corolla_labels_is_the_identity() {
        let s = corolla(&sig(), "s").unwrap();
        let p = corolla(&sig(), "p").unwrap();
        let e = s.vcompose(&p).unwrap();
        assert_eq!(expand(&corolla_labels(e.graph())).unwrap(), e);
    }

    #[test]
    fn expand_of_a_corolla_of_an_element_is_the_element() {
        let s = corolla(&sig(), "s").unwrap();
        let e = s.vcompose(&corolla(&sig(), "p").unwrap()).unwrap();
        let outer = PropElement::corolla(1, 1, e.clone());
        assert_eq!(outer.flatten().unwrap(), e);
    }
}
