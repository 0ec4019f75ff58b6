//! The prop interface and morphisms out of free props.

use std::collections::BTreeMap;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::graph::{Source, Target, VertexId};
use crate::perm::Perm;

use super::element::PropElement;

/// The operations of a prop, on morphisms of type `Self::Morphism`.
pub trait Prop {
    type Morphism: Clone;

    fn identity(&self, n: usize) -> Self::Morphism;

    /// `(inputs, outputs)` of a morphism.
    fn boundary(&self, f: &Self::Morphism) -> (usize, usize);

    fn hcompose(&self, a: &Self::Morphism, b: &Self::Morphism) -> Result<Self::Morphism>;

    /// `top` first, then `bottom`.
    fn vcompose(&self, top: &Self::Morphism, bottom: &Self::Morphism) -> Result<Self::Morphism>;

    fn permute_inputs(&self, f: &Self::Morphism, w: &Perm) -> Result<Self::Morphism>;

    fn permute_outputs(&self, f: &Self::Morphism, w: &Perm) -> Result<Self::Morphism>;

    /// The wire permutation sending position `i` to `w(i)`.
    fn symmetry(&self, w: &Perm) -> Result<Self::Morphism> {
        self.permute_outputs(&self.identity(w.len()), w)
    }
}

/// The free prop on labels of type `L`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeProp<L = String>(PhantomData<L>);

impl<L> FreeProp<L> {
    pub fn new() -> Self {
        FreeProp(PhantomData)
    }
}

impl<L: Ord + Clone> Prop for FreeProp<L> {
    type Morphism = PropElement<L>;

    fn identity(&self, n: usize) -> PropElement<L> {
        PropElement::identity(n)
    }

    fn boundary(&self, f: &PropElement<L>) -> (usize, usize) {
        f.boundary()
    }

    fn hcompose(&self, a: &PropElement<L>, b: &PropElement<L>) -> Result<PropElement<L>> {
        a.hcompose(b)
    }

    fn vcompose(&self, top: &PropElement<L>, bottom: &PropElement<L>) -> Result<PropElement<L>> {
        top.vcompose(bottom)
    }

    fn permute_inputs(&self, f: &PropElement<L>, w: &Perm) -> Result<PropElement<L>> {
        f.permute_inputs(w)
    }

    fn permute_outputs(&self, f: &PropElement<L>, w: &Perm) -> Result<PropElement<L>> {
        f.permute_outputs(w)
    }
}

/// The unique prop morphism out of a free prop extending a label
/// assignment.
pub struct Homomorphism<'a, P: Prop, L> {
    target: &'a P,
    assignment: BTreeMap<L, P::Morphism>,
}

/// Extends `assignment` to a prop morphism from the free prop on `L` into
/// `target`.
pub fn extend_morphism<P: Prop, L: Ord + Clone>(
    target: &P,
    assignment: BTreeMap<L, P::Morphism>,
) -> Homomorphism<'_, P, L> {
    Homomorphism { target, assignment }
}

impl<P: Prop, L: Ord + Clone + std::fmt::Debug> Homomorphism<'_, P, L> {
    pub fn assignment(&self) -> &BTreeMap<L, P::Morphism> {
        &self.assignment
    }

    /// Image of the corolla labeled `label` with the given shape.
    pub fn on_generator(&self, label: &L, arity: usize, coarity: usize) -> Result<P::Morphism> {
        let image = self.assignment.get(label).ok_or_else(|| Error::UnassignedLabel(format!("{label:?}")))?;
        if self.target.boundary(image) != (arity, coarity) {
            let (m, n) = self.target.boundary(image);
            return Err(Error::ArityMismatch(format!(
                "{label:?} labels a ({arity}, {coarity})-vertex but is sent to a ({m}, {n})-morphism"
            )));
        }
        Ok(image.clone())
    }

    /// Evaluates `e` one vertex at a time in topological order, keeping the
    /// open wires as an ordered bundle.
    pub fn apply(&self, e: &PropElement<L>) -> Result<P::Morphism> {
        let order = e.graph().topological_order().expect("elements are acyclic");
        self.apply_in_order(e, &order)
    }

    /// [`Homomorphism::apply`] with a caller-chosen topological order.
    pub fn apply_in_order(&self, e: &PropElement<L>, order: &[VertexId]) -> Result<P::Morphism> {
        let g = e.graph();
        let wiring = g.wiring();
        let t = self.target;
        let mut wires: Vec<Source> = (1..=g.inputs()).map(Source::Input).collect();
        let mut acc = t.identity(g.inputs());
        for &v in order {
            let vertex = g.vertex(v).ok_or_else(|| Error::Precondition(format!("vertex {v} is not in the element")))?;
            let fed: Vec<usize> = (1..=vertex.arity)
                .map(|k| {
                    let s = wiring.source_of[&Target::VertexIn(v, k)];
                    wires
                        .iter()
                        .position(|&w| w == s)
                        .ok_or_else(|| Error::Precondition(format!("order is not topological at vertex {v}")))
                })
                .collect::<Result<_>>()?;
            let rest: Vec<usize> = (0..wires.len()).filter(|p| !fed.contains(p)).collect();
            // Old position -> new position: fed wires first, in port order.
            let mut images = vec![0; wires.len()];
            for (new, &old) in fed.iter().chain(&rest).enumerate() {
                images[old] = new;
            }
            let shuffle = t.symmetry(&Perm::new(images)?)?;
            let step =
                t.hcompose(&self.on_generator(&vertex.label, vertex.arity, vertex.coarity)?, &t.identity(rest.len()))?;
            acc = t.vcompose(&t.vcompose(&acc, &shuffle)?, &step)?;
            let mut next: Vec<Source> = (1..=vertex.coarity).map(|k| Source::VertexOut(v, k)).collect();
            next.extend(rest.iter().map(|&p| wires[p]));
            wires = next;
        }
        let mut images = vec![0; wires.len()];
        for (p, w) in wires.iter().enumerate() {
            match wiring.target_of[w] {
                Target::Output(j) => images[p] = j - 1,
                Target::VertexIn(v, _) => {
                    return Err(Error::Precondition(format!("vertex {v} is missing from the order")))
                }
            }
        }
        t.vcompose(&acc, &t.symmetry(&Perm::new(images)?)?)
    }
}
