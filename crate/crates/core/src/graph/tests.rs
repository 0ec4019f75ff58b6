use super::*;
use crate::perm::Perm;

fn chain() -> Graph {
    Graph::from_parts(
        1,
        1,
        [(1, Vertex::new(1, 1, ())), (2, Vertex::new(1, 1, ()))],
        [
            Edge::new(Source::Input(1), Target::VertexIn(1, 1)),
            Edge::new(Source::VertexOut(1, 1), Target::VertexIn(2, 1)),
            Edge::new(Source::VertexOut(2, 1), Target::Output(1)),
        ],
    )
}

#[test]
fn identities_are_valid() {
    for n in 0..6 {
        let g: Graph = Graph::identity(n);
        assert!(g.is_valid());
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edges().len(), n);
    }
}

#[test]
fn missing_and_duplicate_edges_are_reported() {
    let g: Graph = Graph::from_parts(
        2,
        1,
        [],
        [Edge::new(Source::Input(1), Target::Output(1)), Edge::new(Source::Input(1), Target::Output(1))],
    );
    let conditions: Vec<&str> = g.validate().iter().map(|v| v.condition()).collect();
    assert!(conditions.contains(&"inputs"));
    assert!(conditions.contains(&"outputs"));
}

#[test]
fn cycles_are_reported() {
    let g: Graph = Graph::from_parts(
        0,
        0,
        [(1, Vertex::new(1, 1, ())), (2, Vertex::new(1, 1, ()))],
        [
            Edge::new(Source::VertexOut(1, 1), Target::VertexIn(2, 1)),
            Edge::new(Source::VertexOut(2, 1), Target::VertexIn(1, 1)),
        ],
    );
    assert_eq!(g.validate(), vec![Violation::Cycle(vec![1, 2])]);
    assert!(g.topological_order().is_none());
}

#[test]
fn out_of_range_ports_are_reported() {
    let g: Graph = Graph::from_parts(
        1,
        1,
        [(1, Vertex::new(1, 1, ()))],
        [Edge::new(Source::Input(1), Target::VertexIn(1, 2)), Edge::new(Source::VertexOut(7, 1), Target::Output(1))],
    );
    let conditions: Vec<&str> = g.validate().iter().map(|v| v.condition()).collect();
    assert!(conditions.contains(&"range"));
    assert!(conditions.contains(&"vertex"));
}

#[test]
fn vertical_units() {
    let g = chain();
    assert_eq!(Graph::identity(1).vcompose(&g).unwrap(), g);
    assert_eq!(g.vcompose(&Graph::identity(1)).unwrap(), g);
}

#[test]
fn horizontal_unit_and_identities() {
    let g = chain();
    assert_eq!(g.hcompose(&Graph::identity(0)).unwrap(), g);
    assert_eq!(Graph::<()>::identity(1).hcompose(&Graph::identity(1)).unwrap(), Graph::identity(2));
}

#[test]
fn hcompose_offsets_the_right_operand() {
    let g = chain().hcompose(&chain()).unwrap();
    assert!(g.is_valid());
    assert_eq!(g.vertices().keys().copied().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    assert!(g.edges().contains(&Edge::new(Source::Input(2), Target::VertexIn(3, 1))));
    assert!(g.edges().contains(&Edge::new(Source::VertexOut(4, 1), Target::Output(2))));
}

#[test]
fn vcompose_checks_boundaries() {
    assert!(matches!(chain().vcompose(&Graph::identity(2)), Err(Error::BoundaryMismatch(_))));
}

#[test]
fn swap_is_the_crossing() {
    let swap = Perm::new(vec![1, 0]).unwrap();
    let g: Graph = Graph::identity(2).permute_inputs(&swap).unwrap();
    assert_eq!(
        g.edges(),
        &[Edge::new(Source::Input(1), Target::Output(2)), Edge::new(Source::Input(2), Target::Output(1)),]
    );
    assert_eq!(Graph::<()>::identity(2).permute_inputs(&Perm::identity(2)).unwrap(), Graph::identity(2));
}

#[test]
fn permuted_identities_compose_like_permutations() {
    for sigma in Perm::all(3) {
        for tau in Perm::all(3) {
            let a: Graph = Graph::identity(3).permute_inputs(&sigma).unwrap();
            let b: Graph = Graph::identity(3).permute_inputs(&tau).unwrap();
            let expected: Graph = Graph::identity(3).permute_inputs(&tau.compose(&sigma)).unwrap();
            assert_eq!(a.vcompose(&b).unwrap(), expected);
        }
    }
}

#[test]
fn through_wires_fuse() {
    let swap = Perm::new(vec![1, 0]).unwrap();
    let x: Graph = Graph::identity(2).permute_inputs(&swap).unwrap();
    assert_eq!(x.vcompose(&x).unwrap(), Graph::identity(2));
}

#[test]
fn substitute_with_identities_removes_vertices() {
    let g = chain();
    let flat: Graph = g.substitute(|_, v| Ok(Graph::identity(v.arity))).unwrap();
    assert_eq!(flat, Graph::identity(1));
}

#[test]
fn substitute_checks_boundaries() {
    let g = chain();
    assert!(g.substitute::<()>(|_, _| Ok(Graph::identity(2))).is_err());
}

#[test]
fn renumber_follows_order() {
    let g = chain().renumber(&[2, 1]);
    assert!(g.edges().contains(&Edge::new(Source::Input(1), Target::VertexIn(2, 1))));
    assert!(g.is_valid());
}
