use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use propcalc::canonical::{
    canonicalize, enumerate_graphs, free_action_check, graph_hash, is_isomorphic, profile_count, EnumLimits,
    NumberedGraph,
};
use propcalc::free_prop::{Generator, Signature};
use propcalc::oracle::{brute_force_certificate, brute_force_isomorphic};
use propcalc::sample::random_graph;
use propcalc::{Graph, Perm, Vertex, VertexId};

fn sig() -> Signature {
    Signature::new([
        Generator::new("a", 1, 1),
        Generator::new("b", 1, 2),
        Generator::new("c", 2, 1),
        Generator::new("d", 0, 1),
        Generator::new("e", 1, 0),
        Generator::new("k", 2, 2),
    ])
    .unwrap()
}

fn shuffled_ids(rng: &mut StdRng, g: &Graph<String>) -> Graph<String> {
    let mut ids: Vec<VertexId> = (1..=g.vertex_count() as VertexId).map(|v| v * 7 + 3).collect();
    ids.shuffle(rng);
    let old: Vec<VertexId> = g.vertices().keys().copied().collect();
    g.rename_vertices(|v| ids[old.iter().position(|&x| x == v).unwrap()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn relabeled_representatives_share_a_canonical_form(seed: u64, inputs in 0usize..3, vertices in 0usize..7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, &sig(), inputs, vertices);
        let h = shuffled_ids(&mut rng, &g);
        prop_assert!(g.is_valid());
        prop_assert_eq!(canonicalize(&g).unwrap(), canonicalize(&h).unwrap());
        prop_assert_eq!(graph_hash(&g).unwrap(), graph_hash(&h).unwrap());
    }

    #[test]
    fn canonical_equality_matches_brute_force(seed: u64, inputs in 0usize..3, vertices in 0usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, &sig(), inputs, vertices);
        let h = random_graph(&mut rng, &sig(), inputs, vertices);
        prop_assert_eq!(is_isomorphic(&g, &h).unwrap(), brute_force_isomorphic(&g, &h));
    }

    #[test]
    fn certificates_agree_with_brute_force_isomorphism(seed: u64, inputs in 0usize..3, vertices in 0usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, &sig(), inputs, vertices);
        let h = random_graph(&mut rng, &sig(), inputs, vertices);
        prop_assert_eq!(brute_force_certificate(&g), brute_force_certificate(&shuffled_ids(&mut rng, &g)));
        prop_assert_eq!(brute_force_certificate(&g) == brute_force_certificate(&h), brute_force_isomorphic(&g, &h));
    }

    #[test]
    fn canonical_form_is_idempotent(seed: u64, vertices in 0usize..7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_graph(&mut rng, &sig(), 1, vertices);
        let c = canonicalize(&g).unwrap();
        prop_assert_eq!(canonicalize(c.graph()).unwrap(), c);
    }
}

#[test]
fn boundary_free_components_in_either_order() {
    // Two copies of d → e next to one copy of d → a → e, with no boundary.
    let chain = |labels: &[&str]| {
        let vs: Vec<(VertexId, Vertex<String>)> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let (a, b) = match *l {
                    "d" => (0, 1),
                    "e" => (1, 0),
                    _ => (1, 1),
                };
                (i as VertexId + 1, Vertex::new(a, b, l.to_string()))
            })
            .collect();
        let edges = (1..labels.len()).map(|i| {
            propcalc::Edge::new(
                propcalc::Source::VertexOut(i as VertexId, 1),
                propcalc::Target::VertexIn(i as VertexId + 1, 1),
            )
        });
        Graph::from_parts(0, 0, vs, edges)
    };
    let short = chain(&["d", "e"]);
    let long = chain(&["d", "a", "e"]);
    let g1 = short.hcompose(&long).unwrap().hcompose(&short).unwrap();
    let g2 = long.hcompose(&short).unwrap().hcompose(&short).unwrap();
    assert!(brute_force_isomorphic(&g1, &g2));
    assert_eq!(canonicalize(&g1).unwrap(), canonicalize(&g2).unwrap());
    let g3 = long.hcompose(&long).unwrap().hcompose(&short).unwrap();
    assert_ne!(canonicalize(&g1).unwrap(), canonicalize(&g3).unwrap());
}

#[test]
fn many_identical_components_canonicalize_quickly() {
    let pair = Graph::from_parts(
        0,
        0,
        [(1, Vertex::new(0, 2, "s".to_string())), (2, Vertex::new(2, 0, "t".to_string()))],
        [
            propcalc::Edge::new(propcalc::Source::VertexOut(1, 1), propcalc::Target::VertexIn(2, 2)),
            propcalc::Edge::new(propcalc::Source::VertexOut(1, 2), propcalc::Target::VertexIn(2, 1)),
        ],
    );
    let mut g = Graph::identity(0);
    for _ in 0..12 {
        g = g.hcompose(&pair).unwrap();
    }
    let start = std::time::Instant::now();
    canonicalize(&g).unwrap();
    assert!(start.elapsed().as_secs() < 2);
}

#[test]
fn free_action_on_small_nonempty_input_graphs() {
    for arities in [vec![(1, 1), (1, 1)], vec![(1, 2), (2, 1)], vec![(1, 2), (1, 1), (1, 1)], vec![(2, 2), (1, 1)]] {
        for m in 1..=2 {
            let n = m + arities.iter().map(|&(_, b): &(usize, usize)| b).sum::<usize>()
                - arities.iter().map(|&(a, _)| a).sum::<usize>();
            let graphs = enumerate_graphs(&arities, m, n, false, EnumLimits::default()).unwrap();
            for g in &graphs {
                assert!(free_action_check(g).unwrap());
                let own = g.canonical().unwrap();
                for w in Perm::all(arities.len()).iter().filter(|w| !w.is_identity()) {
                    assert_ne!(g.renumbered(w).unwrap().canonical().unwrap(), own);
                }
            }
            let profile: Vec<Vertex> = arities.iter().map(|&(a, b)| Vertex::new(a, b, ())).collect();
            let count = profile_count(&profile, m, n, EnumLimits::default()).unwrap();
            let r = arities.len() as u128;
            assert_eq!(count.numbered, (1..=r).product::<u128>() * count.iso, "{arities:?} m={m}");
        }
    }
}

#[test]
fn free_action_fails_with_a_symmetric_constant() {
    // Two input-free vertices in parallel can be swapped.
    let g = Graph::from_parts(
        0,
        2,
        [(1, Vertex::new(0, 1, ())), (2, Vertex::new(0, 1, ()))],
        [
            propcalc::Edge::new(propcalc::Source::VertexOut(1, 1), propcalc::Target::Output(1)),
            propcalc::Edge::new(propcalc::Source::VertexOut(2, 1), propcalc::Target::Output(2)),
        ],
    );
    assert!(free_action_check(&NumberedGraph::by_id(g.clone())).is_err());
}
