use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use propcalc::coproduct::{
    collapse_exhaustive, collapse_greedy, expand_all, merge, mergeable, mergeable_pairs, non_confluence_witness,
    normal_form, MixedGraph, MixedLabel, WitnessBounds, MAX_STATES,
};
use propcalc::fixtures;
use propcalc::sample::{random_atomic, random_shaped};
use propcalc::{Error, Graph};

fn random_mixed(rng: &mut StdRng, vertices: usize, p_share: f64) -> MixedGraph {
    let (m, n) = (rng.gen_range(0..3), rng.gen_range(0..3));
    random_shaped(rng, m, n, vertices, 2, |rng, a, b| {
        if rng.gen_bool(p_share) {
            MixedLabel::P(random_atomic(rng, a, b, 2))
        } else {
            MixedLabel::M(format!("x{a}{b}"))
        }
    })
}

fn mixed(text: &str) -> MixedGraph {
    Graph::from_json(text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn merging_preserves_the_expansion(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_mixed(&mut rng, 5, 0.6);
        let expected = expand_all(&g).unwrap();
        for (u, v) in mergeable_pairs(&g).unwrap() {
            let merged = merge(&g, u, v).unwrap();
            prop_assert!(merged.is_valid());
            prop_assert_eq!(merged.vertex_count() + 1, g.vertex_count());
            prop_assert_eq!(&expand_all(&merged).unwrap(), &expected);
        }
    }

    #[test]
    fn every_collapse_has_the_same_expansion(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_mixed(&mut rng, 5, 0.6);
        let expected = expand_all(&g).unwrap();
        let greedy = collapse_greedy(&g).unwrap();
        prop_assert_eq!(&expand_all(&greedy.graph).unwrap(), &expected);
        for form in collapse_exhaustive(&g, MAX_STATES).unwrap() {
            prop_assert!(mergeable_pairs(&form.graph).unwrap().is_empty());
            prop_assert_eq!(&expand_all(&form.graph).unwrap(), &expected);
        }
    }

    #[test]
    fn graphs_without_generators_collapse_to_one_vertex(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_mixed(&mut rng, 5, 1.0);
        let forms = collapse_exhaustive(&g, MAX_STATES).unwrap();
        prop_assert_eq!(forms.len(), 1);
        prop_assert!(forms[0].graph.vertex_count() <= 1);
    }
}

#[test]
fn witness_fixture_has_two_irreducible_forms() {
    let g: MixedGraph = fixtures::doc("remark-witness").unwrap().to_graph().unwrap();
    let forms = collapse_exhaustive(&g, MAX_STATES).unwrap();
    assert_eq!(forms.len(), 2);
    assert_ne!(normal_form(&forms[0].graph).unwrap(), normal_form(&forms[1].graph).unwrap());
    assert_eq!(expand_all(&forms[0].graph).unwrap(), expand_all(&forms[1].graph).unwrap());
    assert_eq!(expand_all(&forms[0].graph).unwrap(), expand_all(&g).unwrap());
    for f in &forms {
        assert_eq!(f.graph.vertex_count(), 5);
        assert!(mergeable_pairs(&f.graph).unwrap().is_empty());
    }
}

#[test]
fn witness_search_finds_a_witness() {
    let w = non_confluence_witness(WitnessBounds::default()).unwrap().expect("a witness within six vertices");
    assert!(w.graph.vertex_count() <= 6);
    assert_ne!(normal_form(&w.first.graph).unwrap(), normal_form(&w.second.graph).unwrap());
    assert_eq!(expand_all(&w.first.graph).unwrap(), expand_all(&w.second.graph).unwrap());
}

#[test]
fn two_p_vertices_are_always_confluent() {
    let bounds = WitnessBounds { max_vertices: 5, max_p_vertices: 2, max_degree: 2 };
    assert!(non_confluence_witness(bounds).unwrap().is_none());
}

const PATH_THROUGH_GENERATOR: &str = r#"{"m":0,"n":0,"vertices":[
    {"id":1,"in":0,"out":2,"label":"a","alphabet":"P"},
    {"id":2,"in":1,"out":1,"label":"x","alphabet":"M"},
    {"id":3,"in":2,"out":0,"label":"b","alphabet":"P"},
    {"id":4,"in":0,"out":0,"label":"c","alphabet":"P"}],
  "edges":[
    {"src":["vout",1,1],"dst":["vin",3,1]},
    {"src":["vout",1,2],"dst":["vin",2,1]},
    {"src":["vout",2,1],"dst":["vin",3,2]}]}"#;

#[test]
fn mergeability_examples() {
    let g = mixed(PATH_THROUGH_GENERATOR);
    assert!(!mergeable(&g, 1, 3).unwrap());
    assert!(mergeable(&g, 1, 4).unwrap());
    assert!(mergeable(&g, 3, 4).unwrap());
    assert!(matches!(merge(&g, 1, 3), Err(Error::NotMergeable(1, 3))));
    assert!(matches!(mergeable(&g, 1, 2), Err(Error::NotPVertex(2))));
}

#[test]
fn chain_of_three_collapses_to_one_vertex() {
    let g = mixed(
        r#"{"m":1,"n":1,"vertices":[
        {"id":1,"in":1,"out":1,"label":"p","alphabet":"P"},
        {"id":2,"in":1,"out":1,"label":"q","alphabet":"P"},
        {"id":3,"in":1,"out":1,"label":"r","alphabet":"P"}],
      "edges":[
        {"src":["input",1],"dst":["vin",1,1]},
        {"src":["vout",1,1],"dst":["vin",2,1]},
        {"src":["vout",2,1],"dst":["vin",3,1]},
        {"src":["vout",3,1],"dst":["output",1]}]}"#,
    );
    assert!(!mergeable(&g, 1, 3).unwrap());
    let forms = collapse_exhaustive(&g, MAX_STATES).unwrap();
    assert_eq!(forms.len(), 1);
    assert_eq!(forms[0].graph.vertex_count(), 1);
    let MixedLabel::P(e) = &forms[0].graph.vertices()[&1].label else { panic!("merged vertex is a P vertex") };
    assert_eq!(e.vertex_count(), 3);
}
