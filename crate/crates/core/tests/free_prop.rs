use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use propcalc::free_prop::{corolla_labels, expand, extend_morphism, FreeProp, Generator, PropElement, Signature};
use propcalc::sample::{random_atomic, random_element, random_nested, random_nested3};
use propcalc::{Graph, Perm};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn expand_is_associative(seed: u64, m in 0usize..3, n in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_nested3(&mut rng, m, n, 3);
        let inner_first = expand(&g.map_labels(|_, e: &PropElement<PropElement>| e.flatten().unwrap())).unwrap();
        let outer_first = expand(expand(&g).unwrap().graph()).unwrap();
        prop_assert_eq!(inner_first, outer_first);
    }

    #[test]
    fn expand_has_units(seed: u64, m in 0usize..3, n in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let e = random_atomic(&mut rng, m, n, 5);
        let (a, b) = e.boundary();
        let wrapped = PropElement::corolla(a, b, e.clone());
        prop_assert_eq!(&expand(wrapped.graph()).unwrap(), &e);
        prop_assert_eq!(&expand(&corolla_labels(e.graph())).unwrap(), &e);
    }

    #[test]
    fn expand_respects_composition(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let top = random_nested(&mut rng, 1, 2, 3);
        let bottom = random_nested(&mut rng, 2, 1, 3);
        let composite = top.vcompose(&bottom).unwrap();
        let expected = expand(&top).unwrap().vcompose(&expand(&bottom).unwrap()).unwrap();
        prop_assert_eq!(expand(&composite).unwrap(), expected);
    }

    #[test]
    fn interchange_law(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut boundary = || rng.gen_range(0..3usize);
        let (m1, k1, n1, m2, k2, n2) = (boundary(), boundary(), boundary(), boundary(), boundary(), boundary());
        let a = random_atomic(&mut rng, m1, k1, 3);
        let c = random_atomic(&mut rng, k1, n1, 3);
        let b = random_atomic(&mut rng, m2, k2, 3);
        let d = random_atomic(&mut rng, k2, n2, 3);
        let left = a.hcompose(&b).unwrap().vcompose(&c.hcompose(&d).unwrap()).unwrap();
        let right = a.vcompose(&c).unwrap().hcompose(&b.vcompose(&d).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn permutation_actions_compose(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let e = random_atomic(&mut rng, 3, 3, 4);
        let perms = Perm::all(3);
        let s = &perms[rng.gen_range(0..6)];
        let t = &perms[rng.gen_range(0..6)];
        let twice = e.permute_inputs(s).unwrap().permute_inputs(t).unwrap();
        prop_assert_eq!(twice, e.permute_inputs(&s.compose(t)).unwrap());
        let twice = e.permute_outputs(s).unwrap().permute_outputs(t).unwrap();
        prop_assert_eq!(twice, e.permute_outputs(&t.compose(s)).unwrap());
    }
}

#[test]
fn identities_are_units_of_composition() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let e = random_atomic(&mut rng, 2, 1, 4);
        assert_eq!(PropElement::identity(2).vcompose(&e).unwrap(), e);
        assert_eq!(e.vcompose(&PropElement::identity(1)).unwrap(), e);
        assert_eq!(e.hcompose(&PropElement::identity(0)).unwrap(), e);
    }
}

#[test]
fn permuted_identities_compose_like_permutations() {
    for s in Perm::all(3) {
        for t in Perm::all(3) {
            let a: PropElement = PropElement::identity(3).permute_inputs(&s).unwrap();
            let b = PropElement::identity(3).permute_inputs(&t).unwrap();
            let ts = t.compose(&s);
            let composite = a.vcompose(&b).unwrap();
            assert_eq!(composite, PropElement::identity(3).permute_inputs(&ts).unwrap());
            assert_eq!(composite, PropElement::identity(3).permute_outputs(&ts).unwrap());
        }
    }
}

#[test]
fn relabeling_morphism_agrees_with_map_labels() {
    let sig =
        Signature::new([Generator::new("u", 1, 1), Generator::new("m", 2, 1), Generator::new("c", 1, 2)]).unwrap();
    let rename: BTreeMap<String, String> =
        [("u", "U"), ("m", "M"), ("c", "C")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let free = FreeProp::new();
    let assignment =
        sig.generators().map(|g| (g.name.clone(), PropElement::corolla(g.m, g.n, rename[&g.name].clone()))).collect();
    let phi = extend_morphism(&free, assignment);
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let e = random_element(&mut rng, &sig, 2, 5);
        assert_eq!(phi.apply(&e).unwrap(), e.map_labels(|l| rename[l].clone()).unwrap());
    }
}

#[test]
fn substitution_morphism_agrees_with_expand() {
    // Sends each atom to a random composite of primed atoms and compares
    // against substituting by hand.
    let mut rng = StdRng::seed_from_u64(5);
    let mut images: BTreeMap<String, PropElement> = BTreeMap::new();
    let free = FreeProp::new();
    for _ in 0..100 {
        let e = random_atomic(&mut rng, 2, 2, 4);
        for v in e.graph().vertices().values() {
            if !images.contains_key(&v.label) {
                let image = random_atomic(&mut rng, v.arity, v.coarity, 2).map_labels(|l| format!("{l}'")).unwrap();
                images.insert(v.label.clone(), image);
            }
        }
        let phi = extend_morphism(&free, images.clone());
        let nested: Graph<PropElement> = e.graph().map_labels(|_, l| images[l].clone());
        assert_eq!(phi.apply(&e).unwrap(), expand(&nested).unwrap());
    }
}
