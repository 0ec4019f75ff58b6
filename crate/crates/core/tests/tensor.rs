use propcalc::canonical::EnumLimits;
use propcalc::free_prop::{basis_elements, corolla, Generator, PropElement, Signature};
use propcalc::graph::Graph;
use propcalc::oracle::{kron_rows, matmul_rows, permute_input_rows, permute_output_rows, wire_traced_matrix};
use propcalc::perm::Perm;
use propcalc::sample::{random_assignment, random_element, random_pair, random_topological_order};
use propcalc::tensor::{
    element_square, eval_is_morphism, evaluate_element, evaluate_in_order, morphism_prop_membership, square_defect,
    transport, AlgebraAssignment, EvalLimits, RatTensor,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn sig() -> Signature {
    Signature::new([
        Generator::new("s", 1, 2),
        Generator::new("p", 2, 1),
        Generator::new("u", 1, 1),
        Generator::new("c", 0, 1),
        Generator::new("e", 1, 0),
    ])
    .unwrap()
}

fn random_perm(rng: &mut StdRng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::new(images).unwrap()
}

#[test]
fn evaluation_is_a_homomorphism_against_index_arithmetic() {
    let mut rng = StdRng::seed_from_u64(11);
    for d in [2, 3] {
        let a = random_assignment(&mut rng, &sig(), d);
        for _ in 0..60 {
            let (x, y) = random_pair(&mut rng, &sig(), 3, 6);
            let ex = evaluate_element(&x, &a).unwrap().to_rows();
            let ey = evaluate_element(&y, &a).unwrap().to_rows();
            let h = evaluate_element(&x.hcompose(&y).unwrap(), &a).unwrap();
            assert_eq!(h.to_rows(), kron_rows(&ex, &ey));
            let ((m, n), (m2, _)) = (x.boundary(), y.boundary());
            if n == m2 {
                let v = evaluate_element(&x.vcompose(&y).unwrap(), &a).unwrap();
                assert_eq!(v.to_rows(), matmul_rows(&ey, &ex));
            }
            let w = random_perm(&mut rng, m);
            let pi = evaluate_element(&x.permute_inputs(&w).unwrap(), &a).unwrap();
            assert_eq!(pi.to_rows(), permute_input_rows(&ex, d, m, w.images()));
            let w = random_perm(&mut rng, n);
            let po = evaluate_element(&x.permute_outputs(&w).unwrap(), &a).unwrap();
            assert_eq!(po.to_rows(), permute_output_rows(&ex, d, n, w.images()));
        }
    }
}

#[test]
fn morphism_report_is_clean_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(12);
    let a = random_assignment(&mut rng, &sig(), 2);
    let pairs: Vec<_> = (0..40).map(|_| random_pair(&mut rng, &sig(), 3, 6)).collect();
    let report = eval_is_morphism(&a, &pairs, EvalLimits::default()).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    assert!(report.checks >= 3 * pairs.len());
}

#[test]
fn contraction_order_does_not_matter() {
    let mut rng = StdRng::seed_from_u64(13);
    let a = random_assignment(&mut rng, &sig(), 2);
    for _ in 0..50 {
        let inputs = rng.gen_range(0..=2);
        let x = random_element(&mut rng, &sig(), inputs, 5);
        let (m, n) = x.boundary();
        if m + n > 6 {
            continue;
        }
        let first =
            evaluate_in_order(x.graph(), &a, &random_topological_order(&mut rng, x.graph()), EvalLimits::default())
                .unwrap();
        for _ in 0..3 {
            let order = random_topological_order(&mut rng, x.graph());
            assert_eq!(evaluate_in_order(x.graph(), &a, &order, EvalLimits::default()).unwrap(), first);
        }
    }
}

#[test]
fn relabeled_representatives_evaluate_equally() {
    let mut rng = StdRng::seed_from_u64(14);
    let a = random_assignment(&mut rng, &sig(), 2);
    for _ in 0..50 {
        let inputs = rng.gen_range(0..=2);
        let x = random_element(&mut rng, &sig(), inputs, 4);
        if x.boundary().0 + x.boundary().1 > 6 {
            continue;
        }
        let mut order: Vec<_> = x.graph().vertices().keys().copied().collect();
        order.shuffle(&mut rng);
        let renumbered = x.graph().renumber(&order);
        assert_eq!(
            propcalc::tensor::evaluate(&renumbered, &a).unwrap(),
            propcalc::tensor::evaluate(x.graph(), &a).unwrap()
        );
    }
}

#[test]
fn identity_assignment_follows_the_wires() {
    let sig = Signature::new([Generator::new("u", 1, 1), Generator::new("t", 2, 2)]).unwrap();
    let mut rng = StdRng::seed_from_u64(15);
    for d in [2, 3] {
        let a =
            AlgebraAssignment::new(d, [("u".into(), RatTensor::identity(d)), ("t".into(), RatTensor::identity(d * d))]);
        for _ in 0..40 {
            let inputs = rng.gen_range(0..=3);
            let g: Graph<String> = random_element(&mut rng, &sig, inputs, 4).graph().clone();
            assert_eq!(propcalc::tensor::evaluate(&g, &a).unwrap(), wire_traced_matrix(&g, d));
        }
    }
}

fn small_sig() -> Signature {
    Signature::new([Generator::new("s", 1, 2), Generator::new("p", 2, 1), Generator::new("u", 1, 1)]).unwrap()
}

fn all_squares_commute(f: &RatTensor, a: &AlgebraAssignment, b: &AlgebraAssignment, sig: &Signature) -> bool {
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for e in basis_elements(sig, m, n, 3, EnumLimits::default()).unwrap() {
            if !element_square(f, a, b, &e).unwrap() {
                return false;
            }
        }
    }
    true
}

#[test]
fn transported_assignments_are_morphisms_on_every_small_element() {
    let sig = small_sig();
    let mut rng = StdRng::seed_from_u64(16);
    let b = random_assignment(&mut rng, &sig, 2);
    let f = RatTensor::from_integers(&[&[2, 1], &[1, 1]]);
    let a = transport(&f, &b, &sig).unwrap();
    for g in sig.generators() {
        assert!(morphism_prop_membership(&f, &a, &b, &sig, &g.name).unwrap());
        let x = a.matrices[&g.name].to_rows();
        let y = b.matrices[&g.name].to_rows();
        let fm = (1..g.m).fold(f.to_rows(), |acc, _| kron_rows(&acc, &f.to_rows()));
        let fn_ = (1..g.n).fold(f.to_rows(), |acc, _| kron_rows(&acc, &f.to_rows()));
        assert_eq!(matmul_rows(&fn_, &x), matmul_rows(&y, &fm));
    }
    assert!(all_squares_commute(&f, &a, &b, &sig));
}

#[test]
fn generator_membership_is_equivalent_to_membership_of_small_elements() {
    let sig = small_sig();
    let mut rng = StdRng::seed_from_u64(17);
    let f = RatTensor::from_integers(&[&[1, 1], &[0, 1]]);
    let b = random_assignment(&mut rng, &sig, 2);
    let transported = transport(&f, &b, &sig).unwrap();
    for k in 0..6 {
        let mut a = transported.clone();
        if k > 0 {
            let g = ["s", "p", "u"][k % 3];
            let other = random_assignment(&mut rng, &sig, 2);
            a.matrices.insert(g.to_owned(), other.matrices[g].clone());
        }
        let on_generators = sig.generators().all(|g| morphism_prop_membership(&f, &a, &b, &sig, &g.name).unwrap());
        assert_eq!(on_generators, all_squares_commute(&f, &a, &b, &sig), "case {k}");
    }
}

#[test]
fn random_assignments_fail_with_a_counterexample_entry() {
    let sig = small_sig();
    let mut rng = StdRng::seed_from_u64(18);
    let f = RatTensor::from_integers(&[&[1, 2], &[0, 1]]);
    let mut failures = 0;
    for _ in 0..20 {
        let a = random_assignment(&mut rng, &sig, 2);
        let b = random_assignment(&mut rng, &sig, 2);
        let g = sig.get("u").unwrap();
        let (x, y) = (&a.matrices["u"], &b.matrices["u"]);
        let member = morphism_prop_membership(&f, &a, &b, &sig, &g.name).unwrap();
        let left = matmul_rows(&f.to_rows(), &x.to_rows());
        let right = matmul_rows(&y.to_rows(), &f.to_rows());
        match square_defect(&f, x, y, 1, 1).unwrap() {
            Some((r, c)) => {
                assert!(!member);
                assert_ne!(left[r][c], right[r][c]);
                failures += 1;
            }
            None => {
                assert!(member);
                assert_eq!(left, right);
            }
        }
    }
    assert!(failures > 15);
}

#[test]
fn identity_map_relates_an_assignment_to_itself() {
    let sig = small_sig();
    let mut rng = StdRng::seed_from_u64(19);
    let a = random_assignment(&mut rng, &sig, 3);
    for g in sig.generators() {
        assert!(morphism_prop_membership(&RatTensor::identity(3), &a, &a, &sig, &g.name).unwrap());
    }
    let e: PropElement = corolla(&sig, "s").unwrap().vcompose(&corolla(&sig, "p").unwrap()).unwrap();
    assert!(element_square(&RatTensor::identity(3), &a, &a, &e).unwrap());
}
