use std::collections::BTreeSet;

use propcalc::canonical::EnumLimits;
use propcalc::free_prop::{Generator, Signature};
use propcalc::oracle::closure_classes;
use propcalc::pushout::{
    filtration_square_check, iterated_identity_check, punctured_colimit, pushout, pushout_is_reflexive_coequalizer,
    CubeDiagram, FiltrationBounds, FiniteSetMap,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Every map `0..k → 0..l`.
fn all_maps(k: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|m| (0..l).map(move |y| [m.clone(), vec![y]].concat())).collect();
    }
    out
}

fn set_map(k: usize, l: usize, mapping: Vec<usize>) -> FiniteSetMap {
    FiniteSetMap::new(names("k", k), names("l", l), mapping).unwrap()
}

fn tuples(radices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in radices {
        out = out.into_iter().flat_map(|t| (0..r).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Size of the punctured-cube colimit by closing the relation "a tuple is
/// related to its image along one edge" over an explicit list of elements.
fn oracle_size(mapping: &[usize], k: usize, l: usize, n: usize) -> usize {
    let full = (1u32 << n) - 1;
    let mut elements: Vec<(u32, Vec<usize>)> = Vec::new();
    for mask in 0..full {
        let radices: Vec<usize> = (0..n).map(|c| if mask >> c & 1 == 1 { l } else { k }).collect();
        elements.extend(tuples(&radices).into_iter().map(|t| (mask, t)));
    }
    let position = |mask: u32, t: &[usize]| elements.iter().position(|(m, u)| *m == mask && u == t).unwrap();
    let mut pairs = Vec::new();
    for (x, (mask, t)) in elements.iter().enumerate() {
        for c in 0..n {
            let up = mask | 1 << c;
            if up == *mask || up == full {
                continue;
            }
            let mut u = t.clone();
            u[c] = mapping[u[c]];
            pairs.push((x, position(up, &u)));
        }
    }
    closure_classes(elements.len(), &pairs)
}

#[test]
fn injective_maps_satisfy_the_union_formula() {
    for l in 1..=3usize {
        for k in 0..=l {
            for mapping in all_maps(k, l) {
                if mapping.iter().collect::<BTreeSet<_>>().len() != k {
                    continue;
                }
                let i = set_map(k, l, mapping.clone());
                for n in 1..=4u32 {
                    let cube = CubeDiagram::new(i.clone(), n as usize).unwrap();
                    let c = punctured_colimit(&cube).unwrap();
                    assert_eq!(c.size, l.pow(n) - (l - k).pow(n), "{mapping:?} n = {n}");
                    assert!(c.lambda_is_injective());
                    let image: BTreeSet<Vec<usize>> = c.lambda.iter().cloned().collect();
                    let expected: BTreeSet<Vec<usize>> = tuples(&vec![l; n as usize])
                        .into_iter()
                        .filter(|t| t.iter().any(|x| mapping.contains(x)))
                        .collect();
                    assert_eq!(image, expected);
                }
            }
        }
    }
}

#[test]
fn colimit_sizes_match_the_closure_oracle_for_all_maps() {
    for l in 1..=3 {
        for k in 0..=3 {
            for mapping in all_maps(k, l) {
                let i = set_map(k, l, mapping.clone());
                for n in 1..=3 {
                    let c = punctured_colimit(&CubeDiagram::new(i.clone(), n).unwrap()).unwrap();
                    assert_eq!(c.size, oracle_size(&mapping, k, l, n), "{mapping:?} into {l}, n = {n}");
                }
            }
        }
    }
}

#[test]
fn injective_maps_give_injective_lambda() {
    for l in 1..=3 {
        for k in 0..=3 {
            for mapping in all_maps(k, l) {
                let i = set_map(k, l, mapping);
                for n in 1..=4 {
                    let c = punctured_colimit(&CubeDiagram::new(i.clone(), n).unwrap()).unwrap();
                    if i.is_injective() {
                        assert!(c.lambda_is_injective());
                    }
                    if n == 1 {
                        assert_eq!(c.lambda_is_injective(), i.is_injective());
                        assert_eq!(c.size, k);
                    }
                }
            }
        }
    }
}

#[test]
fn lambda_can_be_injective_for_a_collapsing_map() {
    let i = set_map(2, 1, vec![0, 0]);
    let c = punctured_colimit(&CubeDiagram::new(i.clone(), 2).unwrap()).unwrap();
    assert!(!i.is_injective());
    assert_eq!(c.size, 1);
    assert!(c.lambda_is_injective());
}

#[test]
fn zero_dimensional_cube_has_an_empty_colimit() {
    let c = punctured_colimit(&CubeDiagram::new(set_map(1, 2, vec![0]), 0).unwrap()).unwrap();
    assert_eq!(c.size, 0);
}

#[test]
fn pushouts_are_reflexive_coequalizers() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..500 {
        let (a, b, c) = (rng.gen_range(0..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
        let f: Vec<usize> = (0..a).map(|_| rng.gen_range(0..b)).collect();
        let g: Vec<usize> = (0..a).map(|_| rng.gen_range(0..c)).collect();
        assert!(pushout_is_reflexive_coequalizer(a, b, c, &f, &g).unwrap());
        let pairs: Vec<(usize, usize)> = (0..a).flat_map(|x| [(x, a + f[x]), (x, a + b + g[x])]).collect();
        assert_eq!(pushout(a, b, c, &f, &g).unwrap().size, closure_classes(a + b + c, &pairs));
    }
}

#[test]
fn pushout_along_an_injection_is_inclusion_exclusion() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..200 {
        let b = rng.gen_range(1..=6);
        let a = rng.gen_range(0..=b);
        let c = rng.gen_range(0..=4);
        let mut f: Vec<usize> = (0..b).collect();
        f.sort_by_key(|_| rng.gen::<u32>());
        f.truncate(a);
        if c == 0 && a > 0 {
            continue;
        }
        let g: Vec<usize> = (0..a).map(|_| rng.gen_range(0..c)).collect();
        assert_eq!(pushout(a, b, c, &f, &g).unwrap().size, b + c - a);
    }
}

#[test]
fn iterated_identity_holds_for_all_small_maps() {
    for l in 1..=3 {
        for k in 0..=2 {
            for mapping in all_maps(k, l) {
                let i = set_map(k, l, mapping.clone());
                for n in 2..=3 {
                    let report = iterated_identity_check(&i, n).unwrap();
                    assert!(report.passed(), "{mapping:?} into {l}, n = {n}: {report:?}");
                    assert_eq!(report.colimit_size, report.pushout_size);
                }
            }
        }
    }
}

#[test]
fn iterated_identity_in_dimension_four() {
    let report = iterated_identity_check(&set_map(2, 3, vec![0, 2]), 4).unwrap();
    assert!(report.passed());
    assert_eq!(report.colimit_size, 80);
    assert_eq!(report.pushout_size, 80);
    let report = iterated_identity_check(&set_map(1, 2, vec![1]), 2).unwrap();
    assert!(report.passed());
    assert_eq!((report.colimit_size, report.pushout_size), (3, 3));
}

#[test]
fn identity_map_gives_the_full_power() {
    for l in 1..=3usize {
        let i = set_map(l, l, (0..l).collect());
        for n in 1..=4u32 {
            let c = punctured_colimit(&CubeDiagram::new(i.clone(), n as usize).unwrap()).unwrap();
            assert_eq!(c.size, l.pow(n));
            assert!(c.lambda_is_injective());
            if n >= 2 {
                assert!(iterated_identity_check(&i, n as usize).unwrap().passed());
            }
        }
    }
}

fn sig(gens: &[(&str, usize, usize)]) -> Signature {
    Signature::new(gens.iter().map(|&(n, a, b)| Generator::new(n, a, b))).unwrap()
}

fn bounds(inputs: usize, outputs: usize, max_degree: usize, max_vertices: usize) -> FiltrationBounds {
    FiltrationBounds {
        inputs,
        outputs,
        max_degree,
        max_vertices,
        limits: EnumLimits { max_vertices, max_edges: 4 * max_vertices + 4 },
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn filtration_of_chains_matches_binomial_counts() {
    let report =
        filtration_square_check(&sig(&[]), &sig(&[("g", 1, 1)]), &sig(&[("f", 1, 1)]), bounds(1, 1, 2, 4)).unwrap();
    assert!(report.passed(), "{report:?}");
    for d in &report.degrees {
        let expected: usize = (0..=4).map(|r| (0..=d.degree.min(r)).map(|q| binomial(r, q)).sum::<usize>()).sum();
        assert_eq!(d.d, expected);
        assert_eq!(d.u, 0);
    }
}

#[test]
fn filtration_with_a_shared_generator() {
    let report = filtration_square_check(
        &sig(&[("a", 1, 1)]),
        &sig(&[("a", 1, 1), ("b", 1, 1)]),
        &sig(&[("a", 1, 1), ("m", 2, 1), ("s", 1, 2)]),
        bounds(1, 1, 2, 3),
    )
    .unwrap();
    assert!(report.passed(), "{report:?}");
    assert!(report.degrees.iter().all(|d| d.u > 0));
}

#[test]
fn filtration_with_non_unary_generators() {
    let report =
        filtration_square_check(&sig(&[]), &sig(&[("s", 1, 2)]), &sig(&[("p", 2, 1)]), bounds(1, 1, 2, 4)).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn filtration_when_k_equals_l() {
    let report = filtration_square_check(
        &sig(&[("a", 1, 1)]),
        &sig(&[("a", 1, 1)]),
        &sig(&[("a", 1, 1), ("f", 1, 1)]),
        bounds(1, 1, 2, 3),
    )
    .unwrap();
    assert!(report.passed(), "{report:?}");
    let d0 = report.degrees[0].d;
    assert!(report.degrees.iter().all(|d| d.d == d0));
}
