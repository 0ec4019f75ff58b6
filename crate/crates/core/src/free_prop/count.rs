use serde::Serialize;

use std::collections::BTreeSet;

use crate::canonical::{iso_classes, profile_count, EnumLimits};
use crate::error::Result;
use crate::graph::Vertex;

use super::element::PropElement;
use super::signature::{Generator, Signature};

/// Basis sizes of the free prop in one vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCount {
    pub r: usize,
    /// Labeled graphs with vertices numbered `1..=r`.
    pub numbered: u128,
    /// Isomorphism classes, i.e. elements of the free prop.
    pub iso: u128,
}

/// Counts labeled `(m, n)`-graphs over `sig` with `r = 0..=max_vertices`
/// vertices.
pub fn count_basis(
    sig: &Signature,
    m: usize,
    n: usize,
    max_vertices: usize,
    limits: EnumLimits,
) -> Result<Vec<BasisCount>> {
    let gens: Vec<&Generator> = sig.generators().collect();
    let mut table = Vec::with_capacity(max_vertices + 1);
    for r in 0..=max_vertices {
        let mut row = BasisCount { r, numbered: 0, iso: 0 };
        for choice in multisets(gens.len(), r) {
            let profile: Vec<Vertex<String>> =
                choice.iter().map(|&i| Vertex::new(gens[i].m, gens[i].n, gens[i].name.clone())).collect();
            let c = profile_count(&profile, m, n, limits)?;
            row.numbered += c.numbered;
            row.iso += c.iso;
        }
        table.push(row);
    }
    Ok(table)
}

/// The basis elements of the free prop on `sig` with boundary `(m, n)` and
/// at most `max_vertices` vertices, ordered by vertex count and then by
/// canonical form.
pub fn basis_elements(
    sig: &Signature,
    m: usize,
    n: usize,
    max_vertices: usize,
    limits: EnumLimits,
) -> Result<Vec<PropElement>> {
    let gens: Vec<&Generator> = sig.generators().collect();
    let mut out = Vec::new();
    for r in 0..=max_vertices {
        let mut classes = BTreeSet::new();
        for choice in multisets(gens.len(), r) {
            let profile: Vec<Vertex<String>> =
                choice.iter().map(|&i| Vertex::new(gens[i].m, gens[i].n, gens[i].name.clone())).collect();
            classes.extend(iso_classes(&profile, m, n, limits)?);
        }
        for c in classes {
            out.push(PropElement::from_graph(c.graph())?);
        }
    }
    Ok(out)
}

/// All non-decreasing sequences of length `r` over `0..k`.
pub fn multisets(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, r: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in from..k {
            cur.push(i);
            go(k, r, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, r, 0, &mut Vec::with_capacity(r), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_of_one_unary_generator() {
        let sig = Signature::new([Generator::new("f", 1, 1)]).unwrap();
        let table = count_basis(&sig, 1, 1, 3, EnumLimits::default()).unwrap();
        assert_eq!(table.iter().map(|c| c.iso).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        assert_eq!(table.iter().map(|c| c.numbered).collect::<Vec<_>>(), vec![1, 1, 2, 6]);
    }

    #[test]
    fn disjoint_unions_of_a_constant() {
        let sig = Signature::new([Generator::new("c", 0, 0)]).unwrap();
        let table = count_basis(&sig, 0, 0, 4, EnumLimits::default()).unwrap();
        assert!(table.iter().all(|c| c.iso == 1 && c.numbered == 1));
    }

    #[test]
    fn basis_elements_match_the_counts() {
        let sig = Signature::new([Generator::new("s", 1, 2), Generator::new("p", 2, 1)]).unwrap();
        for (m, n) in [(1, 1), (2, 2), (1, 2)] {
            let table = count_basis(&sig, m, n, 3, EnumLimits::default()).unwrap();
            let elements = basis_elements(&sig, m, n, 3, EnumLimits::default()).unwrap();
            assert_eq!(elements.len() as u128, table.iter().map(|c| c.iso).sum::<u128>());
            assert!(elements.iter().all(|e| e.boundary() == (m, n)));
        }
    }

    #[test]
    fn multisets_are_combinations_with_repetition() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(0, 0), vec![Vec::<usize>::new()]);
        assert!(multisets(0, 1).is_empty());
    }
}
