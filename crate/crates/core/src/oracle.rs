//! Brute-force reference implementations, independent of the optimized
//! code paths they are used to check.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::graph::{Edge, Graph, Source, Target, VertexId};
use crate::tensor::{RatTensor, Rational};

/// Isomorphism by trying every label- and shape-preserving bijection of
/// vertices.
pub fn brute_force_isomorphic<L: PartialEq>(g: &Graph<L>, h: &Graph<L>) -> bool {
    if g.boundary() != h.boundary() || g.vertex_count() != h.vertex_count() || g.edges().len() != h.edges().len() {
        return false;
    }
    let gv: Vec<VertexId> = g.vertices().keys().copied().collect();
    let hv: Vec<VertexId> = h.vertices().keys().copied().collect();
    let target: BTreeSet<_> = h.edges().iter().copied().collect();
    let mut image: Vec<Option<usize>> = vec![None; gv.len()];
    let mut used = vec![false; hv.len()];
    extend(g, h, &gv, &hv, &target, 0, &mut image, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend<L: PartialEq>(
    g: &Graph<L>,
    h: &Graph<L>,
    gv: &[VertexId],
    hv: &[VertexId],
    target: &BTreeSet<Edge>,
    k: usize,
    image: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if k == gv.len() {
        let map: BTreeMap<VertexId, VertexId> =
            gv.iter().zip(image.iter()).map(|(&v, i)| (v, hv[i.expect("complete")])).collect();
        return g.edges().iter().all(|e| {
            let src = match e.src {
                Source::VertexOut(v, p) => Source::VertexOut(map[&v], p),
                s => s,
            };
            let dst = match e.dst {
                Target::VertexIn(v, p) => Target::VertexIn(map[&v], p),
                t => t,
            };
            target.contains(&Edge::new(src, dst))
        });
    }
    let a = &g.vertices()[&gv[k]];
    for j in 0..hv.len() {
        let b = &h.vertices()[&hv[j]];
        if used[j] || a.arity != b.arity || a.coarity != b.coarity || a.label != b.label {
            continue;
        }
        used[j] = true;
        image[k] = Some(j);
        if extend(g, h, gv, hv, target, k + 1, image, used) {
            return true;
        }
        used[j] = false;
        image[k] = None;
    }
    false
}

/// Boundary, sorted vertex shapes with labels, and edge list.
pub type Certificate<L> = (usize, usize, Vec<(usize, usize, L)>, Vec<Edge>);

/// A complete isomorphism invariant: over every way of numbering the
/// vertices so that their shapes and labels appear in sorted order, the
/// least sorted edge list. Two graphs are isomorphic exactly when their
/// certificates are equal.
pub fn brute_force_certificate<L: Ord + Clone>(g: &Graph<L>) -> Certificate<L> {
    let mut vertices: Vec<(VertexId, (usize, usize, L))> =
        g.vertices().iter().map(|(&id, v)| (id, (v.arity, v.coarity, v.label.clone()))).collect();
    vertices.sort_by(|a, b| a.1.cmp(&b.1));
    let keys: Vec<(usize, usize, L)> = vertices.iter().map(|(_, k)| k.clone()).collect();
    let mut best: Option<Vec<Edge>> = None;
    let mut position = BTreeMap::new();
    let mut used = vec![false; vertices.len()];
    number(g, &vertices, &keys, 0, &mut position, &mut used, &mut best);
    let (m, n) = g.boundary();
    (m, n, keys, best.unwrap_or_default())
}

fn number<L: Ord>(
    g: &Graph<L>,
    vertices: &[(VertexId, (usize, usize, L))],
    keys: &[(usize, usize, L)],
    p: usize,
    position: &mut BTreeMap<VertexId, VertexId>,
    used: &mut Vec<bool>,
    best: &mut Option<Vec<Edge>>,
) {
    if p == keys.len() {
        let mut edges: Vec<Edge> = g
            .edges()
            .iter()
            .map(|e| {
                let src = match e.src {
                    Source::VertexOut(v, k) => Source::VertexOut(position[&v], k),
                    s => s,
                };
                let dst = match e.dst {
                    Target::VertexIn(v, k) => Target::VertexIn(position[&v], k),
                    t => t,
                };
                Edge::new(src, dst)
            })
            .collect();
        edges.sort();
        if best.as_ref().is_none_or(|b| edges < *b) {
            *best = Some(edges);
        }
        return;
    }
    for j in 0..vertices.len() {
        if used[j] || vertices[j].1 != keys[p] {
            continue;
        }
        used[j] = true;
        position.insert(vertices[j].0, p as VertexId + 1);
        number(g, vertices, keys, p + 1, position, used, best);
        used[j] = false;
    }
}

/// Equivalence classes of `0..n` generated by `pairs`, by repeated
/// relaxation of the class labels until nothing changes.
pub fn closure_classes(n: usize, pairs: &[(usize, usize)]) -> usize {
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(a, b) in pairs {
            let m = label[a].min(label[b]);
            for x in [a, b] {
                if label[x] != m {
                    label[x] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            return label.into_iter().collect::<BTreeSet<_>>().len();
        }
    }
}

/// For a graph whose vertices all have equal arity and coarity and act as
/// identities, the matrix obtained by following each input wire through
/// the vertices to an output: basis vector `x` goes to the basis vector
/// `y` with `y_j = x_i` whenever input `i` reaches output `j`.
pub fn wire_traced_matrix<L>(g: &Graph<L>, d: usize) -> RatTensor {
    let wiring = g.wiring();
    let (m, n) = g.boundary();
    let mut reaches = vec![0; n];
    for i in 1..=m {
        let mut at = Source::Input(i);
        loop {
            match wiring.target_of[&at] {
                Target::Output(j) => {
                    reaches[j - 1] = i - 1;
                    break;
                }
                Target::VertexIn(v, k) => at = Source::VertexOut(v, k),
            }
        }
    }
    let (rows, cols) = (d.pow(n as u32), d.pow(m as u32));
    let mut t = RatTensor::zeros(vec![rows, cols]);
    for col in 0..cols {
        let digits: Vec<usize> = (0..m).map(|i| col / d.pow((m - 1 - i) as u32) % d).collect();
        let row = reaches.iter().fold(0, |acc, &i| acc * d + digits[i]);
        t.set(&[row, col], Rational::one());
    }
    debug_assert!(t.data().iter().filter(|x| !x.is_zero()).count() == cols);
    t
}

/// Kronecker product of two matrices given as rows.
pub fn kron_rows(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let bc = b.first().map_or(0, Vec::len);
    let ac = a.first().map_or(0, Vec::len);
    let mut out = vec![vec![Rational::zero(); ac * bc]; a.len() * b.len()];
    for (i, ra) in a.iter().enumerate() {
        for (k, rb) in b.iter().enumerate() {
            for (j, x) in ra.iter().enumerate() {
                for (l, y) in rb.iter().enumerate() {
                    out[i * b.len() + k][j * bc + l] = x * y;
                }
            }
        }
    }
    out
}

/// Matrix product `a · b` of matrices given as rows.
pub fn matmul_rows(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols).map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (x, rb)| acc + x * &rb[j])).collect()
        })
        .collect()
}

fn digits(mut x: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for k in (0..len).rev() {
        out[k] = x % d;
        x /= d;
    }
    out
}

fn undigits(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * d + x)
}

/// The matrix of `x` with its inputs renumbered so that new input `k` is
/// old input `w(k)`, for `x` given as rows over `X^{⊗m} → X^{⊗n}`.
pub fn permute_input_rows(t: &[Vec<Rational>], d: usize, m: usize, w: &[usize]) -> Vec<Vec<Rational>> {
    t.iter()
        .map(|row| {
            (0..row.len())
                .map(|col| {
                    let new = digits(col, d, m);
                    let mut old = vec![0; m];
                    for k in 0..m {
                        old[w[k]] = new[k];
                    }
                    row[undigits(&old, d)].clone()
                })
                .collect()
        })
        .collect()
}

/// The matrix of `x` with old output `j` renumbered as output `w(j)`.
pub fn permute_output_rows(t: &[Vec<Rational>], d: usize, n: usize, w: &[usize]) -> Vec<Vec<Rational>> {
    (0..t.len())
        .map(|r| {
            let new = digits(r, d, n);
            let old: Vec<usize> = (0..n).map(|j| new[w[j]]).collect();
            t[undigits(&old, d)].clone()
        })
        .collect()
}
