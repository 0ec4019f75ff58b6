//! Punctured cubes of a map `i: K → L` and their colimits `L_n(L/K)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::colimit::{colimit, pushout, Arrow, Colimit};
use crate::error::{Error, Result};

/// A total map between finite sets of named tokens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSetMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub mapping: Vec<usize>,
}

impl FiniteSetMap {
    pub fn new(source: Vec<String>, target: Vec<String>, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != source.len() || mapping.iter().any(|&y| y >= target.len()) {
            return Err(Error::Precondition("the map must send every source token to a target token".into()));
        }
        Ok(FiniteSetMap { source, target, mapping })
    }

    /// `K ⊆ L` by token name.
    pub fn inclusion(source: Vec<String>, target: Vec<String>) -> Result<Self> {
        let mapping = source
            .iter()
            .map(|k| {
                target
                    .iter()
                    .position(|l| l == k)
                    .ok_or_else(|| Error::Precondition(format!("`{k}` is not in the target")))
            })
            .collect::<Result<_>>()?;
        Self::new(source, target, mapping)
    }

    /// Builds `K → L` from `(k, l)` pairs, one per element of `K`.
    pub fn from_pairs(source: Vec<String>, target: Vec<String>, pairs: &BTreeMap<String, String>) -> Result<Self> {
        let mapping = source
            .iter()
            .map(|k| {
                let l = pairs.get(k).ok_or_else(|| Error::Precondition(format!("no image for `{k}`")))?;
                target
                    .iter()
                    .position(|t| t == l)
                    .ok_or_else(|| Error::Precondition(format!("`{l}` is not in the target")))
            })
            .collect::<Result<_>>()?;
        Self::new(source, target, mapping)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.mapping.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }
}

/// The `n`-cube with vertex `ε ⊆ {1..n}` (a bit mask) carrying the product
/// of `L` in the coordinates of `ε` and `K` elsewhere.
#[derive(Clone, Debug)]
pub struct CubeDiagram {
    pub i: FiniteSetMap,
    pub n: usize,
}

impl CubeDiagram {
    pub fn new(i: FiniteSetMap, n: usize) -> Result<Self> {
        if n > 16 {
            return Err(Error::ResourceLimit(format!("cube dimension {n}")));
        }
        Ok(CubeDiagram { i, n })
    }

    fn radix(&self, mask: u32, k: usize) -> usize {
        if mask >> k & 1 == 1 {
            self.i.target.len()
        } else {
            self.i.source.len()
        }
    }

    pub fn vertex_size(&self, mask: u32) -> usize {
        (0..self.n).map(|k| self.radix(mask, k)).product()
    }

    /// Coordinates of element `x` of `T_mask`, the first coordinate most
    /// significant.
    pub fn tuple(&self, mask: u32, mut x: usize) -> Vec<usize> {
        let mut t = vec![0; self.n];
        for k in (0..self.n).rev() {
            let r = self.radix(mask, k);
            t[k] = x % r;
            x /= r;
        }
        t
    }

    pub fn index(&self, mask: u32, tuple: &[usize]) -> usize {
        (0..self.n).fold(0, |acc, k| acc * self.radix(mask, k) + tuple[k])
    }

    /// The image in `L^n` of an element of `T_mask`.
    pub fn to_total(&self, mask: u32, tuple: &[usize]) -> Vec<usize> {
        (0..self.n).map(|k| if mask >> k & 1 == 1 { tuple[k] } else { self.i.apply(tuple[k]) }).collect()
    }

    fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }
}

/// `L_n(L/K)` with its map `λ` into `L^n`.
#[derive(Clone, Debug)]
pub struct PuncturedColimit {
    pub n: usize,
    pub size: usize,
    /// Per class, its image in `L^n`.
    pub lambda: Vec<Vec<usize>>,
    masks: Vec<u32>,
    colimit: Option<Colimit>,
}

impl PuncturedColimit {
    /// The class of element `tuple` of `T_mask`, `mask` not full.
    pub fn class_of(&self, cube: &CubeDiagram, mask: u32, tuple: &[usize]) -> usize {
        let object = self.masks.iter().position(|&m| m == mask).expect("mask of the punctured cube");
        self.colimit.as_ref().expect("non-empty cube").class_of(object, cube.index(mask, tuple))
    }

    /// Every `(mask, tuple)` of the punctured cube with its class.
    pub fn elements<'a>(&'a self, cube: &'a CubeDiagram) -> impl Iterator<Item = (u32, Vec<usize>, usize)> + 'a {
        self.masks.iter().enumerate().flat_map(move |(object, &mask)| {
            (0..cube.vertex_size(mask)).map(move |x| {
                (mask, cube.tuple(mask, x), self.colimit.as_ref().expect("non-empty cube").class_of(object, x))
            })
        })
    }

    pub fn lambda_is_injective(&self) -> bool {
        let mut seen: Vec<&Vec<usize>> = self.lambda.iter().collect();
        seen.sort();
        seen.dedup();
        seen.len() == self.lambda.len()
    }
}

/// Colimit of the cube with its terminal vertex removed.
pub fn punctured_colimit(cube: &CubeDiagram) -> Result<PuncturedColimit> {
    if cube.n == 0 {
        return Ok(PuncturedColimit { n: 0, size: 0, lambda: Vec::new(), masks: Vec::new(), colimit: None });
    }
    let full = cube.full();
    let masks: Vec<u32> = (0..full).collect();
    let sizes: Vec<usize> = masks.iter().map(|&m| cube.vertex_size(m)).collect();
    if sizes.iter().sum::<usize>() > 1 << 24 {
        return Err(Error::ResourceLimit("punctured cube is too large".into()));
    }
    let mut arrows = Vec::new();
    for &mask in &masks {
        for k in 0..cube.n {
            let up = mask | 1 << k;
            if up == mask || up == full {
                continue;
            }
            let images = (0..cube.vertex_size(mask))
                .map(|x| {
                    let mut t = cube.tuple(mask, x);
                    t[k] = cube.i.apply(t[k]);
                    cube.index(up, &t)
                })
                .collect();
            arrows.push(Arrow { source: mask as usize, target: up as usize, images });
        }
    }
    let c = colimit(&sizes, &arrows)?;
    let mut lambda: Vec<Option<Vec<usize>>> = vec![None; c.size];
    for &mask in &masks {
        for x in 0..cube.vertex_size(mask) {
            let image = cube.to_total(mask, &cube.tuple(mask, x));
            let slot = &mut lambda[c.class_of(mask as usize, x)];
            if *slot.get_or_insert_with(|| image.clone()) != image {
                return Err(Error::Inconsistent("the cube maps do not form a cocone over L^n".into()));
            }
        }
    }
    Ok(PuncturedColimit {
        n: cube.n,
        size: c.size,
        lambda: lambda.into_iter().map(|l| l.expect("classes are inhabited")).collect(),
        masks,
        colimit: Some(c),
    })
}

/// Outcome of comparing `L_n(L/K)` with the pushout-product of
/// `λ_{n−1}: L_{n−1} → L^{n−1}` and `i`.
#[derive(Clone, Debug, Serialize)]
pub struct IteratedReport {
    pub n: usize,
    pub colimit_size: usize,
    pub pushout_size: usize,
    /// The explicit map `L_n → pushout` is well defined.
    pub well_defined: bool,
    pub bijective: bool,
    pub commutes_with_lambda: bool,
}

impl IteratedReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.bijective && self.commutes_with_lambda
    }
}

/// Builds `L_{n−1} × L ⊔_{L_{n−1} × K} L^{n−1} × K` and the map to it
/// from `L_n(L/K)` splitting off the last coordinate, and checks that the
/// map is a bijection over `L^n`.
pub fn iterated_identity_check(i: &FiniteSetMap, n: usize) -> Result<IteratedReport> {
    if n < 2 {
        return Err(Error::Precondition("the iterated identity needs n ≥ 2".into()));
    }
    let (k, l) = (i.source.len(), i.target.len());
    let big = CubeDiagram::new(i.clone(), n)?;
    let small = CubeDiagram::new(i.clone(), n - 1)?;
    let ln = punctured_colimit(&big)?;
    let lm = punctured_colimit(&small)?;
    let a = lm.size;
    let total_m = l.pow(n as u32 - 1);
    let encode = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * l + x);
    // A = L_{n−1} × K (a * k + y), B = L_{n−1} × L, C = L^{n−1} × K.
    let f: Vec<usize> = (0..a * k).map(|x| (x / k) * l + i.apply(x % k)).collect();
    let g: Vec<usize> = (0..a * k).map(|x| encode(&lm.lambda[x / k]) * k + x % k).collect();
    let p = pushout(a * k, a * l, total_m * k, &f, &g)?;
    let mu: Vec<Vec<usize>> = {
        let mut mu = vec![None; p.size];
        for x in 0..a * l {
            let mut t = lm.lambda[x / l].clone();
            t.push(x % l);
            mu[p.class_of(1, x)].get_or_insert(t);
        }
        for x in 0..total_m * k {
            let mut t = small.tuple(small.full(), x / k);
            t.push(i.apply(x % k));
            mu[p.class_of(2, x)].get_or_insert(t);
        }
        mu.into_iter().map(|t| t.expect("classes are inhabited")).collect()
    };
    let mut beta: Vec<Option<usize>> = vec![None; ln.size];
    let mut well_defined = true;
    let mut commutes = true;
    let last = 1u32 << (n - 1);
    for (mask, tuple, class) in ln.elements(&big) {
        let head = mask & (last - 1);
        let image = if mask & last != 0 {
            p.class_of(1, lm.class_of(&small, head, &tuple[..n - 1]) * l + tuple[n - 1])
        } else {
            let total = small.to_total(head, &tuple[..n - 1]);
            p.class_of(2, encode(&total) * k + tuple[n - 1])
        };
        well_defined &= *beta[class].get_or_insert(image) == image;
        commutes &= mu[image] == ln.lambda[class];
    }
    let mut hit: Vec<usize> = beta.iter().flatten().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    Ok(IteratedReport {
        n,
        colimit_size: ln.size,
        pushout_size: p.size,
        well_defined,
        bijective: well_defined && hit.len() == ln.size && ln.size == p.size,
        commutes_with_lambda: commutes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn one_cube_is_k() {
        let i = FiniteSetMap::inclusion(names(&["a"]), names(&["a", "b"])).unwrap();
        let c = punctured_colimit(&CubeDiagram::new(i, 1).unwrap()).unwrap();
        assert_eq!(c.size, 1);
        assert_eq!(c.lambda, vec![vec![0]]);
    }

    #[test]
    fn square_of_a_point_in_two_points() {
        let i = FiniteSetMap::inclusion(names(&["a"]), names(&["a", "b"])).unwrap();
        let c = punctured_colimit(&CubeDiagram::new(i.clone(), 2).unwrap()).unwrap();
        assert_eq!(c.size, 3);
        assert!(c.lambda_is_injective());
        let r = iterated_identity_check(&i, 2).unwrap();
        assert!(r.passed());
        assert_eq!((r.colimit_size, r.pushout_size), (3, 3));
    }

    #[test]
    fn empty_cube_is_empty() {
        let i = FiniteSetMap::inclusion(names(&[]), names(&["a"])).unwrap();
        assert_eq!(punctured_colimit(&CubeDiagram::new(i, 0).unwrap()).unwrap().size, 0);
    }

    #[test]
    fn non_injective_maps_give_non_injective_lambda() {
        let i = FiniteSetMap::new(names(&["a", "b"]), names(&["c", "d"]), vec![0, 0]).unwrap();
        assert!(!i.is_injective());
        let c = punctured_colimit(&CubeDiagram::new(i, 2).unwrap()).unwrap();
        assert_eq!(c.size, 5);
        assert!(!c.lambda_is_injective());
    }

    #[test]
    fn collapsing_onto_a_point_leaves_lambda_injective() {
        let i = FiniteSetMap::new(names(&["a", "b"]), names(&["c"]), vec![0, 0]).unwrap();
        let c = punctured_colimit(&CubeDiagram::new(i, 2).unwrap()).unwrap();
        assert_eq!(c.size, 1);
        assert!(c.lambda_is_injective());
    }
}
