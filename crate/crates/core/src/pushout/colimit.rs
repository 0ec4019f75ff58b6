//! Colimits of finite sets by union-find over the disjoint union.

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// A map between finite sets `0..source → 0..target` given by its images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub images: Vec<usize>,
}

/// The colimit of a diagram of finite sets: every element of every object
/// is sent to its class.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub size: usize,
    offsets: Vec<usize>,
    class: Vec<usize>,
}

impl Colimit {
    pub fn class_of(&self, object: usize, element: usize) -> usize {
        self.class[self.offsets[object] + element]
    }

    /// The coprojection of `object` into the colimit.
    pub fn injection(&self, object: usize) -> &[usize] {
        &self.class[self.offsets[object]..self.offsets[object + 1]]
    }

    /// Per class, one `(object, element)` in it, the first in the disjoint
    /// union.
    pub fn representatives(&self) -> Vec<(usize, usize)> {
        let mut reps = vec![None; self.size];
        for object in 0..self.offsets.len() - 1 {
            for (element, &c) in self.injection(object).iter().enumerate() {
                reps[c].get_or_insert((object, element));
            }
        }
        reps.into_iter().map(|r| r.expect("classes are inhabited")).collect()
    }
}

/// Colimit of the diagram with objects of the given sizes and arrows
/// `(from, to, images)`.
pub fn colimit(sizes: &[usize], arrows: &[Arrow]) -> Result<Colimit> {
    let mut offsets = Vec::with_capacity(sizes.len() + 1);
    let mut total = 0;
    for &s in sizes {
        offsets.push(total);
        total += s;
    }
    offsets.push(total);
    let mut uf = UnionFind::new(total);
    for a in arrows {
        if a.source >= sizes.len() || a.target >= sizes.len() {
            return Err(Error::Precondition(format!("arrow {} → {} between missing objects", a.source, a.target)));
        }
        if a.images.len() != sizes[a.source] || a.images.iter().any(|&y| y >= sizes[a.target]) {
            return Err(Error::Precondition(format!("arrow {} → {} is not a total map", a.source, a.target)));
        }
        for (x, &y) in a.images.iter().enumerate() {
            uf.union(offsets[a.source] + x, offsets[a.target] + y);
        }
    }
    let (class, size) = uf.classes();
    Ok(Colimit { size, offsets, class })
}

/// Pushout of `B ← A → C`; the objects are numbered `A = 0`, `B = 1`,
/// `C = 2`.
pub fn pushout(a: usize, b: usize, c: usize, f: &[usize], g: &[usize]) -> Result<Colimit> {
    colimit(
        &[a, b, c],
        &[Arrow { source: 0, target: 1, images: f.to_vec() }, Arrow { source: 0, target: 2, images: g.to_vec() }],
    )
}

/// Coequalizer of `d0, d1: X ⇉ Y`; the objects are numbered `X = 0`,
/// `Y = 1`.
pub fn coequalizer(x: usize, y: usize, d0: &[usize], d1: &[usize]) -> Result<Colimit> {
    colimit(
        &[x, y],
        &[Arrow { source: 0, target: 1, images: d0.to_vec() }, Arrow { source: 0, target: 1, images: d1.to_vec() }],
    )
}

/// The reflexive pair `d0, d1: B ⊔ A ⊔ C ⇉ B ⊔ C` with common section `s0`
/// presenting the pushout of `B ← A → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflexivePair {
    pub x1: usize,
    pub x0: usize,
    pub d0: Vec<usize>,
    pub d1: Vec<usize>,
    pub s0: Vec<usize>,
}

impl ReflexivePair {
    pub fn of_span(a: usize, b: usize, c: usize, f: &[usize], g: &[usize]) -> Self {
        let b_part = 0..b;
        let c_part = (b..b + c).collect::<Vec<_>>();
        let d0: Vec<usize> = b_part.clone().chain(f.iter().copied()).chain(c_part.iter().copied()).collect();
        let d1: Vec<usize> = b_part.clone().chain(g.iter().map(|&y| b + y)).chain(c_part.iter().copied()).collect();
        let s0: Vec<usize> = b_part.chain((b..b + c).map(|y| y + a)).collect();
        ReflexivePair { x1: b + a + c, x0: b + c, d0, d1, s0 }
    }

    /// `d0 ∘ s0 = d1 ∘ s0 = id`.
    pub fn is_reflexive(&self) -> bool {
        self.s0.iter().enumerate().all(|(y, &x)| self.d0[x] == y && self.d1[x] == y)
    }
}

/// Whether the pushout of `B ← A → C` and the coequalizer of its reflexive
/// presentation agree: the evident map between them must be a bijection.
pub fn pushout_is_reflexive_coequalizer(a: usize, b: usize, c: usize, f: &[usize], g: &[usize]) -> Result<bool> {
    let p = pushout(a, b, c, f, g)?;
    let pair = ReflexivePair::of_span(a, b, c, f, g);
    if !pair.is_reflexive() {
        return Ok(false);
    }
    let q = coequalizer(pair.x1, pair.x0, &pair.d0, &pair.d1)?;
    if p.size != q.size {
        return Ok(false);
    }
    let mut to_q = vec![None; p.size];
    let pairs = (0..b)
        .map(|y| (p.class_of(1, y), q.class_of(1, y)))
        .chain((0..c).map(|z| (p.class_of(2, z), q.class_of(1, b + z))));
    for (pc, qc) in pairs {
        if *to_q[pc].get_or_insert(qc) != qc {
            return Ok(false);
        }
    }
    let mut hit: Vec<usize> = to_q.into_iter().map(|x| x.expect("pushout classes meet B or C")).collect();
    hit.sort_unstable();
    hit.dedup();
    Ok(hit.len() == q.size)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pushout_along_an_injection() {
        // B = {0, 1}, C = {0, 1, 2}, A = {0} glued at B.1 ~ C.0.
        let p = pushout(1, 2, 3, &[1], &[0]).unwrap();
        assert_eq!(p.size, 4);
        assert_eq!(p.class_of(1, 1), p.class_of(2, 0));
    }

    #[test]
    fn coequalizer_of_a_swap() {
        let q = coequalizer(1, 2, &[0], &[1]).unwrap();
        assert_eq!(q.size, 1);
    }

    #[test]
    fn partial_maps_are_rejected() {
        assert!(colimit(&[2, 1], &[Arrow { source: 0, target: 1, images: vec![0] }]).is_err());
    }

    #[test]
    fn reflexive_presentation() {
        assert!(pushout_is_reflexive_coequalizer(2, 2, 2, &[0, 0], &[0, 1]).unwrap());
        assert!(pushout_is_reflexive_coequalizer(0, 1, 1, &[], &[]).unwrap());
    }
}
