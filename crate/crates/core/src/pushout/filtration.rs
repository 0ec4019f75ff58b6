//! Set-level check of the pushout squares filtering the free prop on a
//! cell attachment `Free(M₀) ⊕_{Free(K)} Free(L)`.
//!
//! For a generator inclusion `K ⊆ L` with `K ⊆ M₀`, the pushout prop is
//! free on `M₀ ∪ (L ∖ K)`. Its degree-`n` part `D_n` consists of graphs
//! with at most `n` vertices labeled in `L ∖ K`. The square in degree `n`
//! has corners
//!
//! * `V`: graphs with `M₀` vertices and exactly `n` slot vertices labeled
//!   in `L`,
//! * `U ⊆ V`: those with at least one slot labeled in `K`,
//! * `C = D_{n−1}` and `D = D_n`,
//!
//! where `U → C` and `V → D` forget the slots, identifying `K`-labeled
//! slots with `M₀` vertices.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::colimit::pushout;
use crate::canonical::{canonicalize, iso_classes, CanonicalForm, EnumLimits};
use crate::error::{Error, Result};
use crate::free_prop::{multisets, Signature};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "name")]
pub enum SquareLabel {
    /// A vertex labeled by a generator of `M₀`.
    Base(String),
    /// A slot vertex labeled by a generator of `L`.
    Slot(String),
    /// A vertex labeled by a generator of `L ∖ K` in the pushout prop.
    New(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationBounds {
    pub inputs: usize,
    pub outputs: usize,
    pub max_degree: usize,
    /// Cap on the total vertex count in every corner.
    pub max_vertices: usize,
    pub limits: EnumLimits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub u: usize,
    pub v: usize,
    pub c: usize,
    pub d: usize,
    /// Size of the image of `U → V`.
    pub image_in_v: usize,
    /// Size of the image of `U → C`.
    pub image_in_c: usize,
    pub pushout: usize,
    /// `|C| + |V| − |U|`.
    pub inclusion_exclusion: i64,
    /// The induced map from the pushout to `D` is a bijection.
    pub bijective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub inputs: usize,
    pub outputs: usize,
    pub max_vertices: usize,
    pub degrees: Vec<DegreeReport>,
    /// `D_0 ⊆ D_1 ⊆ …` within the bounds.
    pub nested: bool,
    /// `D_n` for `n = max_vertices` is every graph over `M₀ ∪ (L ∖ K)`.
    pub exhausts: bool,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.nested && self.exhausts && self.degrees.iter().all(|d| d.bijective)
    }
}

type Alphabet = Vec<(SquareLabel, usize, usize)>;
type Classes = BTreeSet<CanonicalForm<SquareLabel>>;

/// Iso classes of graphs over `alphabet` with at most `cap` vertices whose
/// label multiset passes `keep`.
fn classes(alphabet: &Alphabet, bounds: &FiltrationBounds, keep: impl Fn(&[&SquareLabel]) -> bool) -> Result<Classes> {
    let mut out = BTreeSet::new();
    for r in 0..=bounds.max_vertices {
        for choice in multisets(alphabet.len(), r) {
            let labels: Vec<&SquareLabel> = choice.iter().map(|&i| &alphabet[i].0).collect();
            if !keep(&labels) {
                continue;
            }
            let profile: Vec<Vertex<SquareLabel>> =
                choice.iter().map(|&i| Vertex::new(alphabet[i].1, alphabet[i].2, alphabet[i].0.clone())).collect();
            out.extend(iso_classes(&profile, bounds.inputs, bounds.outputs, bounds.limits)?);
        }
    }
    Ok(out)
}

fn index_of(set: &Classes) -> BTreeMap<&CanonicalForm<SquareLabel>, usize> {
    set.iter().enumerate().map(|(i, c)| (c, i)).collect()
}

fn map_classes(
    from: &Classes,
    to: &BTreeMap<&CanonicalForm<SquareLabel>, usize>,
    f: &impl Fn(&SquareLabel) -> SquareLabel,
) -> Result<Vec<usize>> {
    from.iter()
        .map(|c| {
            let image: Graph<SquareLabel> = c.graph().map_labels(|_, l| f(l));
            let form = canonicalize(&image)?;
            to.get(&form).copied().ok_or_else(|| Error::Inconsistent("a square map leaves its target corner".into()))
        })
        .collect()
}

fn image_size(map: &[usize]) -> usize {
    map.iter().collect::<BTreeSet<_>>().len()
}

/// Verifies, for every degree `1..=max_degree`, that the induced map from
/// the pushout of `C ← U → V` to `D` is a bijection.
pub fn filtration_square_check(
    sig_k: &Signature,
    sig_l: &Signature,
    base: &Signature,
    bounds: FiltrationBounds,
) -> Result<FiltrationReport> {
    for g in sig_k.generators() {
        for (name, other) in [("L", sig_l), ("M₀", base)] {
            let h = other
                .get(&g.name)
                .map_err(|_| Error::Precondition(format!("generator `{}` of K is not in {name}", g.name)))?;
            if (h.m, h.n) != (g.m, g.n) {
                return Err(Error::Precondition(format!(
                    "generator `{}` has different shapes in K and {name}",
                    g.name
                )));
            }
        }
    }
    let in_k = |name: &str| sig_k.contains(name);
    let base_letters: Alphabet = base.generators().map(|g| (SquareLabel::Base(g.name.clone()), g.m, g.n)).collect();
    let pushout_alphabet: Alphabet = base_letters
        .iter()
        .cloned()
        .chain(sig_l.generators().filter(|g| !in_k(&g.name)).map(|g| (SquareLabel::New(g.name.clone()), g.m, g.n)))
        .collect();
    let slot_alphabet: Alphabet = base_letters
        .into_iter()
        .chain(sig_l.generators().map(|g| (SquareLabel::Slot(g.name.clone()), g.m, g.n)))
        .collect();
    let forget = |l: &SquareLabel| match l {
        SquareLabel::Slot(name) if in_k(name) => SquareLabel::Base(name.clone()),
        SquareLabel::Slot(name) => SquareLabel::New(name.clone()),
        other => other.clone(),
    };
    let new_count = |ls: &[&SquareLabel]| ls.iter().filter(|l| matches!(l, SquareLabel::New(_))).count();
    let slot_count = |ls: &[&SquareLabel]| ls.iter().filter(|l| matches!(l, SquareLabel::Slot(_))).count();
    let k_slot_count =
        |ls: &[&SquareLabel]| ls.iter().filter(|l| matches!(l, SquareLabel::Slot(name) if in_k(name))).count();

    let filtered: Vec<Classes> = (0..=bounds.max_vertices.max(bounds.max_degree))
        .map(|n| classes(&pushout_alphabet, &bounds, |ls| new_count(ls) <= n))
        .collect::<Result<_>>()?;
    let everything = classes(&pushout_alphabet, &bounds, |_| true)?;
    let nested = filtered.windows(2).all(|w| w[0].is_subset(&w[1]));
    let exhausts = filtered[bounds.max_vertices] == everything;

    let mut degrees = Vec::new();
    for n in 1..=bounds.max_degree {
        let v = classes(&slot_alphabet, &bounds, |ls| slot_count(ls) == n)?;
        let u = classes(&slot_alphabet, &bounds, |ls| slot_count(ls) == n && k_slot_count(ls) >= 1)?;
        let (c, d) = (&filtered[n - 1], &filtered[n]);
        let (v_index, c_index, d_index) = (index_of(&v), index_of(c), index_of(d));
        let u_to_v = map_classes(&u, &v_index, &|l: &SquareLabel| l.clone())?;
        let u_to_c = map_classes(&u, &c_index, &forget)?;
        let v_to_d = map_classes(&v, &d_index, &forget)?;
        let c_to_d = map_classes(c, &d_index, &|l: &SquareLabel| l.clone())?;

        // Objects: U = 0, V = 1, C = 2.
        let p = pushout(u.len(), v.len(), c.len(), &u_to_v, &u_to_c)?;
        let mut induced: Vec<Option<usize>> = vec![None; p.size];
        let mut well_defined = true;
        let members = (0..v.len())
            .map(|x| (p.class_of(1, x), v_to_d[x]))
            .chain((0..c.len()).map(|x| (p.class_of(2, x), c_to_d[x])));
        for (class, image) in members {
            well_defined &= *induced[class].get_or_insert(image) == image;
        }
        let hit: BTreeSet<usize> = induced.iter().flatten().copied().collect();
        degrees.push(DegreeReport {
            degree: n,
            u: u.len(),
            v: v.len(),
            c: c.len(),
            d: d.len(),
            image_in_v: image_size(&u_to_v),
            image_in_c: image_size(&u_to_c),
            pushout: p.size,
            inclusion_exclusion: c.len() as i64 + v.len() as i64 - u.len() as i64,
            bijective: well_defined && hit.len() == p.size && p.size == d.len(),
        });
    }
    Ok(FiltrationReport {
        inputs: bounds.inputs,
        outputs: bounds.outputs,
        max_vertices: bounds.max_vertices,
        degrees,
        nested,
        exhausts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_prop::Generator;

    fn bounds(max_degree: usize, max_vertices: usize) -> FiltrationBounds {
        FiltrationBounds { inputs: 1, outputs: 1, max_degree, max_vertices, limits: EnumLimits::default() }
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn chains_of_two_unary_generators() {
        let k = Signature::new([]).unwrap();
        let l = Signature::new([Generator::new("f", 1, 1)]).unwrap();
        let m0 = Signature::new([Generator::new("g", 1, 1)]).unwrap();
        let cap = 3;
        let report = filtration_square_check(&k, &l, &m0, bounds(2, cap)).unwrap();
        assert!(report.passed());
        for d in &report.degrees {
            let n = d.degree;
            let degree_upto =
                |n: usize| (0..=cap).map(|r| (0..=n.min(r)).map(|q| binomial(r, q)).sum::<usize>()).sum::<usize>();
            assert_eq!(d.d, degree_upto(n));
            assert_eq!(d.c, degree_upto(n - 1));
            assert_eq!(d.v, (n..=cap).map(|r| binomial(r, n)).sum::<usize>());
            assert_eq!(d.u, 0);
        }
    }

    #[test]
    fn identity_attachment_adds_nothing() {
        let k = Signature::new([Generator::new("f", 1, 1)]).unwrap();
        let report = filtration_square_check(&k, &k, &k, bounds(2, 3)).unwrap();
        assert!(report.passed());
        assert!(report.degrees.iter().all(|d| d.c == d.d && d.u == d.v));
    }

    #[test]
    fn k_must_lie_in_the_base() {
        let k = Signature::new([Generator::new("f", 1, 1)]).unwrap();
        let m0 = Signature::new([Generator::new("g", 1, 1)]).unwrap();
        assert!(filtration_square_check(&k, &k, &m0, bounds(1, 2)).is_err());
    }
}
