//! Homomorphism checks, morphism props and diagram endomorphism props.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::end_prop::permute_boundary;
use super::eval::{evaluate_with, AlgebraAssignment, EvalLimits};
use super::rat::RatTensor;
use crate::error::{Error, Result};
use crate::free_prop::{PropElement, Signature};
use crate::perm::Perm;

#[derive(Clone, Debug, Default, Serialize)]
pub struct MorphismReport {
    pub pairs: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks on every sample pair `(x, y)` that evaluation sends `x ⊗ y` to the
/// Kronecker product, `x` then `y` (when composable) to the matrix product,
/// and a rotation of the inputs or outputs of `x` to the matching axis
/// permutation.
pub fn eval_is_morphism(
    a: &AlgebraAssignment,
    samples: &[(PropElement, PropElement)],
    limits: EvalLimits,
) -> Result<MorphismReport> {
    let eval = |e: &PropElement| evaluate_with(e.graph(), a, limits);
    let mut report = MorphismReport { pairs: samples.len(), ..Default::default() };
    let record = |report: &mut MorphismReport, ok: bool, what: String| {
        report.checks += 1;
        if !ok {
            report.violations.push(what);
        }
    };
    for (k, (x, y)) in samples.iter().enumerate() {
        let (ex, ey) = (eval(x)?, eval(y)?);
        record(&mut report, eval(&x.hcompose(y)?)? == ex.kron(&ey)?, format!("pair {k}: horizontal composite"));
        if x.boundary().1 == y.boundary().0 {
            record(&mut report, eval(&x.vcompose(y)?)? == ey.matmul(&ex)?, format!("pair {k}: vertical composite"));
        }
        let (m, n) = x.boundary();
        let w_in = rotation(m);
        let w_out = rotation(n);
        let outs: Vec<usize> = (0..n).collect();
        let ins: Vec<usize> = (0..m).collect();
        let expected_in = permute_boundary(&ex, a.dim, &outs, w_in.images())?;
        record(&mut report, eval(&x.permute_inputs(&w_in)?)? == expected_in, format!("pair {k}: input permutation"));
        let expected_out = permute_boundary(&ex, a.dim, w_out.inverse().images(), &ins)?;
        record(
            &mut report,
            eval(&x.permute_outputs(&w_out)?)? == expected_out,
            format!("pair {k}: output permutation"),
        );
    }
    Ok(report)
}

/// The cyclic shift `i ↦ i + 1 mod n`.
fn rotation(n: usize) -> Perm {
    Perm::new((0..n).map(|i| (i + 1) % n.max(1)).collect()).expect("rotations are permutations")
}

/// First entry `(row, col)` where `f^{⊗n} · x` and `y · f^{⊗m}` differ, for
/// `x: A^{⊗m} → A^{⊗n}` and `y: B^{⊗m} → B^{⊗n}`.
pub fn square_defect(
    f: &RatTensor,
    x: &RatTensor,
    y: &RatTensor,
    m: usize,
    n: usize,
) -> Result<Option<(usize, usize)>> {
    let left = f.kron_power(n)?.matmul(x)?;
    let right = y.matmul(&f.kron_power(m)?)?;
    if left.shape() != right.shape() {
        return Err(Error::DimensionMismatch(format!("{:?} against {:?}", left.shape(), right.shape())));
    }
    let cols = left.cols();
    Ok(left.data().iter().zip(right.data()).position(|(p, q)| p != q).map(|k| (k / cols, k % cols)))
}

fn check_map_shape(f: &RatTensor, phi_a: &AlgebraAssignment, phi_b: &AlgebraAssignment) -> Result<()> {
    if f.shape() != [phi_b.dim, phi_a.dim] {
        return Err(Error::DimensionMismatch(format!(
            "f has shape {:?} but maps dimension {} to dimension {}",
            f.shape(),
            phi_a.dim,
            phi_b.dim
        )));
    }
    Ok(())
}

/// Whether `(φ_A(g), φ_B(g))` lies in the morphism prop of `f: A → B`,
/// i.e. `f^{⊗n} · φ_A(g) = φ_B(g) · f^{⊗m}`.
pub fn morphism_prop_membership(
    f: &RatTensor,
    phi_a: &AlgebraAssignment,
    phi_b: &AlgebraAssignment,
    sig: &Signature,
    generator: &str,
) -> Result<bool> {
    check_map_shape(f, phi_a, phi_b)?;
    let g = sig.get(generator)?;
    let x = phi_a.matrix(&g.name, g.m, g.n)?;
    let y = phi_b.matrix(&g.name, g.m, g.n)?;
    Ok(square_defect(f, x, y, g.m, g.n)?.is_none())
}

/// Whether `f^{⊗n} · eval_A(e) = eval_B(e) · f^{⊗m}`.
pub fn element_square(
    f: &RatTensor,
    phi_a: &AlgebraAssignment,
    phi_b: &AlgebraAssignment,
    e: &PropElement,
) -> Result<bool> {
    check_map_shape(f, phi_a, phi_b)?;
    let (m, n) = e.boundary();
    let limits = EvalLimits::default();
    let x = evaluate_with(e.graph(), phi_a, limits)?;
    let y = evaluate_with(e.graph(), phi_b, limits)?;
    Ok(square_defect(f, &x, &y, m, n)?.is_none())
}

/// The assignment `φ_A(g) = (f⁻¹)^{⊗n} · φ_B(g) · f^{⊗m}` transported
/// along an invertible `f: A → B`.
pub fn transport(f: &RatTensor, phi_b: &AlgebraAssignment, sig: &Signature) -> Result<AlgebraAssignment> {
    if f.shape() != [phi_b.dim, phi_b.dim] {
        return Err(Error::DimensionMismatch(format!("f has shape {:?}, expected a square map", f.shape())));
    }
    let inv = f.inverse()?;
    let mut matrices = BTreeMap::new();
    for g in sig.generators() {
        let y = phi_b.matrix(&g.name, g.m, g.n)?;
        matrices.insert(g.name.clone(), inv.kron_power(g.n)?.matmul(y)?.matmul(&f.kron_power(g.m)?)?);
    }
    Ok(AlgebraAssignment { dim: phi_b.dim, matrices })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramObject {
    pub name: String,
    pub algebra: AlgebraAssignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramArrow {
    pub name: String,
    pub source: String,
    pub target: String,
    pub matrix: RatTensor,
    /// `[first, second]` when this arrow is `second ∘ first`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composite_of: Option<(String, String)>,
}

/// A diagram of algebras over a small index category, given by its
/// objects and a list of arrows closed under the recorded composites.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexDiagram {
    pub objects: Vec<DiagramObject>,
    pub arrows: Vec<DiagramArrow>,
}

impl IndexDiagram {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn object(&self, name: &str) -> Result<&DiagramObject> {
        self.objects
            .iter()
            .find(|o| o.name == name)
            .ok_or_else(|| Error::Inconsistent(format!("unknown object `{name}`")))
    }

    fn arrow(&self, name: &str) -> Result<&DiagramArrow> {
        self.arrows
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| Error::Inconsistent(format!("unknown arrow `{name}`")))
    }

    /// Checks names, arrow shapes and recorded composites.
    pub fn check(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for o in &self.objects {
            if !names.insert(&o.name) {
                return Err(Error::Inconsistent(format!("duplicate object `{}`", o.name)));
            }
        }
        let mut names = BTreeSet::new();
        for a in &self.arrows {
            if !names.insert(&a.name) {
                return Err(Error::Inconsistent(format!("duplicate arrow `{}`", a.name)));
            }
            let (s, t) = (self.object(&a.source)?, self.object(&a.target)?);
            if a.matrix.shape() != [t.algebra.dim, s.algebra.dim] {
                return Err(Error::Inconsistent(format!(
                    "arrow `{}` has shape {:?} between dimensions {} and {}",
                    a.name,
                    a.matrix.shape(),
                    s.algebra.dim,
                    t.algebra.dim
                )));
            }
        }
        for a in &self.arrows {
            let Some((first, second)) = &a.composite_of else { continue };
            let (p, q) = (self.arrow(first)?, self.arrow(second)?);
            if p.source != a.source || p.target != q.source || q.target != a.target {
                return Err(Error::Inconsistent(format!(
                    "`{}` is not a composite of `{first}` and `{second}`",
                    a.name
                )));
            }
            if q.matrix.matmul(&p.matrix)? != a.matrix {
                return Err(Error::Inconsistent(format!("`{}` differs from `{second}` ∘ `{first}`", a.name)));
            }
        }
        Ok(())
    }

    /// The restriction to a subset of objects: the arrows between kept
    /// objects, with composites kept only when both factors are.
    pub fn restrict(&self, keep: &[&str]) -> IndexDiagram {
        let objects: Vec<DiagramObject> =
            self.objects.iter().filter(|o| keep.contains(&o.name.as_str())).cloned().collect();
        let kept = |name: &str| objects.iter().any(|o| o.name == name);
        let mut arrows: Vec<DiagramArrow> =
            self.arrows.iter().filter(|a| kept(&a.source) && kept(&a.target)).cloned().collect();
        let arrow_names: BTreeSet<String> = arrows.iter().map(|a| a.name.clone()).collect();
        for a in &mut arrows {
            if let Some((p, q)) = &a.composite_of {
                if !arrow_names.contains(p) || !arrow_names.contains(q) {
                    a.composite_of = None;
                }
            }
        }
        IndexDiagram { objects, arrows }
    }
}

/// Per generator, whether the tuple of structure matrices lies in the
/// endomorphism prop of the diagram: every arrow must intertwine them.
pub fn diagram_end_check(diagram: &IndexDiagram, sig: &Signature) -> Result<BTreeMap<String, bool>> {
    diagram.check()?;
    for o in &diagram.objects {
        o.algebra.check(sig)?;
    }
    let mut out = BTreeMap::new();
    for g in sig.generators() {
        let mut ok = true;
        for a in &diagram.arrows {
            let (s, t) = (diagram.object(&a.source)?, diagram.object(&a.target)?);
            ok &= morphism_prop_membership(&a.matrix, &s.algebra, &t.algebra, sig, &g.name)?;
        }
        out.insert(g.name.clone(), ok);
    }
    Ok(out)
}
