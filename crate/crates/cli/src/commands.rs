//! One function per subcommand. Each returns the JSON written to stdout.

use std::collections::BTreeMap;
use std::path::Path;

use propcalc::canonical::{canonical, enumerate_graphs, form_hash, is_isomorphic};
use propcalc::coproduct::{
    check_mixed, collapse, expand_all, non_confluence_witness, Irreducible, MixedGraph, Strategy, WitnessBounds,
};
use propcalc::free_prop::{count_basis, expand, extend_morphism, FreeProp, Generator, PropElement, Signature};
use propcalc::graph::Graph;
use propcalc::json::{DocLabel, GraphDoc};
use propcalc::pushout::{
    filtration_square_check, iterated_identity_check, punctured_colimit, CubeDiagram, FiltrationBounds, FiniteSetMap,
};
use propcalc::tensor::{evaluate_element, square_defect, AlgebraAssignment, RatTensor};
use propcalc::{fixtures, Error};
use serde_json::{json, Value};

use crate::input::{
    doc_value, enum_limits, parse_json, parse_names, read, read_doc, read_element, read_graph, read_signature,
    with_graph, AnyGraph, CliError, CliResult, DocKind,
};

pub fn validate(path: &Path) -> CliResult<Value> {
    let doc = read_doc(path)?;
    let kind = DocKind::of(&doc);
    let any = AnyGraph::from_doc(&doc)?;
    let mut violations: Vec<Value> = with_graph!(&any, g => g.validate())
        .iter()
        .map(|v| json!({"condition": v.condition(), "message": v.to_string()}))
        .collect();
    if let AnyGraph::Mixed(g) = &any {
        if violations.is_empty() {
            if let Err(e) = check_mixed(g) {
                violations.push(json!({"condition": "labels", "message": e.to_string()}));
            }
        }
    }
    let report = json!({
        "valid": violations.is_empty(),
        "kind": kind,
        "m": doc.m,
        "n": doc.n,
        "vertices": doc.vertices.len(),
        "edges": doc.edges.len(),
        "violations": violations,
    });
    if violations.is_empty() {
        Ok(report)
    } else {
        Err(CliError::Failed(report.to_string()))
    }
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Mode {
    /// Side by side, the second graph's boundary after the first's.
    Horizontal,
    /// The first graph's outputs feed the second graph's inputs.
    Vertical,
}

pub fn compose(mode: Mode, first: &Path, second: &Path, canonical_form: bool) -> CliResult<Value> {
    let a: Graph<Option<String>> = read_graph(first)?;
    let b: Graph<Option<String>> = read_graph(second)?;
    a.check()?;
    b.check()?;
    let g = match mode {
        Mode::Horizontal => a.hcompose(&b)?,
        Mode::Vertical => a.vcompose(&b)?,
    };
    if canonical_form {
        Ok(doc_value(canonical(&g)?.form.graph()))
    } else {
        Ok(doc_value(&g))
    }
}

fn canon_of<L: Ord + Clone + std::hash::Hash + DocLabel>(g: &Graph<L>) -> CliResult<Value> {
    g.check()?;
    let c = canonical(g)?;
    Ok(json!({
        "order": c.order,
        "method": c.method,
        "hash": format!("{:016x}", form_hash(&c.form)),
        "graph": doc_value(c.form.graph()),
    }))
}

pub fn canon(path: &Path) -> CliResult<Value> {
    let any = AnyGraph::read(path)?;
    with_graph!(&any, g => canon_of(g))
}

pub fn iso(first: &Path, second: &Path) -> CliResult<Value> {
    let (a, b) = (read_doc(first)?, read_doc(second)?);
    let isomorphic = if DocKind::of(&a) != DocKind::of(&b) && !a.vertices.is_empty() && !b.vertices.is_empty() {
        false
    } else {
        match (AnyGraph::from_doc(&a)?, DocKind::of(&a)) {
            (AnyGraph::Plain(g), _) => is_isomorphic(&g, &b.to_graph()?)?,
            (AnyGraph::Mixed(g), _) => is_isomorphic(&g, &b.to_graph()?)?,
            (AnyGraph::Partial(g), _) => is_isomorphic(&g, &b.to_graph()?)?,
            (AnyGraph::Nested(g), _) => is_isomorphic(&g, &b.to_graph()?)?,
        }
    };
    Ok(json!({"isomorphic": isomorphic}))
}

/// Returns one compact graph document per line.
pub fn enumerate(arities: &[(usize, usize)], m: usize, n: usize, upto_iso: bool) -> CliResult<String> {
    let graphs = enumerate_graphs(arities, m, n, upto_iso, enum_limits()?)?;
    eprintln!("{} graphs", graphs.len());
    Ok(graphs.iter().map(|g| GraphDoc::from_graph(&g.graph).to_compact() + "\n").collect())
}

pub fn count(sig: &Path, m: usize, n: usize, max_r: usize) -> CliResult<Value> {
    let sig = read_signature(sig)?;
    let table = count_basis(&sig, m, n, max_r, enum_limits()?)?;
    Ok(json!({"m": m, "n": n, "nonempty_inputs": sig.nonempty_inputs(), "counts": table}))
}

pub fn expand_nested(path: &Path) -> CliResult<Value> {
    let g: Graph<PropElement> = read_graph(path)?;
    g.check()?;
    Ok(doc_value(expand(&g)?.graph()))
}

/// `assignment` is a JSON object sending generator names to graph
/// documents of their images.
pub fn map(path: &Path, assignment: &Path) -> CliResult<Value> {
    let e = read_element(path)?;
    let docs: BTreeMap<String, GraphDoc> = parse_json(assignment)?;
    let images = docs
        .into_iter()
        .map(|(name, doc)| Ok((name, PropElement::from_graph(&doc.to_graph::<String>()?)?)))
        .collect::<CliResult<BTreeMap<_, _>>>()?;
    let free = FreeProp::new();
    let image = extend_morphism(&free, images).apply(&e)?;
    Ok(doc_value(image.graph()))
}

pub fn eval(path: &Path, algebra: &Path) -> CliResult<Value> {
    let e = read_element(path)?;
    let a = AlgebraAssignment::from_json(&read(algebra)?)?;
    let t = evaluate_element(&e, &a)?;
    Ok(json!({"dim": a.dim, "m": e.boundary().0, "n": e.boundary().1, "shape": t.shape(), "matrix": t}))
}

/// The exponent `k` with `dim^k = size`.
fn log_dim(size: usize, dim: usize) -> Option<usize> {
    let mut k = 0;
    let mut p = 1;
    while p < size {
        p *= dim;
        k += 1;
        if dim == 1 {
            return None;
        }
    }
    (p == size).then_some(k)
}

/// Reads the shape of every generator off its matrix in `phi_a`.
fn infer_signature(phi_a: &AlgebraAssignment, phi_b: &AlgebraAssignment) -> CliResult<Signature> {
    let mut gens = Vec::new();
    for (name, x) in &phi_a.matrices {
        if !phi_b.matrices.contains_key(name) {
            return Err(Error::UnassignedLabel(name.clone()).into());
        }
        let (Some(n), Some(m)) = (log_dim(x.rows(), phi_a.dim), log_dim(x.cols(), phi_a.dim)) else {
            return Err(Error::DimensionMismatch(format!(
                "`{name}` has shape {:?}, not a power of dimension {}",
                x.shape(),
                phi_a.dim
            ))
            .into());
        };
        gens.push(Generator::new(name.clone(), m, n));
    }
    Ok(Signature::new(gens)?)
}

pub fn check_morphism(f: &Path, phi_a: &Path, phi_b: &Path, sig: Option<&Path>) -> CliResult<Value> {
    let f: RatTensor = parse_json(f)?;
    let a = AlgebraAssignment::from_json(&read(phi_a)?)?;
    let b = AlgebraAssignment::from_json(&read(phi_b)?)?;
    let sig = match sig {
        Some(path) => read_signature(path)?,
        None => infer_signature(&a, &b)?,
    };
    if f.shape() != [b.dim, a.dim] {
        return Err(Error::DimensionMismatch(format!(
            "f has shape {:?} but maps dimension {} to dimension {}",
            f.shape(),
            a.dim,
            b.dim
        ))
        .into());
    }
    let mut results = Vec::new();
    for g in sig.generators() {
        let x = a.matrix(&g.name, g.m, g.n)?;
        let y = b.matrix(&g.name, g.m, g.n)?;
        let defect = square_defect(&f, x, y, g.m, g.n)?;
        results.push(json!({"generator": g.name, "member": defect.is_none(), "defect": defect}));
    }
    let member = results.iter().all(|r| r["member"] == json!(true));
    Ok(json!({"member": member, "generators": results}))
}

fn irreducible_value(form: &Irreducible) -> CliResult<Value> {
    Ok(json!({
        "vertices": form.graph.vertex_count(),
        "steps": form.steps,
        "graph": doc_value(&form.graph),
        "expansion": doc_value(expand_all(&form.graph)?.graph()),
    }))
}

pub fn collapse_mixed(path: &Path, strategy: Strategy) -> CliResult<Value> {
    let g: MixedGraph = read_graph(path)?;
    let forms = collapse(&g, strategy)?;
    let expected = expand_all(&g)?;
    let mut same = true;
    for f in &forms {
        same &= expand_all(&f.graph)? == expected;
    }
    Ok(json!({
        "strategy": strategy,
        "count": forms.len(),
        "same_expansion": same,
        "forms": forms.iter().map(irreducible_value).collect::<CliResult<Vec<_>>>()?,
    }))
}

pub fn witness(bounds: WitnessBounds) -> CliResult<Value> {
    match non_confluence_witness(bounds)? {
        Some(w) => Ok(json!({
            "found": true,
            "vertices": w.graph.vertex_count(),
            "p_vertices": w.graph.vertices().values().filter(|v| v.label.is_p()).count(),
            "graph": doc_value(&w.graph),
            "forms": [irreducible_value(&w.first)?, irreducible_value(&w.second)?],
        })),
        None => Err(CliError::Failed(json!({"found": false, "max_vertices": bounds.max_vertices}).to_string())),
    }
}

/// `map` lists `k=l` pairs; without it `K ⊆ L` by name.
pub fn cube(k: &str, l: &str, n: usize, map: Option<&str>) -> CliResult<Value> {
    let (k, l) = (parse_names(k), parse_names(l));
    let i = match map {
        None => FiniteSetMap::inclusion(k, l)?,
        Some(pairs) => {
            let pairs = parse_names(pairs)
                .into_iter()
                .map(|p| {
                    p.split_once('=')
                        .map(|(a, b)| (a.trim().to_owned(), b.trim().to_owned()))
                        .ok_or_else(|| CliError::Usage(format!("`{p}` is not of the form k=l")))
                })
                .collect::<CliResult<BTreeMap<_, _>>>()?;
            FiniteSetMap::from_pairs(k, l, &pairs)?
        }
    };
    let diagram = CubeDiagram::new(i.clone(), n)?;
    let c = punctured_colimit(&diagram)?;
    let power = i.target.len().checked_pow(n as u32);
    let outside = i.target.len() - i.mapping.iter().collect::<std::collections::BTreeSet<_>>().len();
    let union_formula =
        if i.is_injective() { power.and_then(|p| outside.checked_pow(n as u32).map(|q| p - q)) } else { None };
    let lambda: Vec<Vec<&String>> = c.lambda.iter().map(|t| t.iter().map(|&x| &i.target[x]).collect()).collect();
    let iterated = if n >= 2 { Some(iterated_identity_check(&i, n)?) } else { None };
    Ok(json!({
        "K": i.source,
        "L": i.target,
        "n": n,
        "i_injective": i.is_injective(),
        "colimit_size": c.size,
        "power_size": power,
        "union_formula": union_formula,
        "lambda_injective": c.lambda_is_injective(),
        "lambda": lambda,
        "iterated": iterated,
    }))
}

pub struct FiltrationArgs<'a> {
    pub sig_k: &'a Path,
    pub sig_l: &'a Path,
    pub base: &'a Path,
    pub max_degree: usize,
    pub max_vertices: usize,
    pub m: usize,
    pub n: usize,
}

pub fn filtration_check(args: FiltrationArgs<'_>) -> CliResult<Value> {
    let mut limits = enum_limits()?;
    limits.max_vertices = limits.max_vertices.max(args.max_vertices);
    let bounds = FiltrationBounds {
        inputs: args.m,
        outputs: args.n,
        max_degree: args.max_degree,
        max_vertices: args.max_vertices,
        limits,
    };
    let report = filtration_square_check(
        &read_signature(args.sig_k)?,
        &read_signature(args.sig_l)?,
        &read_signature(args.base)?,
        bounds,
    )?;
    let value = json!({"passed": report.passed(), "report": report});
    if report.passed() {
        Ok(value)
    } else {
        Err(CliError::Failed(value.to_string()))
    }
}

fn fixture_graph<L: DocLabel>(name: &str) -> propcalc::Result<Graph<L>> {
    fixtures::doc(name)?.to_graph()
}

/// Quick checks of the embedded fixtures and of one cube identity.
pub fn selftest() -> CliResult<Value> {
    let mut checks: Vec<(String, propcalc::Result<bool>)> = Vec::new();
    for name in fixtures::names() {
        let result = (|| {
            let text = fixtures::text(name)?;
            let doc = GraphDoc::parse(text)?;
            let any = AnyGraph::from_doc(&doc).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(with_graph!(&any, g => g.is_valid()) && doc.to_pretty() == text)
        })();
        checks.push((format!("fixture {name} is valid and round-trips"), result));
    }
    checks.push((
        "canonical order of fig7".into(),
        (|| {
            let g: Graph<Option<String>> = fixture_graph("fig7")?;
            Ok(canonical(&g)?.order == [1, 4, 2, 5, 3])
        })(),
    ));
    checks.push((
        "composites of the fig2 operands".into(),
        (|| {
            let left: Graph<String> = fixture_graph("fig2-left")?;
            let right: Graph<String> = fixture_graph("fig2-right")?;
            let h = is_isomorphic(&left.hcompose(&right)?, &fixture_graph("fig2h")?)?;
            let v = is_isomorphic(&right.vcompose(&left)?, &fixture_graph("fig2v")?)?;
            Ok(h && v)
        })(),
    ));
    checks.push((
        "expansion of fig4".into(),
        (|| {
            let nested: Graph<PropElement> = fixture_graph("fig4")?;
            let flat: Graph<String> = fixture_graph("fig4-flat")?;
            Ok(expand(&nested)? == PropElement::from_graph(&flat)?)
        })(),
    ));
    checks.push((
        "two collapses of the remark witness".into(),
        (|| {
            let g: MixedGraph = fixture_graph("remark-witness")?;
            let forms = collapse(&g, Strategy::Exhaustive)?;
            let e = expand_all(&g)?;
            let mut same = true;
            for f in &forms {
                same &= expand_all(&f.graph)? == e;
            }
            Ok(forms.len() == 2 && same)
        })(),
    ));
    checks.push((
        "punctured square of {a} in {a, b}".into(),
        (|| {
            let i = FiniteSetMap::inclusion(vec!["a".into()], vec!["a".into(), "b".into()])?;
            Ok(punctured_colimit(&CubeDiagram::new(i, 2)?)?.size == 3)
        })(),
    ));
    let passed = checks.iter().all(|(_, r)| matches!(r, Ok(true)));
    let list: Vec<Value> = checks
        .into_iter()
        .map(|(name, r)| match r {
            Ok(ok) => json!({"check": name, "passed": ok}),
            Err(e) => json!({"check": name, "passed": false, "error": e.to_string()}),
        })
        .collect();
    let value = json!({"passed": passed, "checks": list});
    if passed {
        Ok(value)
    } else {
        Err(CliError::Failed(value.to_string()))
    }
}
