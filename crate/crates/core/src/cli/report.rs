use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{Command, InputDocument, InputPayload};
use crate::algebra::{BiPoly, FieldElement, GaussianRational};
use crate::camacho_sad::{extract_separatrix, index_theorem_check, IndexStatus};
use crate::error::{Error, Result};
use crate::foliation::{reduce_singularities, Classification, OneForm, SingularityRecord};
use crate::ramification::{curve_theorem_check, find_regular_ramification_with, hamiltonian, resolve_curve, CurveCheck};
use crate::surface::{Payload, ResolutionTree};

/// Output of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub tree: Option<ResolutionTree>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GraphKind {
    /// Tree of centers, parent to child.
    #[default]
    Centers,
    /// Dual graph of the exceptional divisor.
    Dual,
}

fn gaussian_text(g: &GaussianRational) -> String {
    g.to_string()
}

/// Exact value for elements of `ℚ(i)`, otherwise the minimal polynomial and
/// a 6-place approximation.
pub fn number_json(x: &FieldElement) -> Value {
    if let Some(g) = x.simplified().as_gaussian() {
        return Value::String(gaussian_text(g));
    }
    json!({ "minpoly": minpoly_text(x), "approx": approx_text(x) })
}

fn number_text(x: &FieldElement) -> String {
    match x.simplified().as_gaussian() {
        Some(g) => gaussian_text(g),
        None => format!("root of {} ≈ {}", minpoly_text(x), approx_text(x)),
    }
}

fn minpoly_text(x: &FieldElement) -> String {
    let coeffs = x.minimal_polynomial();
    let p = BiPoly::from_terms(coeffs.iter().enumerate().map(|(k, c)| ((k as u32, 0), FieldElement::from_gaussian(c.clone()))));
    p.display_with("t", "_")
}

fn approx_text(x: &FieldElement) -> String {
    let z = x.approx();
    let clean = |v: f64| if v.abs() < 5e-7 { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{}{:.6}*i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

fn header(doc: &InputDocument, cmd: Command) -> (String, serde_json::Map<String, Value>) {
    let mut text = String::new();
    if let Some(n) = &doc.name {
        let _ = writeln!(text, "name: {n}");
    }
    let _ = writeln!(text, "input: {}", doc.payload_line());
    for w in &doc.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(cmd.name()));
    m.insert("kind".into(), json!(doc.kind().to_string()));
    m.insert("name".into(), json!(doc.name));
    m.insert("input".into(), json!(doc.payload_line()));
    m.insert("warnings".into(), json!(doc.warnings));
    (text, m)
}

fn require_form(doc: &InputDocument) -> Result<&OneForm> {
    doc.form().ok_or_else(|| Error::InvalidInput("this command needs a foliation (`omega = …`)".into()))
}

pub(super) fn run(doc: &InputDocument, cmd: Command) -> Result<Report> {
    let (mut text, mut m) = header(doc, cmd);
    let o = doc.options;
    let tree = match cmd {
        Command::Resolve => {
            let tree = match &doc.payload {
                InputPayload::Form(w) => reduce_singularities(w, o.max_depth)?,
                InputPayload::Curve(f) => resolve_curve(f, f, 1, o.max_depth)?,
            };
            tree_section(&tree, &mut text, &mut m);
            Some(tree)
        }
        Command::Indices => {
            let tree = reduce_singularities(require_form(doc)?, o.max_depth)?;
            let reports = index_theorem_check(&tree)?;
            let mut rows = Vec::new();
            if reports.is_empty() {
                let _ = writeln!(text, "no exceptional components (already reduced)");
            }
            for r in &reports {
                let (status, extra) = match &r.status {
                    IndexStatus::Checked { sum, equal } => {
                        let _ =
                            writeln!(text, "E{}  E² = {}  sum = {}  equal = {}", r.component, r.self_intersection, number_text(sum), equal);
                        ("checked", json!({ "sum": number_json(sum), "equal": equal }))
                    }
                    IndexStatus::Skipped => {
                        let _ = writeln!(text, "E{}  E² = {}  skipped: non-invariant", r.component, r.self_intersection);
                        ("skipped", json!({ "sum": null, "equal": null }))
                    }
                    IndexStatus::Unsupported(msg) => {
                        let _ = writeln!(text, "E{}  E² = {}  unsupported: {msg}", r.component, r.self_intersection);
                        ("unsupported", json!({ "sum": null, "equal": null, "reason": msg }))
                    }
                };
                for (p, idx) in &r.indices {
                    let _ = writeln!(text, "    {p}: {}", number_text(idx));
                }
                let mut row = json!({
                    "component": r.component,
                    "self_intersection": r.self_intersection,
                    "status": status,
                    "indices": r.indices.iter().map(|(p, i)| json!({ "point": p, "index": number_json(i) })).collect::<Vec<_>>(),
                });
                row.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
                rows.push(row);
            }
            m.insert("components".into(), Value::Array(rows));
            m.insert("all_equal".into(), json!(reports.iter().all(|r| r.holds())));
            Some(tree)
        }
        Command::Separatrix => {
            let tree = reduce_singularities(require_form(doc)?, o.max_depth)?;
            let s = extract_separatrix(&tree, o.order)?;
            let residual = if s.jet.is_exact() { "exact".to_string() } else { format!("0 mod x^{}", s.residual_order) };
            let _ = writeln!(text, "separatrix: {}", s.jet);
            let _ = writeln!(text, "residual: {residual}");
            let _ = writeln!(text, "rule: {}, from {} via {}", s.rule, s.source_point, s.chart_path);
            m.insert(
                "separatrix".into(),
                json!({
                    "jet": s.jet.to_string(),
                    "ramification": s.jet.ramification(),
                    "terms": s.jet.terms().iter().map(|(k, c)| json!({ "exponent": format!("{k}/{}", s.jet.ramification()), "coefficient": number_json(c) })).collect::<Vec<_>>(),
                    "exact": s.jet.is_exact(),
                    "residual_order": if s.jet.is_exact() { Value::Null } else { json!(s.residual_order) },
                    "rule": s.rule.to_string(),
                    "source_point": s.source_point,
                    "chart_path": s.chart_path,
                    "tree_ramification": s.ramification,
                }),
            );
            Some(tree)
        }
        Command::Ramify => match &doc.payload {
            InputPayload::Form(w) => {
                let r = find_regular_ramification_with(w, o.d_max, o.max_depth, o.order)?;
                let free = r.tree.free_only();
                let simple = r.tree.finals().iter().all(|f| f.classification.is_terminal());
                let _ = writeln!(text, "d = {}, free-only = {free}, simple-only = {simple}", r.d);
                if let Some(h) = r.hint {
                    let _ = writeln!(text, "hint: {h}");
                }
                for a in &r.attempts {
                    let _ = match &a.error {
                        Some(e) => writeln!(text, "  tried d = {}: {e}", a.d),
                        None => writeln!(text, "  tried d = {}: free-only = {}, simple-only = {}", a.d, a.free_only, a.simple_only),
                    };
                }
                m.insert("d".into(), json!(r.d));
                m.insert("hint".into(), json!(r.hint));
                m.insert("free_only".into(), json!(free));
                m.insert("simple_only".into(), json!(simple));
                m.insert(
                    "attempts".into(),
                    json!(r
                        .attempts
                        .iter()
                        .map(|a| json!({ "d": a.d, "free_only": a.free_only, "simple_only": a.simple_only, "error": a.error }))
                        .collect::<Vec<_>>()),
                );
                let mut tm = serde_json::Map::new();
                tree_section(&r.tree, &mut text, &mut tm);
                m.insert("tree".into(), Value::Object(tm));
                Some(r.tree)
            }
            InputPayload::Curve(f) => Some(curve_check_section(f, doc, &mut text, &mut m)?),
        },
        Command::CurveCheck => {
            let f = match &doc.payload {
                InputPayload::Curve(f) => f.clone(),
                InputPayload::Form(w) => {
                    hamiltonian(w).ok_or_else(|| Error::InvalidInput("curve-check needs a curve or a closed form ω = df".into()))?
                }
            };
            Some(curve_check_section(&f, doc, &mut text, &mut m)?)
        }
    };
    Ok(Report { text, json: Value::Object(m), tree })
}

fn curve_check_section(
    f: &BiPoly,
    doc: &InputDocument,
    text: &mut String,
    m: &mut serde_json::Map<String, Value>,
) -> Result<ResolutionTree> {
    let c: CurveCheck = curve_theorem_check(f, doc.options.order, doc.options.max_depth)?;
    let _ = writeln!(text, "curve: {f}");
    let _ = writeln!(text, "d = {}, free-only = {}, branches smooth = {}", c.d, c.free_only, c.branches_smooth());
    if let Some(s) = c.shear {
        let _ = writeln!(text, "sheared by x <- x + {s}*y");
    }
    for j in &c.ramified_branches {
        let _ = writeln!(text, "  branch of f(x^{}, y): {j}", c.d);
    }
    m.insert("curve".into(), json!(f.to_string()));
    m.insert("d".into(), json!(c.d));
    m.insert("shear".into(), json!(c.shear));
    m.insert("free_only".into(), json!(c.free_only));
    m.insert("branches_smooth".into(), json!(c.branches_smooth()));
    m.insert("ramified_branches".into(), json!(c.ramified_branches.iter().map(|j| j.to_string()).collect::<Vec<_>>()));
    let mut tm = serde_json::Map::new();
    tree_section(&c.tree, text, &mut tm);
    m.insert("tree".into(), Value::Object(tm));
    Ok(c.tree)
}

fn record_json(r: &SingularityRecord) -> Value {
    let (eig, ratio) = match &r.classification {
        Classification::Simple { eigenvalues, ratio } => (eigenvalues.clone(), ratio.clone()),
        Classification::SaddleNode { eigenvalues } => (eigenvalues.clone(), None),
        _ => (None, None),
    };
    json!({
        "point": r.path,
        "chart": r.chart.path(),
        "classification": r.classification.name(),
        "trace": number_json(&r.trace),
        "det": number_json(&r.det),
        "eigenvalues": eig.map(|e| e.iter().map(number_json).collect::<Vec<_>>()),
        "ratio": ratio.as_ref().map(number_json),
        "components": r.adjacent.iter().map(|(c, inv)| json!({ "id": c, "invariant": inv })).collect::<Vec<_>>(),
        "form": r.form.to_string(),
    })
}

/// Distinct proper extensions of `ℚ(i)` holding point coordinates.
fn extension_fields(tree: &ResolutionTree) -> Vec<String> {
    let locations = tree.nodes().iter().filter_map(|n| n.location.as_ref()).chain(tree.finals().iter().filter_map(|r| r.location.as_ref()));
    let mut out: Vec<String> = Vec::new();
    for l in locations {
        let c = l.coord.simplified();
        if c.field().depth() > 0 {
            let name = c.field().to_string();
            if !out.contains(&name) {
                out.push(name);
            }
        }
    }
    out
}

fn tree_section(tree: &ResolutionTree, text: &mut String, m: &mut serde_json::Map<String, Value>) {
    let graph = tree.dual_graph();
    if tree.is_empty() {
        let _ = writeln!(text, "depth 0, already reduced");
    } else {
        let _ = writeln!(text, "blow-ups: {}, depth {}", tree.len(), tree.depth());
        if tree.ramification() > 1 {
            let _ = writeln!(text, "after ramification x -> x^{}", tree.ramification());
        }
        let _ = writeln!(text, "centers:");
    }
    let mut centers = Vec::new();
    for n in tree.nodes() {
        let (mult, dic) = match &n.payload {
            Some(Payload::Form { multiplicity, dicritical, .. }) => (Some(*multiplicity), Some(*dicritical)),
            Some(Payload::Curve { multiplicity, .. }) => (Some(*multiplicity), None),
            None => (None, None),
        };
        let path = tree.point_path(n.location.as_ref());
        let _ = writeln!(
            text,
            "  E{:<3} {:<10} {}{}{}",
            n.component,
            n.kind.to_string(),
            path,
            mult.map_or(String::new(), |v| format!("  mult {v}")),
            if dic == Some(true) { "  dicritical" } else { "" }
        );
        centers.push(json!({
            "id": n.id,
            "component": n.component,
            "kind": n.kind,
            "point": path,
            "chart": n.chart.path(),
            "depth": n.depth,
            "multiplicity": mult,
            "dicritical": dic,
        }));
    }
    if !tree.is_empty() {
        let comps: Vec<String> = tree.components().iter().map(|c| format!("E{} ({})", c.id, c.self_intersection)).collect();
        let _ = writeln!(text, "components: {}", comps.join(", "));
        let _ = writeln!(text, "free-only: {}, determinant: {}", tree.free_only(), graph.determinant());
    }
    if !tree.finals().is_empty() {
        let _ = writeln!(text, "final singularities:");
        for r in tree.finals() {
            let extra = match &r.classification {
                Classification::Simple { ratio: Some(q), .. } => format!("  ratio {}", number_text(q)),
                _ => String::new(),
            };
            let _ = writeln!(text, "  {}  {}{}", r.path, r.classification, extra);
        }
    }
    let fields = extension_fields(tree);
    if !fields.is_empty() {
        let _ = writeln!(text, "fields: {} (generators a, b)", fields.join("; "));
    }
    m.insert("fields".into(), json!(fields));
    m.insert("ramification".into(), json!(tree.ramification()));
    m.insert("blow_ups".into(), json!(tree.len()));
    m.insert("depth".into(), json!(tree.depth()));
    m.insert("free_only".into(), json!(tree.free_only()));
    m.insert("centers".into(), Value::Array(centers));
    m.insert(
        "components".into(),
        json!(tree
            .components()
            .iter()
            .map(|c| json!({ "id": c.id, "self_intersection": c.self_intersection, "invariant": c.invariant }))
            .collect::<Vec<_>>()),
    );
    m.insert("finals".into(), json!(tree.finals().iter().map(record_json).collect::<Vec<_>>()));
    m.insert("dual_graph".into(), json!({ "edges": graph.edges, "determinant": graph.determinant() }));
}

/// DOT digraph of the centers (labeled with the component they create, its
/// self-intersection and free/satellite) or of the dual graph.
pub fn emit_dot(tree: &ResolutionTree, kind: GraphKind) -> String {
    let mut s = String::new();
    match kind {
        GraphKind::Centers => {
            s.push_str("digraph centers {\n");
            for n in tree.nodes() {
                let si = tree.component(n.component).self_intersection;
                let _ = writeln!(s, "  c{} [label=\"E{} ({})\\n{}\"];", n.id, n.component, si, n.kind);
            }
            for n in tree.nodes() {
                if let Some(l) = &n.location {
                    let _ = writeln!(s, "  c{} -> c{};", l.parent, n.id);
                }
            }
        }
        GraphKind::Dual => {
            let g = tree.dual_graph();
            s.push_str("digraph dual {\n  edge [dir=none];\n");
            for (id, si) in &g.vertices {
                let _ = writeln!(s, "  E{id} [label=\"E{id} ({si})\"];");
            }
            for (a, b) in &g.edges {
                let _ = writeln!(s, "  E{a} -> E{b};");
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::{parse_input, run_command};
    use crate::surface::{Location, Source};

    #[test]
    fn dot_examples() {
        let t = ResolutionTree::new(Source::Curve(BiPoly::zero()), 1);
        let (t, root) = t.blow_up_at(None, None).unwrap();
        assert!(emit_dot(&t, GraphKind::Dual).contains("label=\"E1 (-1)\""));
        let (t, _) = t.blow_up_at(Some(Location::x_chart(root, FieldElement::zero())), None).unwrap();
        let d = emit_dot(&t, GraphKind::Dual);
        assert!(d.contains("(-2)") && d.contains("(-1)"));
        assert_eq!(d.matches("->").count(), 1);

        let doc = parse_input("omega = -3*x^2 dx + 2*y dy").unwrap();
        let r = run_command(&doc, Command::Resolve).unwrap();
        let d = emit_dot(r.tree.as_ref().unwrap(), GraphKind::Centers);
        assert_eq!(d.matches("label=").count(), 3);
        assert!(d.contains("c2 [label=\"E3 (-1)\\nsatellite\"]"));
    }

    #[test]
    fn numbers() {
        assert_eq!(number_json(&FieldElement::from_ratio(-1, 2)), json!("-1/2"));
        let r2 = FieldElement::from_int(2).sqrt_extending().unwrap();
        assert_eq!(number_json(&r2), json!({ "minpoly": "t^2 - 2", "approx": "1.414214" }));
    }

    #[test]
    fn command_examples() {
        let saddle = parse_input("omega = y dx + x dy").unwrap();
        assert!(run_command(&saddle, Command::Resolve).unwrap().text.contains("depth 0, already reduced"));
        let cusp = parse_input("omega = -3*x^2 dx + 2*y dy\ndmax = 6").unwrap();
        let r = run_command(&cusp, Command::Ramify).unwrap();
        assert!(r.text.contains("d = 2, free-only = true, simple-only = true"), "{}", r.text);
        let r = run_command(&cusp, Command::Separatrix).unwrap();
        assert!(r.text.contains("separatrix: y = x^(3/2)\n"), "{}", r.text);
    }
}
