//! Acceptance suite A1–A7; prints one PASS/FAIL line per criterion.
//! All comparisons are exact.

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use separatrix_core::algebra::{BiPoly, FieldElement};
use separatrix_core::camacho_sad::{cs_index, extract_separatrix, index_theorem_check, separatrix_candidates, Axis, IndexStatus};
use separatrix_core::cli::{render, run_command, Command, Emit, GraphKind, InputDocument, InputPayload};
use separatrix_core::corpus;
use separatrix_core::foliation::{form_charts_glue, reduce_singularities, strict_transform_blowup, OneForm};
use separatrix_core::puiseux::{newton_puiseux_expand, ramification_exponent};
use separatrix_core::ramification::{curve_theorem_check, curve_theorem_check_with, find_regular_ramification, hamiltonian};
use separatrix_core::surface::{curve_charts_glue, CenterKind, ChartSide, Payload, ResolutionTree};

const ORDER: u32 = 16;
const DEPTH: usize = 50;
const D_MAX: u32 = 12;

type Outcome = Result<String, Vec<String>>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn forms() -> Vec<(String, OneForm)> {
    corpus::foliations().into_iter().map(|d| (d.name.clone().unwrap(), d.form().unwrap().clone())).collect()
}

fn curves() -> Vec<(String, BiPoly)> {
    corpus::curves().into_iter().map(|d| (d.name.clone().unwrap(), d.curve().unwrap().clone())).collect()
}

fn finish(fails: Vec<String>, summary: String) -> Outcome {
    if fails.is_empty() {
        Ok(summary)
    } else {
        Err(fails)
    }
}

fn a1() -> Outcome {
    let mut fails = Vec::new();
    let corpus = forms();
    if corpus.len() < 10 {
        fails.push(format!("corpus has {} foliations", corpus.len()));
    }
    let mut depths = Vec::new();
    for (name, w) in &corpus {
        match reduce_singularities(w, DEPTH) {
            Ok(t) => {
                if t.depth() > DEPTH {
                    fails.push(format!("{name}: depth {}", t.depth()));
                }
                for f in t.finals() {
                    if !f.classification.is_terminal() {
                        fails.push(format!("{name}: final {} is {}", f.path, f.classification.name()));
                    }
                }
                depths.push(format!("{name}:{}", t.depth()));
            }
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    finish(fails, format!("{} foliations reduced, depths {}", corpus.len(), depths.join(" ")))
}

fn a2() -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    for (name, w) in forms() {
        let tree = match reduce_singularities(&w, DEPTH) {
            Ok(t) => t,
            Err(e) => {
                fails.push(format!("{name}: {e}"));
                continue;
            }
        };
        match index_theorem_check(&tree) {
            Ok(reports) => {
                for r in reports {
                    match &r.status {
                        IndexStatus::Checked { equal: true, .. } => checked += 1,
                        IndexStatus::Skipped if tree.component(r.component).invariant == Some(false) => {}
                        other => fails.push(format!("{name}: E{} (E² = {}): {other:?}", r.component, r.self_intersection)),
                    }
                }
            }
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    // one blow-up of the saddle, by hand
    let saddle = OneForm::from_int_terms(&[(1, 0, 1)], &[(1, 1, 0)]).unwrap();
    let half = FieldElement::from_ratio(-1, 2);
    let ix = strict_transform_blowup(&saddle, ChartSide::X).and_then(|(w, _)| cs_index(&w, Axis::X0));
    let iy = strict_transform_blowup(&saddle, ChartSide::Y).and_then(|(w, _)| cs_index(&w, Axis::Y0));
    match (ix, iy) {
        (Ok(a), Ok(b)) => {
            if a != half || b != half || a + b != FieldElement::from_int(-1) {
                fails.push("saddle one blow-up: indices are not -1/2, -1/2".into());
            }
        }
        (a, b) => fails.push(format!("saddle one blow-up: {a:?} {b:?}")),
    }
    finish(fails, format!("{checked} invariant components, Σ CS = E² exactly; saddle -1/2 + -1/2 = -1"))
}

fn a3() -> Outcome {
    let mut fails = Vec::new();
    let mut ds = Vec::new();
    for (name, w) in forms() {
        match find_regular_ramification(&w, D_MAX, DEPTH) {
            Ok(r) => {
                let simple = r.tree.finals().iter().all(|f| f.classification.is_terminal());
                let free = r.tree.nodes().iter().all(|n| n.kind != CenterKind::Satellite) && r.tree.free_only();
                if r.d > D_MAX || !simple || !free {
                    fails.push(format!("{name}: d = {}, free-only = {free}, simple-only = {simple}", r.d));
                }
                let expected = match name.as_str() {
                    "cusp" => Some(2),
                    "saddle" => Some(1),
                    _ => None,
                };
                if expected.is_some_and(|e| e != r.d) {
                    fails.push(format!("{name}: d = {}, expected {}", r.d, expected.unwrap()));
                }
                ds.push(format!("{name}:{}", r.d));
            }
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    finish(fails, format!("all free-only and simple-only, d = {}", ds.join(" ")))
}

fn a4() -> Outcome {
    let mut fails = Vec::new();
    let mut ds = Vec::new();
    for (name, f) in curves() {
        let lcm = match newton_puiseux_expand(&f, ORDER) {
            Ok(e) => ramification_exponent(&e.jets),
            Err(e) => {
                fails.push(format!("{name}: {e}"));
                continue;
            }
        };
        match curve_theorem_check(&f, ORDER, DEPTH) {
            Ok(c) => {
                if c.d != lcm || !c.branches_smooth() || !c.free_only {
                    fails.push(format!("{name}: d = {} (lcm {lcm}), smooth = {}, free-only = {}", c.d, c.branches_smooth(), c.free_only));
                }
                if c.ramified_branches.iter().any(|j| j.ramification() != 1) {
                    fails.push(format!("{name}: ramified branch with denominator > 1"));
                }
                ds.push(format!("{name}:{}", c.d));
            }
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    }
    let cusp = BiPoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)]);
    match curve_theorem_check_with(&cusp, 1, ORDER, DEPTH) {
        Ok(c) => {
            let satellite = c.tree.nodes().iter().any(|n| n.kind == CenterKind::Satellite);
            if c.free_only || !satellite {
                fails.push(format!("unramified cusp control: free-only = {}, satellite = {satellite}", c.free_only));
            }
        }
        Err(e) => fails.push(format!("unramified cusp control: {e}")),
    }
    finish(fails, format!("branches smooth and free-only at d = lcm: {}; unramified cusp has a satellite", ds.join(" ")))
}

fn a5() -> Outcome {
    let mut fails = Vec::new();
    let mut exact = 0;
    let corpus = forms();
    for (name, w) in &corpus {
        let s = match reduce_singularities(w, DEPTH).and_then(|t| extract_separatrix(&t, ORDER)) {
            Ok(s) => s,
            Err(e) => {
                fails.push(format!("{name}: {e}"));
                continue;
            }
        };
        // re-certify independently of the extractor
        let r = s.jet.form_residual(w.a(), w.b());
        if s.jet.is_exact() {
            exact += 1;
            if !r.is_zero() {
                fails.push(format!("{name}: jet marked exact but residual is {r:?}"));
            }
        } else if s.jet.form_residual_order(w.a(), w.b()) < ORDER {
            fails.push(format!("{name}: residual order {} < {ORDER}", s.jet.form_residual_order(w.a(), w.b())));
        }
        if name == "cusp" {
            let terms = s.jet.terms();
            let ok = s.jet.is_exact()
                && s.jet.ramification() == 2
                && terms.len() == 1
                && terms[0].0 == 3
                && terms[0].1 == FieldElement::from_int(1)
                && s.jet.to_string() == "y = x^(3/2)";
            if !ok {
                fails.push(format!("cusp: got {} (exact = {})", s.jet, s.jet.is_exact()));
            }
        }
    }
    finish(fails, format!("{} jets with residual ≡ 0 mod x^{ORDER} ({exact} exact); cusp y = x^(3/2)", corpus.len()))
}

fn a6() -> Outcome {
    let mut fails = Vec::new();
    let mut matched = Vec::new();
    for (name, w) in forms() {
        let Some(f) = hamiltonian(&w) else { continue };
        // x = 0 is never a candidate (not a graph over x); drop it from the oracle
        let g = f.div_monomial(f.x_adic_order(), 0).unwrap();
        let oracle = match newton_puiseux_expand(&g, ORDER) {
            Ok(e) => e,
            Err(e) => {
                fails.push(format!("{name}: oracle: {e}"));
                continue;
            }
        };
        if oracle.shear.is_some() {
            fails.push(format!("{name}: oracle needed a shear"));
            continue;
        }
        let tree = match reduce_singularities(&w, DEPTH) {
            Ok(t) => t,
            Err(e) => {
                fails.push(format!("{name}: {e}"));
                continue;
            }
        };
        let mut count = 0;
        for (origin, cand) in separatrix_candidates(&tree, ORDER) {
            let Ok(s) = cand else { continue };
            count += 1;
            if !oracle.jets.iter().any(|b| s.jet.matches_up_to_conjugation(b, ORDER)) {
                fails.push(format!("{name}: {} from {origin} matches no branch", s.jet));
            }
        }
        if count == 0 {
            fails.push(format!("{name}: no separatrix candidate"));
        }
        matched.push(format!("{name}:{count}"));
    }
    if matched.len() < 4 {
        fails.push(format!("only {} Hamiltonian corpus entries", matched.len()));
    }
    finish(fails, format!("jets matched Newton–Puiseux branches: {}", matched.join(" ")))
}

fn check_tree(label: &str, tree: &ResolutionTree, fails: &mut Vec<String>) {
    let det = tree.dual_graph().determinant();
    if det.abs() != 1 {
        fails.push(format!("{label}: determinant {det}"));
    }
    for n in tree.nodes() {
        match &n.payload {
            Some(Payload::Form { local, x_chart, y_chart, .. }) => {
                if !form_charts_glue(x_chart, y_chart) {
                    fails.push(format!("{label}: node {} charts do not glue", n.id));
                }
                if !(local.is_saturated() && x_chart.is_saturated() && y_chart.is_saturated()) {
                    fails.push(format!("{label}: node {} not saturated", n.id));
                }
            }
            Some(Payload::Curve { x_chart, y_chart, .. }) => {
                if !curve_charts_glue(x_chart, y_chart) {
                    fails.push(format!("{label}: node {} charts do not glue", n.id));
                }
            }
            None => fails.push(format!("{label}: node {} has no payload", n.id)),
        }
    }
    for f in tree.finals() {
        if !f.form.is_saturated() {
            fails.push(format!("{label}: final {} not saturated", f.path));
        }
    }
}

fn json_of(doc: &InputDocument, cmd: Command) -> String {
    match run_command(doc, cmd) {
        Ok(r) => render(&r, Emit::Json, GraphKind::Centers),
        Err(e) => format!("error: {e}"),
    }
}

fn a7() -> Outcome {
    let mut fails = Vec::new();
    let mut trees = 0;
    let mut blowups = 0;
    for (name, w) in forms() {
        for (label, t) in [
            (name.to_string(), reduce_singularities(&w, DEPTH)),
            (format!("{name} ramified"), find_regular_ramification(&w, D_MAX, DEPTH).map(|r| r.tree)),
        ] {
            match t {
                Ok(t) => {
                    trees += 1;
                    blowups += t.len();
                    check_tree(&label, &t, &mut fails);
                }
                Err(e) => fails.push(format!("{label}: {e}")),
            }
        }
    }
    for (name, f) in curves() {
        for (label, c) in [
            (name.to_string(), curve_theorem_check(&f, ORDER, DEPTH)),
            (format!("{name} d=1"), curve_theorem_check_with(&f, 1, ORDER, DEPTH)),
        ] {
            match c {
                Ok(c) => {
                    trees += 1;
                    blowups += c.tree.len();
                    check_tree(&label, &c.tree, &mut fails);
                }
                Err(e) => fails.push(format!("{label}: {e}")),
            }
        }
    }
    let mut runs = 0;
    for doc in corpus::foliations().into_iter().chain(corpus::curves()) {
        let cmds: &[Command] = match doc.payload {
            InputPayload::Form(_) => &Command::ALL,
            InputPayload::Curve(_) => &[Command::Resolve, Command::Ramify, Command::CurveCheck],
        };
        for &cmd in cmds {
            runs += 1;
            if json_of(&doc, cmd) != json_of(&doc, cmd) {
                fails.push(format!("{}: {cmd} JSON differs between runs", doc.name.as_deref().unwrap_or("?")));
            }
        }
    }
    finish(fails, format!("{trees} trees, {blowups} blow-ups glue, saturated, det ±1; {runs} JSON reports byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("A1", "reduction termination", a1),
        ("A2", "index theorem", a2),
        ("A3", "regular ramification of foliations", a3),
        ("A4", "regular ramification of curves", a4),
        ("A5", "separatrix extraction", a5),
        ("A6", "Hamiltonian oracle", a6),
        ("A7", "structural invariants", a7),
    ];
    let start = Instant::now();
    let results: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, _, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    (f(), t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| (Err(vec!["panicked".into()]), Default::default()))).collect()
    });
    let mut ok = true;
    for ((id, title, _), (outcome, dt)) in criteria.iter().zip(results) {
        match outcome {
            Ok(summary) => println!("{id} PASS  {title}: {summary} [{:.1}s]", dt.as_secs_f64()),
            Err(fails) => {
                ok = false;
                println!("{id} FAIL  {title} [{:.1}s]", dt.as_secs_f64());
                for f in fails {
                    println!("    {f}");
                }
            }
        }
    }
    println!("acceptance: {} in {:.1}s", if ok { "all criteria pass" } else { "FAILURES" }, start.elapsed().as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
