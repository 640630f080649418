//! Camacho–Sad indices, the index theorem on exceptional components, and
//! separatrix jets.

use std::fmt;

use crate::algebra::{eval_bipoly, solve_by_order, BiPoly, FieldElement, TruncatedSeries, UPoly};
use crate::error::{Error, Result};
use crate::foliation::{Classification, OneForm, SingularityRecord};
use crate::puiseux::PuiseuxJet;
use crate::surface::{ComponentId, Location, Payload, ResolutionTree, Source};

/// A coordinate axis through the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// `{x = 0}`
    X0,
    /// `{y = 0}`
    Y0,
}

/// `−Res_{x=0} (a/y)(x,0) / b(x,0)`: the index of `{y = 0}` (or `{x = 0}`).
pub fn cs_index(w: &OneForm, curve: Axis) -> Result<FieldElement> {
    let w = match curve {
        Axis::Y0 => w.clone(),
        Axis::X0 => w.swap(),
    };
    let Some(a_over_y) = w.a().div_monomial(0, 1) else { return Err(Error::CurveNotInvariant) };
    let h = a_over_y.restrict_y_zero();
    let g = w.b().restrict_y_zero();
    if g.is_zero() {
        return Err(Error::NonIsolatedResidue);
    }
    let m = g.order().unwrap();
    if m == 0 {
        return Ok(FieldElement::zero());
    }
    let g1 = UPoly::new(g.coeffs()[m..].to_vec());
    let hs = TruncatedSeries::new(h.coeffs().to_vec(), m);
    let gs = TruncatedSeries::new(g1.coeffs().to_vec(), m);
    let q = hs.mul(&gs.inverse().expect("unit"));
    Ok(-q.coeff(m - 1))
}

/// Index of the final singularity `rec` relative to the component `c`.
pub fn cs_index_on_component(rec: &SingularityRecord, c: ComponentId) -> Result<FieldElement> {
    if rec.divisors.x_axis == Some(c) {
        cs_index(&rec.form, Axis::X0)
    } else if rec.divisors.y_axis == Some(c) {
        cs_index(&rec.form, Axis::Y0)
    } else {
        Err(Error::InvalidInput(format!("point {} is not on E{c}", rec.path)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexStatus {
    Checked {
        sum: FieldElement,
        equal: bool,
    },
    /// Dicritical component.
    Skipped,
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub component: ComponentId,
    pub self_intersection: i64,
    /// `(point path, index)` for every final singularity on the component.
    pub indices: Vec<(String, FieldElement)>,
    pub status: IndexStatus,
}

impl ComponentReport {
    pub fn holds(&self) -> bool {
        !matches!(self.status, IndexStatus::Checked { equal: false, .. })
    }
}

/// Σ indices = E² on every invariant component of a reduced tree.
pub fn index_theorem_check(tree: &ResolutionTree) -> Result<Vec<ComponentReport>> {
    let mut out = Vec::new();
    for comp in tree.components() {
        let mut report = ComponentReport {
            component: comp.id,
            self_intersection: comp.self_intersection,
            indices: Vec::new(),
            status: IndexStatus::Skipped,
        };
        if comp.invariant == Some(false) {
            out.push(report);
            continue;
        }
        let mut sum = FieldElement::zero();
        let mut failure = None;
        for rec in tree.finals().iter().filter(|r| r.divisors.contains(comp.id)) {
            let idx = cs_index_on_component(rec, comp.id)?;
            match sum.try_add(&idx) {
                Ok(s) => sum = s,
                Err(e) => failure = Some(e.to_string()),
            }
            report.indices.push((rec.path.clone(), idx));
        }
        report.status = match failure {
            Some(msg) => IndexStatus::Unsupported(msg),
            None => {
                let equal = sum == FieldElement::from_int(comp.self_intersection);
                IndexStatus::Checked { sum, equal }
            }
        };
        out.push(report);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatrixRule {
    /// Leaf through a regular point of a dicritical component.
    Dicritical,
    /// Invariant curve transverse to the divisor at a simple point.
    SimplePoint,
}

impl fmt::Display for SeparatrixRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeparatrixRule::Dicritical => "dicritical",
            SeparatrixRule::SimplePoint => "simple-point",
        })
    }
}

/// A separatrix of the original foliation, with where it came from.
#[derive(Clone, Debug)]
pub struct SeparatrixJet {
    pub jet: PuiseuxJet,
    pub rule: SeparatrixRule,
    /// Point of the resolution the curve was solved at.
    pub source_point: String,
    /// Substitutions from that point down to the original coordinates.
    pub chart_path: String,
    /// Ramification of the tree (already divided out of the jet).
    pub ramification: u32,
    /// Certified: the invariance residual vanishes modulo `x^residual_order`.
    pub residual_order: u32,
}

/// A local curve to push down: `(u, v) = (τ, φ(τ))`, swapped when `swapped`.
struct LocalCurve {
    form: OneForm,
    slope: FieldElement,
    shift: isize,
    swapped: bool,
}

impl LocalCurve {
    /// Solves `v = φ(u)` modulo `u^prec`, reusing known coefficients.
    fn solve(&self, known: &[FieldElement], prec: usize) -> Result<TruncatedSeries> {
        let m = self.slope.clone();
        let a = self.form.a().clone();
        let b = self.form.b().clone();
        let mut fixed = if known.is_empty() { vec![FieldElement::zero()] } else { known.to_vec() };
        if fixed.len() > 1 {
            fixed[1] = &fixed[1] - &m;
        }
        // in sheared coordinates v = ψ + m·u
        solve_by_order(&fixed, self.shift, prec, |psi| {
            let p = psi.prec();
            let u = TruncatedSeries::var(p);
            let phi = psi.add(&u.scale(&m));
            let dphi = phi.derivative();
            let av = eval_bipoly(&a, &u, &phi);
            let bv = eval_bipoly(&b, &u, &phi);
            av.add(&bv.mul(&dphi))
        })
        .map(|psi| psi.add(&TruncatedSeries::var(prec).scale(&m)))
    }
}

fn orient(form: &OneForm, swapped: bool) -> OneForm {
    if swapped {
        form.swap()
    } else {
        form.clone()
    }
}

/// Slopes `m` of invariant lines `y = m x` of the linear part.
fn eigen_slopes(w: &OneForm) -> Vec<FieldElement> {
    let (a10, a01) = (w.a().coeff(1, 0), w.a().coeff(0, 1));
    let (b10, b01) = (w.b().coeff(1, 0), w.b().coeff(0, 1));
    let lin = &a01 + &b10;
    if b01.is_zero() {
        if lin.is_zero() {
            return Vec::new();
        }
        return vec![-&(&a10 / &lin)];
    }
    // b01 m² + lin m + a10 = 0
    let p = &lin / &b01;
    let q = &a10 / &b01;
    let disc = &(&p * &p) - &(&q * &FieldElement::from_int(4));
    let Ok(r) = disc.sqrt_extending() else { return Vec::new() };
    let half = FieldElement::from_ratio(1, 2);
    let Ok(p) = p.lift_to(r.field()) else { return Vec::new() };
    let r1 = &(&(-&p) + &r) * &half;
    let r2 = &(&(-&p) - &r) * &half;
    if r.is_zero() {
        vec![r1]
    } else {
        vec![r1, r2]
    }
}

struct Candidate {
    rule: SeparatrixRule,
    location: Option<Location>,
    path: String,
    curve: LocalCurve,
}

fn later_center_at(tree: &ResolutionTree, loc: &Location) -> bool {
    tree.nodes().iter().any(|n| n.location.as_ref() == Some(loc))
}

fn dicritical_candidates(tree: &ResolutionTree) -> Vec<Candidate> {
    let mut out = Vec::new();
    for node in tree.nodes() {
        let Some(Payload::Form { x_chart, dicritical: true, .. }) = &node.payload else { continue };
        // first admissible t ∈ {0, 1, −1, 2, −2, …}
        for k in 0..40i64 {
            let c = FieldElement::from_int(if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 });
            let loc = Location::x_chart(node.id, c.clone());
            if tree.point_divisors(Some(&loc)).count() > 1 || later_center_at(tree, &loc) {
                continue;
            }
            let w = x_chart.translate(&FieldElement::zero(), &c);
            if w.is_singular_at_origin() || w.b().constant_term().is_zero() {
                continue;
            }
            out.push(Candidate {
                rule: SeparatrixRule::Dicritical,
                path: tree.point_path(Some(&loc)),
                location: Some(loc),
                curve: LocalCurve { form: w, slope: FieldElement::zero(), shift: -1, swapped: false },
            });
            break;
        }
    }
    out
}

fn simple_point_candidates(tree: &ResolutionTree) -> Vec<Candidate> {
    let mut recs: Vec<&SingularityRecord> = tree
        .finals()
        .iter()
        .filter(|r| r.divisors.count() <= 1)
        .filter(|r| match r.classification {
            Classification::Simple { .. } | Classification::SaddleNode { .. } => true,
            Classification::Regular => r.location.is_none(),
            Classification::NonSimple => false,
        })
        .collect();
    recs.sort_by_key(|r| r.location.as_ref().map(|l| (l.parent as i64, l.side)));
    let mut out = Vec::new();
    for rec in recs {
        let on_divisor = rec.divisors.count() == 1;
        let orientations: Vec<bool> = if on_divisor { vec![rec.divisors.y_axis.is_some()] } else { vec![false, true] };
        for swapped in orientations {
            let w = orient(&rec.form, swapped);
            let regular = !w.is_singular_at_origin();
            let (slopes, shift) = if regular {
                if w.b().constant_term().is_zero() {
                    (Vec::new(), 0)
                } else {
                    (vec![FieldElement::zero()], -1)
                }
            } else {
                (eigen_slopes(&w), 0)
            };
            for m in slopes {
                out.push(Candidate {
                    rule: SeparatrixRule::SimplePoint,
                    location: rec.location.clone(),
                    path: rec.path.clone(),
                    curve: LocalCurve { form: w.clone(), slope: m, shift, swapped },
                });
            }
        }
    }
    out
}

fn source_form(tree: &ResolutionTree) -> Result<&OneForm> {
    match tree.source() {
        Source::Form(w) => Ok(w),
        Source::Curve(_) => Err(Error::InvalidInput("tree does not resolve a foliation".into())),
    }
}

/// Pushes a candidate down to the original origin as a Puiseux jet.
fn push_down(tree: &ResolutionTree, cand: &Candidate, order: u32) -> Result<SeparatrixJet> {
    let chart = tree.point_chart(cand.location.as_ref());
    let (xm, ym) = chart.total_map();
    let image = |phi: &TruncatedSeries| {
        let tau = TruncatedSeries::var(phi.prec());
        let (u, v) = if cand.curve.swapped { (phi.clone(), tau) } else { (tau, phi.clone()) };
        (eval_bipoly(xm, &u, &v), eval_bipoly(ym, &u, &v))
    };
    // k = ord X(τ), found by doubling
    let mut prec = 16;
    let mut phi = cand.curve.solve(&[], prec)?;
    let k = loop {
        let (x, _) = image(&phi);
        if let Some(k) = x.valuation() {
            break k;
        }
        if prec >= 128 {
            return Err(Error::InvalidInput("separatrix is the line x = 0".into()));
        }
        prec *= 2;
        phi = cand.curve.solve(phi.coeffs(), prec)?;
    };
    let n = order as usize;
    let target = k * (n + 2) + 2;
    if target > phi.prec() {
        phi = cand.curve.solve(phi.coeffs(), target)?;
    }
    let (x, y) = image(&phi);
    // X = τ^k·U, σ = τ·U^{1/k}
    let u = x.shift_down(k).expect("valuation k");
    let root = u.coeff(0).nth_root(k as u32)?;
    let w = u.nth_root_with(k as u32, &root).expect("unit");
    let tau_of_sigma = TruncatedSeries::revert_scaled(&w).expect("unit");
    let ys = y.compose(&tau_of_sigma);
    let ys = ys.truncate(ys.prec().min(k * (n + 1) + 1));
    let w0 = source_form(tree)?;
    let exact = exact_parametrization(w0, k as u32, &ys);
    let jet = PuiseuxJet::new(k as u32, ys, exact).canonical();
    let residual_order = if exact { u32::MAX } else { jet.form_residual_order(w0.a(), w0.b()) };
    Ok(SeparatrixJet {
        jet,
        rule: cand.rule,
        source_point: cand.path.clone(),
        chart_path: chart.path(),
        ramification: tree.ramification(),
        residual_order,
    })
}

/// Whether `y = p(σ)`, `x = σ^d` with `p` a polynomial well inside its
/// precision is an exact solution.
fn exact_parametrization(w: &OneForm, d: u32, p: &TruncatedSeries) -> bool {
    let last = p.coeffs().iter().rposition(|c| !c.is_zero()).map_or(0, |k| k + 1);
    if 2 * last + 2 > p.prec() {
        return false;
    }
    let py = BiPoly::from_terms(p.coeffs()[..last].iter().enumerate().map(|(k, c)| ((k as u32, 0), c.clone())));
    let xs = BiPoly::x().pow(d);
    let av = w.a().substitute(&xs, &py);
    let bv = w.b().substitute(&xs, &py);
    let dx = BiPoly::monomial(FieldElement::from_int(d as i64), d - 1, 0);
    dx.mul(&av).add(&bv.mul(&py.dx())).is_zero()
}

/// Every separatrix candidate of a reduced tree, pushed down.
pub fn separatrix_candidates(tree: &ResolutionTree, order: u32) -> Vec<(String, Result<SeparatrixJet>)> {
    let mut cands = dicritical_candidates(tree);
    cands.extend(simple_point_candidates(tree));
    cands
        .iter()
        .map(|c| {
            let r = push_down(tree, c, order).and_then(|s| {
                if s.residual_order >= order {
                    Ok(s)
                } else {
                    Err(Error::InvalidInput(format!("residual certified only to order {}", s.residual_order)))
                }
            });
            (format!("{} ({})", c.path, c.rule), r)
        })
        .collect()
}

/// The first separatrix found: dicritical components first, then simple
/// points by birth order.
pub fn extract_separatrix(tree: &ResolutionTree, order: u32) -> Result<SeparatrixJet> {
    source_form(tree)?;
    let mut diagnostics = Vec::new();
    let mut cands = dicritical_candidates(tree);
    cands.extend(simple_point_candidates(tree));
    for c in &cands {
        match push_down(tree, c, order) {
            Ok(s) if s.residual_order >= order => return Ok(s),
            Ok(s) => diagnostics.push(format!("{}: residual order {}", c.path, s.residual_order)),
            Err(e) => diagnostics.push(format!("{}: {e}", c.path)),
        }
    }
    if cands.is_empty() {
        diagnostics.push("no non-corner simple point or dicritical component".into());
    }
    Err(Error::NoSeparatrixCandidate(diagnostics.join("; ")))
}
