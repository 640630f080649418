//! Ramifications `ρ_d : (x, y) ↦ (x^d, y)` and the search for one after which
//! the reduction only blows up free points.

use std::collections::VecDeque;

use num::Integer;

use crate::algebra::{univariate_roots, BiPoly, FieldElement};
use crate::camacho_sad::extract_separatrix;
use crate::error::{Error, Result};
use crate::foliation::{reduce_singularities, reduce_with_base, OneForm};
use crate::puiseux::{newton_puiseux_expand, ramification_exponent, shear_x, PuiseuxJet};
use crate::surface::{curve_charts_glue, Location, Payload, ResolutionTree, Source};

pub const DEFAULT_D_MAX: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RamificationMap {
    d: u32,
}

impl RamificationMap {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("ramification exponent must be ≥ 1".into()));
        }
        Ok(RamificationMap { d })
    }

    pub fn exponent(&self) -> u32 {
        self.d
    }

    pub fn is_identity(&self) -> bool {
        self.d == 1
    }

    pub fn pull_form(&self, w: &OneForm) -> OneForm {
        pullback_ramify(w, self.d)
    }

    pub fn pull_curve(&self, f: &BiPoly) -> BiPoly {
        ramify_curve(f, self.d)
    }
}

/// `d·x^(d−1)·a(x^d, y) dx + b(x^d, y) dy`, saturated.
pub fn pullback_ramify(w: &OneForm, d: u32) -> OneForm {
    assert!(d >= 1);
    if d == 1 {
        return w.clone();
    }
    let a = w.a().ramify(d).mul(&BiPoly::monomial(FieldElement::from_int(d as i64), d - 1, 0));
    let b = w.b().ramify(d);
    OneForm::new(a, b).expect("pullback of a nonzero form is nonzero")
}

/// `f(x^d, y)`.
pub fn ramify_curve(f: &BiPoly, d: u32) -> BiPoly {
    f.ramify(d)
}

/// Whether `a dx + b dy` is closed, i.e. `∂a/∂y = ∂b/∂x`.
pub fn is_hamiltonian(w: &OneForm) -> bool {
    w.a().dy() == w.b().dx()
}

/// `f` with `df = ω` and `f(0, 0) = 0`, for closed forms.
pub fn hamiltonian(w: &OneForm) -> Option<BiPoly> {
    if !is_hamiltonian(w) {
        return None;
    }
    let mut f = BiPoly::zero();
    for (&(i, j), c) in w.a().terms() {
        f.add_term((i + 1, j), &(c / &FieldElement::from_int(i as i64 + 1)));
    }
    for (&(i, j), c) in w.b().terms() {
        if i == 0 {
            f.add_term((0, j + 1), &(c / &FieldElement::from_int(j as i64 + 1)));
        }
    }
    Some(f)
}

// ---------------------------------------------------------------------------
// Embedded resolution of curves

/// Whether the curve germ `g` (through the origin) still needs a blow-up at
/// a point with the given divisors: singular, tangent to a divisor, or
/// passing through a corner.
fn needs_blow_up(g: &BiPoly, x_axis: bool, y_axis: bool) -> bool {
    let m = g.order().finite().unwrap_or(u32::MAX);
    if m >= 2 {
        return true;
    }
    if x_axis && y_axis {
        return true;
    }
    // transverse to {x = 0} iff g(0, y) has order 1
    if x_axis && g.restrict_x_zero().order() != Some(1) {
        return true;
    }
    if y_axis && g.restrict_y_zero().order() != Some(1) {
        return true;
    }
    false
}

fn curve_strict_transforms(g: &BiPoly) -> (BiPoly, BiPoly, u32) {
    let m = g.order().finite().expect("nonzero curve");
    let x = g.x_chart().div_monomial(m, 0).expect("divisible by x^m");
    let y = g.y_chart().div_monomial(0, m).expect("divisible by y^m");
    (x, y, m)
}

/// Embedded resolution of `working` (the pullback of `source` by `ρ_d`).
pub fn resolve_curve(source: &BiPoly, working: &BiPoly, d: u32, max_depth: usize) -> Result<ResolutionTree> {
    if working.is_zero() || !working.constant_term().is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let mut tree = ResolutionTree::new(Source::Curve(source.clone()), d);
    let mut queue: VecDeque<(Option<Location>, BiPoly)> = VecDeque::from([(None, working.clone())]);
    while let Some((loc, g)) = queue.pop_front() {
        let divs = tree.point_divisors(loc.as_ref());
        if !needs_blow_up(&g, divs.x_axis.is_some(), divs.y_axis.is_some()) {
            continue;
        }
        let depth = loc.as_ref().map_or(0, |l| tree.node(l.parent).depth);
        if depth + 1 > max_depth {
            return Err(Error::ResolutionDepthExceeded { max_depth, chart: tree.point_path(loc.as_ref()) });
        }
        let path = tree.point_path(loc.as_ref());
        let (gx, gy, m) = curve_strict_transforms(&g);
        debug_assert!(curve_charts_glue(&gx, &gy));
        let payload = Payload::Curve { local: g, x_chart: gx.clone(), y_chart: gy.clone(), multiplicity: m };
        let (next, node) = tree.blow_up_at(loc, Some(payload))?;
        tree = next;
        let on_e = gx.restrict_x_zero();
        if !on_e.is_zero() && on_e.degree() != Some(0) {
            let field = on_e.coefficient_field()?;
            let roots = univariate_roots(&on_e, &field).and_then(|r| r.into_complete()).map_err(|e| e.at_chart(&path))?;
            for (t, _) in roots {
                let local = gx.translate(&FieldElement::zero(), &t);
                queue.push_back((Some(Location::x_chart(node, t)), local));
            }
        }
        if gy.constant_term().is_zero() {
            queue.push_back((Some(Location::y_origin(node)), gy));
        }
    }
    Ok(tree)
}

#[derive(Clone, Debug)]
pub struct CurveCheck {
    pub d: u32,
    /// Shear `x ← x + c·y` applied before expanding (when `x | f`).
    pub shear: Option<u32>,
    pub free_only: bool,
    /// Branches of the ramified curve; all regular when `d` is the Puiseux exponent.
    pub ramified_branches: Vec<PuiseuxJet>,
    pub tree: ResolutionTree,
}

impl CurveCheck {
    pub fn branches_smooth(&self) -> bool {
        self.ramified_branches.iter().all(|j| j.is_regular())
    }
}

/// Ramifies by the lcm of the Puiseux denominators and resolves.
pub fn curve_theorem_check(f: &BiPoly, order: u32, max_depth: usize) -> Result<CurveCheck> {
    let exp = newton_puiseux_expand(f, order)?;
    let d = ramification_exponent(&exp.jets);
    curve_theorem_check_with(f, d, order, max_depth)
}

/// Same with an explicit exponent (`d = 1` gives the unramified control).
pub fn curve_theorem_check_with(f: &BiPoly, d: u32, order: u32, max_depth: usize) -> Result<CurveCheck> {
    if d == 0 {
        return Err(Error::InvalidInput("ramification exponent must be ≥ 1".into()));
    }
    let exp = newton_puiseux_expand(f, order)?;
    let base = match exp.shear {
        Some(c) => shear_x(f, c),
        None => f.clone(),
    };
    let working = ramify_curve(&base, d);
    let ramified = newton_puiseux_expand(&working, order)?;
    let tree = resolve_curve(f, &working, d, max_depth)?;
    Ok(CurveCheck { d, shear: exp.shear, free_only: tree.free_only(), ramified_branches: ramified.jets, tree })
}

// ---------------------------------------------------------------------------
// Foliations

/// Outcome of reducing `ρ_d*ω`.
#[derive(Clone, Debug)]
pub struct Attempt {
    pub d: u32,
    pub free_only: bool,
    pub simple_only: bool,
    pub error: Option<String>,
}

impl Attempt {
    pub fn succeeded(&self) -> bool {
        self.error.is_none() && self.free_only && self.simple_only
    }
}

#[derive(Clone, Debug)]
pub struct RamificationResult {
    pub d: u32,
    pub hint: Option<u32>,
    pub attempts: Vec<Attempt>,
    pub tree: ResolutionTree,
}

/// Reduction of `ρ_d*ω`.
pub fn reduce_ramified(w: &OneForm, d: u32, max_depth: usize) -> Result<ResolutionTree> {
    reduce_with_base(Source::Form(w.clone()), pullback_ramify(w, d), d, max_depth)
}

fn attempt(w: &OneForm, d: u32, max_depth: usize) -> (Attempt, Option<ResolutionTree>) {
    match reduce_ramified(w, d, max_depth) {
        Ok(tree) => {
            let a = Attempt {
                d,
                free_only: tree.free_only(),
                simple_only: tree.finals().iter().all(|r| r.classification.is_terminal()),
                error: None,
            };
            (a, Some(tree))
        }
        Err(e) => (Attempt { d, free_only: false, simple_only: false, error: Some(e.to_string()) }, None),
    }
}

/// Exponent suggested by the separatrix (and, for closed forms, the branches
/// of the first integral).
pub fn ramification_hint(w: &OneForm, order: u32, max_depth: usize) -> Option<u32> {
    let mut hint: Option<u32> = None;
    let mut join = |d: u32| hint = Some(hint.map_or(d, |h| h.lcm(&d)));
    if let Ok(tree) = reduce_singularities(w, max_depth) {
        if let Ok(s) = extract_separatrix(&tree, order) {
            join(s.jet.ramification());
        }
    }
    if let Some(f) = hamiltonian(w) {
        if let Ok(exp) = newton_puiseux_expand(&f, order) {
            join(ramification_exponent(&exp.jets));
        }
    }
    hint
}

/// The least `d ≤ d_max` such that reducing `ρ_d*ω` only blows up free points
/// and ends with simple singularities.
pub fn find_regular_ramification(w: &OneForm, d_max: u32, max_depth: usize) -> Result<RamificationResult> {
    find_regular_ramification_with(w, d_max, max_depth, crate::puiseux::DEFAULT_ORDER)
}

pub fn find_regular_ramification_with(w: &OneForm, d_max: u32, max_depth: usize, order: u32) -> Result<RamificationResult> {
    if !w.is_singular_at_origin() {
        return Err(Error::NonZeroConstantTerm);
    }
    let hint = ramification_hint(w, order, max_depth);
    let mut attempts = Vec::new();
    let mut upper = d_max;
    let mut best: Option<(u32, ResolutionTree)> = None;
    if let Some(h) = hint.filter(|&h| h <= d_max) {
        let (a, tree) = attempt(w, h, max_depth);
        let ok = a.succeeded();
        attempts.push(a);
        if ok {
            upper = h - 1;
            best = tree.map(|t| (h, t));
        }
    }
    for d in 1..=upper {
        if Some(d) == hint {
            continue;
        }
        let (a, tree) = attempt(w, d, max_depth);
        let ok = a.succeeded();
        attempts.push(a);
        if ok {
            best = tree.map(|t| (d, t));
            break;
        }
    }
    match best {
        Some((d, tree)) => Ok(RamificationResult { d, hint, attempts, tree }),
        None => {
            let summary = attempts
                .iter()
                .map(|a| match &a.error {
                    Some(e) => format!("d={}: {e}", a.d),
                    None => format!("d={}: free_only={} simple_only={}", a.d, a.free_only, a.simple_only),
                })
                .collect::<Vec<_>>()
                .join("; ");
            log::warn!("no regular ramification up to {d_max}: {summary}");
            Err(Error::NoRegularRamificationFound(d_max))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::CenterKind;

    fn form(a: &[(i64, u32, u32)], b: &[(i64, u32, u32)]) -> OneForm {
        OneForm::from_int_terms(a, b).unwrap()
    }

    fn cusp() -> OneForm {
        form(&[(-3, 2, 0)], &[(2, 0, 1)])
    }

    #[test]
    fn pullbacks() {
        let c = cusp();
        assert_eq!(pullback_ramify(&c, 1), c);
        assert_eq!(pullback_ramify(&c, 2), form(&[(-6, 5, 0)], &[(2, 0, 1)]));
        let radial = form(&[(1, 0, 1)], &[(-1, 1, 0)]);
        assert_eq!(pullback_ramify(&radial, 3), form(&[(3, 0, 1)], &[(-1, 1, 0)]));
    }

    #[test]
    fn pullback_composes() {
        let w = form(&[(1, 0, 1), (1, 2, 0)], &[(-1, 1, 0)]);
        assert_eq!(pullback_ramify(&pullback_ramify(&w, 2), 3), pullback_ramify(&w, 6));
    }

    #[test]
    fn curves() {
        let f = BiPoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(ramify_curve(&f, 2), BiPoly::from_int_terms(&[(1, 0, 2), (-1, 6, 0)]));
        assert_eq!(ramify_curve(&f, 1), f);
    }

    #[test]
    fn hamiltonians() {
        let f = BiPoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0), (1, 1, 1)]);
        let w = OneForm::exact(&f).unwrap();
        assert_eq!(hamiltonian(&w), Some(f));
        assert!(hamiltonian(&form(&[(2, 0, 1)], &[(-1, 1, 0)])).is_none());
    }

    #[test]
    fn cusp_curve_checks() {
        let f = BiPoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)]);
        let control = curve_theorem_check_with(&f, 1, 16, 50).unwrap();
        assert!(!control.free_only);
        assert_eq!(control.tree.len(), 3);
        assert_eq!(control.tree.classify_center(2), CenterKind::Satellite);
        let c = curve_theorem_check(&f, 16, 50).unwrap();
        assert_eq!(c.d, 2);
        assert!(c.free_only);
        assert!(c.branches_smooth());
        assert_eq!(c.ramified_branches.len(), 2);
    }

    #[test]
    fn smooth_curve_check() {
        let f = BiPoly::from_int_terms(&[(1, 0, 1), (-1, 2, 0)]);
        let c = curve_theorem_check(&f, 16, 50).unwrap();
        assert_eq!(c.d, 1);
        assert!(c.tree.is_empty());
        assert!(c.free_only);
    }

    #[test]
    fn searches() {
        let saddle = form(&[(1, 0, 1)], &[(1, 1, 0)]);
        let r = find_regular_ramification(&saddle, 12, 50).unwrap();
        assert_eq!(r.d, 1);
        assert!(r.tree.is_empty());

        let r = find_regular_ramification(&cusp(), 6, 50).unwrap();
        assert_eq!(r.d, 2);
        assert!(r.tree.free_only());

        let node = form(&[(2, 0, 1)], &[(-1, 1, 0)]);
        assert_eq!(find_regular_ramification(&node, 12, 50).unwrap().d, 1);
    }

    #[test]
    fn search_reports_failure() {
        assert_eq!(find_regular_ramification(&cusp(), 1, 50).unwrap_err(), Error::NoRegularRamificationFound(1));
    }
}
