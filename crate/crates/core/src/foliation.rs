//! Foliation germs `ω = a dx + b dy`, their blow-ups, and reduction.

use std::fmt;

use crate::algebra::{univariate_roots, BiPoly, FieldElement};
use crate::error::{Error, Result};
use crate::surface::{Chart, ChartSide, ComponentId, LocalDivisors, Location, NodeId, Payload, ResolutionTree, Source};

pub const DEFAULT_MAX_DEPTH: usize = 50;

/// A saturated 1-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    a: BiPoly,
    b: BiPoly,
}

impl OneForm {
    /// Saturates `a dx + b dy`.
    pub fn new(a: BiPoly, b: BiPoly) -> Result<Self> {
        Ok(Self::saturate(a, b)?.0)
    }

    /// Saturates and reports whether a nontrivial common factor was removed.
    pub fn saturate(a: BiPoly, b: BiPoly) -> Result<(Self, bool)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("the zero form defines no foliation".into()));
        }
        let g = a.gcd(&b);
        if g.degree() == Some(0) {
            return Ok((OneForm { a, b }, false));
        }
        let a = a.div_exact(&g).expect("gcd divides");
        let b = b.div_exact(&g).expect("gcd divides");
        Ok((OneForm { a, b }, true))
    }

    pub fn from_int_terms(a: &[(i64, u32, u32)], b: &[(i64, u32, u32)]) -> Result<Self> {
        Self::new(BiPoly::from_int_terms(a), BiPoly::from_int_terms(b))
    }

    /// `df`.
    pub fn exact(f: &BiPoly) -> Result<Self> {
        Self::new(f.dx(), f.dy())
    }

    pub fn a(&self) -> &BiPoly {
        &self.a
    }

    pub fn b(&self) -> &BiPoly {
        &self.b
    }

    pub fn is_saturated(&self) -> bool {
        self.a.gcd(&self.b).degree() == Some(0)
    }

    pub fn multiplicity(&self) -> u32 {
        let o = |p: &BiPoly| p.order().finite().unwrap_or(u32::MAX);
        o(&self.a).min(o(&self.b))
    }

    pub fn is_singular_at_origin(&self) -> bool {
        self.a.constant_term().is_zero() && self.b.constant_term().is_zero()
    }

    pub fn translate(&self, cx: &FieldElement, cy: &FieldElement) -> Self {
        OneForm { a: self.a.translate(cx, cy), b: self.b.translate(cx, cy) }
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        OneForm { a: self.b.swap(), b: self.a.swap() }
    }

    /// Linear part of the dual field `X = b ∂x − a ∂y` at the origin: `(T, D)`.
    pub fn linear_part(&self) -> (FieldElement, FieldElement) {
        let ax = self.a.coeff(1, 0);
        let ay = self.a.coeff(0, 1);
        let bx = self.b.coeff(1, 0);
        let by = self.b.coeff(0, 1);
        let t = &bx - &ay;
        let d = &(&ax * &by) - &(&ay * &bx);
        (t, d)
    }

    /// `x·a_ν + y·b_ν ≡ 0`.
    pub fn is_dicritical_blowup(&self) -> bool {
        let nu = self.multiplicity();
        let an = self.a.homogeneous_part(nu);
        let bn = self.b.homogeneous_part(nu);
        BiPoly::x().mul(&an).add(&BiPoly::y().mul(&bn)).is_zero()
    }

    /// The x-chart or y-chart pullback before dividing by the divisor.
    pub fn pullback(&self, side: ChartSide) -> (BiPoly, BiPoly) {
        match side {
            ChartSide::X => {
                // x = x, y = x t: (a + t b) dx + x b dt
                let a = self.a.x_chart();
                let b = self.b.x_chart();
                (a.add(&BiPoly::y().mul(&b)), BiPoly::x().mul(&b))
            }
            ChartSide::Y => {
                // x = s y, y = y: y a ds + (s a + b) dy
                let a = self.a.y_chart();
                let b = self.b.y_chart();
                (BiPoly::y().mul(&a), BiPoly::x().mul(&a).add(&b))
            }
        }
    }

    /// Wedge product coefficient `a·b' − b·a'` (zero iff the forms are proportional).
    pub fn wedge(&self, o: &OneForm) -> BiPoly {
        self.a.mul(&o.b).sub(&self.b.mul(&o.a))
    }

    /// Grammar-compatible rendering.
    pub fn display_with(&self, xv: &str, yv: &str) -> String {
        let mut parts = Vec::new();
        if !self.a.is_zero() {
            parts.push(format!("({})*d{xv}", self.a.display_with(xv, yv)));
        }
        if !self.b.is_zero() {
            parts.push(format!("({})*d{yv}", self.b.display_with(xv, yv)));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", "y"))
    }
}

/// Strict transform in one chart of the blow-up at the origin, and the
/// dicritical flag.
pub fn strict_transform_blowup(w: &OneForm, side: ChartSide) -> Result<(OneForm, bool)> {
    let nu = w.multiplicity();
    let dicritical = w.is_dicritical_blowup();
    let (p, q) = w.pullback(side);
    let e = if dicritical { nu + 1 } else { nu };
    let div = |f: &BiPoly| match side {
        ChartSide::X => f.div_monomial(e, 0),
        ChartSide::Y => f.div_monomial(0, e),
    };
    let (p, q) = (div(&p).expect("pullback divisible by E^ν"), div(&q).expect("pullback divisible by E^ν"));
    // dicritical iff the pullback is divisible by one more power of the divisor
    let one_more = match side {
        ChartSide::X => p.x_adic_order() >= 1 && q.x_adic_order() >= 1,
        ChartSide::Y => p.y_adic_order() >= 1 && q.y_adic_order() >= 1,
    };
    if !dicritical && one_more {
        return Err(Error::InvalidInput("dicritical criterion disagrees with pullback divisibility".into()));
    }
    Ok((OneForm::new(p, q)?, dicritical))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Regular,
    /// Eigenvalues when they fit in the field tower; `ratio = λ₂/λ₁`.
    Simple {
        eigenvalues: Option<[FieldElement; 2]>,
        ratio: Option<FieldElement>,
    },
    SaddleNode {
        eigenvalues: Option<[FieldElement; 2]>,
    },
    NonSimple,
}

impl Classification {
    pub fn is_terminal(&self) -> bool {
        !matches!(self, Classification::NonSimple)
    }

    /// Simple in the wide sense (saddle-nodes included).
    pub fn is_simple(&self) -> bool {
        matches!(self, Classification::Simple { .. } | Classification::SaddleNode { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Classification::Regular => "regular",
            Classification::Simple { .. } => "simple",
            Classification::SaddleNode { .. } => "saddle-node",
            Classification::NonSimple => "non-simple",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point of the (transformed) surface and the foliation there.
#[derive(Clone, Debug)]
pub struct SingularityRecord {
    pub location: Option<Location>,
    pub path: String,
    pub chart: Chart,
    /// Local form, the point moved to the origin.
    pub form: OneForm,
    pub divisors: LocalDivisors,
    /// Adjacent components with their invariance.
    pub adjacent: Vec<(ComponentId, bool)>,
    pub trace: FieldElement,
    pub det: FieldElement,
    pub classification: Classification,
}

impl SingularityRecord {
    pub fn is_corner(&self) -> bool {
        self.divisors.count() == 2
    }
}

/// Eigenvalue ratio test on `(T, D)`.
pub fn classify_linear_part(t: &FieldElement, d: &FieldElement) -> Classification {
    let eigen = || -> Option<[FieldElement; 2]> {
        // λ² − Tλ + D
        let disc = &(t * t) - &(d * &FieldElement::from_int(4));
        let r = disc.sqrt_extending().ok()?;
        let half = FieldElement::from_ratio(1, 2);
        let t = t.lift_to(r.field()).ok()?;
        Some([&(&t + &r) * &half, &(&t - &r) * &half])
    };
    if !d.is_zero() {
        let t2 = t * t;
        let m = &t2 - &(d * &FieldElement::from_int(2));
        let delta = &t2 * &(&t2 - &(d * &FieldElement::from_int(4)));
        if let Some(sq) = delta.sqrt() {
            let two_d = d * &FieldElement::from_int(2);
            let roots = [&(&m + &sq) / &two_d, &(&m - &sq) / &two_d];
            if roots.iter().any(|r| r.is_positive_rational()) {
                return Classification::NonSimple;
            }
        }
        let eigenvalues = eigen();
        let ratio = eigenvalues.as_ref().map(|[l1, l2]| l2 / l1);
        Classification::Simple { eigenvalues, ratio }
    } else if !t.is_zero() {
        Classification::SaddleNode { eigenvalues: Some([t.clone(), FieldElement::zero()]) }
    } else {
        Classification::NonSimple
    }
}

pub fn classify_singularity(rec: &SingularityRecord) -> Classification {
    if !rec.form.is_singular_at_origin() {
        return Classification::Regular;
    }
    classify_linear_part(&rec.trace, &rec.det)
}

/// Builds the record of the point `loc` with local form `form`.
pub fn make_record(tree: &ResolutionTree, loc: Option<Location>, form: OneForm) -> SingularityRecord {
    let divisors = tree.point_divisors(loc.as_ref());
    let adjacent = divisors.components().into_iter().map(|c| (c, tree.component(c).invariant.unwrap_or(true))).collect();
    let (trace, det) = form.linear_part();
    let mut rec = SingularityRecord {
        path: tree.point_path(loc.as_ref()),
        chart: tree.point_chart(loc.as_ref()),
        location: loc,
        form,
        divisors,
        adjacent,
        trace,
        det,
        classification: Classification::Regular,
    };
    rec.classification = classify_singularity(&rec);
    rec
}

/// Singular points on the divisor `{x = 0}` of an x-chart transform (as values
/// of `t`), plus whether the y-chart origin is singular.
pub fn divisor_singular_points(x_chart: &OneForm, y_chart: &OneForm) -> Result<(Vec<FieldElement>, bool)> {
    let a0 = x_chart.a.restrict_x_zero();
    let b0 = x_chart.b.restrict_x_zero();
    let g = a0.gcd(&b0);
    let ts = if g.is_zero() {
        return Err(Error::InvalidInput("transform vanishes along the divisor".into()));
    } else if g.degree() == Some(0) {
        Vec::new()
    } else {
        let field = g.coefficient_field()?;
        univariate_roots(&g, &field)?.into_complete()?.into_iter().map(|(r, _)| r).collect()
    };
    Ok((ts, y_chart.is_singular_at_origin()))
}

/// Singular points on the divisor created at `node`.
pub fn singular_locus_on_divisor(tree: &ResolutionTree, node: NodeId) -> Result<Vec<SingularityRecord>> {
    let Some(Payload::Form { x_chart, y_chart, .. }) = &tree.node(node).payload else {
        return Err(Error::InvalidInput("center carries no foliation".into()));
    };
    let (ts, y_origin) = divisor_singular_points(x_chart, y_chart)?;
    let mut out = Vec::new();
    for t in ts {
        let form = x_chart.translate(&FieldElement::zero(), &t);
        out.push(make_record(tree, Some(Location::x_chart(node, t)), form));
    }
    if y_origin {
        out.push(make_record(tree, Some(Location::y_origin(node)), y_chart.clone()));
    }
    Ok(out)
}

/// Chart gluing on the overlap `x = s y, t = 1/s`.
pub fn form_charts_glue(x_chart: &OneForm, y_chart: &OneForm) -> bool {
    let k = x_chart.a.degree_y().unwrap_or(0).max(x_chart.b.degree_y().unwrap_or(0));
    let ah = crate::surface::to_y_chart_coordinates(&x_chart.a, k);
    let bh = crate::surface::to_y_chart_coordinates(&x_chart.b, k);
    let p = ah.mul_monomial(2, 1).sub(&bh);
    let q = ah.mul_monomial(3, 0);
    p.mul(&y_chart.b).sub(&q.mul(&y_chart.a)).is_zero()
}

fn blow_up_form(tree: &ResolutionTree, loc: Option<Location>, form: &OneForm) -> Result<(ResolutionTree, NodeId)> {
    let (xw, dic) = strict_transform_blowup(form, ChartSide::X)?;
    let (yw, _) = strict_transform_blowup(form, ChartSide::Y)?;
    debug_assert!(form_charts_glue(&xw, &yw));
    let payload = Payload::Form { local: form.clone(), x_chart: xw, y_chart: yw, multiplicity: form.multiplicity(), dicritical: dic };
    tree.blow_up_at(loc, Some(payload))
}

/// Seidenberg reduction of `ω` at the origin.
pub fn reduce_singularities(w: &OneForm, max_depth: usize) -> Result<ResolutionTree> {
    reduce_with_base(Source::Form(w.clone()), w.clone(), 1, max_depth)
}

/// Reduction of `working` (the pullback of `source` by `x ↦ x^ramification`).
pub fn reduce_with_base(source: Source, working: OneForm, ramification: u32, max_depth: usize) -> Result<ResolutionTree> {
    let mut tree = ResolutionTree::new(source, ramification);
    let root = make_record(&tree, None, working);
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(rec) = queue.pop_front() {
        if rec.classification.is_terminal() {
            tree.push_final(rec);
            continue;
        }
        let depth = rec.location.as_ref().map_or(0, |l| tree.node(l.parent).depth);
        if depth + 1 > max_depth {
            return Err(Error::ResolutionDepthExceeded { max_depth, chart: rec.path.clone() });
        }
        let (next, node) = blow_up_form(&tree, rec.location.clone(), &rec.form).map_err(|e| e.at_chart(&rec.path))?;
        tree = next;
        let recs = singular_locus_on_divisor(&tree, node).map_err(|e| e.at_chart(&rec.path))?;
        queue.extend(recs);
    }
    Ok(tree)
}

/// Free-point and simple-point summary of a reduction.
pub fn final_singularities_simple(tree: &ResolutionTree) -> bool {
    tree.finals().iter().all(|r| r.classification.is_terminal())
}
