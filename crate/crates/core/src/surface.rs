//! Chart bookkeeping for iterated point blow-ups.
//!
//! Every center is moved to the origin of its chart, so the exceptional
//! components through it are always among the two coordinate axes. A point is
//! described by its [`LocalDivisors`]: the component whose local equation is
//! `x = 0`, and the one whose local equation is `y = 0`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num::rational::BigRational;
use num::{ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{BiPoly, FieldElement};
use crate::error::{Error, Result};
use crate::foliation::{OneForm, SingularityRecord};

/// One elementary substitution, read as a map from new coordinates `(u, v)`
/// to the previous ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `(u, v) ↦ (u, u·v)`
    XChart,
    /// `(u, v) ↦ (u·v, v)`
    YChart,
    /// `(u, v) ↦ (u + cx, v + cy)`
    Translate { cx: FieldElement, cy: FieldElement },
    /// `(u, v) ↦ (u^d, v)`
    Ramify(u32),
}

impl Substitution {
    fn maps(&self) -> (BiPoly, BiPoly) {
        let (x, y) = (BiPoly::x(), BiPoly::y());
        match self {
            Substitution::XChart => (x.clone(), x.mul(&y)),
            Substitution::YChart => (x.mul(&y), y),
            Substitution::Translate { cx, cy } => (x.add(&BiPoly::constant(cx.clone())), y.add(&BiPoly::constant(cy.clone()))),
            Substitution::Ramify(d) => (x.pow(*d), y),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Substitution::XChart => write!(f, "x"),
            Substitution::YChart => write!(f, "y"),
            Substitution::Translate { cx, cy } => write!(f, "T({cx},{cy})"),
            Substitution::Ramify(d) => write!(f, "R{d}"),
        }
    }
}

/// Composition of substitutions together with the total polynomial map from
/// chart coordinates to the original `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    steps: Vec<Substitution>,
    x_map: BiPoly,
    y_map: BiPoly,
}

impl Chart {
    pub fn identity() -> Self {
        Chart { steps: Vec::new(), x_map: BiPoly::x(), y_map: BiPoly::y() }
    }

    pub fn ramified(d: u32) -> Self {
        if d == 1 {
            Chart::identity()
        } else {
            Chart::identity().then(Substitution::Ramify(d))
        }
    }

    pub fn then(&self, sub: Substitution) -> Self {
        if let Substitution::Translate { cx, cy } = &sub {
            if cx.is_zero() && cy.is_zero() {
                return self.clone();
            }
        }
        let (sx, sy) = sub.maps();
        let mut steps = self.steps.clone();
        steps.push(sub);
        Chart { steps, x_map: self.x_map.substitute(&sx, &sy), y_map: self.y_map.substitute(&sx, &sy) }
    }

    pub fn steps(&self) -> &[Substitution] {
        &self.steps
    }

    /// `(X(u, v), Y(u, v))`.
    pub fn total_map(&self) -> (&BiPoly, &BiPoly) {
        (&self.x_map, &self.y_map)
    }

    /// Recomputes the total map from the stored steps.
    pub fn recompose(&self) -> (BiPoly, BiPoly) {
        let mut x = BiPoly::x();
        let mut y = BiPoly::y();
        for s in &self.steps {
            let (sx, sy) = s.maps();
            x = x.substitute(&sx, &sy);
            y = y.substitute(&sx, &sy);
        }
        (x, y)
    }

    pub fn path(&self) -> String {
        if self.steps.is_empty() {
            return "id".to_string();
        }
        self.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("·")
    }
}

pub type NodeId = usize;
pub type ComponentId = usize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LocalDivisors {
    /// Component with local equation `x = 0`.
    pub x_axis: Option<ComponentId>,
    /// Component with local equation `y = 0`.
    pub y_axis: Option<ComponentId>,
}

impl LocalDivisors {
    pub fn count(&self) -> usize {
        self.x_axis.is_some() as usize + self.y_axis.is_some() as usize
    }

    pub fn contains(&self, c: ComponentId) -> bool {
        self.x_axis == Some(c) || self.y_axis == Some(c)
    }

    pub fn components(&self) -> Vec<ComponentId> {
        self.x_axis.into_iter().chain(self.y_axis).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterKind {
    Root,
    Free,
    Satellite,
}

impl fmt::Display for CenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CenterKind::Root => "root",
            CenterKind::Free => "free",
            CenterKind::Satellite => "satellite",
        })
    }
}

impl CenterKind {
    fn from_divisors(d: &LocalDivisors) -> Self {
        match d.count() {
            0 => CenterKind::Root,
            1 => CenterKind::Free,
            2 => CenterKind::Satellite,
            _ => unreachable!("at most two components meet at a point"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartSide {
    X,
    Y,
}

/// An infinitely near point: the origin, or a point on the divisor created
/// by blowing up `parent`, in the given chart (`coord` is `t` in the
/// x-chart; the y-chart is only used at `s = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub parent: NodeId,
    pub side: ChartSide,
    pub coord: FieldElement,
}

impl Location {
    pub fn x_chart(parent: NodeId, t: FieldElement) -> Self {
        Location { parent, side: ChartSide::X, coord: t }
    }

    pub fn y_origin(parent: NodeId) -> Self {
        Location { parent, side: ChartSide::Y, coord: FieldElement::zero() }
    }
}

/// Transformed object at a center: the local equation at the center, and
/// the strict transforms in both charts of its blow-up.
#[derive(Clone, Debug)]
pub enum Payload {
    Curve { local: BiPoly, x_chart: BiPoly, y_chart: BiPoly, multiplicity: u32 },
    Form { local: OneForm, x_chart: OneForm, y_chart: OneForm, multiplicity: u32, dicritical: bool },
}

#[derive(Clone, Debug)]
pub struct CenterNode {
    pub id: NodeId,
    pub location: Option<Location>,
    /// Map from coordinates centered at this point to the original ones.
    pub chart: Chart,
    pub divisors: LocalDivisors,
    pub kind: CenterKind,
    /// The component created by blowing up this center.
    pub component: ComponentId,
    /// Number of centers on the path from the root, this one included.
    pub depth: usize,
    pub payload: Option<Payload>,
}

impl CenterNode {
    pub fn dicritical(&self) -> bool {
        matches!(self.payload, Some(Payload::Form { dicritical: true, .. }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorComponent {
    pub id: ComponentId,
    pub self_intersection: i64,
    pub born_at: NodeId,
    /// `Some(false)` for dicritical components of a foliation, `None` for curves.
    pub invariant: Option<bool>,
}

/// What a tree resolves.
#[derive(Clone, Debug)]
pub enum Source {
    Curve(BiPoly),
    Form(OneForm),
}

/// Persistent record of a blow-up sequence: cloning shares the nodes.
#[derive(Clone, Debug)]
pub struct ResolutionTree {
    source: Source,
    ramification: u32,
    base: Chart,
    nodes: Vec<Arc<CenterNode>>,
    components: Vec<DivisorComponent>,
    intersections: BTreeSet<(ComponentId, ComponentId)>,
    finals: Vec<SingularityRecord>,
}

impl ResolutionTree {
    /// Empty tree for `source`, pulled back by `x ↦ x^ramification`.
    pub fn new(source: Source, ramification: u32) -> Self {
        ResolutionTree {
            source,
            ramification,
            base: Chart::ramified(ramification),
            nodes: Vec::new(),
            components: Vec::new(),
            intersections: BTreeSet::new(),
            finals: Vec::new(),
        }
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn base_chart(&self) -> &Chart {
        &self.base
    }

    pub fn nodes(&self) -> &[Arc<CenterNode>] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &CenterNode {
        &self.nodes[id]
    }

    pub fn components(&self) -> &[DivisorComponent] {
        &self.components
    }

    pub fn component(&self, id: ComponentId) -> &DivisorComponent {
        &self.components[id - 1]
    }

    pub fn finals(&self) -> &[SingularityRecord] {
        &self.finals
    }

    pub fn push_final(&mut self, rec: SingularityRecord) {
        self.finals.push(rec);
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Longest chain of centers.
    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Divisor components through a point.
    pub fn point_divisors(&self, loc: Option<&Location>) -> LocalDivisors {
        let Some(loc) = loc else { return LocalDivisors::default() };
        let parent = &self.nodes[loc.parent];
        match loc.side {
            ChartSide::X => {
                LocalDivisors { x_axis: Some(parent.component), y_axis: if loc.coord.is_zero() { parent.divisors.y_axis } else { None } }
            }
            ChartSide::Y => LocalDivisors { x_axis: parent.divisors.x_axis, y_axis: Some(parent.component) },
        }
    }

    /// Chart centered at a point.
    pub fn point_chart(&self, loc: Option<&Location>) -> Chart {
        let Some(loc) = loc else { return self.base.clone() };
        let parent = &self.nodes[loc.parent];
        match loc.side {
            ChartSide::X => {
                parent.chart.then(Substitution::XChart).then(Substitution::Translate { cx: FieldElement::zero(), cy: loc.coord.clone() })
            }
            ChartSide::Y => parent.chart.then(Substitution::YChart),
        }
    }

    /// Human-readable address of a point, e.g. `O/1:x(t=0)/2:y`.
    pub fn point_path(&self, loc: Option<&Location>) -> String {
        match loc {
            None => "O".to_string(),
            Some(l) => {
                let parent = &self.nodes[l.parent];
                let step = match l.side {
                    ChartSide::X => format!("E{}:x(t={})", parent.component, l.coord),
                    ChartSide::Y => format!("E{}:y(s=0)", parent.component),
                };
                format!("{}/{}", self.point_path(parent.location.as_ref()), step)
            }
        }
    }

    pub fn classify_center(&self, node: NodeId) -> CenterKind {
        self.nodes[node].kind
    }

    /// Blows up the given point; returns the extended tree and the new node.
    pub fn blow_up_at(&self, loc: Option<Location>, payload: Option<Payload>) -> Result<(ResolutionTree, NodeId)> {
        if let Some(l) = &loc {
            if l.parent >= self.nodes.len() {
                return Err(Error::InvalidInput(format!("no center {}", l.parent)));
            }
            if l.side == ChartSide::Y && !l.coord.is_zero() {
                return Err(Error::InvalidInput("y-chart points other than s = 0 are covered by the x-chart".into()));
            }
        } else if !self.nodes.is_empty() {
            return Err(Error::InvalidInput("origin already blown up".into()));
        }
        let divisors = self.point_divisors(loc.as_ref());
        let chart = self.point_chart(loc.as_ref());
        let kind = CenterKind::from_divisors(&divisors);
        let depth = loc.as_ref().map_or(1, |l| self.nodes[l.parent].depth + 1);
        let mut tree = self.clone();
        let id = tree.nodes.len();
        let comp = tree.components.len() + 1;
        let invariant = match &payload {
            Some(Payload::Form { dicritical, .. }) => Some(!dicritical),
            _ => None,
        };
        for c in divisors.components() {
            tree.components[c - 1].self_intersection -= 1;
            tree.intersections.insert((c.min(comp), c.max(comp)));
        }
        if let (Some(a), Some(b)) = (divisors.x_axis, divisors.y_axis) {
            tree.intersections.remove(&(a.min(b), a.max(b)));
        }
        tree.components.push(DivisorComponent { id: comp, self_intersection: -1, born_at: id, invariant });
        tree.nodes.push(Arc::new(CenterNode { id, location: loc, chart, divisors, kind, component: comp, depth, payload }));
        Ok((tree, id))
    }

    /// Every center free (or the root).
    pub fn free_only(&self) -> bool {
        self.nodes.iter().all(|n| n.kind != CenterKind::Satellite)
    }

    pub fn dual_graph(&self) -> DualGraph {
        let vertices: Vec<(ComponentId, i64)> = self.components.iter().map(|c| (c.id, c.self_intersection)).collect();
        let edges: Vec<(ComponentId, ComponentId)> = self.intersections.iter().copied().collect();
        let n = vertices.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for (k, (_, w)) in vertices.iter().enumerate() {
            matrix[k][k] = *w;
        }
        for &(a, b) in &edges {
            matrix[a - 1][b - 1] = 1;
            matrix[b - 1][a - 1] = 1;
        }
        DualGraph { vertices, edges, matrix }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    /// `(component id, self-intersection)`.
    pub vertices: Vec<(ComponentId, i64)>,
    pub edges: Vec<(ComponentId, ComponentId)>,
    pub matrix: Vec<Vec<i64>>,
}

impl DualGraph {
    /// Exact determinant of the intersection matrix (1 for the empty graph).
    #[allow(clippy::needless_range_loop)]
    pub fn determinant(&self) -> i64 {
        let n = self.matrix.len();
        let mut a: Vec<Vec<BigRational>> =
            self.matrix.iter().map(|row| row.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
        let mut det = BigRational::from_integer(1.into());
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return 0 };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &pivot;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
        det.to_integer().to_i64().expect("determinant fits in i64")
    }
}

/// `s^k · p(s·y, 1/s)` with `k = deg_t p`: the x-chart polynomial `p(x, t)`
/// rewritten in y-chart coordinates `(s, y)` on the overlap.
pub fn to_y_chart_coordinates(p: &BiPoly, k: u32) -> BiPoly {
    p.map_exponents(|i, j| (i + k - j, i))
}

/// Chart gluing for a curve: the two strict transforms agree on the overlap
/// up to a power of the exceptional coordinate.
pub fn curve_charts_glue(x_chart: &BiPoly, y_chart: &BiPoly) -> bool {
    let k = x_chart.degree_y().unwrap_or(0);
    let h = to_y_chart_coordinates(x_chart, k);
    let strip = |p: &BiPoly| p.div_monomial(p.x_adic_order(), 0).unwrap();
    strip(&h) == strip(y_chart)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree() -> ResolutionTree {
        ResolutionTree::new(Source::Curve(BiPoly::zero()), 1)
    }

    #[test]
    fn self_intersections_follow_the_rule() {
        let (t, root) = tree().blow_up_at(None, None).unwrap();
        assert_eq!(t.component(1).self_intersection, -1);
        assert_eq!(t.classify_center(root), CenterKind::Root);
        // free point of E1
        let (t, n2) = t.blow_up_at(Some(Location::x_chart(root, FieldElement::from_int(3))), None).unwrap();
        assert_eq!(t.classify_center(n2), CenterKind::Free);
        let si: Vec<_> = t.components().iter().map(|c| c.self_intersection).collect();
        assert_eq!(si, vec![-2, -1]);
        // E1 meets E2 at the y-chart origin of the second blow-up
        let (t, n3) = t.blow_up_at(Some(Location::y_origin(n2)), None).unwrap();
        assert_eq!(t.classify_center(n3), CenterKind::Satellite);
        let si: Vec<_> = t.components().iter().map(|c| c.self_intersection).collect();
        assert_eq!(si, vec![-3, -2, -1]);
        let g = t.dual_graph();
        assert_eq!(g.edges, vec![(1, 3), (2, 3)]);
        assert_eq!(g.determinant().abs(), 1);
    }

    #[test]
    fn single_and_chain_graphs() {
        let (t, root) = tree().blow_up_at(None, None).unwrap();
        let g = t.dual_graph();
        assert_eq!(g.vertices, vec![(1, -1)]);
        assert!(g.edges.is_empty());
        let (t, _) = t.blow_up_at(Some(Location::x_chart(root, FieldElement::zero())), None).unwrap();
        let g = t.dual_graph();
        assert_eq!(g.vertices, vec![(1, -2), (2, -1)]);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.determinant(), 1);
    }

    #[test]
    fn persistence_shares_nodes() {
        let (t1, root) = tree().blow_up_at(None, None).unwrap();
        let (t2, _) = t1.blow_up_at(Some(Location::x_chart(root, FieldElement::zero())), None).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!(t2.len(), 2);
        assert!(Arc::ptr_eq(&t1.nodes()[0], &t2.nodes()[0]));
        assert_eq!(t1.component(1).self_intersection, -1);
    }

    #[test]
    fn chart_composition_reproduces_total_map() {
        let (t, root) = tree().blow_up_at(None, None).unwrap();
        let (t, n) = t.blow_up_at(Some(Location::x_chart(root, FieldElement::from_int(2))), None).unwrap();
        let c = t.point_chart(Some(&Location::y_origin(n)));
        let (x, y) = c.total_map();
        assert_eq!(c.recompose(), (x.clone(), y.clone()));
        // (u, v) -> x-chart -> translate t by 2 -> y-chart: X = u v, Y = u v (v + 2) ... check at a point
        let two = FieldElement::from_int(2);
        let three = FieldElement::from_int(3);
        assert_eq!(x.eval(&two, &three), FieldElement::from_int(6));
        assert_eq!(y.eval(&two, &three), FieldElement::from_int(6 * (3 + 2)));
    }

    #[test]
    fn cusp_charts_glue() {
        let f = BiPoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)]);
        let fx = f.x_chart().div_monomial(2, 0).unwrap();
        let fy = f.y_chart().div_monomial(0, 2).unwrap();
        assert!(curve_charts_glue(&fx, &fy));
        assert!(!curve_charts_glue(&fx, &fy.add(&BiPoly::x())));
    }
}
