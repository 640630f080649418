//! Newton polygons and Newton–Puiseux expansion of plane curve branches.

use std::fmt;

use num::integer::Integer;
use num::rational::BigRational;
use num::Signed;
use serde::Serialize;

use crate::algebra::{eval_bipoly, solve_by_order, BiPoly, Exp, FieldElement, TruncatedSeries, UPoly};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: u32 = 16;

/// Recursion guard; exceeded only by inputs with repeated factors.
const MAX_PUISEUX_STEPS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub start: Exp,
    pub end: Exp,
    /// `Δi / Δj`, printed as a reduced fraction.
    #[serde(serialize_with = "ser_ratio")]
    pub inclination: BigRational,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub support: Vec<Exp>,
    pub vertices: Vec<Exp>,
    /// Compact edges, by increasing inclination.
    pub edges: Vec<Edge>,
}

/// Lower-left convex hull of the exponent support of `f`.
pub fn newton_polygon(f: &BiPoly) -> NewtonPolygon {
    let support: Vec<Exp> = f.terms().map(|(e, _)| *e).collect();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let Some(&start) = support.iter().min_by_key(|&&(i, j)| (i, j)) else {
        return NewtonPolygon { support, vertices, edges };
    };
    vertices.push(start);
    let mut cur = start;
    loop {
        // next vertex: smallest Δi/Δj among points strictly below, farthest on ties
        let mut best: Option<Exp> = None;
        for &(i, j) in &support {
            if j >= cur.1 {
                continue;
            }
            best = match best {
                None => Some((i, j)),
                Some(b) => {
                    // compare (i - ci)/(cj - j) with (bi - ci)/(cj - bj)
                    let lhs = (i as i64 - cur.0 as i64) * (cur.1 as i64 - b.1 as i64);
                    let rhs = (b.0 as i64 - cur.0 as i64) * (cur.1 as i64 - j as i64);
                    if lhs < rhs || (lhs == rhs && j < b.1) {
                        Some((i, j))
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(next) = best else { break };
        edges.push(Edge {
            start: cur,
            end: next,
            inclination: BigRational::new(((next.0 - cur.0) as i64).into(), ((cur.1 - next.1) as i64).into()),
        });
        vertices.push(next);
        cur = next;
    }
    NewtonPolygon { support, vertices, edges }
}

/// A branch `x = t^d, y = y(t)` known modulo `t^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxJet {
    ramification: u32,
    series: TruncatedSeries,
    exact: bool,
}

impl PuiseuxJet {
    /// Builds a jet and reduces the ramification index to the minimal one.
    pub fn new(ramification: u32, series: TruncatedSeries, exact: bool) -> Self {
        let mut jet = PuiseuxJet { ramification, series, exact };
        jet.reduce_index();
        jet
    }

    /// The ramification index `d`.
    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// Whether the series is an exact (finite) parametrization.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Smooth graph over `x`: no fractional exponents.
    pub fn is_regular(&self) -> bool {
        self.ramification == 1
    }

    /// The jet is known modulo `x^(prec/d)`.
    pub fn x_precision(&self) -> BigRational {
        BigRational::new((self.series.prec() as i64).into(), (self.ramification as i64).into())
    }

    fn reduce_index(&mut self) {
        let mut g = self.ramification as usize;
        for (k, c) in self.series.coeffs().iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&k);
            }
        }
        if g <= 1 {
            return;
        }
        let coeffs: Vec<FieldElement> = (0..self.series.prec().div_ceil(g)).map(|k| self.series.coeff(k * g)).collect();
        let prec = self.series.prec().div_ceil(g);
        self.series = TruncatedSeries::new(coeffs, prec);
        self.ramification /= g as u32;
    }

    /// `(exponent numerator k, coefficient)` with `y = Σ c·x^(k/d)`.
    pub fn terms(&self) -> Vec<(usize, FieldElement)> {
        self.series.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
    }

    /// Replaces `t` by `ζ·t`.
    fn rotated(&self, zeta: &FieldElement) -> PuiseuxJet {
        let coeffs = self.series.coeffs().iter().enumerate().map(|(k, c)| c * &zeta.pow(k as u32)).collect();
        PuiseuxJet { ramification: self.ramification, series: TruncatedSeries::new(coeffs, self.series.prec()), exact: self.exact }
    }

    /// Picks a deterministic representative among the conjugates `t ↦ ζt`
    /// with `ζ ∈ {±1, ±i}` a `d`-th root of unity.
    pub fn canonical(&self) -> PuiseuxJet {
        let mut zetas = vec![FieldElement::one()];
        if self.ramification.is_multiple_of(2) {
            zetas.push(FieldElement::from_int(-1));
        }
        if self.ramification.is_multiple_of(4) {
            zetas.push(FieldElement::i());
            zetas.push(-FieldElement::i());
        }
        zetas
            .iter()
            .map(|z| self.rotated(z))
            .max_by(|a, b| a.series.coeffs().cmp(b.series.coeffs()).then(std::cmp::Ordering::Equal))
            .unwrap()
    }

    /// `t^d` at the jet's precision.
    pub fn x_series(&self) -> TruncatedSeries {
        TruncatedSeries::monomial(FieldElement::one(), self.ramification as usize, self.series.prec())
    }

    /// `f(t^d, y(t))`.
    pub fn curve_residual(&self, f: &BiPoly) -> TruncatedSeries {
        eval_bipoly(f, &self.x_series(), &self.series)
    }

    /// `d·t^(d−1)·a(t^d, y) + b(t^d, y)·y'(t)`, the invariance residual of
    /// `a dx + b dy` along the jet multiplied by `dx/dt`.
    pub fn form_residual(&self, a: &BiPoly, b: &BiPoly) -> TruncatedSeries {
        let d = self.ramification as usize;
        let xs = self.x_series();
        let dxdt = TruncatedSeries::monomial(FieldElement::from_int(d as i64), d - 1, self.series.prec());
        let av = eval_bipoly(a, &xs, &self.series);
        let bv = eval_bipoly(b, &xs, &self.series);
        dxdt.mul(&av).add(&bv.mul(&self.series.derivative()))
    }

    /// Largest `N` such that `a(x,S) + b(x,S)·S' ≡ 0 mod x^N` is certified.
    pub fn form_residual_order(&self, a: &BiPoly, b: &BiPoly) -> u32 {
        let r = self.form_residual(a, b);
        let v = r.valuation().unwrap_or(r.prec());
        let d = self.ramification as usize;
        ((v + 1).saturating_sub(d) / d) as u32
    }

    /// Whether `other` is a conjugate of `self` (some `t ↦ ζt`, `ζ^d = 1`)
    /// on all exponents below `x^x_order`.
    pub fn matches_up_to_conjugation(&self, other: &PuiseuxJet, x_order: u32) -> bool {
        if self.ramification != other.ramification {
            return false;
        }
        let d = self.ramification as usize;
        let limit = d * x_order as usize;
        if self.series.prec() < limit || other.series.prec() < limit {
            return false;
        }
        let a = self.series.truncate(limit);
        let b = other.series.truncate(limit);
        let mut ratios: Vec<(i64, FieldElement)> = Vec::new();
        for k in 0..limit {
            let (ca, cb) = (a.coeff(k), b.coeff(k));
            match (ca.is_zero(), cb.is_zero()) {
                (true, true) => continue,
                (false, false) => ratios.push((k as i64, &cb / &ca)),
                _ => return false,
            }
        }
        // ζ is determined by Bezout: Σ u_k·k + v·d = gcd = 1.
        let mut g = d as i64;
        let mut zeta = FieldElement::one();
        for (k, r) in &ratios {
            let e = ext_gcd(g, *k);
            if e.gcd == g {
                continue;
            }
            // zeta_new = zeta^x · r^y so that zeta_new = ζ^(x·g + y·k)
            let Some(lhs) = zeta.powi(e.x) else { return false };
            let Some(rhs) = r.powi(e.y) else { return false };
            zeta = &lhs * &rhs;
            g = e.gcd;
        }
        if g != 1 {
            // exponents share a factor with d; only possible for truncated jets
            return ratios.iter().all(|(_, r)| r.is_one()) || ratios.is_empty();
        }
        if !zeta.pow(d as u32).is_one() {
            return false;
        }
        ratios.iter().all(|(k, r)| zeta.pow(*k as u32) == *r)
    }
}

struct EGcd {
    gcd: i64,
    x: i64,
    y: i64,
}

fn ext_gcd(a: i64, b: i64) -> EGcd {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        EGcd { gcd: -old_r, x: -old_s, y: -old_t }
    } else {
        EGcd { gcd: old_r, x: old_s, y: old_t }
    }
}

impl fmt::Display for PuiseuxJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.ramification as usize;
        write!(f, "y = ")?;
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (n, (k, c)) in terms.iter().enumerate() {
            let negative = c.as_rational().is_some_and(|r| r.is_negative());
            let c = if negative && n > 0 { -c } else { c.clone() };
            if n > 0 {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let g = k.gcd(&d);
            let (num, den) = (k / g, d / g);
            let mono = match (num, den) {
                (1, 1) => "x".to_string(),
                (_, 1) => format!("x^{num}"),
                _ => format!("x^({num}/{den})"),
            };
            if c.is_one() {
                write!(f, "{mono}")?;
            } else if (-&c).is_one() {
                write!(f, "-{mono}")?;
            } else {
                write!(f, "{c}*{mono}")?;
            }
        }
        if !self.exact {
            let p = self.x_precision();
            if p.is_integer() {
                write!(f, " + O(x^{p})")?;
            } else {
                write!(f, " + O(x^({p}))")?;
            }
        }
        Ok(())
    }
}

/// Branch expansions of a curve germ.
#[derive(Clone, Debug)]
pub struct Expansion {
    /// `c` if the curve was sheared by `x ← x + c·y` before expanding.
    pub shear: Option<u32>,
    /// The polynomial actually expanded (after the shear).
    pub curve: BiPoly,
    /// One jet per conjugacy class of branches.
    pub jets: Vec<PuiseuxJet>,
    pub order: u32,
}

impl Expansion {
    /// Number of branches counted with conjugates.
    pub fn branch_count(&self) -> u32 {
        self.jets.iter().map(|j| j.ramification()).sum()
    }
}

/// Smallest shear `x ← x + c·y` (`c ≥ 1`) after which `f(0, y) ≢ 0`, if `x | f`.
pub fn shear_for_expansion(f: &BiPoly) -> Option<u32> {
    if !f.restrict_x_zero().is_zero() {
        return None;
    }
    let m = f.order().finite()?;
    (1..).find(|&c| {
        let g = shear_x(f, c);
        g.restrict_x_zero().order() == Some(m as usize)
    })
}

/// `f(x + c·y, y)`.
pub fn shear_x(f: &BiPoly, c: u32) -> BiPoly {
    let xs = BiPoly::x().add(&BiPoly::y().scale(&FieldElement::from_int(c as i64)));
    f.substitute(&xs, &BiPoly::y())
}

/// Newton–Puiseux expansion of the branches of `f` through the origin, each
/// known modulo `x^order`.
pub fn newton_puiseux_expand(f: &BiPoly, order: u32) -> Result<Expansion> {
    if f.is_zero() {
        return Err(Error::InvalidInput("zero curve".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let shear = shear_for_expansion(f);
    let curve = match shear {
        Some(c) => shear_x(f, c),
        None => f.clone(),
    };
    let mut jets = Vec::new();
    let state = Stage { g: curve.clone(), d: 1, head: Vec::new(), tail_exp: 0 };
    expand_stage(state, order, 0, &mut jets)?;
    Ok(Expansion { shear, curve, jets, order })
}

/// `y = Σ head + t^tail_exp · w`, `x = t^d`, with `g(t, w)` the transformed curve.
struct Stage {
    g: BiPoly,
    d: u32,
    head: Vec<(u32, FieldElement)>,
    tail_exp: u32,
}

impl Stage {
    fn head_series(&self, prec: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(prec);
        for (e, c) in &self.head {
            s.set_coeff(*e as usize, &s.coeff(*e as usize) + c);
        }
        s
    }
}

fn expand_stage(mut st: Stage, order: u32, depth: usize, out: &mut Vec<PuiseuxJet>) -> Result<()> {
    if depth > MAX_PUISEUX_STEPS {
        return Err(Error::InvalidInput("curve is not square-free".into()));
    }
    let wmin = st.g.y_adic_order();
    if wmin > 1 {
        return Err(Error::InvalidInput("curve is not square-free".into()));
    }
    if wmin == 1 {
        // w = 0 is a branch: y equals the head exactly
        let prec = (st.d * order) as usize;
        out.push(PuiseuxJet::new(st.d, st.head_series(prec), true).canonical());
        st.g = st.g.div_monomial(0, 1).unwrap();
    }
    let polygon = newton_polygon(&st.g);
    for edge in &polygon.edges {
        let incl = &edge.inclination;
        let p = incl.numer().try_into().unwrap_or(0u32);
        let q: u32 = incl.denom().try_into().unwrap_or(1u32);
        let j_lo = edge.end.1;
        let weight = edge.start.0 * q + edge.start.1 * p;
        // Ψ(u) = Σ a_ij u^((j − j_lo)/q) over the edge
        let mut psi = vec![FieldElement::zero(); ((edge.start.1 - j_lo) / q + 1) as usize];
        for (&(i, j), c) in st.g.terms() {
            if i * q + j * p == weight {
                psi[((j - j_lo) / q) as usize] = c.clone();
            }
        }
        let roots = UPoly::new(psi).roots()?.into_complete()?;
        for (u, r) in roots {
            if u.is_zero() {
                continue;
            }
            let c = u.nth_root(q)?;
            let next = substitute_edge(&st, &c, p, q, weight);
            if r == 1 {
                finish_smooth(next, order, out)?;
            } else {
                expand_stage(next, order, depth + 1, out)?;
            }
        }
    }
    Ok(())
}

/// `t = t1^q`, `w = t1^p (c + w1)`, then divide by `t1^weight`.
fn substitute_edge(st: &Stage, c: &FieldElement, p: u32, q: u32, weight: u32) -> Stage {
    let max_j = st.g.degree_y().unwrap_or(0);
    let base = BiPoly::constant(c.clone()).add(&BiPoly::y());
    let mut powers = vec![BiPoly::one()];
    for k in 1..=max_j as usize {
        powers.push(powers[k - 1].mul(&base));
    }
    let mut g = BiPoly::zero();
    for (&(i, j), a) in st.g.terms() {
        let shift = i * q + j * p - weight;
        g = g.add(&powers[j as usize].mul_monomial(shift, 0).scale(a));
    }
    let mut head: Vec<(u32, FieldElement)> = st.head.iter().map(|(e, a)| (e * q, a.clone())).collect();
    let tail_exp = st.tail_exp * q + p;
    head.push((tail_exp, c.clone()));
    Stage { g, d: st.d * q, head, tail_exp }
}

/// Simple root: the rest of the branch is an implicit-function series.
fn finish_smooth(st: Stage, order: u32, out: &mut Vec<PuiseuxJet>) -> Result<()> {
    let prec = (st.d * order) as usize;
    let head = st.head_series(prec);
    let need = prec.saturating_sub(st.tail_exp as usize);
    let jet_series = if need == 0 {
        head
    } else {
        let g = &st.g;
        let phi = solve_by_order(&[FieldElement::zero()], 0, need, |w| eval_bipoly(g, &TruncatedSeries::var(w.prec()), w))?;
        head.add(&phi.shift_up(st.tail_exp as usize))
    };
    let exact = false;
    out.push(PuiseuxJet::new(st.d, jet_series, exact).canonical());
    Ok(())
}

/// Least common multiple of the branch ramification indices (1 if empty).
pub fn ramification_exponent(jets: &[PuiseuxJet]) -> u32 {
    jets.iter().fold(1u32, |acc, j| acc.lcm(&j.ramification()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ts: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(ts)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn polygon_examples() {
        let np = newton_polygon(&p(&[(1, 0, 2), (-1, 3, 0)]));
        assert_eq!(np.vertices, vec![(0, 2), (3, 0)]);
        assert_eq!(np.edges.len(), 1);
        assert_eq!(np.edges[0].inclination, r(3, 2));

        let np = newton_polygon(&p(&[(1, 0, 2), (-1, 6, 0)]));
        assert_eq!(np.edges[0].inclination, r(3, 1));

        // x + y: the two-point support of a smooth transversal line
        let np = newton_polygon(&p(&[(1, 1, 0), (1, 0, 1)]));
        assert_eq!(np.vertices, vec![(0, 1), (1, 0)]);
        assert_eq!(np.edges[0].inclination, r(1, 1));

        // xy alone has a single vertex and no compact edge
        let np = newton_polygon(&p(&[(1, 1, 1)]));
        assert_eq!(np.vertices, vec![(1, 1)]);
        assert!(np.edges.is_empty());
    }

    #[test]
    fn polygon_skips_interior_points() {
        // y^3 + x y + x^3 : (0,3) -> (1,1) -> (3,0)
        let np = newton_polygon(&p(&[(1, 0, 3), (1, 1, 1), (1, 3, 0), (1, 2, 2)]));
        assert_eq!(np.vertices, vec![(0, 3), (1, 1), (3, 0)]);
        assert_eq!(np.edges[0].inclination, r(1, 2));
        assert_eq!(np.edges[1].inclination, r(2, 1));
    }

    #[test]
    fn cusp_expansion() {
        let e = newton_puiseux_expand(&p(&[(1, 0, 2), (-1, 3, 0)]), 5).unwrap();
        assert_eq!(e.jets.len(), 1);
        let j = &e.jets[0];
        assert_eq!(j.ramification(), 2);
        assert_eq!(j.terms(), vec![(3, FieldElement::one())]);
    }

    #[test]
    fn two_lines() {
        let e = newton_puiseux_expand(&p(&[(1, 0, 2), (-3, 1, 1), (2, 2, 0)]), 3).unwrap();
        let mut lead: Vec<_> = e.jets.iter().map(|j| (j.ramification(), j.series().coeff(1))).collect();
        lead.sort();
        assert_eq!(lead, vec![(1, FieldElement::from_int(1)), (1, FieldElement::from_int(2))]);
        for j in &e.jets {
            assert!(j.series().coeffs().iter().skip(2).all(FieldElement::is_zero));
        }
    }

    #[test]
    fn y_cubed_minus_x_squared() {
        let e = newton_puiseux_expand(&p(&[(1, 0, 3), (-1, 2, 0)]), 5).unwrap();
        assert_eq!(e.jets.len(), 1);
        assert_eq!(e.jets[0].ramification(), 3);
        assert_eq!(e.jets[0].terms(), vec![(2, FieldElement::one())]);
    }

    #[test]
    fn exponent_lcm() {
        let cusp = newton_puiseux_expand(&p(&[(1, 0, 2), (-1, 3, 0)]), 4).unwrap();
        assert_eq!(ramification_exponent(&cusp.jets), 2);
        let lines = newton_puiseux_expand(&p(&[(1, 0, 2), (-3, 1, 1), (2, 2, 0)]), 4).unwrap();
        assert_eq!(ramification_exponent(&lines.jets), 1);
        let mixed = newton_puiseux_expand(&p(&[(1, 0, 2), (-1, 3, 0)]).mul(&p(&[(1, 0, 3), (-1, 5, 0)])), 4).unwrap();
        assert_eq!(ramification_exponent(&mixed.jets), 6);
    }

    #[test]
    fn branch_with_irrational_coefficient() {
        // y^2 − 2x^3: y = √2 x^{3/2}
        let f = p(&[(1, 0, 2), (-2, 3, 0)]);
        let e = newton_puiseux_expand(&f, 6).unwrap();
        assert_eq!(e.jets.len(), 1);
        let res = e.jets[0].curve_residual(&f);
        assert!(res.is_zero());
    }

    #[test]
    fn residuals_vanish_and_branches_count() {
        // (y^2 − x^3)(y − x) + x^5 y, not a product of simple factors
        let f = p(&[(1, 0, 2), (-1, 3, 0)]).mul(&p(&[(1, 0, 1), (-1, 1, 0)])).add(&p(&[(1, 5, 1)]));
        let e = newton_puiseux_expand(&f, 8).unwrap();
        assert_eq!(e.branch_count(), 3);
        for j in &e.jets {
            assert!(j.curve_residual(&f).is_zero(), "{j}");
        }
    }

    #[test]
    fn shear_for_vertical_branch() {
        // x (y − x^2): x | f
        let f = p(&[(1, 1, 1), (-1, 3, 0)]);
        let e = newton_puiseux_expand(&f, 4).unwrap();
        assert_eq!(e.shear, Some(1));
        assert_eq!(e.branch_count(), 2);
        for j in &e.jets {
            assert!(j.curve_residual(&e.curve).is_zero());
        }
    }

    #[test]
    fn conjugate_matching() {
        let a = PuiseuxJet::new(
            2,
            TruncatedSeries::new(
                vec![FieldElement::zero(), FieldElement::zero(), FieldElement::zero(), FieldElement::one(), FieldElement::from_int(5)],
                10,
            ),
            false,
        );
        let b = a.rotated(&FieldElement::from_int(-1));
        assert!(a.matches_up_to_conjugation(&b, 5));
        let c = PuiseuxJet::new(
            2,
            TruncatedSeries::new(
                vec![FieldElement::zero(), FieldElement::zero(), FieldElement::zero(), FieldElement::one(), FieldElement::from_int(-5)],
                10,
            ),
            false,
        );
        assert!(!a.matches_up_to_conjugation(&c, 5));
    }
}
