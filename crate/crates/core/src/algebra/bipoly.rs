//! Sparse bivariate polynomials in `x, y` over a field tower.

use std::collections::BTreeMap;
use std::fmt;

use super::field::FieldElement;
use super::upoly::UPoly;
use crate::error::Result;

/// Order (lowest total degree) of a polynomial. The zero polynomial has
/// [`Order::Infinite`], which never takes part in arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

/// Exponent pair `(i, j)` for the monomial `x^i y^j`.
pub type Exp = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exp, FieldElement>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: FieldElement) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        BiPoly::constant(FieldElement::one())
    }

    pub fn monomial(c: FieldElement, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn x() -> Self {
        BiPoly::monomial(FieldElement::one(), 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(FieldElement::one(), 0, 1)
    }

    /// Builds from `(coefficient, i, j)` triples with integer coefficients.
    pub fn from_int_terms(ts: &[(i64, u32, u32)]) -> Self {
        BiPoly::from_terms(ts.iter().map(|&(c, i, j)| ((i, j), FieldElement::from_int(c))))
    }

    pub fn from_terms(ts: impl IntoIterator<Item = (Exp, FieldElement)>) -> Self {
        let mut p = BiPoly::zero();
        for (e, c) in ts {
            p.add_term(e, &c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.get(&e) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &FieldElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(0, 0)
    }

    pub fn order(&self) -> Order {
        self.terms.keys().map(|&(i, j)| i + j).min().map_or(Order::Infinite, Order::Finite)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Largest `k` such that `x^k` divides (zero for the zero polynomial).
    pub fn x_adic_order(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).min().unwrap_or(0)
    }

    pub fn y_adic_order(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).min().unwrap_or(0)
    }

    pub fn homogeneous_part(&self, deg: u32) -> BiPoly {
        BiPoly { terms: self.terms.iter().filter(|(&(i, j), _)| i + j == deg).map(|(e, c)| (*e, c.clone())).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        if k.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                out.add_term((i1 + i2, j1 + j2), &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a + i, b + j), c.clone())).collect() }
    }

    /// Exact division by `x^i y^j`; `None` if it does not divide.
    pub fn div_monomial(&self, i: u32, j: u32) -> Option<Self> {
        if self.terms.keys().any(|&(a, b)| a < i || b < j) {
            return None;
        }
        Some(BiPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a - i, b - j), c.clone())).collect() })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn dx(&self) -> Self {
        BiPoly::from_terms(
            self.terms.iter().filter(|(&(i, _), _)| i > 0).map(|(&(i, j), c)| ((i - 1, j), c * &FieldElement::from_int(i as i64))),
        )
    }

    pub fn dy(&self) -> Self {
        BiPoly::from_terms(
            self.terms.iter().filter(|(&(_, j), _)| j > 0).map(|(&(i, j), c)| ((i, j - 1), c * &FieldElement::from_int(j as i64))),
        )
    }

    /// Applies a map on exponents to every monomial.
    pub fn map_exponents(&self, f: impl Fn(u32, u32) -> Exp) -> Self {
        BiPoly::from_terms(self.terms.iter().map(|(&(i, j), c)| (f(i, j), c.clone())))
    }

    /// `p(y, x)`.
    pub fn swap(&self) -> Self {
        self.map_exponents(|i, j| (j, i))
    }

    /// `p(x^d, y)`.
    pub fn ramify(&self, d: u32) -> Self {
        self.map_exponents(|i, j| (i * d, j))
    }

    /// `p(x, x·t)`: the total transform in the x-chart of a blow-up.
    pub fn x_chart(&self) -> Self {
        self.map_exponents(|i, j| (i + j, j))
    }

    /// `p(s·y, y)`: the total transform in the y-chart.
    pub fn y_chart(&self) -> Self {
        self.map_exponents(|i, j| (i, i + j))
    }

    /// `p(X(x, y), Y(x, y))`.
    pub fn substitute(&self, xs: &BiPoly, ys: &BiPoly) -> Self {
        let max_i = self.degree_x().unwrap_or(0) as usize;
        let max_j = self.degree_y().unwrap_or(0) as usize;
        let mut xp = vec![BiPoly::one()];
        for k in 1..=max_i {
            xp.push(xp[k - 1].mul(xs));
        }
        let mut yp = vec![BiPoly::one()];
        for k in 1..=max_j {
            yp.push(yp[k - 1].mul(ys));
        }
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out = out.add(&xp[i as usize].mul(&yp[j as usize]).scale(c));
        }
        out
    }

    /// `p(x + cx, y + cy)`.
    pub fn translate(&self, cx: &FieldElement, cy: &FieldElement) -> Self {
        if cx.is_zero() && cy.is_zero() {
            return self.clone();
        }
        let xs = BiPoly::x().add(&BiPoly::constant(cx.clone()));
        let ys = BiPoly::y().add(&BiPoly::constant(cy.clone()));
        self.substitute(&xs, &ys)
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&(c * &x.pow(i)) * &y.pow(j));
        }
        acc
    }

    /// `p(0, t)` as a univariate polynomial in `t`.
    pub fn restrict_x_zero(&self) -> UPoly {
        univariate(self.terms.iter().filter(|(&(i, _), _)| i == 0).map(|(&(_, j), c)| (j, c)))
    }

    /// `p(t, 0)` as a univariate polynomial in `t`.
    pub fn restrict_y_zero(&self) -> UPoly {
        univariate(self.terms.iter().filter(|(&(_, j), _)| j == 0).map(|(&(i, _), c)| (i, c)))
    }

    /// Embeds a univariate polynomial as a polynomial in `x`.
    pub fn from_upoly_x(p: &UPoly) -> Self {
        BiPoly::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| ((k as u32, 0), c.clone())))
    }

    pub fn from_upoly_y(p: &UPoly) -> Self {
        BiPoly::from_upoly_x(p).swap()
    }

    /// Coefficients as a polynomial in `y` over `K[x]`.
    fn y_major(&self) -> Vec<UPoly> {
        let dy = self.degree_y().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<FieldElement>> = vec![Vec::new(); dy];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, FieldElement::zero());
            }
            row[i as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    fn from_y_major(rows: &[UPoly]) -> Self {
        let mut out = BiPoly::zero();
        for (j, row) in rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                out.add_term((i as u32, j as u32), c);
            }
        }
        out
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        let dm = d.y_major();
        let dl = dm.last().unwrap().clone();
        let ddeg = dm.len() - 1;
        let mut r = self.y_major();
        trim_rows(&mut r);
        let mut q: Vec<UPoly> = vec![UPoly::zero(); r.len().saturating_sub(ddeg).max(1)];
        while !r.is_empty() && r.len() > ddeg {
            let k = r.len() - 1 - ddeg;
            let c = r.last().unwrap().div_exact(&dl)?;
            for (j, dc) in dm.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
            trim_rows(&mut r);
        }
        if !r.is_empty() {
            return None;
        }
        Some(BiPoly::from_y_major(&q))
    }

    /// Scales so that the coefficient of the largest monomial is 1.
    pub fn normalized(&self) -> BiPoly {
        match self.terms.values().next_back() {
            Some(lc) => self.scale(&lc.inv().unwrap()),
            None => BiPoly::zero(),
        }
    }

    /// Normalized greatest common divisor.
    pub fn gcd(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let (ca, pa) = content_and_primitive(&self.y_major());
        let (cb, pb) = content_and_primitive(&o.y_major());
        let content = ca.gcd(&cb);
        let mut a = pa;
        let mut b = pb;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() && b.len() > 1 {
            let r = pseudo_remainder(&a, &b);
            a = b;
            b = content_and_primitive(&r).1;
        }
        // `b` is now zero (gcd = a) or a nonzero constant-in-y (gcd = 1)
        let prim = if b.is_empty() { a } else { vec![UPoly::from_ints(&[1])] };
        let (_, prim) = content_and_primitive(&prim);
        let g = BiPoly::from_y_major(&prim).mul(&BiPoly::from_upoly_x(&content));
        g.normalized()
    }

    /// Whether every coefficient lies in `ℚ(i)`.
    pub fn is_over_base(&self) -> bool {
        self.terms.values().all(|c| c.as_gaussian().is_some())
    }

    /// Largest field among the coefficients, failing on incompatible towers.
    pub fn coefficient_field(&self) -> Result<std::sync::Arc<super::field::NumberField>> {
        let mut f = super::field::NumberField::base();
        for c in self.terms.values() {
            let cf = c.simplified().field().clone();
            f = super::field::NumberField::join(&f, &cf).ok_or(crate::error::Error::IncompatibleFields)?;
        }
        Ok(f)
    }

    /// Formats with the given variable names, in the input grammar.
    pub fn display_with(&self, xv: &str, yv: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // highest total degree first, then by x-degree descending
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|e| std::cmp::Reverse((e.0 + e.1, e.0)));
        for (n, e) in keys.iter().enumerate() {
            let c = &self.terms[e];
            let (neg, mag) = match c.as_rational() {
                Some(r) if r < &num::rational::BigRational::from_integer(0.into()) => (true, -c),
                _ => (false, c.clone()),
            };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_str(e.0, e.1, xv, yv);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

fn monomial_str(i: u32, j: u32, xv: &str, yv: &str) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    match (part(xv, i), part(yv, j)) {
        (a, b) if a.is_empty() => b,
        (a, b) if b.is_empty() => a,
        (a, b) => format!("{a}*{b}"),
    }
}

fn univariate<'a>(it: impl Iterator<Item = (u32, &'a FieldElement)>) -> UPoly {
    let mut v: Vec<FieldElement> = Vec::new();
    for (k, c) in it {
        if v.len() <= k as usize {
            v.resize(k as usize + 1, FieldElement::zero());
        }
        v[k as usize] = c.clone();
    }
    UPoly::new(v)
}

fn trim_rows(r: &mut Vec<UPoly>) {
    while r.last().is_some_and(UPoly::is_zero) {
        r.pop();
    }
}

fn content_and_primitive(rows: &[UPoly]) -> (UPoly, Vec<UPoly>) {
    let mut rows = rows.to_vec();
    trim_rows(&mut rows);
    let content = rows.iter().fold(UPoly::zero(), |g, r| g.gcd(r));
    if content.is_zero() {
        return (content, rows);
    }
    let prim = rows.iter().map(|r| r.div_exact(&content).unwrap()).collect();
    (content, prim)
}

/// `lc(b)^(deg a − deg b + 1) · a mod b` over `K[x][y]`.
fn pseudo_remainder(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    trim_rows(&mut r);
    while !r.is_empty() && r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for row in r.iter_mut() {
            *row = row.mul(&lb);
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] = r[k + j].sub(&lr.mul(bc));
        }
        trim_rows(&mut r);
    }
    r
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x", "y"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ts: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(ts)
    }

    #[test]
    fn translate_examples() {
        let one = FieldElement::one();
        let zero = FieldElement::zero();
        assert_eq!(p(&[(1, 2, 0)]).translate(&one, &zero), p(&[(1, 2, 0), (2, 1, 0), (1, 0, 0)]));
        let q = p(&[(3, 2, 1), (-1, 0, 3)]);
        assert_eq!(q.translate(&zero, &zero), q);
        assert_eq!(p(&[(1, 1, 1)]).translate(&one, &one), p(&[(1, 1, 1), (1, 1, 0), (1, 0, 1), (1, 0, 0)]));
    }

    #[test]
    fn order_of_zero_is_infinite() {
        assert_eq!(BiPoly::zero().order(), Order::Infinite);
        assert_eq!(p(&[(1, 2, 0), (1, 0, 3)]).order(), Order::Finite(2));
    }

    #[test]
    fn gcd_and_exact_division() {
        // (x + y)(x − y^2) and (x + y)(y + 1)
        let g = p(&[(1, 1, 0), (1, 0, 1)]);
        let a = g.mul(&p(&[(1, 1, 0), (-1, 0, 2)]));
        let b = g.mul(&p(&[(1, 0, 1), (1, 0, 0)]));
        let d = a.gcd(&b);
        assert_eq!(d, g.normalized());
        assert_eq!(a.div_exact(&d).unwrap().mul(&d), a);
        assert!(p(&[(1, 1, 0)]).div_exact(&p(&[(1, 0, 1)])).is_none());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = p(&[(-3, 2, 0), (2, 0, 1)]);
        let b = p(&[(2, 0, 1)]);
        assert_eq!(a.gcd(&b), BiPoly::one());
        assert_eq!(BiPoly::zero().gcd(&p(&[(5, 1, 0)])), p(&[(1, 1, 0)]));
    }

    #[test]
    fn monomial_gcd() {
        let a = p(&[(3, 2, 1)]);
        let b = p(&[(-1, 3, 0)]);
        assert_eq!(a.gcd(&b), p(&[(1, 2, 0)]));
    }

    #[test]
    fn charts() {
        let f = p(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(f.x_chart(), p(&[(1, 2, 2), (-1, 3, 0)]));
        assert_eq!(f.y_chart(), p(&[(1, 0, 2), (-1, 3, 3)]));
    }

    #[test]
    fn display_round_trip_shape() {
        let f = p(&[(3, 2, 0), (-2, 0, 1)]);
        assert_eq!(f.to_string(), "3*x^2 - 2*y");
    }
}
