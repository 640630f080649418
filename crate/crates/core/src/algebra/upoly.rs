//! Dense univariate polynomials over a [`FieldElement`] tower, with exact
//! Euclidean arithmetic and root finding inside the supported tower.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};

use super::field::{adjoin_root, FieldElement, NumberField};
use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

/// Coefficients from the constant term up; never has a zero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<FieldElement>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        UPoly::new(cs.iter().map(|&c| FieldElement::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        UPoly::new(vec![c])
    }

    pub fn monomial(c: FieldElement, deg: usize) -> Self {
        let mut coeffs = vec![FieldElement::zero(); deg];
        coeffs.push(c);
        UPoly::new(coeffs)
    }

    /// `t − r`.
    pub fn linear(r: &FieldElement) -> Self {
        UPoly::new(vec![-r, FieldElement::one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &FieldElement::from_int(k as i64)).collect())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => UPoly::zero(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("division by zero polynomial").inv().unwrap();
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![FieldElement::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &dl;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(FieldElement::is_zero) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free decomposition `p = c · Π s_k^k` (Yun); returns `(k, s_k)`
    /// for the nonconstant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, UPoly)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = fp.div_exact(&a).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((k, a.clone()));
            }
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// The smallest field containing all coefficients.
    pub fn coefficient_field(&self) -> Result<Arc<NumberField>> {
        let mut f = NumberField::base();
        for c in &self.coeffs {
            let cf = c.simplified().field().clone();
            f = NumberField::join(&f, &cf).ok_or(Error::IncompatibleFields)?;
        }
        Ok(f)
    }

    /// Roots lying in the coefficient field (no extension), with
    /// multiplicities, plus the degree left unresolved.
    pub fn roots_in_field(&self) -> Result<(Vec<(FieldElement, usize)>, usize)> {
        let out = self.roots_impl(false)?;
        Ok((out.roots, out.unresolved_degree))
    }

    /// All roots, adjoining square roots as needed (up to the tower cap).
    pub fn roots(&self) -> Result<RootSet> {
        self.roots_impl(true)
    }

    fn roots_impl(&self, extend: bool) -> Result<RootSet> {
        if self.is_zero() {
            return Err(Error::InvalidInput("roots of the zero polynomial".into()));
        }
        let mut field = self.coefficient_field()?;
        let mut set = RootSet { field: field.clone(), roots: Vec::new(), unresolved_degree: 0, unresolved: Vec::new() };
        for (mult, factor) in self.squarefree_decomposition() {
            let (rs, rest) = squarefree_roots(&factor, &mut field, extend)?;
            set.roots.extend(rs.into_iter().map(|r| (r, mult)));
            for r in rest {
                set.unresolved_degree += mult * r.degree().unwrap();
                set.unresolved.push(r);
            }
        }
        set.field = field;
        Ok(set)
    }
}

/// Output of root finding.
#[derive(Clone, Debug)]
pub struct RootSet {
    /// Field containing every returned root.
    pub field: Arc<NumberField>,
    pub roots: Vec<(FieldElement, usize)>,
    /// Total degree (with multiplicity) of factors that could not be split.
    pub unresolved_degree: usize,
    pub unresolved: Vec<UPoly>,
}

impl RootSet {
    /// The policy error for unsplit factors, if any remain.
    pub fn unsupported(&self) -> Option<Error> {
        self.unresolved.iter().map(|p| p.degree().unwrap()).max().map(Error::unsupported)
    }

    /// Roots, failing with [`Error::UnsupportedExtensionDegree`] if any factor was left unsplit.
    pub fn into_complete(self) -> Result<Vec<(FieldElement, usize)>> {
        match self.unsupported() {
            Some(e) => Err(e),
            None => Ok(self.roots),
        }
    }
}

fn squarefree_roots(p: &UPoly, field: &mut Arc<NumberField>, extend: bool) -> Result<(Vec<FieldElement>, Vec<UPoly>)> {
    let mut roots = Vec::new();
    let mut rest = p.monic();
    if rest.order() == Some(1) {
        roots.push(FieldElement::zero());
        rest = rest.div_exact(&UPoly::from_ints(&[0, 1])).unwrap();
    }
    if rest.degree().unwrap_or(0) >= 3 {
        let mut found = gaussian_rational_roots(&rest);
        found.sort();
        for r in found {
            rest = rest.div_exact(&UPoly::linear(&r)).expect("verified root");
            roots.push(r);
        }
    }
    let pieces = match rest.degree() {
        Some(4) => split_quartic(&rest).map_or_else(|| vec![rest], |(f, g)| vec![f, g]),
        _ => vec![rest],
    };
    let mut unresolved = Vec::new();
    for piece in pieces {
        match piece.degree() {
            Some(1) => roots.push(-&piece.coeff(0)),
            Some(2) => match quadratic_roots(&piece, field, extend)? {
                Some(pair) => roots.extend(pair),
                None => unresolved.push(piece),
            },
            Some(d) if d >= 3 => unresolved.push(piece),
            _ => {}
        }
    }
    Ok((roots, unresolved))
}

/// Both roots of a monic quadratic, adjoining a square root when `extend`;
/// `None` when that is not allowed or the tower is full.
fn quadratic_roots(q: &UPoly, field: &mut Arc<NumberField>, extend: bool) -> Result<Option<Vec<FieldElement>>> {
    let (b, c) = (q.coeff(1), q.coeff(0));
    let target = if extend { field.clone() } else { q.coefficient_field()? };
    match adjoin_root(&target, &b, &c) {
        Ok(adj) if !adj.extended || extend => {
            let other = &(-&b.lift_to(&adj.field)?) - &adj.root;
            let mut pair = vec![adj.root, other];
            if adj.extended {
                *field = adj.field;
            } else {
                pair.sort();
            }
            Ok(Some(pair))
        }
        Ok(_) | Err(Error::TowerDepthExceeded) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `p(t + h)`.
fn shift(p: &UPoly, h: &FieldElement) -> UPoly {
    let step = UPoly::linear(&-h);
    p.coeffs().iter().rev().fold(UPoly::zero(), |acc, c| acc.mul(&step).add(&UPoly::constant(c.clone())))
}

/// Splits a monic quartic over `ℚ(i)` without roots there into two monic
/// quadratics over `ℚ(i)`, if possible (Ferrari's resolvent).
fn split_quartic(p: &UPoly) -> Option<(UPoly, UPoly)> {
    p.coeffs().iter().all(|c| c.as_gaussian().is_some()).then_some(())?;
    let h = &p.coeff(3) * &FieldElement::from_ratio(1, 4);
    // depressed: s^4 + a s^2 + b s + c with t = s − h
    let q = shift(p, &-&h);
    let (a, b, c) = (q.coeff(2), q.coeff(1), q.coeff(0));
    let two = FieldElement::from_int(2);
    let half = FieldElement::from_ratio(1, 2);
    let quad = |u: &FieldElement, v: &FieldElement| UPoly::new(vec![v.clone(), u.clone(), FieldElement::one()]);
    let mut candidates = Vec::new();
    if b.is_zero() {
        // (s² − z₁)(s² − z₂) with z² + a z + c = 0
        if let Some(d) = (&(&a * &a) - &(&FieldElement::from_int(4) * &c)).sqrt() {
            let z1 = &(&-&a + &d) * &half;
            let z2 = &(&-&a - &d) * &half;
            candidates.push((quad(&FieldElement::zero(), &-&z1), quad(&FieldElement::zero(), &-&z2)));
        }
        // (s² + u s + v)(s² − u s + v) with v² = c, u² = 2v − a
        if let Some(v0) = c.sqrt() {
            for v in [v0.clone(), -&v0] {
                if let Some(u) = (&(&two * &v) - &a).sqrt() {
                    candidates.push((quad(&u, &v), quad(&-&u, &v)));
                }
            }
        }
    } else {
        // U = u² solves U³ + 2a U² + (a² − 4c) U − b² = 0
        let resolvent = UPoly::new(vec![-&(&b * &b), &(&a * &a) - &(&FieldElement::from_int(4) * &c), &two * &a, FieldElement::one()]);
        for big_u in gaussian_rational_roots(&resolvent) {
            let Some(u) = big_u.sqrt() else { continue };
            if u.is_zero() {
                continue;
            }
            let bu = &b / &u;
            let v = &(&(&a + &big_u) - &bu) * &half;
            let w = &(&(&a + &big_u) + &bu) * &half;
            candidates.push((quad(&u, &v), quad(&-&u, &w)));
        }
    }
    candidates.into_iter().map(|(f, g)| (shift(&f, &h), shift(&g, &h))).find(|(f, g)| f.mul(g) == *p)
}

/// Largest norm for which Gaussian-integer divisors are enumerated.
const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;

/// Roots in `ℚ(i)` of a monic polynomial whose coefficients lie in `ℚ(i)`.
fn gaussian_rational_roots(p: &UPoly) -> Vec<FieldElement> {
    let Some(gs) = p.coeffs().iter().map(|c| c.as_gaussian().cloned()).collect::<Option<Vec<_>>>() else {
        return Vec::new();
    };
    // clear denominators: integral coefficients (re, im) with leading lc
    let den = gs.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.denominator_lcm()));
    let ints: Vec<(BigInt, BigInt)> = gs
        .iter()
        .map(|g| {
            let re = &g.re * &num::rational::BigRational::from_integer(den.clone());
            let im = &g.im * &num::rational::BigRational::from_integer(den.clone());
            (re.to_integer(), im.to_integer())
        })
        .collect();
    let n = ints.len() - 1;
    let lc = ints[n].clone();
    // q(s) = lc^{n-1} p(s / lc) is monic with Gaussian-integer coefficients;
    // its roots are Gaussian integers dividing q(0).
    let gmul = |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0);
    let mut lc_pow = (BigInt::one(), BigInt::zero());
    for _ in 0..n.saturating_sub(1) {
        lc_pow = gmul(&lc_pow, &lc);
    }
    let q0 = gmul(&ints[0], &lc_pow);
    let rational = ints.iter().all(|c| c.1.is_zero());
    let lc_g = GaussianRational::new(
        num::rational::BigRational::from_integer(lc.0.clone()),
        num::rational::BigRational::from_integer(lc.1.clone()),
    );
    let mut out: Vec<FieldElement> = Vec::new();
    let mut test = |s: GaussianRational| {
        let z = FieldElement::from_gaussian(&s / &lc_g);
        if !out.contains(&z) && p.eval(&z).is_zero() {
            out.push(z);
        }
    };
    if q0.0.is_zero() && q0.1.is_zero() {
        test(GaussianRational::zero());
        return out;
    }
    if rational {
        let Some(c) = q0.0.abs().to_u64().filter(|&c| c <= DIVISOR_SEARCH_LIMIT) else { return out };
        for d in divisors(c) {
            for sign in [1i64, -1] {
                test(GaussianRational::from_int(sign * d as i64));
            }
        }
    }
    let norm = &q0.0 * &q0.0 + &q0.1 * &q0.1;
    let Some(nn) = norm.to_u64().filter(|&c| c <= DIVISOR_SEARCH_LIMIT) else { return out };
    for m in divisors(nn) {
        let mut u: i64 = 0;
        while (u * u) as u64 <= m {
            let rest = m - (u * u) as u64;
            let v = (rest as f64).sqrt().round() as i64;
            for v in [v - 1, v, v + 1] {
                if v >= 0 && (v * v) as u64 == rest {
                    for (su, sv) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let s = GaussianRational::new(
                            num::rational::BigRational::from_integer((su * u).into()),
                            num::rational::BigRational::from_integer((sv * v).into()),
                        );
                        test(s);
                    }
                }
            }
            u += 1;
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots_of(cs: &[i64]) -> RootSet {
        UPoly::from_ints(cs).roots().unwrap()
    }

    #[test]
    fn simple_roots() {
        let r = roots_of(&[-1, 0, 1]);
        let mut vals: Vec<_> = r.roots.iter().map(|(x, m)| (x.clone(), *m)).collect();
        vals.sort();
        assert_eq!(vals, vec![(FieldElement::from_int(-1), 1), (FieldElement::from_int(1), 1)]);
    }

    #[test]
    fn double_root_at_zero() {
        let r = roots_of(&[0, 0, 1]);
        assert_eq!(r.roots, vec![(FieldElement::zero(), 2)]);
    }

    #[test]
    fn cubic_without_rational_root_is_unsupported() {
        let r = roots_of(&[-2, 0, 0, 1]);
        assert!(r.roots.is_empty());
        assert_eq!(r.unresolved_degree, 3);
        assert!(matches!(r.unsupported(), Some(Error::UnsupportedExtensionDegree { degree: 3, .. })));
    }

    #[test]
    fn gaussian_roots_of_quartic() {
        // (t^2 + 1)(t^2 + 4)
        let r = roots_of(&[4, 0, 5, 0, 1]);
        assert_eq!(r.roots.len(), 4);
        assert_eq!(r.unresolved_degree, 0);
        for (x, _) in &r.roots {
            assert!(UPoly::from_ints(&[4, 0, 5, 0, 1]).eval(x).is_zero());
        }
    }

    #[test]
    fn quartics_split_into_quadratics() {
        // (t² − 2)(t² − 3), (t² + i)(t² − i) = t⁴ + 1, (t² + t − 1)(t² − 3t − 3)
        for cs in [[6, 0, -5, 0, 1], [1, 0, 0, 0, 1], [3, 0, -7, -2, 1]] {
            let p = UPoly::from_ints(&cs);
            let r = p.roots().unwrap();
            assert_eq!(r.unresolved_degree, 0, "{p}");
            assert_eq!(r.roots.len(), 4, "{p}");
            for (x, m) in &r.roots {
                assert_eq!(*m, 1);
                assert!(p.eval(x).is_zero(), "{p} at {x}");
            }
        }
        // irreducible over ℚ(i), and splitting it needs √2 and then ⁴√2
        let r = roots_of(&[-2, 0, 0, 0, 1]);
        assert!(matches!(r.unsupported(), Some(Error::UnsupportedExtensionDegree { degree: 4, .. })));
    }

    #[test]
    fn cubic_with_rational_root_and_quadratic_rest() {
        // (t − 2)(t^2 − 2)
        let p = UPoly::from_ints(&[4, -2, -2, 1]);
        let r = p.roots().unwrap();
        assert_eq!(r.roots.len(), 3);
        assert_eq!(r.field.degree(), 2);
        for (x, _) in &r.roots {
            assert!(p.eval(x).is_zero());
        }
    }

    #[test]
    fn squarefree_decomposition_matches() {
        // t^2 (t-1)^3 (t+2)
        let p = UPoly::from_ints(&[0, 1])
            .mul(&UPoly::from_ints(&[0, 1]))
            .mul(&UPoly::from_ints(&[-1, 1]).mul(&UPoly::from_ints(&[-1, 1])).mul(&UPoly::from_ints(&[-1, 1])))
            .mul(&UPoly::from_ints(&[2, 1]));
        let r = p.roots().unwrap();
        let mut got: Vec<_> = r.roots.iter().map(|(x, m)| (x.clone(), *m)).collect();
        got.sort();
        let mut expect = vec![(FieldElement::from_int(0), 2), (FieldElement::from_int(1), 3), (FieldElement::from_int(-2), 1)];
        expect.sort();
        assert_eq!(got, expect);
    }
}
