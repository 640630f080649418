//! Towers of at most two quadratic extensions over `ℚ(i)`.
//!
//! A field of depth `k` is `ℚ(i)(α₁,…,α_k)` with `α_j² = r_j`, where `r_j`
//! lies in the field of depth `j − 1` and is not a square there. Elements are
//! coordinate vectors of length `2^k` over the power basis, laid out
//! recursively as `lo ++ hi` meaning `lo + hi·α_k`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num::rational::BigRational;
use once_cell::sync::Lazy;

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

pub const MAX_TOWER_DEPTH: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    radicands: Vec<Vec<GaussianRational>>,
}

static BASE: Lazy<Arc<NumberField>> = Lazy::new(|| Arc::new(NumberField { radicands: Vec::new() }));

impl NumberField {
    /// `ℚ(i)`.
    pub fn base() -> Arc<NumberField> {
        BASE.clone()
    }

    pub fn depth(&self) -> usize {
        self.radicands.len()
    }

    /// Degree over `ℚ(i)`.
    pub fn degree(&self) -> usize {
        1 << self.depth()
    }

    /// Radicand `r_j` of the `j`-th generator, as an element of the field below it.
    pub fn radicand(self: &Arc<Self>, j: usize) -> FieldElement {
        let below = self.prefix(j);
        FieldElement { field: below, coords: self.radicands[j].clone() }
    }

    /// The subfield generated by the first `depth` generators.
    pub fn prefix(self: &Arc<Self>, depth: usize) -> Arc<NumberField> {
        if depth == self.depth() {
            self.clone()
        } else if depth == 0 {
            NumberField::base()
        } else {
            Arc::new(NumberField { radicands: self.radicands[..depth].to_vec() })
        }
    }

    pub fn is_subfield_of(&self, other: &NumberField) -> bool {
        self.depth() <= other.depth() && other.radicands[..self.depth()] == self.radicands[..]
    }

    /// The `j`-th generator `α_{j+1}` as an element of this field.
    pub fn generator(self: &Arc<Self>, j: usize) -> FieldElement {
        let below = 1usize << j;
        let mut coords = vec![GaussianRational::zero(); 2 * below];
        coords[below] = GaussianRational::one();
        FieldElement { field: self.prefix(j + 1), coords }.lift_to(self).expect("prefix")
    }

    fn extended(self: &Arc<Self>, radicand: &FieldElement) -> Result<Arc<NumberField>> {
        if self.depth() >= MAX_TOWER_DEPTH {
            return Err(Error::TowerDepthExceeded);
        }
        let r = radicand.lift_to(self)?;
        let mut radicands = self.radicands.clone();
        radicands.push(r.coords);
        Ok(Arc::new(NumberField { radicands }))
    }

    /// The smallest field among `self` and `other` containing both, if one
    /// contains the other.
    pub fn join(a: &Arc<NumberField>, b: &Arc<NumberField>) -> Option<Arc<NumberField>> {
        if a.is_subfield_of(b) {
            Some(b.clone())
        } else if b.is_subfield_of(a) {
            Some(a.clone())
        } else {
            None
        }
    }

    /// Complex approximations of the generators (principal square roots);
    /// presentation only.
    pub fn generator_approximations(&self) -> Vec<num::complex::Complex64> {
        let mut gens: Vec<num::complex::Complex64> = Vec::new();
        for r in &self.radicands {
            let v = approx_coords(r, &gens);
            gens.push(v.sqrt());
        }
        gens
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(i")?;
        let arc = Arc::new(self.clone());
        for j in 0..self.depth() {
            write!(f, ", sqrt({})", arc.radicand(j))?;
        }
        write!(f, ")")
    }
}

fn approx_coords(coords: &[GaussianRational], gens: &[num::complex::Complex64]) -> num::complex::Complex64 {
    if coords.len() == 1 {
        return coords[0].to_complex_f64();
    }
    let half = coords.len() / 2;
    let level = half.trailing_zeros() as usize;
    approx_coords(&coords[..half], gens) + approx_coords(&coords[half..], gens) * gens[level]
}

/// An element of a [`NumberField`].
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<GaussianRational>,
}

// Coordinate kernels. `level` is the tower depth of the slices.

fn add_c(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_c(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn mul_c(f: &NumberField, level: usize, a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    if level == 0 {
        return vec![&a[0] * &b[0]];
    }
    let h = a.len() / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let r = &f.radicands[level - 1];
    let a0b0 = mul_c(f, level - 1, a0, b0);
    let a1b1 = mul_c(f, level - 1, a1, b1);
    let lo = add_c(&a0b0, &mul_c(f, level - 1, &a1b1, r));
    let hi = add_c(&mul_c(f, level - 1, a0, b1), &mul_c(f, level - 1, a1, b0));
    let mut out = lo;
    out.extend(hi);
    out
}

fn is_zero_c(a: &[GaussianRational]) -> bool {
    a.iter().all(GaussianRational::is_zero)
}

fn inv_c(f: &NumberField, level: usize, a: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    if level == 0 {
        return a[0].inv().map(|x| vec![x]);
    }
    let h = a.len() / 2;
    let (a0, a1) = a.split_at(h);
    let r = &f.radicands[level - 1];
    // (a0 + a1 α)^{-1} = (a0 − a1 α) / (a0² − a1² r)
    let norm = sub_c(&mul_c(f, level - 1, a0, a0), &mul_c(f, level - 1, &mul_c(f, level - 1, a1, a1), r));
    let ninv = inv_c(f, level - 1, &norm)?;
    let mut out = mul_c(f, level - 1, a0, &ninv);
    let neg_a1: Vec<_> = a1.iter().map(|x| -x).collect();
    out.extend(mul_c(f, level - 1, &neg_a1, &ninv));
    Some(out)
}

fn sqrt_c(f: &NumberField, level: usize, a: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    if level == 0 {
        return a[0].sqrt().map(|x| vec![x]);
    }
    let h = a.len() / 2;
    let (a0, a1) = a.split_at(h);
    let r = &f.radicands[level - 1];
    let zeros = vec![GaussianRational::zero(); h];
    let check = |cand: Vec<GaussianRational>| -> Option<Vec<GaussianRational>> { (mul_c(f, level, &cand, &cand) == a).then_some(cand) };
    if is_zero_c(a1) {
        // sqrt(a0) in the field below, or sqrt(a0 / r)·α
        if let Some(s) = sqrt_c(f, level - 1, a0) {
            let mut c = s;
            c.extend(zeros.iter().cloned());
            if let Some(ok) = check(c) {
                return Some(ok);
            }
        }
        let rinv = inv_c(f, level - 1, r)?;
        let q = mul_c(f, level - 1, a0, &rinv);
        let s = sqrt_c(f, level - 1, &q)?;
        let mut c = zeros;
        c.extend(s);
        return check(c);
    }
    // (c + e α)² = a0 + a1 α: c² + e² r = a0, 2 c e = a1.
    let norm = sub_c(&mul_c(f, level - 1, a0, a0), &mul_c(f, level - 1, &mul_c(f, level - 1, a1, a1), r));
    let n = sqrt_c(f, level - 1, &norm)?;
    let half = vec![GaussianRational::from_ratio(1, 2)];
    let half = lift_c(&half, h);
    for sign in [1i64, -1] {
        let sn: Vec<_> = n.iter().map(|x| x * &GaussianRational::from_int(sign)).collect();
        let c2 = mul_c(f, level - 1, &add_c(a0, &sn), &half);
        if is_zero_c(&c2) {
            continue;
        }
        if let Some(c) = sqrt_c(f, level - 1, &c2) {
            let two_c: Vec<_> = c.iter().map(|x| x * &GaussianRational::from_int(2)).collect();
            let e = mul_c(f, level - 1, a1, &inv_c(f, level - 1, &two_c)?);
            let mut cand = c;
            cand.extend(e);
            if let Some(ok) = check(cand) {
                return Some(ok);
            }
        }
    }
    None
}

fn lift_c(a: &[GaussianRational], len: usize) -> Vec<GaussianRational> {
    let mut v = a.to_vec();
    v.resize(len, GaussianRational::zero());
    v
}

impl FieldElement {
    pub fn from_gaussian(g: GaussianRational) -> Self {
        FieldElement { field: NumberField::base(), coords: vec![g] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_ratio(n, d))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_gaussian(GaussianRational::from_rational(r))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    pub fn from_coords(field: Arc<NumberField>, coords: Vec<GaussianRational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::InvalidInput("coordinate vector has wrong length".into()));
        }
        Ok(FieldElement { field, coords })
    }

    pub fn is_zero(&self) -> bool {
        is_zero_c(&self.coords)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && is_zero_c(&self.coords[1..])
    }

    /// The value in `ℚ(i)` if the element lies there.
    pub fn as_gaussian(&self) -> Option<&GaussianRational> {
        is_zero_c(&self.coords[1..]).then(|| &self.coords[0])
    }

    /// The value in `ℚ` if the element is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.as_gaussian().filter(|g| g.is_rational()).map(|g| &g.re)
    }

    /// Embeds into `target`, which must contain this element's field.
    pub fn lift_to(&self, target: &Arc<NumberField>) -> Result<Self> {
        if Arc::ptr_eq(&self.field, target) {
            return Ok(self.clone());
        }
        if self.field.is_subfield_of(target) {
            return Ok(FieldElement { field: target.clone(), coords: lift_c(&self.coords, target.degree()) });
        }
        let s = self.simplified();
        if s.field.is_subfield_of(target) {
            return Ok(FieldElement { field: target.clone(), coords: lift_c(&s.coords, target.degree()) });
        }
        Err(Error::IncompatibleFields)
    }

    /// Drops trailing generators the element does not use.
    pub fn simplified(&self) -> Self {
        let mut coords = self.coords.clone();
        let mut depth = self.field.depth();
        while depth > 0 && is_zero_c(&coords[coords.len() / 2..]) {
            coords.truncate(coords.len() / 2);
            depth -= 1;
        }
        FieldElement { field: self.field.prefix(depth), coords }
    }

    /// Brings two elements into a common field.
    pub fn unify(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if let Some(f) = NumberField::join(&a.field, &b.field) {
            return Ok((a.lift_to(&f)?, b.lift_to(&f)?));
        }
        let (sa, sb) = (a.simplified(), b.simplified());
        let f = NumberField::join(&sa.field, &sb.field).ok_or(Error::IncompatibleFields)?;
        Ok((sa.lift_to(&f)?, sb.lift_to(&f)?))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, o)?;
        Ok(FieldElement { coords: add_c(&a.coords, &b.coords), field: a.field })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, o)?;
        Ok(FieldElement { coords: sub_c(&a.coords, &b.coords), field: a.field })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let (a, b) = Self::unify(self, o)?;
        let coords = mul_c(&a.field, a.field.depth(), &a.coords, &b.coords);
        Ok(FieldElement { coords, field: a.field })
    }

    pub fn inv(&self) -> Option<Self> {
        inv_c(&self.field, self.field.depth(), &self.coords).map(|coords| FieldElement { field: self.field.clone(), coords })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero elements.
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|x| x.pow((-e) as u32))
        }
    }

    /// Square root inside the element's own field.
    pub fn sqrt(&self) -> Option<Self> {
        sqrt_c(&self.field, self.field.depth(), &self.coords).map(|coords| FieldElement { field: self.field.clone(), coords })
    }

    /// Square root, adjoining it to the tower when necessary.
    pub fn sqrt_extending(&self) -> Result<Self> {
        if let Some(s) = self.sqrt() {
            return Ok(s);
        }
        let s = self.simplified();
        if let Some(r) = s.sqrt() {
            return Ok(r);
        }
        // Try to extend the original field first so the result stays
        // compatible with its siblings, then fall back to the minimal one.
        let f = self.field.extended(self).or_else(|_| s.field.extended(&s))?;
        Ok(f.generator(f.depth() - 1))
    }

    /// A `k`-th root, adjoining square roots where necessary. Odd prime
    /// factors of `k` are only taken inside the current field.
    pub fn nth_root(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("zeroth root".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut k = k;
        let mut x = self.clone();
        while k.is_multiple_of(2) {
            x = x.sqrt_extending()?;
            k /= 2;
        }
        if k == 1 {
            return Ok(x);
        }
        // odd part: search the roots of t^k − x in the current field
        let p = super::upoly::UPoly::monomial(FieldElement::one(), k as usize).sub(&super::upoly::UPoly::constant(x.clone()));
        let (roots, _) = p.roots_in_field()?;
        roots.into_iter().map(|(r, _)| r).next().ok_or(Error::unsupported(k as usize))
    }

    /// Whether the element is a positive rational number.
    pub fn is_positive_rational(&self) -> bool {
        self.as_rational().map(|r| r > &BigRational::from_integer(0.into())).unwrap_or(false)
    }

    pub fn approx(&self) -> num::complex::Complex64 {
        approx_coords(&self.coords, &self.field.generator_approximations())
    }

    /// Minimal polynomial over `ℚ(i)`, as coefficients from constant term up.
    pub fn minimal_polynomial(&self) -> Vec<GaussianRational> {
        let s = self.simplified();
        let n = s.field.degree();
        // Powers 1, x, x², … until linearly dependent over Q(i).
        let mut powers: Vec<Vec<GaussianRational>> = vec![lift_c(&[GaussianRational::one()], n)];
        for deg in 1..=n {
            let next = mul_c(&s.field, s.field.depth(), &powers[deg - 1], &s.coords);
            powers.push(next);
            if let Some(rel) = linear_relation(&powers) {
                return rel;
            }
        }
        unreachable!("degree bounded by the tower degree")
    }
}

/// Finds `c` with `Σ c_j v_j = 0`, `c_last = 1`, if the last vector depends on
/// the earlier ones (which are assumed independent).
#[allow(clippy::needless_range_loop)]
fn linear_relation(vs: &[Vec<GaussianRational>]) -> Option<Vec<GaussianRational>> {
    let m = vs.len() - 1;
    let rows = vs[0].len();
    // Solve Σ_{j<m} c_j v_j = −v_m by Gaussian elimination on the augmented matrix.
    let mut a: Vec<Vec<GaussianRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<_> = (0..m).map(|j| vs[j][r].clone()).collect();
            row.push(-&vs[m][r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for k in c..=m {
            a[r][k] = &a[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..=m {
                    let t = &f * &a[r][k];
                    a[i][k] = &a[i][k] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut c = vec![GaussianRational::zero(); m + 1];
    for (i, &pc) in pivots.iter().enumerate() {
        c[pc] = a[i][m].clone();
    }
    c[m] = GaussianRational::one();
    Some(c)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match Self::unify(self, other) {
            Ok((a, b)) => a.coords == b.coords,
            Err(_) => false,
        }
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// A deterministic total order (not compatible with any field order).
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.simplified(), other.simplified());
        a.coords.len().cmp(&b.coords.len()).then_with(|| a.coords.cmp(&b.coords))
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.simplified().coords.hash(state)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, o: &FieldElement) -> FieldElement {
                self.$try(o).expect("incompatible field towers")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, o: FieldElement) -> FieldElement {
                (&self).$method(&o)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &FieldElement) -> FieldElement {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|x| -x).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.simplified();
        if s.field.depth() == 0 {
            return write!(f, "{}", s.coords[0]);
        }
        let names = ["a", "b"];
        let mut first = true;
        write!(f, "(")?;
        for (idx, c) in s.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let gens: Vec<&str> = names.iter().enumerate().filter(|(bit, _)| idx >> bit & 1 == 1).map(|(_, n)| *n).collect();
            let gens = gens.join("*");
            let c = c.to_string();
            // complex coefficients are parenthesized, so a leading `-` is the sign
            let term = match (idx, c.as_str()) {
                (0, _) => c,
                (_, "1") => gens,
                (_, "-1") => format!("-{gens}"),
                _ => format!("{c}*{gens}"),
            };
            match (first, term.strip_prefix('-')) {
                (true, _) => write!(f, "{term}")?,
                (false, Some(rest)) => write!(f, " - {rest}")?,
                (false, None) => write!(f, " + {term}")?,
            }
            first = false;
        }
        write!(f, ")")
    }
}

/// Result of [`adjoin_root`].
#[derive(Clone, Debug)]
pub struct Adjoined {
    pub field: Arc<NumberField>,
    pub root: FieldElement,
    pub extended: bool,
}

/// Adjoins a root of the monic quadratic `t² + p·t + q`.
///
/// When the quadratic already splits, the field is returned unchanged together
/// with one of its roots.
pub fn adjoin_root(field: &Arc<NumberField>, p: &FieldElement, q: &FieldElement) -> Result<Adjoined> {
    let p = p.lift_to(field)?;
    let q = q.lift_to(field)?;
    let half_p = &p * &FieldElement::from_ratio(1, 2);
    let disc = &(&half_p * &half_p) - &q;
    if let Some(s) = disc.sqrt() {
        return Ok(Adjoined { field: field.clone(), root: &s - &half_p, extended: false });
    }
    let ext = field.extended(&disc)?;
    let alpha = ext.generator(ext.depth() - 1);
    let root = &alpha - &half_p.lift_to(&ext)?;
    Ok(Adjoined { field: ext, root, extended: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn adjoin_i_over_base_is_reducible() {
        // Q(i) already contains i.
        let a = adjoin_root(&NumberField::base(), &fe(0), &fe(1)).unwrap();
        assert!(!a.extended);
        assert_eq!(&a.root * &a.root, fe(-1));
    }

    #[test]
    fn adjoin_sqrt2() {
        let a = adjoin_root(&NumberField::base(), &fe(0), &fe(-2)).unwrap();
        assert!(a.extended);
        assert_eq!(a.field.degree(), 2);
        assert_eq!(&a.root * &a.root, fe(2));
    }

    #[test]
    fn adjoin_reducible_returns_root() {
        let a = adjoin_root(&NumberField::base(), &fe(0), &fe(-4)).unwrap();
        assert!(!a.extended);
        assert_eq!(a.field.depth(), 0);
        assert_eq!(&a.root * &a.root, fe(4));
    }

    #[test]
    fn tower_depth_is_capped() {
        let a = adjoin_root(&NumberField::base(), &fe(0), &fe(-2)).unwrap();
        let b = adjoin_root(&a.field, &fe(0), &fe(-3)).unwrap();
        assert_eq!(b.field.degree(), 4);
        let c = adjoin_root(&b.field, &fe(0), &fe(-5));
        assert_eq!(c.unwrap_err(), Error::TowerDepthExceeded);
    }

    #[test]
    fn square_detection_in_tower() {
        let a = adjoin_root(&NumberField::base(), &fe(0), &fe(-2)).unwrap();
        let s2 = a.root.clone();
        // 3 + 2√2 = (1 + √2)²
        let x = &fe(3) + &(&fe(2) * &s2);
        let r = x.sqrt().expect("square");
        assert_eq!(&r * &r, x);
        // √2 itself is not a square in Q(i, √2)
        assert!(s2.sqrt().is_none());
        // 2 = (√2)², −2 = (i√2)²
        assert!(fe(-2).lift_to(&a.field).unwrap().sqrt().is_some());
    }

    #[test]
    fn inversion_in_degree_four() {
        let a = adjoin_root(&NumberField::base(), &fe(0), &fe(-2)).unwrap();
        let b = adjoin_root(&a.field, &fe(0), &fe(-3)).unwrap();
        let x = &(&a.root + &b.root) + &fe(1);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, fe(1));
    }

    #[test]
    fn minimal_polynomial_of_sqrt2_plus_sqrt3() {
        let a = adjoin_root(&NumberField::base(), &fe(0), &fe(-2)).unwrap();
        let b = adjoin_root(&a.field, &fe(0), &fe(-3)).unwrap();
        let x = &a.root.lift_to(&b.field).unwrap() + &b.root;
        // t^4 − 10 t^2 + 1
        let mp = x.minimal_polynomial();
        let expect: Vec<_> = [1, 0, -10, 0, 1].iter().map(|&n| GaussianRational::from_int(n)).collect();
        assert_eq!(mp, expect);
        assert!((x.approx().re - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn nth_root_cases() {
        let r = fe(8).nth_root(3).unwrap();
        assert_eq!(r.pow(3), fe(8));
        let r = fe(4).nth_root(4).unwrap();
        assert_eq!(r.pow(4), fe(4));
        assert!(matches!(fe(2).nth_root(3), Err(Error::UnsupportedExtensionDegree { .. })));
    }
}
