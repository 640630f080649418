//! Truncated power series in one variable.

use std::fmt;

use num::rational::BigRational;

use super::bipoly::BiPoly;
use super::field::FieldElement;
use crate::error::{Error, Result};

/// A power series known modulo `t^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<FieldElement>,
    prec: usize,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<FieldElement>, prec: usize) -> Self {
        coeffs.truncate(prec);
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        TruncatedSeries { coeffs, prec }
    }

    pub fn zero(prec: usize) -> Self {
        TruncatedSeries { coeffs: Vec::new(), prec }
    }

    pub fn constant(c: FieldElement, prec: usize) -> Self {
        TruncatedSeries::new(vec![c], prec)
    }

    /// `c·t^k`.
    pub fn monomial(c: FieldElement, k: usize, prec: usize) -> Self {
        let mut v = vec![FieldElement::zero(); k];
        v.push(c);
        TruncatedSeries::new(v, prec)
    }

    /// The variable `t`.
    pub fn var(prec: usize) -> Self {
        TruncatedSeries::monomial(FieldElement::one(), 1, prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: FieldElement) {
        if k >= self.prec {
            return;
        }
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, FieldElement::zero());
        }
        self.coeffs[k] = c;
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Re-truncates to a smaller precision.
    pub fn truncate(&self, prec: usize) -> Self {
        TruncatedSeries::new(self.coeffs.clone(), prec.min(self.prec))
    }

    /// Declares a larger precision; only sound for series known exactly.
    pub fn with_prec(&self, prec: usize) -> Self {
        TruncatedSeries::new(self.coeffs.clone(), prec)
    }

    /// Index of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Whether every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        TruncatedSeries::new((0..prec).map(|k| &self.coeff(k) + &o.coeff(k)).collect(), prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        TruncatedSeries::new((0..prec).map(|k| &self.coeff(k) - &o.coeff(k)).collect(), prec)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(|a| a * c).collect(), self.prec)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let mut out = vec![FieldElement::zero(); prec.min(self.coeffs.len() + o.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= out.len() {
                    break;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        TruncatedSeries::new(out, prec)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TruncatedSeries::constant(FieldElement::one(), self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &FieldElement::from_int(k as i64)).collect();
        TruncatedSeries::new(coeffs, self.prec.saturating_sub(1))
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut v = vec![FieldElement::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        TruncatedSeries::new(v, self.prec + k)
    }

    /// Divides by `t^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) || self.prec < k {
            return None;
        }
        Some(TruncatedSeries::new(self.coeffs.iter().skip(k).cloned().collect(), self.prec - k))
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeff(0).inv()?;
        let mut out = vec![c0.clone()];
        for k in 1..self.prec {
            let mut s = FieldElement::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s = &s + &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-&(&s * &c0));
        }
        Some(TruncatedSeries::new(out, self.prec))
    }

    /// `self(inner(t))`; `inner` must have positive valuation.
    pub fn compose(&self, inner: &Self) -> Self {
        debug_assert!(inner.coeff(0).is_zero());
        let prec = self.prec.min(inner.prec);
        let mut acc = TruncatedSeries::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&TruncatedSeries::constant(c.clone(), prec));
        }
        acc
    }

    /// A `k`-th root of a series with nonzero constant term, using the given
    /// root of the constant term.
    pub fn nth_root_with(&self, k: u32, root_of_constant: &FieldElement) -> Option<Self> {
        let c0 = self.coeff(0);
        let c0inv = c0.inv()?;
        let w = self.scale(&c0inv).sub(&TruncatedSeries::constant(FieldElement::one(), self.prec));
        // (1 + w)^{1/k} = Σ binom(1/k, j) w^j
        let alpha = BigRational::new(1.into(), (k as i64).into());
        let mut binom = BigRational::from_integer(1.into());
        let mut wp = TruncatedSeries::constant(FieldElement::one(), self.prec);
        let mut acc = TruncatedSeries::zero(self.prec);
        for j in 0..self.prec {
            acc = acc.add(&wp.scale(&FieldElement::from_rational(binom.clone())));
            let jr = BigRational::from_integer((j as i64).into());
            binom = binom * (&alpha - &jr) / (jr + BigRational::from_integer(1.into()));
            wp = wp.mul(&w);
        }
        Some(acc.scale(root_of_constant))
    }

    /// Given `σ = τ·v(τ)` with `v(0) ≠ 0`, returns `τ` as a series in `σ`.
    pub fn revert_scaled(v: &Self) -> Option<Self> {
        // Lagrange inversion: τ = σ·u(τ) with u = 1/v, [σ^n]τ = [z^(n−1)] u^n / n
        let prec = v.prec + 1;
        let u = v.inverse()?;
        let mut coeffs = vec![FieldElement::zero()];
        let mut un = u.clone();
        for n in 1..prec {
            coeffs.push(&un.coeff(n - 1) / &FieldElement::from_int(n as i64));
            if n + 1 < prec {
                un = un.mul(&u);
            }
        }
        Some(TruncatedSeries::new(coeffs, prec))
    }
}

/// `p(xs(t), ys(t))`.
pub fn eval_bipoly(p: &BiPoly, xs: &TruncatedSeries, ys: &TruncatedSeries) -> TruncatedSeries {
    let prec = xs.prec().min(ys.prec());
    let max_i = p.degree_x().unwrap_or(0) as usize;
    let max_j = p.degree_y().unwrap_or(0) as usize;
    let mut xp = vec![TruncatedSeries::constant(FieldElement::one(), prec)];
    for k in 1..=max_i {
        xp.push(xp[k - 1].mul(xs));
    }
    let mut yp = vec![TruncatedSeries::constant(FieldElement::one(), prec)];
    for k in 1..=max_j {
        yp.push(yp[k - 1].mul(ys));
    }
    let mut acc = TruncatedSeries::zero(prec);
    for (&(i, j), c) in p.terms() {
        acc = acc.add(&xp[i as usize].mul(&yp[j as usize]).scale(c));
    }
    acc
}

/// Solves `residual(φ) ≡ 0` coefficient by coefficient.
///
/// `fixed` holds the already-determined low coefficients of `φ`; unknown
/// coefficient `k` (for `k ≥ fixed.len()`) is read off coefficient
/// `k + shift` of the residual, which must depend affinely on it. Returns `φ`
/// known modulo `t^prec`.
pub fn solve_by_order(
    fixed: &[FieldElement],
    shift: isize,
    prec: usize,
    residual: impl Fn(&TruncatedSeries) -> TruncatedSeries,
) -> Result<TruncatedSeries> {
    let mut phi: Vec<FieldElement> = fixed.to_vec();
    for k in fixed.len()..prec {
        let idx = k as isize + shift;
        if idx < 0 {
            phi.push(FieldElement::zero());
            continue;
        }
        let idx = idx as usize;
        let trial = |v: FieldElement| {
            let mut c = phi.clone();
            c.push(v);
            residual(&TruncatedSeries::new(c, k + 2)).coeff(idx)
        };
        let r0 = trial(FieldElement::zero());
        let r1 = trial(FieldElement::one());
        let slope = &r1 - &r0;
        if !slope.is_zero() {
            phi.push(-&(&r0 / &slope));
        } else if r0.is_zero() {
            phi.push(FieldElement::zero());
        } else {
            return Err(Error::InvalidInput(format!("obstruction at order {k}")));
        }
    }
    Ok(TruncatedSeries::new(phi, prec))
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
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
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.prec)
    }
}
