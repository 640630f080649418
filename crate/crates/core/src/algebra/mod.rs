//! Exact arithmetic: Gaussian rationals, quadratic towers, polynomials and
//! truncated series.

pub mod bipoly;
pub mod field;
pub mod gaussian;
pub mod series;
pub mod upoly;

pub use bipoly::{BiPoly, Exp, Order};
pub use field::{adjoin_root, Adjoined, FieldElement, NumberField};
pub use gaussian::GaussianRational;
pub use series::{eval_bipoly, solve_by_order, TruncatedSeries};
pub use upoly::{RootSet, UPoly};

use std::sync::Arc;

use crate::error::Result;

/// Roots of a univariate polynomial over `field`, extending it by at most the
/// tower cap. Unsplit factors are reported through [`RootSet::unsupported`].
pub fn univariate_roots(p: &UPoly, field: &Arc<NumberField>) -> Result<RootSet> {
    let lifted = UPoly::new(p.coeffs().iter().map(|c| c.lift_to(field)).collect::<Result<Vec<_>>>()?);
    lifted.roots()
}

/// `p(x + cx, y + cy)`.
pub fn poly_translate(p: &BiPoly, cx: &FieldElement, cy: &FieldElement) -> BiPoly {
    p.translate(cx, cy)
}
