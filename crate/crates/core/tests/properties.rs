//! Randomized invariants of the exact algebra, parser and blow-ups.

use std::sync::Arc;

use num::{BigInt, BigRational};
use proptest::prelude::*;

use separatrix_core::algebra::{adjoin_root, poly_translate, univariate_roots, BiPoly, FieldElement, GaussianRational, NumberField, UPoly};
use separatrix_core::cli::{parse_input, InputPayload};
use separatrix_core::foliation::{form_charts_glue, strict_transform_blowup, OneForm};
use separatrix_core::surface::{curve_charts_glue, ChartSide};

fn tower() -> Arc<NumberField> {
    let base = NumberField::base();
    let zero = FieldElement::from_int(0);
    let f = adjoin_root(&base, &zero, &FieldElement::from_int(-2)).unwrap().field;
    adjoin_root(&f, &zero, &FieldElement::from_int(-3)).unwrap().field
}

fn ratio() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (ratio(), ratio()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

/// Element of `ℚ(i)(√2)(√3)`.
fn element() -> impl Strategy<Value = FieldElement> {
    prop::collection::vec(gaussian(), 4).prop_map(|c| FieldElement::from_coords(tower(), c).unwrap())
}

fn small_gaussian() -> impl Strategy<Value = FieldElement> {
    (-4i64..=4, -2i64..=2).prop_map(|(re, im)| {
        FieldElement::from_gaussian(GaussianRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into())))
    })
}

/// Polynomial vanishing at the origin with small Gaussian coefficients.
fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), small_gaussian()), 1..6).prop_map(|ts| {
        let mut p = BiPoly::zero();
        for ((i, j), c) in ts {
            if i + j > 0 {
                p.add_term((i, j), &c);
            }
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn field_division(a in element(), b in element()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert_eq!(&(&a * &b) * &inv, b);
    }

    #[test]
    fn translate_round_trip(p in bipoly(), cx in small_gaussian(), cy in small_gaussian()) {
        let q = poly_translate(&p, &cx, &cy);
        prop_assert_eq!(poly_translate(&q, &-&cx, &-&cy), p);
    }

    #[test]
    fn roots_divide(lin in prop::collection::vec(small_gaussian(), 0..3), p in -3i64..=3, q in -3i64..=3) {
        let mut f = UPoly::from_ints(&[q, p, 1]);
        for r in &lin {
            f = f.mul(&UPoly::linear(r));
        }
        let set = univariate_roots(&f, &NumberField::base()).unwrap();
        let f = UPoly::new(f.coeffs().iter().map(|c| c.lift_to(&set.field).unwrap()).collect());
        let mut product = UPoly::constant(FieldElement::from_int(1));
        for (r, m) in &set.roots {
            prop_assert!(f.eval(r).is_zero());
            for _ in 0..*m {
                product = product.mul(&UPoly::linear(r));
            }
        }
        prop_assert!(f.div_exact(&product).is_some());
        let found: usize = set.roots.iter().map(|(_, m)| m).sum();
        prop_assert_eq!(found + set.unresolved_degree, f.degree().unwrap());
    }

    #[test]
    fn parse_round_trip(f in bipoly(), a in bipoly(), b in bipoly()) {
        prop_assume!(!f.is_zero());
        let doc = parse_input(&format!("curve = {f}")).unwrap();
        prop_assert_eq!(&doc.payload, &InputPayload::Curve(f));
        prop_assume!(!a.is_zero() || !b.is_zero());
        let w = OneForm::new(a, b).unwrap();
        prop_assume!(w.is_singular_at_origin());
        let doc = parse_input(&format!("omega = {w}")).unwrap();
        prop_assert_eq!(doc.form(), Some(&w));
        let again = parse_input(&doc.serialize()).unwrap();
        prop_assert_eq!(doc.payload, again.payload);
    }

    #[test]
    fn blow_up_charts_glue(a in bipoly(), b in bipoly()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (w, _) = OneForm::saturate(a.clone(), b).unwrap();
        prop_assume!(w.is_singular_at_origin());
        let (x, _) = strict_transform_blowup(&w, ChartSide::X).unwrap();
        let (y, _) = strict_transform_blowup(&w, ChartSide::Y).unwrap();
        prop_assert!(form_charts_glue(&x, &y));
        prop_assert!(x.is_saturated() && y.is_saturated());
        prop_assume!(!a.is_zero());
        prop_assert!(curve_charts_glue(&a.x_chart(), &a.y_chart()));
    }
}

#[test]
fn corpus_round_trip() {
    for doc in separatrix_core::corpus::foliations().into_iter().chain(separatrix_core::corpus::curves()) {
        let again = parse_input(&doc.serialize()).unwrap();
        assert_eq!(doc.payload, again.payload, "{:?}", doc.name);
        assert_eq!(doc.name, again.name);
    }
}
