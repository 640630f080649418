//! Cross-module invariants over the corpus.

use separatrix_core::corpus;
use separatrix_core::puiseux::{newton_puiseux_expand, ramification_exponent};
use separatrix_core::ramification::{curve_theorem_check, find_regular_ramification, hamiltonian, ramify_curve};

#[test]
fn curve_exponent_divides_foliation_exponent() {
    let mut seen = 0;
    for doc in corpus::foliations() {
        let w = doc.form().unwrap();
        let Some(f) = hamiltonian(w) else { continue };
        let curve = curve_theorem_check(&f, 16, 50).unwrap();
        let fol = find_regular_ramification(w, 12, 50).unwrap();
        assert_eq!(fol.d % curve.d, 0, "{:?}: curve d = {}, foliation d = {}", doc.name, curve.d, fol.d);
        seen += 1;
    }
    assert!(seen >= 4);
}

#[test]
fn branch_counts_and_regularization() {
    for doc in corpus::curves() {
        let f = doc.curve().unwrap();
        let e = newton_puiseux_expand(f, 16).unwrap();
        let y_degree = e.curve.restrict_x_zero().order().unwrap() as u32;
        assert_eq!(e.branch_count(), y_degree, "{:?}", doc.name);
        for j in &e.jets {
            assert!(j.curve_residual(&e.curve).valuation().is_none_or(|v| v >= 16 * j.ramification() as usize), "{:?}", doc.name);
        }
        let d = ramification_exponent(&e.jets);
        let again = newton_puiseux_expand(&ramify_curve(&e.curve, d), 16).unwrap();
        assert!(again.jets.iter().all(|j| j.ramification() == 1), "{:?}", doc.name);
    }
}

#[test]
fn reduction_is_deterministic() {
    for doc in corpus::foliations() {
        let w = doc.form().unwrap();
        let a = find_regular_ramification(w, 12, 50).unwrap();
        let b = find_regular_ramification(w, 12, 50).unwrap();
        assert_eq!(a.d, b.d);
        let paths =
            |t: &separatrix_core::surface::ResolutionTree| t.finals().iter().map(|r| (r.path.clone(), r.form.clone())).collect::<Vec<_>>();
        assert_eq!(paths(&a.tree), paths(&b.tree), "{:?}", doc.name);
    }
}
