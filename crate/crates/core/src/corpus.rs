//! Reference foliations and curves.

use crate::cli::{parse_input, InputDocument};

/// `(name, document)` pairs of foliations.
pub const FOLIATIONS: &[(&str, &str)] = &[
    ("saddle", "omega = y dx + x dy"),
    ("radial", "omega = y dx - x dy"),
    ("node-2", "omega = 2*y dx - x dy"),
    ("node-3", "omega = 3*y dx - x dy"),
    ("saddle-node", "omega = -y dx + x^2 dy"),
    ("cusp", "omega = -3*x^2 dx + 2*y dy"),
    ("a4-cusp", "omega = -5*x^4 dx + 2*y dy"),
    ("cusp-and-line", "omega = (4*x^3 - 3*x^2*y - y^2) dx + (3*y^2 - 2*x*y - x^3) dy"),
    ("perturbed-cusp", "omega = -3*x^2 dx + (2*y + x^2) dy"),
    ("dicritical", "omega = (y + x^2) dx - x dy"),
];

/// `(name, document)` pairs of curves.
pub const CURVES: &[(&str, &str)] = &[
    ("cusp", "curve = y^2 - x^3"),
    ("e6", "curve = y^3 - x^2"),
    ("a4", "curve = y^2 - x^5"),
    ("cusp-and-line", "curve = (y^2 - x^3)*(y - x)"),
    ("smooth", "curve = y - x^2"),
    ("node", "curve = y^2 - x^2"),
    ("e6-dual", "curve = y^3 - x^4"),
];

fn load(entries: &[(&str, &str)]) -> Vec<InputDocument> {
    entries
        .iter()
        .map(|(name, src)| {
            let mut d = parse_input(src).expect("corpus entries parse");
            d.name = Some(name.to_string());
            d
        })
        .collect()
}

pub fn foliations() -> Vec<InputDocument> {
    load(FOLIATIONS)
}

pub fn curves() -> Vec<InputDocument> {
    load(CURVES)
}
