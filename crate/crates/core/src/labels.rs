//! Human-readable names for integer combinations of generators.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

fn needs_parens(label: &str) -> bool {
    label.contains(['+', '-', '*'])
}

/// Appends a product suffix such as `x1` or `xz`, treating `1` as the unit.
pub fn suffixed(label: &str, suffix: &str) -> String {
    match (label, suffix) {
        ("1", "x1") => "1".to_string(),
        ("1", "xz") => "z".to_string(),
        (l, s) if needs_parens(l) => format!("({l}){s}"),
        (l, s) => format!("{l}{s}"),
    }
}

/// Renders `sum c_i * names_i`, e.g. `2*a+b-c`; the empty sum is `0`.
pub fn combination(coeffs: &[BigInt], names: &[String]) -> String {
    assert_eq!(
        coeffs.len(),
        names.len(),
        "coefficient and name counts differ"
    );
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let term = if name == "1" {
            mag.to_string()
        } else {
            let base = if needs_parens(name) {
                format!("({name})")
            } else {
                name.clone()
            };
            if mag.is_one() {
                base
            } else {
                format!("{mag}*{base}")
            }
        };
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
