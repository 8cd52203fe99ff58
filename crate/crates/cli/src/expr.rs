//! Parsing of class arguments: either coordinates (`1,0,2`) or a combination
//! of generator labels (`3*volxz`, `volx1-alphaxz`).

use crate::error::{CliError, Result};

/// Coordinates of `text` with respect to `labels`.
pub fn parse_class(field: &str, text: &str, labels: &[String]) -> Result<Vec<i64>> {
    let text = text.trim();
    if let Some(coords) = parse_coords(text) {
        return Ok(coords);
    }
    let mut coords = vec![0i64; labels.len()];
    for (sign, term) in split_terms(text) {
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) if c.trim().parse::<i64>().is_ok() => {
                (c.trim().parse::<i64>().unwrap_or(1), n.trim())
            }
            _ => match term.trim().parse::<i64>() {
                Ok(c) => (c, "1"),
                Err(_) => (1, term.trim()),
            },
        };
        let idx = labels.iter().position(|l| l == name).ok_or_else(|| {
            CliError::Validation(format!(
                "{field}: unknown generator `{name}`; expected one of [{}]",
                labels.join(", ")
            ))
        })?;
        coords[idx] += sign * coef;
    }
    Ok(coords)
}

fn parse_coords(text: &str) -> Option<Vec<i64>> {
    if text.is_empty() {
        return Some(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse::<i64>().ok())
        .collect()
}

// Splits on top-level `+` and `-`, keeping parenthesized labels intact.
fn split_terms(text: &str) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut sign = 1;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push((sign, std::mem::take(&mut cur)));
                }
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn coordinates_and_expressions() {
        let l = names(&["volx1", "alphaxz"]);
        assert_eq!(parse_class("flux", "2, 1", &l).unwrap(), [2, 1]);
        assert_eq!(
            parse_class("flux", "3*volx1 - alphaxz", &l).unwrap(),
            [3, -1]
        );
        assert_eq!(parse_class("flux", "alphaxz+alphaxz", &l).unwrap(), [0, 2]);
        assert!(parse_class("flux", "bogus", &l).is_err());
        assert_eq!(parse_class("b", "", &l).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn unit_label() {
        let l = names(&["1"]);
        assert_eq!(parse_class("x", "-4", &l).unwrap(), [-4]);
    }
}
