//! Text forms shared by [`super::Poly`] and [`super::Laurent`].
//!
//! A term is `c`, `c*T`, `c*T^e`, `T^e` or `cT^e`; terms are joined by `+`/`-`
//! and exponents may be negative (`T^-3`). Coefficients are reduced mod q.

use super::field as fp;
use crate::error::{Error, Result};

pub(crate) fn parse_terms(q: u32, s: &str) -> Result<Vec<(u32, i64)>> {
    let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bad = |msg: &str| Error::Parse(format!("{msg} in `{s}`"));
    let mut out = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let mut sign = 1i64;
        if i > 0 || src[i] == '+' || src[i] == '-' {
            match src[i] {
                '+' => {}
                '-' => sign = -1,
                _ => return Err(bad("expected `+` or `-`")),
            }
            i += 1;
        }
        let start = i;
        while i < src.len() && src[i].is_ascii_digit() {
            i += 1;
        }
        let coef: Option<i64> = if i > start {
            let digits: String = src[start..i].iter().collect();
            Some(digits.parse().map_err(|_| bad("bad coefficient"))?)
        } else {
            None
        };
        if i < src.len() && src[i] == '*' {
            i += 1;
        }
        let mut exp = 0i64;
        if i < src.len() && (src[i] == 'T' || src[i] == 't') {
            i += 1;
            exp = 1;
            if i < src.len() && src[i] == '^' {
                i += 1;
                let mut esign = 1;
                if i < src.len() && src[i] == '-' {
                    esign = -1;
                    i += 1;
                }
                let es = i;
                while i < src.len() && src[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(bad("missing exponent"));
                }
                let digits: String = src[es..i].iter().collect();
                exp = esign * digits.parse::<i64>().map_err(|_| bad("bad exponent"))?;
            }
        } else if coef.is_none() {
            return Err(bad("empty term"));
        }
        let c = sign * coef.unwrap_or(1);
        out.push((fp::reduce(q, c), exp));
    }
    Ok(out)
}

/// Formats `(coefficient, exponent)` pairs in the given order, skipping zeros.
pub(crate) fn format_terms(terms: &[(u32, i64)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(c, _)| *c != 0)
        .map(|&(c, e)| match (c, e) {
            (c, 0) => format!("{c}"),
            (1, 1) => "T".to_string(),
            (c, 1) => format!("{c}*T"),
            (1, e) => format!("T^{e}"),
            (c, e) => format!("{c}*T^{e}"),
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signs_and_negative_exponents() {
        let t = parse_terms(5, "T^-1 - 2*T^-3").unwrap();
        assert_eq!(t, vec![(1, -1), (3, -3)]);
        let t = parse_terms(5, "-T^2+3").unwrap();
        assert_eq!(t, vec![(4, 2), (3, 0)]);
        assert!(parse_terms(5, "T^").is_err());
        assert!(parse_terms(5, "").is_err());
        assert!(parse_terms(5, "T+*").is_err());
    }
}
