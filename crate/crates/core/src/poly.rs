//! Polynomial strings: `a^2 + 2*a*b - 1/3*x*y`.
//!
//! Terms are joined by `+` / `-`; a term is an optional rational coefficient `p/q`
//! followed by `*`-separated factors `name` or `name^k`. Whitespace is ignored.
//! Factors are multiplied in the written order, so `y*x` with odd x, y reads as −x·y.

use std::sync::Arc;

use num_traits::{One, Signed};

use crate::algebra::{format_rational, parse_rational, Element, GeneratorSet, Rational};
use crate::error::{Error, Result};

pub fn parse_element(src: &str, ambient: &Arc<GeneratorSet>) -> Result<Element> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse("", "empty polynomial"));
    }
    let mut out = Element::zero(ambient);
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut first = true;
    while i < bytes.len() {
        let mut negative = false;
        if bytes[i] == '+' || bytes[i] == '-' {
            negative = bytes[i] == '-';
            i += 1;
        } else if !first {
            return Err(Error::parse("", format!("expected `+` or `-` at position {i} in `{src}`")));
        }
        let start = i;
        while i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
            i += 1;
        }
        let term: String = bytes[start..i].iter().collect();
        if term.is_empty() {
            return Err(Error::parse("", format!("empty term in `{src}`")));
        }
        let t = parse_term(&term, ambient)?;
        out = if negative { &out - &t } else { &out + &t };
        first = false;
    }
    Ok(out)
}

fn parse_term(term: &str, ambient: &Arc<GeneratorSet>) -> Result<Element> {
    let mut acc = Element::one(ambient);
    for (k, factor) in term.split('*').enumerate() {
        if factor.is_empty() {
            return Err(Error::parse("", format!("empty factor in term `{term}`")));
        }
        let first = factor.chars().next().unwrap();
        if first.is_ascii_digit() {
            if k != 0 {
                return Err(Error::parse("", format!("coefficient must come first in `{term}`")));
            }
            let c = parse_rational(factor)
                .ok_or_else(|| Error::parse("", format!("bad rational `{factor}`")))?;
            acc = acc.scale(&c);
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e
                    .parse()
                    .map_err(|_| Error::parse("", format!("bad exponent in `{factor}`")))?;
                (n, e)
            }
            None => (factor, 1),
        };
        let i = ambient
            .index_of(name)
            .ok_or_else(|| Error::parse("", format!("unknown generator `{name}`")))?;
        acc = &acc * &Element::generator(ambient, i).pow(exp);
    }
    Ok(acc)
}

pub fn format_element(e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let amb = e.ambient();
    let mut out = String::new();
    for (k, (m, c)) in e.terms().iter().rev().enumerate() {
        let negative = c.is_negative();
        let abs: Rational = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&m.format(amb));
        } else {
            out.push_str(&format_rational(&abs));
            out.push('*');
            out.push_str(&m.format(amb));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = GeneratorSet::from_pairs(&[("a", 2), ("b", 2), ("x", 3), ("y", 3)]).unwrap();
        for s in ["a^2 + 2*a*b - 1/3*b^2", "-x*y", "0", "7/2", "a*x - b*y"] {
            let e = parse_element(s, &g).unwrap();
            let back = parse_element(&format_element(&e), &g).unwrap();
            assert_eq!(e, back, "{s}");
        }
        assert_eq!(format_element(&parse_element("y*x", &g).unwrap()), "-x*y");
        assert_eq!(format_element(&parse_element("b^2 + a^2", &g).unwrap()), "a^2 + b^2");
    }

    #[test]
    fn errors_point_at_problem() {
        let g = GeneratorSet::from_pairs(&[("a", 2)]).unwrap();
        assert!(parse_element("a + c", &g).is_err());
        assert!(parse_element("a ++ a", &g).is_err());
        assert!(parse_element("a*2", &g).is_err());
        assert!(parse_element("1/0*a", &g).is_err());
    }
}
