//! Polynomial literals: `2*x1:a*x2:b - x2:b*x1:a`, `(1 + z^2)*x1:e`,
//! `z^3*x1:(1,0)*x2:b`. A variable without `:degree` has degree e.

use super::{GradedPolynomial, Var};
use crate::error::{Error, Result};
use crate::groups::FiniteAbelianGroup;
use crate::scalars::CycloNumber;

fn split_top(s: &str, seps: &[char], keep_sign: bool) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(format!("unbalanced ')' in '{s}'")));
                }
            }
            _ => {}
        }
        if depth == 0 && seps.contains(&ch) {
            let t = cur.trim_end();
            let dangling = t.is_empty() || t.ends_with('*') || t.ends_with('^');
            if !(keep_sign && dangling) {
                out.push(std::mem::take(&mut cur));
                if keep_sign {
                    cur.push(ch);
                }
                continue;
            }
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(Error::parse(format!("unbalanced '(' in '{s}'")));
    }
    out.push(cur);
    Ok(out)
}

/// Parses a polynomial over `group` with coefficients in Q(ζ_order).
pub fn parse_polynomial(
    s: &str,
    group: &FiniteAbelianGroup,
    order: u32,
) -> Result<GradedPolynomial> {
    let src = s.trim();
    if src.is_empty() {
        return Err(Error::parse("empty polynomial"));
    }
    let mut terms = Vec::new();
    for raw in split_top(src, &['+', '-'], true)? {
        let t = raw.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, t.strip_prefix('+').unwrap_or(t).trim()),
        };
        if body.is_empty() {
            return Err(Error::parse(format!("empty term in '{src}'")));
        }
        let mut coeff = CycloNumber::one(order);
        let mut mono = Vec::new();
        for f in split_top(body, &['*'], false)? {
            let f = f.trim();
            if f.is_empty() {
                return Err(Error::parse(format!("empty factor in '{t}'")));
            }
            let is_var = f
                .strip_prefix('x')
                .is_some_and(|r| r.starts_with(|c: char| c.is_ascii_digit()));
            if is_var {
                let (name, deg) = match f.split_once(':') {
                    Some((n, d)) => (n, group.parse(d)?),
                    None => (f, group.identity()),
                };
                let index: u32 = name[1..]
                    .parse()
                    .ok()
                    .filter(|&i| i > 0)
                    .ok_or_else(|| Error::parse(format!("bad variable '{name}'")))?;
                mono.push(Var::new(index, group.index(&deg)));
            } else {
                coeff = coeff.mul(&CycloNumber::parse(f, order)?);
            }
        }
        if neg {
            coeff = coeff.neg();
        }
        terms.push((mono, coeff));
    }
    GradedPolynomial::from_terms(group.clone(), order, terms)
}
