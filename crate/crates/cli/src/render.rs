//! LaTeX renderings of exact values, series and polynomials.

use hurwitz_core::{LaurentSeries, MultiPoly, Rational};
use num_traits::{One, Signed};

pub fn latex_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", q.numer().abs(), q.denom())
    }
}

/// Appends `coeff · body` to a running sum, handling signs and unit
/// coefficients.
fn push_term(out: &mut String, c: &Rational, body: &str) {
    let abs = c.abs();
    if out.is_empty() {
        if c.is_negative() {
            out.push('-');
        }
    } else {
        out.push_str(if c.is_negative() { " - " } else { " + " });
    }
    if body.is_empty() {
        out.push_str(&latex_rational(&abs));
    } else {
        if !abs.is_one() {
            out.push_str(&latex_rational(&abs));
            out.push(' ');
        }
        out.push_str(body);
    }
}

pub fn latex_series(s: &LaurentSeries) -> String {
    let mut out = String::new();
    for (k, c) in s.terms() {
        let body = match k {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{{{k}}}"),
        };
        push_term(&mut out, c, &body);
    }
    if out.is_empty() {
        out.push('0');
    }
    if !s.is_exact() {
        out.push_str(&format!(" + O(z^{{{}}})", s.order() + 1));
    }
    out
}

/// Highest degree first, like the plain-text rendering.
pub fn latex_poly(p: &MultiPoly, names: &[String]) -> String {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| {
        let da: u32 = a.0.iter().sum();
        let db: u32 = b.0.iter().sum();
        db.cmp(&da).then_with(|| b.0.cmp(a.0))
    });
    let mut out = String::new();
    for (m, c) in terms {
        let body: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{{{e}}}", names[i])
                }
            })
            .collect();
        push_term(&mut out, c, &body.join(" "));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `μ_1..μ_m, ν_1..ν_{n−1}` in LaTeX.
pub fn latex_variable_names(m: usize, n: usize) -> Vec<String> {
    (1..=m)
        .map(|i| format!("\\mu_{{{i}}}"))
        .chain((1..n).map(|j| format!("\\nu_{{{j}}}")))
        .collect()
}
