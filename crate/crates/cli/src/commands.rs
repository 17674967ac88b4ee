//! One function per subcommand. Each returns the rendered output; failed
//! checks are reported in the output and signalled through the status.

use hurwitz_core::chambers::{
    chamber_signature, sample_across, sample_in_chamber, symbolic_polynomial, verify_spp,
    wall_crossing_lhs, wall_crossing_rhs, Wall, WallCrossingSpec,
};
use hurwitz_core::partitions::{find_wall, format_index_set, hurwitz_oracle};
use hurwitz_core::patterns::{
    closed_form, hurwitz_number_with, is_totally_negative, phi_ordering, product_formula,
};
use hurwitz_core::rational::format_rational;
use hurwitz_core::verify::{run_suite, Suite, VerifyOptions};
use hurwitz_core::{Error, HurwitzInput, Rational};
use serde_json::{json, Value};

use crate::config::{Format, Job};
use crate::error::CliError;
use crate::render::{latex_poly, latex_rational, latex_series, latex_variable_names};

/// Rendered output and whether every check it reports passed.
pub struct Output {
    pub body: String,
    pub ok: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, ok: true }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn no_latex(command: &str) -> CliError {
    CliError::Usage(format!(
        "{command} has no LaTeX output; use --format text or json"
    ))
}

fn wall_name(input: &HurwitzInput) -> Option<String> {
    find_wall(input).map(|(i, j)| format!("W_{{{},{}}}", format_index_set(i), format_index_set(j)))
}

fn on_wall(input: &HurwitzInput) -> CliError {
    let wall = wall_name(input).unwrap_or_default();
    CliError::OnWall(format!(
        "{input} lies on the wall {wall}; pass --oracle for the disconnected count"
    ))
}

fn number_output(
    job: &Job,
    input: &HurwitzInput,
    r: u32,
    value: &Rational,
    method: &str,
) -> String {
    match job.format {
        Format::Text => format!("{}\n", format_rational(value)),
        Format::Latex => format!("{}\n", latex_rational(value)),
        Format::Json => pretty(&json!({
            "mu": input.mu(),
            "nu": input.nu(),
            "r": r,
            "g": input.genus_for_r(r as u64),
            "value": format_rational(value),
            "method": method,
            "wall": wall_name(input),
        })),
    }
}

pub fn hurwitz(job: &Job, use_oracle: bool) -> Result<Output, CliError> {
    let input = job.input()?;
    let r = job.branch_points(&input)?;
    if use_oracle {
        if let Some(wall) = wall_name(&input) {
            eprintln!("note: {input} lies on {wall}; the character sum counts disconnected covers");
        }
        let v = hurwitz_oracle(&input, r);
        return Ok(Output::ok(number_output(job, &input, r, &v, "oracle")));
    }
    if find_wall(&input).is_some() {
        return Err(on_wall(&input));
    }
    let order = job.truncation_or(r as i64 + 2)?;
    if order < r as i64 {
        return Err(CliError::Usage(format!("--N {order} is below r = {r}")));
    }
    let v = hurwitz_number_with(&input, r, job.ordering()?.as_ref(), order)?;
    Ok(Output::ok(number_output(job, &input, r, &v, "closed-form")))
}

pub fn oracle(job: &Job) -> Result<Output, CliError> {
    let input = job.input()?;
    let r = job.branch_points(&input)?;
    let v = hurwitz_oracle(&input, r);
    Ok(Output::ok(number_output(job, &input, r, &v, "oracle")))
}

pub fn closed_form_cmd(job: &Job) -> Result<Output, CliError> {
    let input = job.input()?;
    if find_wall(&input).is_some() {
        return Err(on_wall(&input));
    }
    let cf = closed_form(&input, job.ordering()?.as_ref())?;
    Ok(Output::ok(match job.format {
        Format::Text => format!(
            "{}\nordering {}\n{} pattern(s)\n",
            cf.to_text(),
            cf.ordering,
            cf.num_patterns()
        ),
        Format::Latex => format!("{}\n{}\n", cf.to_latex_symbolic(), cf.to_latex_numeric()),
        Format::Json => pretty(&serde_json::to_value(cf.to_json()).expect("serializable")),
    }))
}

pub fn series(job: &Job) -> Result<Output, CliError> {
    let input = job.input()?;
    if find_wall(&input).is_some() {
        return Err(on_wall(&input));
    }
    let order = job.truncation_or(10)?;
    let cf = closed_form(&input, job.ordering()?.as_ref())?;
    let s = cf.evaluate_series(&input, order)?;
    let numbers: Vec<(i64, Rational)> = s
        .terms()
        .filter(|&(k, _)| k >= 0)
        .map(|(k, c)| {
            let fact = hurwitz_core::rational::factorial(k as u64);
            (k, c * Rational::from_integer(fact))
        })
        .collect();
    Ok(Output::ok(match job.format {
        Format::Text => {
            let mut out = format!("H_{input}(z) = {}\n", s.to_text());
            for (k, h) in &numbers {
                out.push_str(&format!("H^{k} = {}\n", format_rational(h)));
            }
            out
        }
        Format::Latex => format!("H_{{\\mu,\\nu}}(z) = {}\n", latex_series(&s)),
        Format::Json => pretty(&json!({
            "mu": input.mu(),
            "nu": input.nu(),
            "N": order,
            "series": s,
            "hurwitz_numbers": numbers
                .iter()
                .map(|(k, h)| json!({"r": k, "value": format_rational(h)}))
                .collect::<Vec<_>>(),
        })),
    }))
}

pub fn chamber(job: &Job) -> Result<Output, CliError> {
    let input = job.input()?;
    if find_wall(&input).is_some() {
        return Err(on_wall(&input));
    }
    let sig = chamber_signature(&input)?;
    let phi = phi_ordering(&input)?;
    let negative = is_totally_negative(&input)?;
    let product = if negative {
        Some(product_formula(&input)?)
    } else {
        None
    };
    let patterns = closed_form(&input, None)?.num_patterns();
    let phi_text: Vec<String> = phi.iter().map(|e| e.to_string()).collect();
    Ok(Output::ok(match job.format {
        Format::Latex => return Err(no_latex("chamber")),
        Format::Text => {
            let mut out = format!("chamber of {input}\n");
            for (w, s) in &sig.signs {
                out.push_str(&format!("{w} {}\n", if *s > 0 { "+" } else { "-" }));
            }
            out.push_str(&format!("phi ordering: {}\n", phi_text.join(" ")));
            out.push_str(&format!("totally negative: {negative}\n"));
            out.push_str(&format!("patterns (default ordering): {patterns}\n"));
            if let Some(p) = &product {
                let args: Vec<String> = p.iter().map(|a| a.to_string()).collect();
                out.push_str(&format!("product formula arguments: {}\n", args.join(", ")));
            }
            out
        }
        Format::Json => pretty(&json!({
            "mu": input.mu(),
            "nu": input.nu(),
            "signature": sig
                .signs
                .iter()
                .map(|(w, s)| json!({"wall": w.to_string(), "sign": s}))
                .collect::<Vec<_>>(),
            "phi": phi_text,
            "totally_negative": negative,
            "patterns": patterns,
            "product_formula": product,
        })),
    }))
}

pub fn poly(job: &Job, samples: usize) -> Result<Output, CliError> {
    let input = job.input()?;
    if find_wall(&input).is_some() {
        return Err(on_wall(&input));
    }
    let g = job.genus(&input)?;
    let cp = symbolic_polynomial(&input, g)?;
    let points = sample_in_chamber(&input, samples, job.seed)?;
    let report = verify_spp(&cp, &points)?;
    let names = cp.variable_names();
    let (m, n) = (input.m(), input.n());
    let body = match job.format {
        Format::Text => {
            let mut out = format!(
                "chamber polynomial for {input}, g={g}, r={}, nu_{n} = d - (other nu)\n",
                cp.r
            );
            out.push_str(&format!("H = {}\n", cp.polynomial.format_with(&names)));
            for (k, c) in &cp.components {
                out.push_str(&format!("P_{{{g},{k}}} = {}\n", c.format_with(&names)));
            }
            out.push_str(&report.to_text());
            out
        }
        Format::Latex => {
            let latex_names = latex_variable_names(m, n);
            let mut out = format!("H = {}\n", latex_poly(&cp.polynomial, &latex_names));
            for (k, c) in &cp.components {
                out.push_str(&format!(
                    "P_{{{g},{k}}} = {}\n",
                    latex_poly(c, &latex_names)
                ));
            }
            out
        }
        Format::Json => pretty(&json!({
            "mu": input.mu(),
            "nu": input.nu(),
            "variables": names,
            "chamber_polynomial": cp,
            "verdict": report.verdict_json(),
        })),
    };
    Ok(Output {
        body,
        ok: report.passed(),
    })
}

/// `I/J` with 1-based comma-separated sets, e.g. `1,2/1`.
fn parse_wall(s: &str, m: usize, n: usize) -> Result<Wall, CliError> {
    let bad = || CliError::Usage(format!("expected a wall like 1/1 or 1,2/1, got {s:?}"));
    let (a, b) = s.split_once('/').ok_or_else(bad)?;
    let set = |t: &str| -> Result<u32, CliError> {
        t.split(',').try_fold(0u32, |acc, x| {
            let i: u32 = x.trim().parse().map_err(|_| bad())?;
            if i == 0 || i > 31 {
                return Err(bad());
            }
            Ok(acc | 1 << (i - 1))
        })
    };
    Ok(Wall::new(set(a)?, set(b)?, m, n)?)
}

pub fn wallcross(job: &Job, wall: &str) -> Result<Output, CliError> {
    let input = job.input()?;
    if find_wall(&input).is_some() {
        return Err(on_wall(&input));
    }
    let order = job.truncation_or(10)?;
    let wall = parse_wall(wall, input.m(), input.n())?;
    let spec = WallCrossingSpec::toward(&input, wall)?;
    let (first, second) = spec.sub_inputs(&input)?;
    let across = sample_across(&input, spec.wall, job.seed).map_err(|e| match e {
        Error::NoSample(_) => CliError::Usage(format!(
            "{} is not a facet of the chamber of {input}: {e}",
            spec.wall
        )),
        other => other.into(),
    })?;
    let lhs = wall_crossing_lhs(&input, spec.wall, &across, &input, order)?;
    let rhs = wall_crossing_rhs(&input, spec.wall, order)?;
    let equal = lhs == rhs;
    let body = match job.format {
        Format::Latex => return Err(no_latex("wallcross")),
        Format::Text => format!(
            "wall {} (delta = {}, d1 = {}, d2 = {})\n\
             other chamber sampled at {across}\n\
             sub-inputs {first} and {second}\n\
             LHS = {}\nRHS = {}\n{} through z^{order}\n",
            spec.wall,
            spec.delta,
            spec.d1,
            spec.d2,
            lhs.to_text(),
            rhs.to_text(),
            if equal {
                "PASS LHS = RHS"
            } else {
                "FAIL LHS != RHS"
            }
        ),
        Format::Json => pretty(&json!({
            "mu": input.mu(),
            "nu": input.nu(),
            "wall": spec.wall.to_string(),
            "delta": spec.delta,
            "d1": spec.d1,
            "d2": spec.d2,
            "across": {"mu": across.mu(), "nu": across.nu()},
            "sub_inputs": [
                {"mu": first.mu(), "nu": first.nu()},
                {"mu": second.mu(), "nu": second.nu()},
            ],
            "N": order,
            "lhs": lhs,
            "rhs": rhs,
            "passed": equal,
        })),
    };
    Ok(Output { body, ok: equal })
}

pub fn verify(job: &Job, suite: &str, negative_control: bool) -> Result<Output, CliError> {
    let suite: Suite = suite.parse()?;
    let opts = VerifyOptions {
        seed: job.seed,
        sign_bug: negative_control,
    };
    let report = run_suite(suite, &opts);
    let body = match job.format {
        Format::Latex => return Err(no_latex("verify")),
        Format::Text => report.to_text(),
        Format::Json => pretty(&report.to_json()),
    };
    Ok(Output {
        body,
        ok: report.passed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_walls() {
        let w = parse_wall("1,2/1", 3, 2).unwrap();
        assert_eq!((w.i, w.j), (3, 1));
        assert!(parse_wall("0/1", 2, 2).is_err());
        assert!(parse_wall("1", 2, 2).is_err());
        assert!(parse_wall("1,2/1", 2, 2).is_err());
    }
}
