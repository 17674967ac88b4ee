use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::wall::{chamber_signature, ChamberSignature};
use crate::error::{Error, Result};
use crate::partitions::HurwitzInput;
use crate::patterns::{closed_form, degree_form, parts_product_form};
use crate::rational::{factorial, Rational};
use crate::series::{
    reciprocal_s_coefficients, reciprocal_s_series, sigma_series_poly, LaurentSeries, MultiPoly,
};

/// `H^r` on one chamber as a polynomial in `μ_1..μ_m, ν_1..ν_{n-1}`, with
/// `r = 2g − 2 + m + n`.
///
/// `components[k]` is `P_{g,k}`, `(−1)^k` times the homogeneous part of
/// degree `4g − 3 + m + n − 2k`. Any homogeneous part outside that list is
/// kept in `polynomial` and shows up in [`verify_spp`].
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ChamberPolynomial {
    pub chamber: ChamberSignature,
    pub m: usize,
    pub n: usize,
    pub g: u32,
    pub r: u32,
    pub polynomial: MultiPoly,
    pub components: BTreeMap<u32, MultiPoly>,
}

impl ChamberPolynomial {
    /// `4g − 3 + m + n`.
    pub fn top_degree(&self) -> i64 {
        4 * self.g as i64 - 3 + (self.m + self.n) as i64
    }

    pub fn component(&self, k: u32) -> MultiPoly {
        self.components
            .get(&k)
            .cloned()
            .unwrap_or_else(MultiPoly::zero)
    }

    /// Variable names in the polynomial's order.
    pub fn variable_names(&self) -> Vec<String> {
        (1..=self.m)
            .map(|i| format!("μ{i}"))
            .chain((1..self.n).map(|j| format!("ν{j}")))
            .collect()
    }
}

fn split_components(p: &MultiPoly, top: i64, g: u32) -> BTreeMap<u32, MultiPoly> {
    (0..=g)
        .filter_map(|k| {
            let deg = top - 2 * k as i64;
            if deg < 0 {
                return None;
            }
            let c = p.homogeneous_component(deg as u32);
            Some((k, if k % 2 == 0 { c } else { -&c }))
        })
        .collect()
}

/// `H^r` on the chamber of `sample`, computed from the closed form with
/// every `ς` argument kept symbolic.
///
/// The pattern sum is multiplied by `1/S(dz)` and the coefficient of
/// `z^{r+1}` is divided by `d ∏μ_i ∏ν_j`, which accounts for the pole
/// `1/(dz)` of `1/ς(dz)`. A nonzero remainder means `H^r` is not polynomial
/// there (as for `m = n = 1`, `g = 0`, where it is `1/d`).
pub fn symbolic_polynomial(sample: &HurwitzInput, g: u32) -> Result<ChamberPolynomial> {
    let chamber = chamber_signature(sample)?;
    let (m, n) = (sample.m(), sample.n());
    let r = sample.r_for_genus(g as u64) as u32;
    let order = r as i64 + 1;
    let cf = closed_form(sample, None)?;
    let sum = cf
        .patterns
        .par_iter()
        .map(|p| {
            p.steps.iter().fold(LaurentSeries::one(), |acc, s| {
                &acc * &sigma_series_poly(&s.sigma_form(m, n), order)
            })
        })
        .reduce(|| LaurentSeries::zero(order), |a, b| &a + &b);
    let d = degree_form(m);
    let pole_free = &sum * &reciprocal_s_series(&d, order);
    let top = pole_free.coefficient(order)?;
    let scaled = top.scale(&Rational::from_integer(factorial(r as u64)));
    let divisor = &d * &parts_product_form(m, n);
    let polynomial = scaled.divide_exact(&divisor).map_err(|e| match e {
        Error::InexactDivision(_) => Error::InexactDivision(format!(
            "H^{r} for {m}+{n} parts at genus {g} is not a polynomial"
        )),
        other => other,
    })?;
    let top_degree = 4 * g as i64 - 3 + (m + n) as i64;
    Ok(ChamberPolynomial {
        chamber,
        m,
        n,
        g,
        r,
        components: split_components(&polynomial, top_degree, g),
        polynomial,
    })
}

/// Outcome of one named check, with a witness on failure.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }

    pub fn line(&self) -> String {
        match &self.witness {
            None => format!("PASS {}", self.name),
            Some(w) => format!(
                "{} {}: {w}",
                if self.passed { "PASS" } else { "FAIL" },
                self.name
            ),
        }
    }
}

/// Structural checks on a chamber polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SppReport {
    pub subject: String,
    pub checks: Vec<CheckResult>,
}

impl SppReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "{} [{}]", c.line(), self.subject);
        }
        s
    }

    /// `{"passed": bool, "subject": ..., "checks": [...]}`.
    pub fn verdict_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "subject": self.subject,
            "checks": self.checks,
        })
    }
}

/// Degrees, parity, lowest degree and positivity of `cp` at `samples`.
pub fn verify_spp(cp: &ChamberPolynomial, samples: &[HurwitzInput]) -> Result<SppReport> {
    for s in samples {
        if !cp.chamber.contains(s) {
            return Err(Error::ChamberMismatch(s.to_string()));
        }
    }
    let top = cp.top_degree();
    let allowed: Vec<i64> = (0..=cp.g as i64).map(|k| top - 2 * k).collect();
    let degrees: Vec<u32> = cp.polynomial.components().into_keys().collect();

    let stray = degrees.iter().find(|&&d| !allowed.contains(&(d as i64)));
    let degree_check = CheckResult::from_witness(
        "degrees",
        stray.map(|d| format!("homogeneous part of degree {d} outside {allowed:?}")),
    );

    let odd = degrees
        .iter()
        .find(|&&d| (d as i64 - top).rem_euclid(2) != 0);
    let parity_check = CheckResult::from_witness(
        "parity",
        odd.map(|d| format!("degree {d} has the wrong parity for top degree {top}")),
    );

    let floor = 2 * cp.g as i64 - 3 + (cp.m + cp.n) as i64;
    let low = cp.polynomial.min_degree();
    let lowest_check = CheckResult::from_witness(
        "lowest-degree",
        low.filter(|&d| (d as i64) < floor)
            .map(|d| format!("lowest degree {d} < {floor}")),
    );

    let mut positivity = None;
    'outer: for k in 0..=cp.g {
        if top - 2 * (k as i64) < 0 {
            continue;
        }
        let p = cp.component(k);
        for s in samples {
            let v = p.eval(&s.reduced_coordinates());
            if !v.is_positive() {
                positivity = Some(format!("P_{{{},{k}}}{s} = {v}", cp.g));
                break 'outer;
            }
        }
    }
    let positivity_check = CheckResult::from_witness("positivity", positivity);

    Ok(SppReport {
        subject: format!("{}+{} g={} {}", cp.m, cp.n, cp.g, cp.chamber),
        checks: vec![degree_check, parity_check, lowest_check, positivity_check],
    })
}

/// `(1 − 2^{1−2k}) |B_{2k}| / (2k)!`, the absolute value of the `z^{2k}`
/// coefficient of `1/S(z)`.
pub fn bernoulli_factor(k: u32) -> Rational {
    reciprocal_s_coefficients(k).abs()
}

/// One instance of `P_{g,k} = c · d^{2k} · P_{g−k,0}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BernoulliCheck {
    pub g: u32,
    pub k: u32,
    /// With `c` the Bernoulli factor alone.
    pub plain: bool,
    /// With `c` the Bernoulli factor times `r!/(r−2k)!`.
    pub with_falling_factorial: bool,
}

/// Compares components across genera. `polys[g]` must be the genus-`g`
/// polynomial of one chamber.
pub fn check_bernoulli_relation(polys: &[ChamberPolynomial]) -> Result<Vec<BernoulliCheck>> {
    let Some(first) = polys.first() else {
        return Ok(Vec::new());
    };
    for (g, p) in polys.iter().enumerate() {
        if p.g as usize != g || p.chamber != first.chamber {
            return Err(Error::ChamberMismatch(format!(
                "expected genus {g} on {}, got genus {} on {}",
                first.chamber, p.g, p.chamber
            )));
        }
    }
    let d = degree_form(first.m);
    let mut out = Vec::new();
    for cp in polys.iter().skip(1) {
        for k in 1..=cp.g {
            let lower = polys[(cp.g - k) as usize].component(0);
            let base = &d.pow(2 * k) * &lower;
            let plain = base.scale(&bernoulli_factor(k));
            let falling: BigInt = (cp.r - 2 * k + 1..=cp.r).map(BigInt::from).product();
            let corrected = plain.scale(&Rational::from_integer(falling));
            let lhs = cp.component(k);
            out.push(BernoulliCheck {
                g: cp.g,
                k,
                plain: lhs == plain,
                with_falling_factorial: lhs == corrected,
            });
        }
    }
    Ok(out)
}
