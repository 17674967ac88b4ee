//! Self-verification suites: the closed forms against the character oracle,
//! the wedge-space operator identities, polynomiality on chambers, and the
//! wall-crossing formula.
//!
//! Checks inside a suite run in parallel; reports list them in a fixed order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::chambers::{
    chamber_representatives, check_bernoulli_relation, interpolate_in_chamber, sample_across,
    sample_in_chamber, symbolic_polynomial, verify_spp, wall_crossing_lhs, wall_crossing_prefactor,
    wall_crossing_rhs, CheckResult, Wall, WallCrossingSpec,
};
use crate::error::{Error, Result};
use crate::fock::{apply_alpha, apply_e, f2_eigenvalue, hurwitz_via_wedge, WedgeVector};
use crate::partitions::{
    character, find_wall, hurwitz_oracle, partitions_of, HurwitzInput, Partition,
};
use crate::patterns::closed_form;
use crate::rational::{factorial, rat, Rational};
use crate::series::{exp_series, sigma_series, LaurentSeries};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    OracleEquivalence,
    FockIdentities,
    Spp,
    Wallcross,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = [
        "oracle-equivalence",
        "fock-identities",
        "spp",
        "wallcross",
        "all",
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::FockIdentities => "fock-identities",
            Suite::Spp => "spp",
            Suite::Wallcross => "wallcross",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle-equivalence" => Ok(Suite::OracleEquivalence),
            "fock-identities" => Ok(Suite::FockIdentities),
            "spp" => Ok(Suite::Spp),
            "wallcross" => Ok(Suite::Wallcross),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!(
                "unknown suite {other:?}; expected one of {}",
                Suite::NAMES.join(", ")
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct VerifyOptions {
    /// Seed for chamber sampling.
    pub seed: u64,
    /// Negates one `ς` argument in every pattern before evaluating closed
    /// forms. The suites must catch it.
    pub sign_bug: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut lines: Vec<String> = self.checks.iter().map(CheckResult::line).collect();
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        lines.push(format!(
            "{} {}: {} checks, {} failed",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.suite,
            self.checks.len(),
            failed
        ));
        lines.join("\n") + "\n"
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks,
        })
    }
}

type Check = Box<dyn Fn(&VerifyOptions) -> Vec<CheckResult> + Send + Sync>;

fn single(f: impl Fn(&VerifyOptions) -> CheckResult + Send + Sync + 'static) -> Check {
    Box::new(move |o| vec![f(o)])
}

fn checks_for(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::OracleEquivalence => vec![
            single(|o| check_oracle_equivalence(7, 3, 3, o)),
            single(|o| check_one_part(8, 4, 3, o)),
        ],
        Suite::FockIdentities => vec![
            single(|_| check_alpha_commutators(8, 4)),
            single(|_| check_murnaghan_nakayama(6)),
            single(|_| check_e_conjugation(4, 8, 6)),
            single(|_| check_e_commutator(3, 5, 5)),
            single(|_| check_wedge_hurwitz(5, 4)),
        ],
        Suite::Spp => spp_cases()
            .into_iter()
            .map(|(h, max_g, interpolate)| -> Check {
                Box::new(move |o| check_chamber(&h, max_g, interpolate, o))
            })
            .collect(),
        Suite::Wallcross => wallcross_cases()
            .into_iter()
            .map(|(h, w)| single(move |o| check_wall_crossing(&h, w, 25, o)))
            .collect(),
        Suite::All => [
            Suite::OracleEquivalence,
            Suite::FockIdentities,
            Suite::Spp,
            Suite::Wallcross,
        ]
        .into_iter()
        .flat_map(checks_for)
        .collect(),
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let checks: Vec<CheckResult> = checks_for(suite)
        .par_iter()
        .map(|c| c(opts))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    VerifyReport {
        suite: suite.name().to_string(),
        checks,
    }
}

fn error_check(name: &str, e: Error) -> CheckResult {
    CheckResult::fail(name, format!("error: {e}"))
}

/// The closed form of the chamber of `chamber_point`, evaluated at `at`.
fn closed_form_series(
    chamber_point: &HurwitzInput,
    at: &HurwitzInput,
    order: i64,
    opts: &VerifyOptions,
) -> Result<LaurentSeries> {
    let mut cf = closed_form(chamber_point, None)?;
    if opts.sign_bug {
        // swapping (I,J) with (K,L) negates |μ_I||ν_L| − |μ_K||ν_J|
        for p in &mut cf.patterns {
            let s = &mut p.steps[0];
            std::mem::swap(&mut s.i, &mut s.k);
            std::mem::swap(&mut s.j, &mut s.l);
        }
    }
    cf.evaluate_series(at, order)
}

fn closed_form_number(input: &HurwitzInput, r: u32, opts: &VerifyOptions) -> Result<Rational> {
    let s = closed_form_series(input, input, r as i64 + 2, opts)?;
    Ok(s.coefficient(r as i64)? * Rational::from_integer(factorial(r as u64)))
}

/// Off-wall inputs with `|μ| = |ν| ≤ max_d` and at most `max_parts` parts a
/// side, in a fixed order.
pub fn small_inputs(max_d: u64, max_parts: usize) -> Vec<HurwitzInput> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        let parts: Vec<Partition> = partitions_of(d)
            .into_iter()
            .filter(|p| p.len() <= max_parts)
            .collect();
        for mu in &parts {
            for nu in &parts {
                let h = HurwitzInput::from_partitions(mu, nu).expect("same degree");
                if find_wall(&h).is_none() {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// Closed form against the character sum for every small off-wall input.
pub fn check_oracle_equivalence(
    max_d: u64,
    max_parts: usize,
    max_g: u64,
    opts: &VerifyOptions,
) -> CheckResult {
    let name = format!("oracle-equivalence d<={max_d} parts<={max_parts} g<={max_g}");
    let inputs = small_inputs(max_d, max_parts);
    let witness = inputs.par_iter().find_map_first(|h| {
        for g in 0..=max_g {
            let r = h.r_for_genus(g) as u32;
            let expected = hurwitz_oracle(h, r);
            match closed_form_number(h, r, opts) {
                Ok(v) if v == expected => {}
                Ok(v) => return Some(format!("{h} r={r}: closed form {v}, oracle {expected}")),
                Err(e) => return Some(format!("{h} r={r}: {e}")),
            }
        }
        None
    });
    CheckResult::from_witness(format!("{name} ({} inputs)", inputs.len()), witness)
}

/// `r! d^{r−1} [t^{2g}] (1/S(t)) ∏ S(ν_j t)` at one point.
pub fn one_part_value(d: u64, nu: &[u64], g: u32) -> Rational {
    let order = 2 * g as i64;
    let s = |a: u64| {
        let a = rat(a as i64);
        sigma_series(&a, order + 1).shifted(-1).scale(&a.recip())
    };
    let mut prod = crate::series::reciprocal_s_series(&rat(1), order);
    for &v in nu {
        prod = &prod * &s(v);
    }
    let r = 2 * g + nu.len() as u32 - 1;
    let c = prod.coefficient(2 * g as i64).expect("within order");
    c * Rational::from_integer(factorial(r as u64)) * crate::rational::pow(&rat(d as i64), r - 1)
}

/// One-part inputs: a single pattern with arguments `d ν_j`, and numbers
/// matching the one-part formula.
pub fn check_one_part(max_d: u64, max_n: usize, max_g: u32, opts: &VerifyOptions) -> CheckResult {
    let name = format!("one-part d<={max_d} n<={max_n} g<={max_g}");
    let inputs: Vec<HurwitzInput> = (1..=max_d)
        .flat_map(|d| {
            partitions_of(d)
                .into_iter()
                .filter(|p| p.len() <= max_n)
                .map(move |nu| HurwitzInput::new(vec![d], nu.parts().to_vec()).expect("degree d"))
        })
        .collect();
    let witness = inputs.par_iter().find_map_first(|h| {
        let cf = match closed_form(h, None) {
            Ok(cf) => cf,
            Err(e) => return Some(format!("{h}: {e}")),
        };
        if cf.num_patterns() != 1 {
            return Some(format!("{h}: {} patterns", cf.num_patterns()));
        }
        let mut args = cf.patterns[0].sigma_args(h);
        let mut expected: Vec<i128> = h.nu().iter().map(|&v| (h.d() * v) as i128).collect();
        args.sort_unstable();
        expected.sort_unstable();
        if args != expected {
            return Some(format!("{h}: arguments {args:?}, expected {expected:?}"));
        }
        for g in 0..=max_g {
            if h.n() == 1 && g == 0 {
                continue;
            }
            let r = h.r_for_genus(g as u64) as u32;
            let expected = one_part_value(h.d(), h.nu(), g);
            match closed_form_number(h, r, opts) {
                Ok(v) if v == expected => {}
                Ok(v) => return Some(format!("{h} g={g}: closed form {v}, formula {expected}")),
                Err(e) => return Some(format!("{h} g={g}: {e}")),
            }
        }
        None
    });
    CheckResult::from_witness(name, witness)
}

/// First witness over `items`, in order; errors count as witnesses.
fn first_witness<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Option<String> {
    items.par_iter().find_map_first(|x| match f(x) {
        Ok(w) => w,
        Err(e) => Some(format!("error: {e}")),
    })
}

fn partitions_up_to(max: u64) -> Vec<Partition> {
    (0..=max).flat_map(partitions_of).collect()
}

/// `[α_n, α_m] = n δ_{n,−m}` on every `v_λ` with `|λ| ≤ max_size`.
pub fn check_alpha_commutators(max_size: u64, max_index: i64) -> CheckResult {
    let name = format!("alpha commutators |lambda|<={max_size} |n|,|m|<={max_index}");
    let indices: Vec<i64> = (-max_index..=max_index).filter(|&k| k != 0).collect();
    let cutoff = max_size + 2 * max_index as u64;
    let witness = first_witness(&partitions_up_to(max_size), |lambda| {
        let v: WedgeVector = WedgeVector::basis(lambda.clone(), cutoff)?;
        for &a in &indices {
            for &b in &indices {
                let ab = apply_alpha(a, &apply_alpha(b, &v)?)?;
                let ba = apply_alpha(b, &apply_alpha(a, &v)?)?;
                let expected = if a == -b {
                    v.scale(&rat(a))
                } else {
                    WedgeVector::zero(cutoff)
                };
                if ab.minus(&ba) != expected {
                    return Ok(Some(format!("[α_{a}, α_{b}] on v_{lambda:?}")));
                }
            }
        }
        Ok(None)
    });
    CheckResult::from_witness(name, witness)
}

/// `∏ α_{−μ_i} |0⟩ = Σ_λ χ^λ_μ v_λ`.
pub fn check_murnaghan_nakayama(max_d: u64) -> CheckResult {
    let name = format!("Murnaghan-Nakayama on the wedge d<={max_d}");
    let witness = first_witness(&partitions_up_to(max_d), |mu| {
        let d = mu.size();
        let mut v: WedgeVector = WedgeVector::vacuum(d);
        for &p in mu.parts() {
            v = apply_alpha(-(p as i64), &v)?;
        }
        for lambda in partitions_of(d) {
            if v.coefficient(&lambda) != rat(character(&lambda, mu)?) {
                return Ok(Some(format!(
                    "coefficient of v_{lambda:?} in α_{{-{mu:?}}}|0⟩"
                )));
            }
        }
        Ok(None)
    });
    CheckResult::from_witness(name, witness)
}

/// `e^{z𝓕₂} α_{−n} e^{−z𝓕₂} = 𝓔_{−n}(nz)` on basis vectors.
pub fn check_e_conjugation(max_n: i64, cutoff: u64, order: i64) -> CheckResult {
    let name = format!("E conjugation n<={max_n} cutoff {cutoff} through z^{order}");
    let cases: Vec<(i64, Partition)> = (1..=max_n)
        .flat_map(|n| {
            partitions_up_to(cutoff.saturating_sub(n as u64))
                .into_iter()
                .map(move |l| (n, l))
        })
        .collect();
    let witness = first_witness(&cases, |(n, lambda)| {
        let n = *n;
        let v: WedgeVector = WedgeVector::basis(lambda.clone(), cutoff)?;
        let f_src = f2_eigenvalue(lambda);
        let mut expected = WedgeVector::zero(cutoff);
        for (mu, c) in apply_alpha(-n, &v)?.terms() {
            let shift = f2_eigenvalue(mu) - &f_src;
            expected.add_term(mu.clone(), exp_series(&shift, order).scale(c))?;
        }
        let got = apply_e(-n, &rat(n), &v.to_series(), order)?;
        Ok(
            (got.require_order(order)? != expected.require_order(order)?)
                .then(|| format!("n={n} on v_{lambda:?}")),
        )
    });
    CheckResult::from_witness(name, witness)
}

/// `[𝓔_r(az), 𝓔_s(bz)] = ς((rb − sa)z) 𝓔_{r+s}((a+b)z)` on basis vectors.
pub fn check_e_commutator(max_index: i64, max_size: u64, order: i64) -> CheckResult {
    let name = format!("E commutators |r|,|s|<={max_index} |lambda|<={max_size} through z^{order}");
    let scales = [(rat(1), rat(2)), (rat(3), rat(-1))];
    let indices: Vec<i64> = (-max_index..=max_index).filter(|&k| k != 0).collect();
    let witness = first_witness(&partitions_up_to(max_size), |lambda| {
        let cutoff = lambda.size() + 2 * max_index as u64;
        let v = WedgeVector::basis(lambda.clone(), cutoff)?.to_series();
        for (a, b) in &scales {
            for &r in &indices {
                for &s in &indices {
                    let rs = apply_e(r, a, &apply_e(s, b, &v, order)?, order)?;
                    let sr = apply_e(s, b, &apply_e(r, a, &v, order)?, order)?;
                    let lhs = rs.minus(&sr).require_order(order)?;
                    let arg = &rat(r) * b - &rat(s) * a;
                    let e = apply_e(r + s, &(a + b), &v, order + 1)?;
                    let rhs = e
                        .times(&sigma_series(&arg, order + 1))
                        .require_order(order)?;
                    if lhs != rhs {
                        return Ok(Some(format!("r={r} s={s} a={a} b={b} on v_{lambda:?}")));
                    }
                }
            }
        }
        Ok(None)
    });
    CheckResult::from_witness(name, witness)
}

/// `⟨∏α_{μ_i} 𝓕₂^r ∏α_{−ν_j}⟩ / ∏μ∏ν` against the character sum.
pub fn check_wedge_hurwitz(max_d: u64, max_r: u32) -> CheckResult {
    let name = format!("wedge Hurwitz numbers d<={max_d} r<={max_r}");
    let pairs: Vec<(Partition, Partition)> = (1..=max_d)
        .flat_map(|d| {
            let parts = partitions_of(d);
            parts
                .iter()
                .flat_map(|mu| parts.iter().map(move |nu| (mu.clone(), nu.clone())))
                .collect::<Vec<_>>()
        })
        .collect();
    let witness = first_witness(&pairs, |(mu, nu)| {
        let h = HurwitzInput::from_partitions(mu, nu)?;
        for r in 0..=max_r {
            let via = hurwitz_via_wedge(mu, nu, r)?;
            let oracle = hurwitz_oracle(&h, r);
            if via != oracle {
                return Ok(Some(format!("{h} r={r}: wedge {via}, oracle {oracle}")));
            }
        }
        Ok(None)
    });
    CheckResult::from_witness(name, witness)
}

/// Chamber representatives used by the polynomiality suite, with the largest
/// genus to check and whether to interpolate.
pub fn spp_cases() -> Vec<(HurwitzInput, u32, bool)> {
    let mut cases: Vec<(HurwitzInput, u32, bool)> = chamber_representatives(2, 2, 12)
        .into_values()
        .map(|h| (h, 2, true))
        .collect();
    for (m, n) in [(2, 3), (3, 2)] {
        cases.extend(
            chamber_representatives(m, n, 12)
                .into_values()
                .take(3)
                .map(|h| (h, 1, true)),
        );
    }
    for n in 1..=4 {
        let mut nu = vec![1u64; n];
        nu[0] = 2 * n as u64 + 1;
        let d = nu.iter().sum();
        cases.push((HurwitzInput::new(vec![d], nu).expect("degree d"), 3, false));
    }
    cases
}

/// Polynomiality checks on the chamber of `h` for `g ≤ max_g`.
pub fn check_chamber(
    h: &HurwitzInput,
    max_g: u32,
    interpolate: bool,
    opts: &VerifyOptions,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut polys = Vec::new();
    let samples = match sample_in_chamber(h, 10, opts.seed) {
        Ok(s) => s,
        Err(e) => return vec![error_check(&format!("spp {h}"), e)],
    };
    let first_g = if h.m() == 1 && h.n() == 1 { 1 } else { 0 };
    for g in first_g..=max_g {
        let cp = match symbolic_polynomial(h, g) {
            Ok(cp) => cp,
            Err(e) => {
                out.push(error_check(&format!("symbolic {h} g={g}"), e));
                continue;
            }
        };
        match verify_spp(&cp, &samples) {
            Ok(report) => out.extend(report.checks.into_iter().map(|mut c| {
                c.name = format!("{} {}", c.name, report.subject);
                c
            })),
            Err(e) => out.push(error_check(&format!("spp {h} g={g}"), e)),
        }
        if interpolate {
            let name = format!("interpolation {h} g={g}");
            out.push(match interpolate_in_chamber(h, g, 10, opts.seed) {
                Ok((p, _)) if p == cp.polynomial => CheckResult::pass(name),
                Ok(_) => CheckResult::fail(
                    name,
                    "oracle interpolant differs from the symbolic polynomial",
                ),
                Err(e) => error_check(&name, e),
            });
        }
        polys.push(cp);
    }
    if first_g == 0 && max_g >= 1 {
        let name = format!("bernoulli relation with r!/(r-2k)! {h} g<={max_g}");
        out.push(match check_bernoulli_relation(&polys) {
            Ok(checks) => CheckResult::from_witness(
                name,
                checks
                    .iter()
                    .find(|c| !c.with_falling_factorial)
                    .map(|c| format!("g={} k={}", c.g, c.k)),
            ),
            Err(e) => error_check(&name, e),
        });
    }
    out
}

/// Targets and walls for the wall-crossing suite. Each target lies on the
/// positive side of its wall.
pub fn wallcross_cases() -> Vec<(HurwitzInput, Wall)> {
    let h = |mu: &[u64], nu: &[u64]| HurwitzInput::new(mu.to_vec(), nu.to_vec()).expect("valid");
    vec![
        (h(&[6, 1], &[4, 3]), Wall { i: 1, j: 1 }),
        (h(&[7, 2], &[3, 6]), Wall { i: 1, j: 2 }),
        (h(&[5, 3, 1], &[7, 2]), Wall { i: 3, j: 1 }),
        (h(&[8, 3], &[7, 2, 2]), Wall { i: 1, j: 1 }),
    ]
}

/// Closed-form difference against the `ς`-ratio product across one wall.
pub fn check_wall_crossing(
    target: &HurwitzInput,
    wall: Wall,
    order: i64,
    opts: &VerifyOptions,
) -> CheckResult {
    let name = format!("wall crossing {target} across {wall} through z^{order}");
    let run = || -> Result<Option<String>> {
        let spec = WallCrossingSpec::new(target, wall)?;
        let p1 = sample_across(target, wall, opts.seed)?;
        let lhs = if opts.sign_bug {
            let a = closed_form_series(target, target, order, opts)?;
            let b = closed_form_series(&p1, target, order, opts)?;
            &a - &b
        } else {
            wall_crossing_lhs(target, wall, &p1, target, order)?
        };
        let rhs = wall_crossing_rhs(target, wall, order)?;
        if lhs != rhs {
            let k = (0..=order)
                .find(|&k| lhs.coefficient(k).ok() != rhs.coefficient(k).ok())
                .unwrap_or(order);
            return Ok(Some(format!(
                "p1={p1}: z^{k} coefficients {} vs {}",
                lhs.coefficient(k)?,
                rhs.coefficient(k)?
            )));
        }
        let pre = wall_crossing_prefactor(&spec, target.d(), order)?;
        let limit = Rational::new(1.into(), spec.delta.into());
        if pre.coefficient(0)? != limit {
            return Ok(Some(format!("prefactor starts at {}", pre.coefficient(0)?)));
        }
        Ok(None)
    };
    match run() {
        Ok(w) => CheckResult::from_witness(name, w),
        Err(e) => error_check(&name, e),
    }
}
