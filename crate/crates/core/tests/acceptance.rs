//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use hurwitz_core::chambers::{
    chamber_representatives, check_bernoulli_relation, interpolate_in_chamber, sample_across,
    sample_in_chamber, symbolic_polynomial, verify_spp, wall_crossing_lhs, wall_crossing_rhs,
    ChamberPolynomial, Wall,
};
use hurwitz_core::partitions::{find_wall, hurwitz_oracle, partitions_of};
use hurwitz_core::patterns::{closed_form, hurwitz_number, is_totally_negative, product_formula};
use hurwitz_core::rational::{factorial, rat, ratio};
use hurwitz_core::series::{inv_sigma_series, sigma_series};
use hurwitz_core::verify::{
    check_alpha_commutators, check_e_commutator, check_e_conjugation, check_murnaghan_nakayama,
    check_wall_crossing, check_wedge_hurwitz, small_inputs, VerifyOptions,
};
use hurwitz_core::{HurwitzInput, LaurentSeries, Ordering, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rayon::prelude::*;

const ORDER: i64 = 25;

type Outcome = Result<String, String>;

fn input(mu: &[u64], nu: &[u64]) -> HurwitzInput {
    HurwitzInput::new(mu.to_vec(), nu.to_vec()).expect("valid input")
}

/// `ς(az)` through `z^order`.
fn sig(a: i64, order: i64) -> LaurentSeries {
    sigma_series(&rat(a), order)
}

/// `1/ς(az)` through `z^order`.
fn inv_sig(a: i64, order: i64) -> LaurentSeries {
    inv_sigma_series(&rat(a), order).expect("nonzero argument")
}

fn product(factors: &[LaurentSeries], order: i64) -> LaurentSeries {
    let mut acc = LaurentSeries::one();
    for f in factors {
        acc = &acc * f;
    }
    acc.require_order(order).expect("enough precision")
}

fn same_through(a: &LaurentSeries, b: &LaurentSeries, order: i64) -> bool {
    a.agrees_through(b, order).unwrap_or(false)
}

fn first_failure<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Option<String> + Sync + Send,
) -> Option<String> {
    items.par_iter().find_map_first(f)
}

fn oracle_equivalence() -> Outcome {
    let inputs = small_inputs(7, 3);
    let failure = first_failure(&inputs, |h| {
        (0..=3).find_map(|g| {
            let r = h.r_for_genus(g) as u32;
            let expected = hurwitz_oracle(h, r);
            match hurwitz_number(h, r) {
                Ok(v) if v == expected => None,
                Ok(v) => Some(format!("{h} r={r}: {v} vs oracle {expected}")),
                Err(e) => Some(format!("{h} r={r}: {e}")),
            }
        })
    });
    match failure {
        None => Ok(format!("{} off-wall inputs, g<=3", inputs.len())),
        Some(w) => Err(w),
    }
}

/// `r! d^{r−1} [t^{2g}] ∏S(ν_j t) / S(t)` with `S(x) = Σ x^{2k}/(4^k (2k+1)!)`.
fn one_part_formula(d: u64, nu: &[u64], g: u32) -> Rational {
    let order = 2 * g as i64;
    let s = |a: u64| {
        let coeffs = (0..=order)
            .map(|k| {
                if k % 2 == 1 {
                    return rat(0);
                }
                let num = Rational::from_integer(num_bigint::BigInt::from(a).pow(k as u32));
                let den = Rational::from_integer(
                    num_bigint::BigInt::from(4).pow(k as u32 / 2) * factorial(k as u64 + 1),
                );
                num / den
            })
            .collect();
        LaurentSeries::new(0, coeffs, order)
    };
    let mut prod = s(1).reciprocal(order).expect("unit");
    for &v in nu {
        prod = &prod * &s(v);
    }
    let r = 2 * g as i64 + nu.len() as i64 - 1;
    let d_pow = if r >= 1 {
        Rational::from_integer(num_bigint::BigInt::from(d).pow(r as u32 - 1))
    } else {
        ratio(1, d as i64)
    };
    prod.coefficient(2 * g as i64).expect("within order")
        * Rational::from_integer(factorial(r as u64))
        * d_pow
}

fn one_part() -> Outcome {
    let inputs: Vec<HurwitzInput> = (1..=8u64)
        .flat_map(|d| {
            partitions_of(d)
                .into_iter()
                .filter(|p| p.len() <= 4)
                .map(move |nu| input(&[d], nu.parts()))
        })
        .collect();
    let failure = first_failure(&inputs, |h| {
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
        (0..=3).find_map(|g| {
            let r = h.r_for_genus(g as u64) as u32;
            let expected = one_part_formula(h.d(), h.nu(), g);
            match hurwitz_number(h, r) {
                Ok(v) if v == expected => None,
                Ok(v) => Some(format!("{h} g={g}: {v} vs formula {expected}")),
                Err(e) => Some(format!("{h} g={g}: {e}")),
            }
        })
    });
    match failure {
        None => Ok(format!("{} one-part inputs, g<=3", inputs.len())),
        Some(w) => Err(w),
    }
}

fn two_plus_two() -> Outcome {
    let (m1, m2, n1, n2) = (5i64, 2, 4, 3);
    let d = m1 + m2;
    let h = input(&[5, 2], &[4, 3]);
    let o = ORDER + 1;
    let parts = ratio(1, m1 * m2 * n1 * n2);
    let ugly = product(
        &[
            &product(
                &[sig(n2 * m2, o), sig(m1 * n1, o), sig(m1 * n2 - m2 * n1, o)],
                o,
            ) + &product(&[sig(m2 * n1, o), sig(m1 * n1, o), sig(d * n2, o)], o),
            inv_sig(d, ORDER),
        ],
        ORDER,
    )
    .scale(&parts);
    let nice = product(
        &[
            sig(m1 * n1, o),
            sig(m1 * n2, o),
            sig(m2 * d, o),
            inv_sig(d, ORDER),
        ],
        ORDER,
    )
    .scale(&parts);

    let mut lines = Vec::new();
    for (text, expected_terms, formula) in [("1,2/1,2", 2, &ugly), ("2,1/1,2", 1, &nice)] {
        let ordering = Ordering::parse(text).map_err(|e| e.to_string())?;
        let cf = closed_form(&h, Some(&ordering)).map_err(|e| e.to_string())?;
        if cf.num_patterns() != expected_terms {
            return Err(format!("ordering {text}: {} patterns", cf.num_patterns()));
        }
        let series = cf.evaluate_series(&h, ORDER).map_err(|e| e.to_string())?;
        if !same_through(&series, formula, ORDER) {
            return Err(format!(
                "ordering {text}: series differs from the printed form"
            ));
        }
        lines.push(series);
    }
    if !same_through(&lines[0], &lines[1], ORDER) {
        return Err("the two orderings disagree".into());
    }
    Ok(format!(
        "{h}: 2-term and 1-term forms equal through z^{ORDER}"
    ))
}

/// `ς(a−b)ς(c) + ς(b−c)ς(a) + ς(c−a)ς(b)` through `z^order`.
fn cyclic(a: i64, b: i64, c: i64, order: i64) -> LaurentSeries {
    let t = |x: i64, y: i64| product(&[sig(x, order), sig(y, order)], order);
    &(&t(a - b, c) + &t(b - c, a)) + &t(c - a, b)
}

fn cyclic_identity() -> Outcome {
    let config = Config {
        cases: 20,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let triple = (-60i64..=60, -60i64..=60, -60i64..=60);
    runner
        .run(&triple, |(a, b, c)| {
            prop_assert!(cyclic(a, b, c, ORDER).is_zero(), "fails at ({a},{b},{c})");
            Ok(())
        })
        .map(|()| format!("20 random triples through z^{ORDER}"))
        .map_err(|e| e.to_string())
}

fn spp_cases() -> Vec<(HurwitzInput, u32)> {
    let mut cases: Vec<(HurwitzInput, u32)> = chamber_representatives(2, 2, 12)
        .into_values()
        .map(|h| (h, 2))
        .collect();
    for (m, n) in [(2, 3), (3, 2)] {
        cases.extend(
            chamber_representatives(m, n, 12)
                .into_values()
                .take(3)
                .map(|h| (h, 1)),
        );
    }
    cases
}

fn polynomiality(polys: &mut Vec<Vec<ChamberPolynomial>>) -> Outcome {
    let cases = spp_cases();
    let results: Vec<Result<Vec<ChamberPolynomial>, String>> = cases
        .par_iter()
        .map(|(h, max_g)| {
            let samples = sample_in_chamber(h, 10, 1).map_err(|e| format!("{h}: {e}"))?;
            let mut out = Vec::new();
            for g in 0..=*max_g {
                let cp = symbolic_polynomial(h, g).map_err(|e| format!("{h} g={g}: {e}"))?;
                let report = verify_spp(&cp, &samples).map_err(|e| format!("{h} g={g}: {e}"))?;
                if let Some(c) = report.checks.iter().find(|c| !c.passed) {
                    return Err(c.line());
                }
                let (p, _) =
                    interpolate_in_chamber(h, g, 10, 1).map_err(|e| format!("{h} g={g}: {e}"))?;
                if p != cp.polynomial {
                    return Err(format!(
                        "{h} g={g}: interpolant differs from symbolic result"
                    ));
                }
                out.push(cp);
            }
            Ok(out)
        })
        .collect();
    for r in results {
        polys.push(r?);
    }
    Ok(format!(
        "{} chambers: degrees, parity, lowest degree, positivity, interpolation",
        cases.len()
    ))
}

fn bernoulli(polys: &[Vec<ChamberPolynomial>]) -> Outcome {
    let mut total = 0;
    let mut literal_failures = Vec::new();
    let mut corrected_failures = 0;
    for chamber in polys {
        let checks = check_bernoulli_relation(chamber).map_err(|e| e.to_string())?;
        for c in checks {
            total += 1;
            if !c.plain {
                literal_failures.push(format!("g={} k={}", c.g, c.k));
            }
            if !c.with_falling_factorial {
                corrected_failures += 1;
            }
        }
    }
    if total == 0 {
        return Err("no (g, k) pairs with k >= 1".into());
    }
    if literal_failures.is_empty() {
        Ok(format!("{total} (g, k) pairs"))
    } else {
        Err(format!(
            "literal factor fails on {}/{total} (g, k) pairs (first {}); \
             with the extra factor r!/(r-2k)! it holds on {}/{total}",
            literal_failures.len(),
            literal_failures[0],
            total - corrected_failures
        ))
    }
}

fn wall_crossing() -> Outcome {
    let cases = [
        (input(&[6, 1], &[4, 3]), Wall { i: 1, j: 1 }),
        (input(&[7, 2], &[3, 6]), Wall { i: 1, j: 2 }),
        (input(&[5, 3, 1], &[7, 2]), Wall { i: 3, j: 1 }),
        (input(&[8, 3], &[7, 2, 2]), Wall { i: 1, j: 1 }),
    ];
    let opts = VerifyOptions::default();
    for (target, wall) in &cases {
        let c = check_wall_crossing(target, *wall, ORDER, &opts);
        if !c.passed {
            return Err(c.line());
        }
    }

    // The 2+2 worked example crosses from the chamber where μ_1 is largest
    // to the one where ν_1 is largest. δ = μ_2 − ν_2 increases along that
    // path, so the wall is oriented as W_{{2},{2}} and δ < 0 at the target.
    let (target, reversed) = &cases[0];
    let wall = Wall { i: 2, j: 2 };
    let (m1, m2, n1, n2) = (6i64, 1, 4, 3);
    let d = m1 + m2;
    let delta = m2 - n2;
    let o = ORDER + 1;
    let parts = ratio(1, m1 * m2 * n1 * n2);
    let far = sample_across(target, *reversed, 0).map_err(|e| e.to_string())?;
    let lhs = wall_crossing_lhs(target, wall, target, &far, ORDER).map_err(|e| e.to_string())?;
    let rhs = wall_crossing_rhs(target, *reversed, ORDER)
        .map_err(|e| e.to_string())?
        .scale(&rat(-1));
    let bracket = &product(&[sig(n1 * m2, o), sig(n2 * d, o)], o)
        - &product(&[sig(m1 * n2, o), sig(m2 * d, o)], o);
    let printed_lhs = product(
        &[sig(m1 * n1, o), inv_sig(d, ORDER), bracket.clone()],
        ORDER,
    )
    .scale(&parts);
    let printed_rhs = product(
        &[
            sig(m1 * n1, o),
            sig(m2 * n2, o),
            sig(delta * d, o),
            inv_sig(d, ORDER),
        ],
        ORDER,
    )
    .scale(&parts);
    if !same_through(&lhs, &printed_lhs, ORDER) {
        return Err(format!(
            "{target}: difference of closed forms is not the printed one"
        ));
    }
    if !same_through(&rhs, &printed_rhs, ORDER) {
        return Err(format!("{target}: product side is not the printed one"));
    }
    let reduced = &bracket - &product(&[sig(m2 * n2, o), sig(delta * d, o)], o);
    let (a, b, c) = (m2 * n2, d * m2, d * n2);
    if !same_through(&reduced, &LaurentSeries::zero(o), o) || !cyclic(a, b, c, o).is_zero() {
        return Err(format!(
            "reduction to the cyclic identity at ({a},{b},{c}) fails"
        ));
    }
    Ok(format!(
        "{} walls through z^{ORDER}; 2+2 case reduces to the cyclic identity at ({a},{b},{c})",
        cases.len()
    ))
}

fn fock_identities() -> Outcome {
    let checks = [
        check_alpha_commutators(8, 4),
        check_murnaghan_nakayama(6),
        check_e_conjugation(4, 8, 6),
        check_e_commutator(3, 5, 5),
        check_wedge_hurwitz(5, 4),
    ];
    match checks.iter().find(|c| !c.passed) {
        None => Ok(checks
            .iter()
            .map(|c| c.name.as_str())
            .collect::<Vec<_>>()
            .join("; ")),
        Some(c) => Err(c.line()),
    }
}

fn singleton_characterization() -> Outcome {
    let mut inputs = Vec::new();
    for d in 2..=10 {
        let parts = partitions_of(d);
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            for mu in parts.iter().filter(|p| p.len() == m) {
                for nu in parts.iter().filter(|p| p.len() == n) {
                    let h = HurwitzInput::from_partitions(mu, nu).expect("same degree");
                    if find_wall(&h).is_none() {
                        inputs.push(h);
                    }
                }
            }
        }
    }
    let singletons = std::sync::atomic::AtomicUsize::new(0);
    let failure = first_failure(&inputs, |h| {
        let cf = match closed_form(h, None) {
            Ok(cf) => cf,
            Err(e) => return Some(format!("{h}: {e}")),
        };
        let negative = match is_totally_negative(h) {
            Ok(b) => b,
            Err(e) => return Some(format!("{h}: {e}")),
        };
        let single = cf.num_patterns() == 1;
        if single != negative {
            return Some(format!(
                "{h}: {} patterns, totally negative {negative}",
                cf.num_patterns()
            ));
        }
        if single {
            singletons.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            let args = cf.patterns[0].sigma_args(h);
            match product_formula(h) {
                Ok(p) if p == args => {}
                Ok(p) => return Some(format!("{h}: product formula {p:?}, pattern {args:?}")),
                Err(e) => return Some(format!("{h}: {e}")),
            }
        }
        None
    });
    match failure {
        None => Ok(format!(
            "{} off-wall inputs, {} with a single pattern",
            inputs.len(),
            singletons.into_inner()
        )),
        Some(w) => Err(w),
    }
}

fn report(number: u32, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("criterion {number} PASS {title}: {detail} [{secs:.1}s]");
            true
        }
        Err(witness) => {
            println!("criterion {number} FAIL {title}: {witness} [{secs:.1}s]");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut polys = Vec::new();
    let results = [
        report(1, "oracle equivalence", oracle_equivalence),
        report(2, "one-part formula", one_part),
        report(3, "2+2 orderings", two_plus_two),
        report(4, "cyclic sigma identity", cyclic_identity),
        report(5, "strong piecewise polynomiality", || {
            polynomiality(&mut polys)
        }),
        report(6, "bernoulli relation", || bernoulli(&polys)),
        report(7, "wall crossing", wall_crossing),
        report(8, "fock space identities", fock_identities),
        report(
            9,
            "singleton patterns and product formula",
            singleton_characterization,
        ),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!(
        "acceptance: {}/{} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
