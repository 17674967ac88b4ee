//! Normal ordering of `𝓔`-operators and the closed form it produces.
//!
//! The vacuum expectation `⟨∏ 𝓔(i,∅) ∏ 𝓔(∅,j)⟩` is evaluated by repeatedly
//! taking the rightmost operator of positive energy and either passing it to
//! the right or replacing the adjacent pair by its commutator. A branch dies
//! once a positive operator reaches the right end; it survives when only
//! `𝓔([m],[n]) = 𝓔_0(dz)` is left. Each surviving branch is a commutation
//! pattern and contributes one product of `ς` factors:
//!
//! `H_{μ,ν}(z) = 1/(∏μ_i ∏ν_j ς(dz)) · Σ_P ∏_ℓ ς(z(|μ_I||ν_L| − |μ_K||ν_J|))`.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{find_wall, format_index_set, HurwitzInput};
use crate::rational::{factorial, from_i128, Rational};
use crate::series::{inv_sigma_series, sigma_series, LaurentSeries, MultiPoly};

/// Bitmask of 0-based part indices.
pub type IndexSet = u32;

fn indices(set: IndexSet) -> Vec<usize> {
    (0..32).filter(|i| set & (1 << i) != 0).collect()
}

fn from_indices(idx: &[usize]) -> IndexSet {
    idx.iter().fold(0, |acc, &i| acc | (1 << i))
}

/// `𝓔(I, J) = 𝓔_{|μ_I| − |ν_J|}(z|ν_J|)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ESymbol {
    pub mu: IndexSet,
    pub nu: IndexSet,
}

impl ESymbol {
    pub fn energy(&self, input: &HurwitzInput) -> i64 {
        input.mu_sum(self.mu) as i64 - input.nu_sum(self.nu) as i64
    }
}

/// One commutator `[𝓔(I,J), 𝓔(K,L)]` taken by the algorithm.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Step {
    pub i: IndexSet,
    pub j: IndexSet,
    pub k: IndexSet,
    pub l: IndexSet,
}

impl Step {
    /// `|μ_I||ν_L| − |μ_K||ν_J|` at `at`.
    pub fn sigma_arg(&self, at: &HurwitzInput) -> i128 {
        at.mu_sum(self.i) as i128 * at.nu_sum(self.l) as i128
            - at.mu_sum(self.k) as i128 * at.nu_sum(self.j) as i128
    }

    /// The same quadratic form over `μ_1..μ_m, ν_1..ν_{n-1}`.
    pub fn sigma_form(&self, m: usize, n: usize) -> MultiPoly {
        let mu = |set: IndexSet| subset_form(set, 0, m, n, true);
        let nu = |set: IndexSet| subset_form(set, m, m, n, false);
        &(&mu(self.i) * &nu(self.l)) - &(&mu(self.k) * &nu(self.j))
    }
}

/// `|μ_S|` or `|ν_S|` as a linear form, with `ν_n` eliminated.
fn subset_form(set: IndexSet, offset: usize, m: usize, n: usize, is_mu: bool) -> MultiPoly {
    let one = Rational::from_integer(1.into());
    let mut terms = Vec::new();
    for idx in indices(set) {
        if !is_mu && idx == n - 1 {
            // ν_n = Σμ − Σ_{j<n} ν_j
            terms.extend((0..m).map(|i| (i, one.clone())));
            terms.extend((0..n - 1).map(|j| (m + j, -one.clone())));
        } else {
            terms.push((offset + idx, one.clone()));
        }
    }
    MultiPoly::linear(&terms)
}

/// The linear form `d = Σ μ_i`.
pub fn degree_form(m: usize) -> MultiPoly {
    let one = Rational::from_integer(1.into());
    MultiPoly::linear(&(0..m).map(|i| (i, one.clone())).collect::<Vec<_>>())
}

/// `∏μ_i ∏ν_j` as a polynomial in the reduced variables.
pub fn parts_product_form(m: usize, n: usize) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for i in 0..m {
        acc = &acc * &MultiPoly::var(i);
    }
    for j in 0..n {
        acc = &acc * &subset_form(1 << j, m, m, n, false);
    }
    acc
}

/// A surviving branch: the `m + n − 1` commutators it took, in order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CommutationPattern {
    pub steps: Vec<Step>,
}

impl CommutationPattern {
    pub fn sigma_args(&self, at: &HurwitzInput) -> Vec<i128> {
        self.steps.iter().map(|s| s.sigma_arg(at)).collect()
    }
}

/// Left-to-right order of the operators: all `μ` operators, then all `ν`
/// operators, each listed by 0-based part index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ordering {
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
}

impl Ordering {
    /// Center-out labelling `𝓔_{μ_m} ⋯ 𝓔_{μ_1} 𝓔_{−ν_1} ⋯ 𝓔_{−ν_n}`.
    pub fn center_out(m: usize, n: usize) -> Self {
        Ordering {
            mu: (0..m).rev().collect(),
            nu: (0..n).collect(),
        }
    }

    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        let is_perm = |v: &[usize], k: usize| {
            let mut s = v.to_vec();
            s.sort_unstable();
            s == (0..k).collect::<Vec<_>>()
        };
        if !is_perm(&self.mu, m) || !is_perm(&self.nu, n) {
            return Err(Error::InvalidOrdering(format!(
                "{self} is not a pair of permutations of [{m}] and [{n}]"
            )));
        }
        Ok(())
    }

    /// Parses `"2,1/1,2"` (1-based; `μ` order, slash, `ν` order).
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidOrdering(format!("expected \"mu-order/nu-order\", got {s:?}"));
        let (a, b) = s.split_once('/').ok_or_else(bad)?;
        let side = |t: &str| -> Result<Vec<usize>> {
            t.split(',')
                .map(|x| {
                    let v: usize = x.trim().parse().map_err(|_| bad())?;
                    v.checked_sub(1).ok_or_else(bad)
                })
                .collect()
        };
        Ok(Ordering {
            mu: side(a)?,
            nu: side(b)?,
        })
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}/{}", join(&self.mu), join(&self.nu))
    }
}

type Completions = Rc<Vec<Vec<Step>>>;

struct Explorer<'a> {
    input: &'a HurwitzInput,
    full: ESymbol,
    memo: HashMap<Vec<ESymbol>, Completions>,
}

impl Explorer<'_> {
    fn measure(&self, state: &[ESymbol]) -> (usize, usize) {
        let slots = state
            .iter()
            .enumerate()
            .filter(|(_, s)| s.energy(self.input) > 0)
            .map(|(i, _)| state.len() - 1 - i)
            .sum();
        (state.len(), slots)
    }

    fn explore(&mut self, state: &[ESymbol]) -> Result<Completions> {
        if let Some(c) = self.memo.get(state) {
            return Ok(c.clone());
        }
        let result = if state.len() == 1 {
            debug_assert_eq!(state[0], self.full);
            vec![Vec::new()]
        } else {
            let p = state
                .iter()
                .rposition(|s| s.energy(self.input) > 0)
                .expect("an energy-zero product of proper symbols has a positive one");
            if p + 1 == state.len() {
                Vec::new()
            } else {
                let (a, b) = (state[p], state[p + 1]);
                let mut out = Vec::new();

                let mut passing = state.to_vec();
                passing.swap(p, p + 1);
                debug_assert!(self.measure(&passing) < self.measure(state));
                out.extend(self.explore(&passing)?.iter().cloned());

                let merged = ESymbol {
                    mu: a.mu | b.mu,
                    nu: a.nu | b.nu,
                };
                if merged != self.full && merged.energy(self.input) == 0 {
                    return Err(Error::OnWall(format!(
                        "W_{{{},{}}}",
                        format_index_set(merged.mu),
                        format_index_set(merged.nu)
                    )));
                }
                let mut canceling = state.to_vec();
                canceling[p] = merged;
                canceling.remove(p + 1);
                debug_assert!(self.measure(&canceling) < self.measure(state));
                let step = Step {
                    i: a.mu,
                    j: a.nu,
                    k: b.mu,
                    l: b.nu,
                };
                for tail in self.explore(&canceling)?.iter() {
                    let mut steps = Vec::with_capacity(tail.len() + 1);
                    steps.push(step);
                    steps.extend_from_slice(tail);
                    out.push(steps);
                }
                out
            }
        };
        let rc = Rc::new(result);
        self.memo.insert(state.to_vec(), rc.clone());
        Ok(rc)
    }
}

fn wall_error(input: &HurwitzInput) -> Result<()> {
    if let Some((i, j)) = find_wall(input) {
        return Err(Error::OnWall(format!(
            "W_{{{},{}}}",
            format_index_set(i),
            format_index_set(j)
        )));
    }
    Ok(())
}

/// All nonvanishing commutation patterns for `input` under `ordering`,
/// passing branches listed before canceling ones.
pub fn run_algorithm(input: &HurwitzInput, ordering: &Ordering) -> Result<Vec<CommutationPattern>> {
    ordering.validate(input.m(), input.n())?;
    wall_error(input)?;
    let mut state: Vec<ESymbol> = ordering
        .mu
        .iter()
        .map(|&i| ESymbol { mu: 1 << i, nu: 0 })
        .collect();
    state.extend(ordering.nu.iter().map(|&j| ESymbol { mu: 0, nu: 1 << j }));
    let full = ESymbol {
        mu: (1 << input.m()) - 1,
        nu: (1 << input.n()) - 1,
    };
    let mut explorer = Explorer {
        input,
        full,
        memo: HashMap::new(),
    };
    let completions = explorer.explore(&state)?;
    Ok(completions
        .iter()
        .map(|steps| CommutationPattern {
            steps: steps.clone(),
        })
        .collect())
}

/// Closed form for the `m + n` point series in one chamber.
#[derive(Clone, PartialEq, Debug)]
pub struct ClosedForm {
    pub input: HurwitzInput,
    pub ordering: Ordering,
    pub patterns: Vec<CommutationPattern>,
}

/// Closed form under `ordering` (center-out when `None`).
pub fn closed_form(input: &HurwitzInput, ordering: Option<&Ordering>) -> Result<ClosedForm> {
    let ordering = ordering
        .cloned()
        .unwrap_or_else(|| Ordering::center_out(input.m(), input.n()));
    let patterns = run_algorithm(input, &ordering)?;
    Ok(ClosedForm {
        input: input.clone(),
        ordering,
        patterns,
    })
}

impl ClosedForm {
    pub fn num_patterns(&self) -> usize {
        self.patterns.len()
    }

    /// `Σ_P ∏_ℓ ς(Q_ℓ z)` at `at`, through `z^order`.
    pub fn pattern_sum(&self, at: &HurwitzInput, order: i64) -> Result<LaurentSeries> {
        self.input.same_shape(at)?;
        let mut total = LaurentSeries::zero(order);
        for p in &self.patterns {
            let mut prod = LaurentSeries::one();
            for arg in p.sigma_args(at) {
                prod = &prod * &sigma_series(&from_i128(arg), order);
            }
            total = &total + &prod;
        }
        Ok(total.truncated(order))
    }

    /// The series the closed form defines, evaluated at `at` (which may lie
    /// in another chamber), exact through `z^order`.
    pub fn evaluate_series(&self, at: &HurwitzInput, order: i64) -> Result<LaurentSeries> {
        let sum = self.pattern_sum(at, order + 1)?;
        let d = Rational::from_integer(at.d().into());
        let pole = inv_sigma_series(&d, order)?;
        let denom: Rational = at
            .mu()
            .iter()
            .chain(at.nu())
            .map(|&p| Rational::from_integer(p.into()))
            .product();
        let series = (&sum * &pole).scale(&denom.recip());
        debug_assert_eq!(series.pole_order(), 0);
        series.require_order(order)
    }

    pub fn to_json(&self) -> ClosedFormJson {
        ClosedFormJson {
            mu: self.input.mu().to_vec(),
            nu: self.input.nu().to_vec(),
            ordering: OrderingJson {
                mu: self.ordering.mu.iter().map(|i| i + 1).collect(),
                nu: self.ordering.nu.iter().map(|i| i + 1).collect(),
            },
            patterns: self
                .patterns
                .iter()
                .map(|p| PatternJson {
                    steps: p
                        .steps
                        .iter()
                        .map(|s| StepJson {
                            i: one_based(s.i),
                            j: one_based(s.j),
                            k: one_based(s.k),
                            l: one_based(s.l),
                        })
                        .collect(),
                    sigma_args: p.sigma_args(&self.input),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ClosedFormJson) -> Result<Self> {
        let input = HurwitzInput::new(json.mu.clone(), json.nu.clone())?;
        let zero_based = |v: &[usize]| -> Result<Vec<usize>> {
            v.iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or_else(|| Error::Parse("indices are 1-based".into()))
                })
                .collect()
        };
        let ordering = Ordering {
            mu: zero_based(&json.ordering.mu)?,
            nu: zero_based(&json.ordering.nu)?,
        };
        ordering.validate(input.m(), input.n())?;
        let patterns = json
            .patterns
            .iter()
            .map(|p| {
                let steps = p
                    .steps
                    .iter()
                    .map(|s| {
                        Ok(Step {
                            i: from_indices(&zero_based(&s.i)?),
                            j: from_indices(&zero_based(&s.j)?),
                            k: from_indices(&zero_based(&s.k)?),
                            l: from_indices(&zero_based(&s.l)?),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(CommutationPattern { steps })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosedForm {
            input,
            ordering,
            patterns,
        })
    }

    /// Plain-text rendering with numeric `ς` arguments.
    pub fn to_text(&self) -> String {
        let denom: Vec<String> = self
            .input
            .mu()
            .iter()
            .chain(self.input.nu())
            .map(u64::to_string)
            .collect();
        let terms: Vec<String> = self
            .patterns
            .iter()
            .map(|p| {
                p.sigma_args(&self.input)
                    .iter()
                    .map(|a| format!("ς({a}z)"))
                    .collect::<Vec<_>>()
                    .join("·")
            })
            .collect();
        format!(
            "H_{}(z) = [{}] / ({}·ς({}z))",
            self.input,
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            },
            denom.join("·"),
            self.input.d()
        )
    }

    /// LaTeX with symbolic arguments, e.g. `\varsigma(\mu_1\nu_2 z)`.
    pub fn to_latex_symbolic(&self) -> String {
        let (m, n) = (self.input.m(), self.input.n());
        let denom: Vec<String> = (1..=m)
            .map(|i| format!("\\mu_{{{i}}}"))
            .chain((1..=n).map(|j| format!("\\nu_{{{j}}}")))
            .collect();
        let terms: Vec<String> = self
            .patterns
            .iter()
            .map(|p| {
                p.steps
                    .iter()
                    .map(|s| format!("\\varsigma\\big(z({})\\big)", latex_det(s, m, n)))
                    .collect::<String>()
            })
            .collect();
        format!(
            "H_{{\\mu,\\nu}}(z) = \\frac{{1}}{{{}\\,\\varsigma(dz)}}\\left({}\\right)",
            denom.join(""),
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        )
    }

    /// LaTeX with the arguments evaluated at the stored point.
    pub fn to_latex_numeric(&self) -> String {
        let denom: Vec<String> = self
            .input
            .mu()
            .iter()
            .chain(self.input.nu())
            .map(u64::to_string)
            .collect();
        let terms: Vec<String> = self
            .patterns
            .iter()
            .map(|p| {
                p.sigma_args(&self.input)
                    .iter()
                    .map(|a| format!("\\varsigma({a}z)"))
                    .collect::<String>()
            })
            .collect();
        format!(
            "H_{{{}}}(z) = \\frac{{{}}}{{{}\\,\\varsigma({}z)}}",
            self.input,
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            },
            denom.join("\\cdot "),
            self.input.d()
        )
    }
}

fn latex_sum(set: IndexSet, full: IndexSet, letter: &str) -> (String, usize) {
    if set == full {
        return ("d".into(), 1);
    }
    let idx = indices(set);
    let s = idx
        .iter()
        .map(|i| format!("\\{letter}_{{{}}}", i + 1))
        .collect::<Vec<_>>()
        .join("+");
    (s, idx.len())
}

fn latex_product(a: (String, usize), b: (String, usize)) -> String {
    let wrap = |(s, k): (String, usize)| if k > 1 { format!("({s})") } else { s };
    format!("{}{}", wrap(a), wrap(b))
}

fn latex_det(s: &Step, m: usize, n: usize) -> String {
    let full_m = (1 << m) - 1;
    let full_n = (1 << n) - 1;
    let first = latex_product(latex_sum(s.i, full_m, "mu"), latex_sum(s.l, full_n, "nu"));
    if s.k == 0 || s.j == 0 {
        first
    } else {
        let second = latex_product(latex_sum(s.k, full_m, "mu"), latex_sum(s.j, full_n, "nu"));
        format!("{first}-{second}")
    }
}

fn one_based(set: IndexSet) -> Vec<usize> {
    indices(set).into_iter().map(|i| i + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepJson {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    #[serde(rename = "L")]
    pub l: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternJson {
    pub steps: Vec<StepJson>,
    pub sigma_args: Vec<i128>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingJson {
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
}

/// Wire form of a [`ClosedForm`]; part indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormJson {
    pub mu: Vec<u64>,
    pub nu: Vec<u64>,
    pub ordering: OrderingJson,
    pub patterns: Vec<PatternJson>,
}

/// `H^r(μ, ν) = r! · [z^r] H_{μ,ν}(z)` from the center-out closed form.
pub fn hurwitz_number(input: &HurwitzInput, r: u32) -> Result<Rational> {
    hurwitz_number_with(input, r, None, r as i64 + 2)
}

pub fn hurwitz_number_with(
    input: &HurwitzInput,
    r: u32,
    ordering: Option<&Ordering>,
    order: i64,
) -> Result<Rational> {
    let cf = closed_form(input, ordering)?;
    let series = cf.evaluate_series(input, order.max(r as i64))?;
    Ok(series.coefficient(r as i64)? * Rational::from_integer(factorial(r as u64)))
}

/// Which partition a part belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "mu")]
    Mu,
    #[serde(rename = "nu")]
    Nu,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PhiEntry {
    pub side: Side,
    /// 0-based part index within its side.
    pub index: usize,
    pub value: u64,
}

impl fmt::Display for PhiEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Mu => "μ",
            Side::Nu => "ν",
        };
        write!(f, "{}_{}", self.value, s)
    }
}

/// The order in which the all-commutator pattern of the center-out
/// ordering first touches each part. The first two entries are `μ_1` and
/// `ν_1`, larger first (`μ_1` on a tie).
pub fn phi_ordering(input: &HurwitzInput) -> Result<Vec<PhiEntry>> {
    wall_error(input)?;
    let (m, n) = (input.m(), input.n());
    let mu_entry = |i: usize| PhiEntry {
        side: Side::Mu,
        index: i,
        value: input.mu()[i],
    };
    let nu_entry = |j: usize| PhiEntry {
        side: Side::Nu,
        index: j,
        value: input.nu()[j],
    };
    let mut phi = if input.mu()[0] >= input.nu()[0] {
        vec![mu_entry(0), nu_entry(0)]
    } else {
        vec![nu_entry(0), mu_entry(0)]
    };
    // The blob sits between the unused μ parts (to its left) and the unused
    // ν parts (to its right). If it is positive it absorbs the next ν part;
    // otherwise the next μ part is the rightmost positive symbol and absorbs
    // it.
    let (mut next_mu, mut next_nu) = (1, 1);
    let mut energy = input.mu()[0] as i64 - input.nu()[0] as i64;
    while next_mu < m || next_nu < n {
        if energy > 0 {
            debug_assert!(next_nu < n);
            energy -= input.nu()[next_nu] as i64;
            phi.push(nu_entry(next_nu));
            next_nu += 1;
        } else {
            debug_assert!(next_mu < m);
            energy += input.mu()[next_mu] as i64;
            phi.push(mu_entry(next_mu));
            next_mu += 1;
        }
    }
    Ok(phi)
}

/// `φ(k) > Σ_{ℓ > k, ℓ ≁ k} φ(ℓ)` for every `k > 1`.
pub fn is_totally_negative(input: &HurwitzInput) -> Result<bool> {
    let phi = phi_ordering(input)?;
    Ok((1..phi.len()).all(|k| {
        let later: u64 = phi[k + 1..]
            .iter()
            .filter(|e| e.side != phi[k].side)
            .map(|e| e.value)
            .sum();
        phi[k].value > later
    }))
}

/// `φ(ℓ) · Σ_{j < ℓ, j ≁ ℓ} φ(j)` for `ℓ = 2..m+n`: the `ς` arguments of the
/// unique pattern of a totally negative chamber.
pub fn product_formula(input: &HurwitzInput) -> Result<Vec<i128>> {
    if !is_totally_negative(input)? {
        return Err(Error::NotTotallyNegative);
    }
    let phi = phi_ordering(input)?;
    Ok((1..phi.len())
        .map(|l| {
            let earlier: u64 = phi[..l]
                .iter()
                .filter(|e| e.side != phi[l].side)
                .map(|e| e.value)
                .sum();
            phi[l].value as i128 * earlier as i128
        })
        .collect())
}
