use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Coefficient;
use crate::error::{Error, Result};
use crate::rational::{format_rational, pow, Rational};

/// Exponent vector with trailing zeros trimmed, so `x₁` is `[1]` whatever the
/// number of variables.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn monomial_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn monomial_mul(a: &[u32], b: &[u32]) -> Monomial {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

fn monomial_div(a: &[u32], b: &[u32]) -> Option<Monomial> {
    if b.len() > a.len() {
        return None;
    }
    let q = (0..a.len())
        .map(|i| a[i].checked_sub(b.get(i).copied().unwrap_or(0)))
        .collect::<Option<Vec<u32>>>()?;
    Some(trim(q))
}

/// Sparse polynomial with exact rational coefficients.
///
/// Chamber polynomials use the variables `μ_1..μ_m, ν_1..ν_{n-1}` in that
/// order; `ν_n` never appears because it is eliminated as `Σμ − Σ_{j<n} ν_j`.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([(Vec::new(), c)])
    }

    /// The variable with index `i` (0-based).
    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Self::from_terms([(m, Rational::one())])
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[(usize, Rational)]) -> Self {
        coeffs.iter().fold(MultiPoly::zero(), |acc, (i, c)| {
            &acc + &MultiPoly::var(*i).scale(c)
        })
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(trim(m), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &[u32]) -> Rational {
        self.terms
            .get(&trim(m.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).min()
    }

    /// Number of variables actually used (highest index + 1).
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn homogeneous_component(&self, degree: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial_degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(monomial_degree(m))
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn scale(&self, q: &Rational) -> MultiPoly {
        if q.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at a point; variables past the end of `point` read as zero.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    match point.get(i) {
                        Some(x) => t *= pow(x, e),
                        None => {
                            t = Rational::zero();
                            break;
                        }
                    }
                }
            }
            acc += t;
        }
        acc
    }

    /// Quotient by `divisor`, or `InexactDivision` if the remainder is nonzero.
    ///
    /// Uses lexicographic leading terms. A single polynomial is a Gröbner basis
    /// of the ideal it generates, so the remainder vanishes exactly when the
    /// division is exact.
    pub fn divide_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let (lead_m, lead_c) = divisor
            .terms
            .last_key_value()
            .ok_or_else(|| Error::InexactDivision("division by zero polynomial".into()))?;
        let mut rest = self.clone();
        let mut quotient = MultiPoly::zero();
        while let Some((m, c)) = rest.terms.last_key_value() {
            let Some(qm) = monomial_div(m, lead_m) else {
                return Err(Error::InexactDivision(format!(
                    "leading monomial {m:?} not divisible by {lead_m:?}"
                )));
            };
            let qc = c / lead_c;
            for (dm, dc) in &divisor.terms {
                rest.add_term(trim(monomial_mul(&qm, dm)), -(dc * &qc));
            }
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    /// Renders with the given variable names (`x1, x2, …` past the end).
    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let name = |i: usize| {
            names
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("x{}", i + 1))
        };
        let mut out = String::new();
        // highest degree first, then lexicographically descending
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            monomial_degree(b.0)
                .cmp(&monomial_degree(a.0))
                .then_with(|| b.0.cmp(a.0))
        });
        for (m, c) in terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        name(i)
                    } else {
                        format!("{}^{e}", name(i))
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&[]))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exponents: Vec<u32>,
    #[serde(with = "crate::rational::serde_rational")]
    coeff: Rational,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let width = self.num_vars();
        s.collect_seq(self.terms.iter().map(|(m, c)| {
            let mut exponents = m.clone();
            exponents.resize(width, 0);
            JsonTerm {
                exponents,
                coeff: c.clone(),
            }
        }))
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(d)?;
        Ok(MultiPoly::from_terms(
            terms.into_iter().map(|t| (t.exponents, t.coeff)),
        ))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: Self) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(monomial_mul(a, b), x * y);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Coefficient for MultiPoly {
    fn zero_elem() -> Self {
        MultiPoly::zero()
    }

    fn one_elem() -> Self {
        MultiPoly::one()
    }

    fn vanishes(&self) -> bool {
        MultiPoly::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn scaled(&self, q: &Rational) -> Self {
        self.scale(q)
    }

    fn negated(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use proptest::prelude::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    #[test]
    fn divide_exact_examples() {
        // (μ₁²ν₁ + μ₁μ₂ν₁) / μ₁ with variables μ₁, μ₂, ν₁
        let p = &(&(&x(0) * &x(0)) * &x(2)) + &(&(&x(0) * &x(1)) * &x(2));
        let q = p.divide_exact(&x(0)).unwrap();
        assert_eq!(q, &(&x(0) * &x(2)) + &(&x(1) * &x(2)));

        // d·ν₁ / d with d = μ₁ + μ₂
        let d = &x(0) + &x(1);
        assert_eq!((&d * &x(2)).divide_exact(&d).unwrap(), x(2));

        let err = (&x(0) + &MultiPoly::one()).divide_exact(&x(0));
        assert!(matches!(err, Err(Error::InexactDivision(_))));
    }

    #[test]
    fn homogeneous_component_example() {
        let p = &(&x(0) * &x(2)) + &x(1);
        assert_eq!(p.homogeneous_component(2), &x(0) * &x(2));
        assert_eq!(p.homogeneous_component(1), x(1));
        assert_eq!(p.components().len(), 2);
        assert!(!p.is_homogeneous());
    }

    #[test]
    fn eval_and_pow() {
        let p = (&x(0) + &x(1)).pow(3);
        assert_eq!(p.eval(&[rat(1), rat(2)]), rat(27));
        assert_eq!(p.coefficient(&[2, 1]), rat(3));
        assert_eq!(p.degree(), Some(3));
        assert_eq!(MultiPoly::zero().degree(), None);
    }

    #[test]
    fn formatting() {
        let p = &(&x(0) * &x(0)).scale(&ratio(3, 2)) - &x(1);
        let names = vec!["mu1".to_string(), "mu2".to_string()];
        assert_eq!(p.format_with(&names), "3/2*mu1^2 - mu2");
        assert_eq!(MultiPoly::constant(rat(-4)).to_string(), "-4");
    }

    #[test]
    fn json_round_trip() {
        let p = &(&x(0) * &x(2)).scale(&ratio(-1, 3)) + &MultiPoly::one();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v[1]["exponents"], serde_json::json!([1, 0, 1]));
        assert_eq!(v[1]["coeff"], "-1/3");
        let back: MultiPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 0..3), -5i64..=5), 0..5)
            .prop_map(|terms| MultiPoly::from_terms(terms.into_iter().map(|(m, c)| (m, rat(c)))))
    }

    proptest! {
        #[test]
        fn mul_is_commutative_and_associative(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn divide_then_multiply_reproduces(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let q = (&a * &b).divide_exact(&b).unwrap();
            prop_assert_eq!(&q * &b, &a * &b);
        }
    }
}
