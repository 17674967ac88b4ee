use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::Coefficient;
use crate::error::{Error, Result};
use crate::rational::{format_rational, pow, Rational};

/// Order sentinel for series known to all orders (polynomials in `z`, `1/z`).
pub const EXACT: i64 = i64::MAX / 4;

fn cap(order: i64) -> i64 {
    if order >= EXACT / 2 {
        EXACT
    } else {
        order
    }
}

/// `Σ_{k ≥ start} c_k z^k + O(z^{order+1})`.
///
/// Coefficients are stored densely from the first nonzero one to the last
/// nonzero one at or below `order`. Every operation tracks how far its result
/// is actually known, so truncation errors can never leak into a coefficient
/// that is reported.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<C = Rational> {
    start: i64,
    coeffs: Vec<C>,
    order: i64,
}

impl<C: Coefficient> LaurentSeries<C> {
    pub fn new(start: i64, coeffs: Vec<C>, order: i64) -> Self {
        let mut s = LaurentSeries {
            start,
            coeffs,
            order: cap(order),
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let keep = (self.order - self.start + 1).clamp(0, self.coeffs.len() as i64) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.vanishes()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.vanishes()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.start = 0;
        } else {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
    }

    /// `O(z^{order+1})`.
    pub fn zero(order: i64) -> Self {
        LaurentSeries {
            start: 0,
            coeffs: Vec::new(),
            order: cap(order),
        }
    }

    pub fn exact_zero() -> Self {
        Self::zero(EXACT)
    }

    pub fn one() -> Self {
        Self::monomial(C::one_elem(), 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// Exact `c·z^k`.
    pub fn monomial(c: C, k: i64) -> Self {
        Self::new(k, vec![c], EXACT)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Lowest exponent this series can affect, even if it reads as zero.
    fn effective_valuation(&self) -> i64 {
        self.valuation()
            .unwrap_or_else(|| cap(self.order.saturating_add(1)))
    }

    /// `p` such that the series starts at `z^{-p}` (zero for power series).
    pub fn pole_order(&self) -> u64 {
        self.valuation().map_or(0, |v| (-v).max(0) as u64)
    }

    /// Exponent of the last stored nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.start + self.coeffs.len() as i64 - 1)
    }

    /// `[z^k]`, refusing to read past the known order.
    pub fn coefficient(&self, k: i64) -> Result<C> {
        if k > self.order {
            return Err(Error::IncompatibleTruncation {
                needed: k,
                available: self.order,
            });
        }
        Ok(self.coeff_or_zero(k))
    }

    fn coeff_or_zero(&self, k: i64) -> C {
        let idx = k - self.start;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            C::zero_elem()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// `(exponent, coefficient)` pairs for the nonzero stored terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.vanishes())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn truncated(&self, order: i64) -> Self {
        Self::new(self.start, self.coeffs.clone(), order.min(self.order))
    }

    /// Multiplication by `z^k`.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentSeries {
            start: if self.coeffs.is_empty() {
                0
            } else {
                self.start + k
            },
            coeffs: self.coeffs.clone(),
            order: cap(self.order.saturating_add(k)),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(
            self.start,
            self.coeffs.iter().map(|c| c.scaled(q)).collect(),
            self.order,
        )
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::new(
            self.start,
            self.coeffs.iter().map(|x| x.times(c)).collect(),
            self.order,
        )
    }

    /// `f(a·z)`. For `a = 0` the series must be a power series.
    pub fn compose_scalar(&self, a: &Rational) -> Result<Self> {
        if num_traits::Zero::is_zero(a) {
            if self.pole_order() > 0 {
                return Err(Error::ZeroArgument);
            }
            return Ok(Self::constant(self.coeff_or_zero(0)));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = self.start + i as i64;
                let factor = if k >= 0 {
                    pow(a, k as u32)
                } else {
                    pow(&a.recip(), (-k) as u32)
                };
                c.scaled(&factor)
            })
            .collect();
        Ok(Self::new(self.start, coeffs, self.order))
    }

    /// Same series, known only through `order`; errors if that is more than
    /// is available.
    pub fn require_order(&self, order: i64) -> Result<Self> {
        if order > self.order {
            return Err(Error::IncompatibleTruncation {
                needed: order,
                available: self.order,
            });
        }
        Ok(self.truncated(order))
    }

    /// Equal on every coefficient through `z^order`; both must be known that
    /// far.
    pub fn agrees_through(&self, other: &Self, order: i64) -> Result<bool> {
        self.require_order(order)?;
        other.require_order(order)?;
        let lo = self.effective_valuation().min(other.effective_valuation());
        Ok((lo..=order).all(|k| self.coeff_or_zero(k) == other.coeff_or_zero(k)))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries::new(self.start, self.coeffs.iter().map(f).collect(), self.order)
    }

    fn add_impl(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.is_zero() {
            return other.truncated(order);
        }
        if other.is_zero() {
            return self.truncated(order);
        }
        let lo = self.start.min(other.start);
        let hi = self
            .degree()
            .unwrap()
            .max(other.degree().unwrap())
            .min(order);
        let coeffs = (lo..=hi)
            .map(|k| self.coeff_or_zero(k).plus(&other.coeff_or_zero(k)))
            .collect();
        Self::new(lo, coeffs, order)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let order = cap(self
            .order
            .saturating_add(other.effective_valuation())
            .min(other.order.saturating_add(self.effective_valuation())));
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let lo = self.start + other.start;
        let hi = (self.degree().unwrap() + other.degree().unwrap()).min(order);
        if hi < lo {
            return Self::zero(order);
        }
        let mut coeffs = vec![C::zero_elem(); (hi - lo + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                if !b.vanishes() {
                    coeffs[k] = coeffs[k].plus(&a.times(b));
                }
            }
        }
        Self::new(lo, coeffs, order)
    }

    fn neg_impl(&self) -> Self {
        LaurentSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(C::negated).collect(),
            order: self.order,
        }
    }
}

impl LaurentSeries<Rational> {
    /// `1/f`, known through `min(order, what the input precision allows)`.
    pub fn reciprocal(&self, order: i64) -> Result<Self> {
        let v = self.valuation().ok_or(Error::ZeroArgument)?;
        let available = if self.is_exact() {
            EXACT
        } else {
            self.order - 2 * v
        };
        let target = order.min(available);
        let a0_inv = self.coeffs[0].recip();
        let len = (target + v + 1).max(0) as usize;
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                out.push(a0_inv.clone());
                continue;
            }
            let mut s = Rational::from_integer(0.into());
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s += &self.coeffs[j] * &out[k - j];
            }
            out.push(-s * &a0_inv);
        }
        Ok(Self::new(-v, out, target))
    }

    /// Value at a rational point of a series exact in `z`.
    pub fn evaluate_exact(&self, z: &Rational) -> Result<Rational> {
        if !self.is_exact() {
            return Err(Error::IncompatibleTruncation {
                needed: EXACT,
                available: self.order,
            });
        }
        let mut acc = Rational::from_integer(0.into());
        for (k, c) in self.terms() {
            let p = if k >= 0 {
                pow(z, k as u32)
            } else {
                pow(&z.recip(), (-k) as u32)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = abs.is_one();
            match k {
                0 => out.push_str(&format_rational(&abs)),
                _ => {
                    if !unit {
                        out.push_str(&format_rational(&abs));
                        out.push('*');
                    }
                    match k {
                        1 => out.push('z'),
                        _ => out.push_str(&format!("z^{k}")),
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        if !self.is_exact() {
            out.push_str(&format!(" + O(z^{})", self.order + 1));
        }
        out
    }
}

impl fmt::Display for LaurentSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `{pole_order, order, coeffs}` with `coeffs` running from `z^{-pole_order}`
/// through `z^order` (through the last nonzero term when exact, in which case
/// `order` is null).
impl Serialize for LaurentSeries<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let p = self.pole_order() as i64;
        let hi = if self.is_exact() {
            self.degree().unwrap_or(0).max(-p)
        } else {
            self.order
        };
        let coeffs: Vec<String> = (-p..=hi)
            .map(|k| format_rational(&self.coeff_or_zero(k)))
            .collect();
        let mut st = s.serialize_struct("LaurentSeries", 3)?;
        st.serialize_field("pole_order", &p)?;
        st.serialize_field("order", &(!self.is_exact()).then_some(self.order))?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<C: Coefficient> Add for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn add(self, rhs: Self) -> LaurentSeries<C> {
        self.add_impl(rhs)
    }
}

impl<C: Coefficient> Sub for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn sub(self, rhs: Self) -> LaurentSeries<C> {
        self.add_impl(&rhs.neg_impl())
    }
}

impl<C: Coefficient> Mul for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn mul(self, rhs: Self) -> LaurentSeries<C> {
        self.mul_impl(rhs)
    }
}

impl<C: Coefficient> Neg for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn neg(self) -> LaurentSeries<C> {
        self.neg_impl()
    }
}

impl<C: Coefficient> Add for LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn add(self, rhs: Self) -> LaurentSeries<C> {
        self.add_impl(&rhs)
    }
}

impl<C: Coefficient> Sub for LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn sub(self, rhs: Self) -> LaurentSeries<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn mul(self, rhs: Self) -> LaurentSeries<C> {
        self.mul_impl(&rhs)
    }
}

impl<C: Coefficient> Neg for LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn neg(self) -> LaurentSeries<C> {
        self.neg_impl()
    }
}

/// Series with series coefficients are never needed; this impl lets Fock
/// vectors carry series amplitudes through generic code.
impl Coefficient for LaurentSeries<Rational> {
    fn zero_elem() -> Self {
        LaurentSeries::exact_zero()
    }

    fn one_elem() -> Self {
        LaurentSeries::one()
    }

    fn vanishes(&self) -> bool {
        LaurentSeries::is_zero(self) && self.is_exact()
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
