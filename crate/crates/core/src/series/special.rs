use std::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Coefficient, LaurentSeries, MultiPoly};
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, pow, rat, ratio, Rational};

thread_local! {
    static BERNOULLI: RefCell<Vec<Rational>> = RefCell::new(vec![Rational::one()]);
}

/// `B_k` with `B_1 = -1/2`. Odd indices above one are rejected since they
/// vanish identically and asking for one usually means an indexing slip.
pub fn bernoulli(k: u32) -> Result<Rational> {
    if k > 1 && k % 2 == 1 {
        return Err(Error::OddIndex(k));
    }
    Ok(bernoulli_any(k))
}

fn bernoulli_any(k: u32) -> Rational {
    BERNOULLI.with(|cache| {
        let mut b = cache.borrow_mut();
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        while b.len() <= k as usize {
            let m = b.len() as u64;
            let s: Rational = (0..m)
                .map(|j| Rational::from_integer(binomial(m + 1, j)) * &b[j as usize])
                .sum();
            b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
        }
        b[k as usize].clone()
    })
}

/// `e^{az}` through `z^order` (exactly `1` when `a = 0`).
pub fn exp_series(a: &Rational, order: i64) -> LaurentSeries {
    if a.is_zero() {
        return LaurentSeries::one();
    }
    let coeffs = (0..=order.max(-1))
        .map(|k| pow(a, k as u32) / Rational::from_integer(factorial(k as u64)))
        .collect();
    LaurentSeries::new(0, coeffs, order)
}

/// `ς(az) = e^{az/2} − e^{−az/2}` through `z^order`.
pub fn sigma_series(a: &Rational, order: i64) -> LaurentSeries {
    let half = a / rat(2);
    let coeffs = (0..=order.max(-1))
        .map(|k| {
            if k % 2 == 0 {
                Rational::zero()
            } else {
                rat(2) * pow(&half, k as u32) / Rational::from_integer(factorial(k as u64))
            }
        })
        .collect();
    LaurentSeries::new(0, coeffs, order)
}

/// `ς(Q z)` for a polynomial `Q`, through `z^order`.
pub fn sigma_series_poly(q: &MultiPoly, order: i64) -> LaurentSeries<MultiPoly> {
    let half = q.scale(&ratio(1, 2));
    let half_sq = &half * &half;
    let mut coeffs = vec![MultiPoly::zero(); (order.max(-1) + 1) as usize];
    let mut power = half; // (Q/2)^k for odd k
    let mut k = 1;
    while k <= order {
        let c = rat(2) / Rational::from_integer(factorial(k as u64));
        coeffs[k as usize] = power.scale(&c);
        power = &power * &half_sq;
        k += 2;
    }
    LaurentSeries::new(0, coeffs, order)
}

/// Coefficient of `z^{2n}` in `1/S(z) = z/ς(z)`:
/// `1` for `n = 0`, else `−(1 − 2^{1−2n}) B_{2n} / (2n)!`.
pub fn reciprocal_s_coefficients(n: u32) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let two_pow = Rational::new(BigInt::one(), BigInt::one() << (2 * n - 1));
    -(Rational::one() - two_pow) * bernoulli_any(2 * n)
        / Rational::from_integer(factorial(2 * n as u64))
}

/// `1/S(a z)` through `z^order`, for any coefficient ring.
pub fn reciprocal_s_series<C: Coefficient>(a: &C, order: i64) -> LaurentSeries<C> {
    let mut coeffs = vec![C::zero_elem(); (order.max(-1) + 1) as usize];
    let a_sq = a.times(a);
    let mut power = C::one_elem();
    let mut n = 0u32;
    while 2 * (n as i64) <= order {
        coeffs[2 * n as usize] = power.scaled(&reciprocal_s_coefficients(n));
        power = power.times(&a_sq);
        n += 1;
    }
    LaurentSeries::new(0, coeffs, order)
}

/// `1/ς(az) = 1/(az) − Σ_{n≥1} (1 − 2^{1−2n}) B_{2n} (az)^{2n−1} / (2n)!`
/// through `z^order`.
pub fn inv_sigma_series(a: &Rational, order: i64) -> Result<LaurentSeries> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    // 1/ς(az) = (1/(az)) · (1/S(az))
    let s = reciprocal_s_series(a, order + 1);
    Ok(s.shifted(-1).scale(&a.recip()))
}
