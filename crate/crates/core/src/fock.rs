//! Energy-truncated model of the charge-zero infinite wedge.
//!
//! Basis vectors `v_λ` are stored by partition. Off-diagonal operators act on
//! Maya diagrams: stone positions are half-integers, stored doubled so they
//! are odd integers. Row `i` (0-based) of `λ` puts a stone at `2λ_i − 2i − 1`;
//! every position below the explicit rows is occupied.
//!
//! Operators lower the energy `|λ|` by their index, so positive-energy
//! operators kill the vacuum.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{central_character_f2, FrobeniusCoordinates, HalfInteger, Partition};
use crate::rational::{rat, ratio, Rational};
use crate::series::{exp_series, inv_sigma_series, Coefficient, LaurentSeries};

/// An operator on the wedge, as it appears in a vacuum expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorSymbol {
    /// `α_n`, `n ≠ 0`.
    Alpha(i64),
    /// The cut-and-join operator `𝓕₂`.
    F2,
    /// `𝓔_r(scale·z)`.
    E { r: i64, scale: Rational },
}

impl OperatorSymbol {
    pub fn e(r: i64, scale: Rational) -> Self {
        OperatorSymbol::E { r, scale }
    }

    /// Amount by which the operator lowers `|λ|`.
    pub fn energy(&self) -> i64 {
        match self {
            OperatorSymbol::Alpha(n) => *n,
            OperatorSymbol::F2 => 0,
            OperatorSymbol::E { r, .. } => *r,
        }
    }
}

impl fmt::Display for OperatorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSymbol::Alpha(n) => write!(f, "α_{n}"),
            OperatorSymbol::F2 => write!(f, "F₂"),
            OperatorSymbol::E { r, scale } => write!(f, "E_{r}({scale}z)"),
        }
    }
}

/// Finite combination `Σ c_λ v_λ` with every `|λ| ≤ cutoff`.
#[derive(Clone, PartialEq, Debug)]
pub struct WedgeVector<C = Rational> {
    terms: BTreeMap<Partition, C>,
    cutoff: u64,
}

impl<C: Coefficient> WedgeVector<C> {
    pub fn zero(cutoff: u64) -> Self {
        WedgeVector {
            terms: BTreeMap::new(),
            cutoff,
        }
    }

    /// `|0⟩`.
    pub fn vacuum(cutoff: u64) -> Self {
        Self::basis(Partition::empty(), cutoff).expect("empty partition fits any cutoff")
    }

    /// `v_λ`.
    pub fn basis(lambda: Partition, cutoff: u64) -> Result<Self> {
        let mut v = Self::zero(cutoff);
        v.add_term(lambda, C::one_elem())?;
        Ok(v)
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &Partition) -> C {
        self.terms.get(lambda).cloned().unwrap_or_else(C::zero_elem)
    }

    pub fn add_term(&mut self, lambda: Partition, c: C) -> Result<()> {
        if lambda.size() > self.cutoff {
            return Err(Error::CutoffExceeded {
                size: lambda.size(),
                cutoff: self.cutoff,
            });
        }
        if c.vanishes() {
            return Ok(());
        }
        let entry = self.terms.entry(lambda);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().plus(&c);
                if sum.vanishes() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.cutoff = self.cutoff.max(other.cutoff);
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone())
                .expect("within the larger cutoff");
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.scaled(q)).expect("same cutoff");
        }
        out
    }

    /// Every amplitude multiplied by `c`.
    pub fn times(&self, c: &C) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (l, a) in &self.terms {
            out.add_term(l.clone(), a.times(c)).expect("same cutoff");
        }
        out
    }
}

impl WedgeVector<Rational> {
    /// The same vector with constant series amplitudes.
    pub fn to_series(&self) -> WedgeVector<LaurentSeries> {
        WedgeVector {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), LaurentSeries::constant(c.clone())))
                .collect(),
            cutoff: self.cutoff,
        }
    }
}

impl WedgeVector<LaurentSeries> {
    /// Amplitudes truncated to `z^order`; errors if any is known less far.
    /// Amplitudes that vanish through `z^order` are dropped, so two vectors
    /// agreeing through that order compare equal.
    pub fn require_order(&self, order: i64) -> Result<Self> {
        let mut out = Self::zero(self.cutoff);
        for (l, c) in &self.terms {
            let c = c.require_order(order)?;
            if !c.is_zero() {
                out.add_term(l.clone(), c)?;
            }
        }
        Ok(out)
    }
}

/// Doubled stone positions of `v_λ` using `rows` explicit rows, descending.
pub fn maya_stones(lambda: &Partition, rows: usize) -> Vec<i64> {
    (0..rows)
        .map(|i| 2 * lambda.part(i) as i64 - 2 * i as i64 - 1)
        .collect()
}

/// Inverse of [`maya_stones`] for a charge-zero configuration.
fn partition_from_stones(mut stones: Vec<i64>) -> Partition {
    stones.sort_unstable_by(|a, b| b.cmp(a));
    let parts: Vec<u64> = stones
        .iter()
        .enumerate()
        .map(|(i, &t)| ((t + 2 * i as i64 + 1) / 2) as u64)
        .filter(|&p| p > 0)
        .collect();
    Partition::new(parts).expect("stone configuration is a partition")
}

/// One matrix element of `Σ_k E_{k,k+r}` applied to `v_λ`: a stone moves from
/// `source` to `target` (doubled positions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayaMove {
    pub result: Partition,
    pub sign: i64,
    pub source: i64,
    pub target: i64,
}

impl MayaMove {
    /// Midpoint `(k + (k + r))/2` of the move, as a rational.
    pub fn midpoint(&self) -> Rational {
        ratio(self.source + self.target, 4)
    }
}

/// All nonzero terms of `Σ_k E_{k,k+r} v_λ` for `r ≠ 0`.
pub fn maya_moves(lambda: &Partition, r: i64) -> Vec<MayaMove> {
    assert!(r != 0, "diagonal moves are handled separately");
    let rows = lambda.len() + r.unsigned_abs() as usize + 1;
    let stones = maya_stones(lambda, rows);
    let floor = -(2 * rows as i64) + 1; // lowest explicit position
    let mut out = Vec::new();
    for (i, &s) in stones.iter().enumerate() {
        let t = s - 2 * r;
        if t < floor || stones.contains(&t) {
            continue;
        }
        let (lo, hi) = if s < t { (s, t) } else { (t, s) };
        let between = stones.iter().filter(|&&x| x > lo && x < hi).count();
        let mut moved = stones.clone();
        moved[i] = t;
        out.push(MayaMove {
            result: partition_from_stones(moved),
            sign: if between % 2 == 0 { 1 } else { -1 },
            source: s,
            target: t,
        });
    }
    out
}

/// Electrons (positive stones) and positrons (negated negative holes) read
/// off the Maya diagram.
pub fn maya_frobenius(lambda: &Partition) -> FrobeniusCoordinates {
    let rows = lambda.len() + 1;
    let stones = maya_stones(lambda, rows);
    let electrons = stones
        .iter()
        .filter(|&&t| t > 0)
        .map(|&t| HalfInteger::from_twice(t))
        .collect();
    let floor = -(2 * rows as i64) + 1;
    let positrons = (floor..0)
        .filter(|t| t % 2 != 0 && !stones.contains(t))
        .map(|t| HalfInteger::from_twice(-t))
        .collect();
    FrobeniusCoordinates {
        electrons,
        positrons,
    }
}

/// `𝓕₂` eigenvalue `Σ_{k>0} k²/2 − Σ_{k<0 empty} k²/2` from the Maya diagram.
pub fn f2_eigenvalue(lambda: &Partition) -> Rational {
    maya_frobenius(lambda).f2()
}

/// `α_n v`: adds (`n < 0`) or removes (`n > 0`) border strips of length `|n|`.
pub fn apply_alpha<C: Coefficient>(n: i64, v: &WedgeVector<C>) -> Result<WedgeVector<C>> {
    assert!(n != 0, "α_0 is not defined");
    let mut out = WedgeVector::zero(v.cutoff);
    for (lambda, c) in &v.terms {
        let moves = if n > 0 {
            lambda.removable_border_strips(n as u64)
        } else {
            lambda.addable_border_strips(n.unsigned_abs())
        };
        for (strip, mu) in moves {
            out.add_term(mu, c.scaled(&rat(strip.sign())))?;
        }
    }
    Ok(out)
}

/// `𝓕₂ v`, scaling each `v_λ` by the content sum of `λ`.
pub fn apply_f2<C: Coefficient>(v: &WedgeVector<C>) -> WedgeVector<C> {
    let mut out = WedgeVector::zero(v.cutoff);
    for (lambda, c) in &v.terms {
        let f = rat(central_character_f2(lambda));
        out.add_term(lambda.clone(), c.scaled(&f))
            .expect("same cutoff");
    }
    out
}

/// `𝓔_r(scale·z) v` with amplitudes known through `z^order`.
///
/// Off the diagonal, a stone moving between doubled positions `s` and `t`
/// carries `e^{scale·z·(s+t)/4}`, the exponential of the move's midpoint. On
/// the diagonal the regularized action gives `Σ e^{a′ scale z} − Σ e^{−b′ scale z}`
/// over modified Frobenius coordinates, plus `1/ς(scale·z)`.
pub fn apply_e(
    r: i64,
    scale: &Rational,
    v: &WedgeVector<LaurentSeries>,
    order: i64,
) -> Result<WedgeVector<LaurentSeries>> {
    let mut out = WedgeVector::zero(v.cutoff);
    if r == 0 {
        let correction = inv_sigma_series(scale, order)?;
        for (lambda, c) in &v.terms {
            let frob = maya_frobenius(lambda);
            let mut diag = correction.clone();
            for a in &frob.electrons {
                diag = &diag + &exp_series(&(scale * a.to_rational()), order);
            }
            for b in &frob.positrons {
                diag = &diag - &exp_series(&(-scale * b.to_rational()), order);
            }
            out.add_term(lambda.clone(), c * &diag)?;
        }
        return Ok(out);
    }
    for (lambda, c) in &v.terms {
        for mv in maya_moves(lambda, r) {
            let weight = exp_series(&(scale * mv.midpoint()), order).scale(&rat(mv.sign));
            out.add_term(mv.result.clone(), c * &weight)?;
        }
    }
    Ok(out)
}

/// Applies one operator to a vector with series amplitudes.
pub fn apply_op(
    op: &OperatorSymbol,
    v: &WedgeVector<LaurentSeries>,
    order: i64,
) -> Result<WedgeVector<LaurentSeries>> {
    match op {
        OperatorSymbol::Alpha(n) => apply_alpha(*n, v),
        OperatorSymbol::F2 => Ok(apply_f2(v)),
        OperatorSymbol::E { r, scale } => apply_e(*r, scale, v, order),
    }
}

/// Applies `ops` (written left to right) to `v`, rightmost first.
pub fn apply_ops(
    ops: &[OperatorSymbol],
    v: &WedgeVector<LaurentSeries>,
    order: i64,
) -> Result<WedgeVector<LaurentSeries>> {
    let mut cur = v.clone();
    for op in ops.iter().rev() {
        cur = apply_op(op, &cur, order)?;
    }
    Ok(cur)
}

/// Largest energy reached while applying `ops` right to left to a vector of
/// energy `start`, or `None` if some step would need negative energy (the
/// product then vanishes on that vector).
pub fn energy_profile(ops: &[OperatorSymbol], start: u64) -> Option<(u64, i64)> {
    let mut e = start as i64;
    let mut max = e;
    for op in ops.iter().rev() {
        e -= op.energy();
        if e < 0 {
            return None;
        }
        max = max.max(e);
    }
    Some((max as u64, e))
}

/// `⟨ops⟩`, exact through `z^order`.
///
/// The energy profile is checked before anything is applied: a product that
/// would need more than `cutoff` boxes is refused instead of being silently
/// truncated.
pub fn vacuum_expectation(
    ops: &[OperatorSymbol],
    order: i64,
    cutoff: u64,
) -> Result<LaurentSeries> {
    let Some((required, end)) = energy_profile(ops, 0) else {
        return Ok(LaurentSeries::zero(order));
    };
    if end != 0 {
        return Ok(LaurentSeries::zero(order));
    }
    if required > cutoff {
        return Err(Error::CutoffTooSmall { required, cutoff });
    }
    // each diagonal 𝓔 contributes one pole, costing one order of precision
    let poles = ops
        .iter()
        .filter(|op| matches!(op, OperatorSymbol::E { r: 0, .. }))
        .count() as i64;
    let inner = order + poles;
    let v = apply_ops(ops, &WedgeVector::vacuum(cutoff).to_series(), inner)?;
    v.coefficient(&Partition::empty()).require_order(order)
}

/// Vacuum expectation of an energy-zero product of `α`s and `𝓕₂`s, exactly.
pub fn vacuum_expectation_exact(ops: &[OperatorSymbol], cutoff: u64) -> Result<Rational> {
    let Some((required, end)) = energy_profile(ops, 0) else {
        return Ok(Rational::zero());
    };
    if end != 0 {
        return Ok(Rational::zero());
    }
    if required > cutoff {
        return Err(Error::CutoffTooSmall { required, cutoff });
    }
    let mut v: WedgeVector<Rational> = WedgeVector::vacuum(cutoff);
    for op in ops.iter().rev() {
        v = match op {
            OperatorSymbol::Alpha(n) => apply_alpha(*n, &v)?,
            OperatorSymbol::F2 => apply_f2(&v),
            OperatorSymbol::E { .. } => {
                return Err(Error::Parse(format!("{op} needs series amplitudes")))
            }
        };
    }
    Ok(v.coefficient(&Partition::empty()))
}

/// `H^r(μ, ν)` as `⟨∏α_{μ_i} 𝓕₂^r ∏α_{−ν_j}⟩ / (∏μ_i ∏ν_j)`.
pub fn hurwitz_via_wedge(mu: &Partition, nu: &Partition, r: u32) -> Result<Rational> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch {
            mu: mu.size(),
            nu: nu.size(),
        });
    }
    let mut ops: Vec<OperatorSymbol> = mu
        .parts()
        .iter()
        .map(|&p| OperatorSymbol::Alpha(p as i64))
        .collect();
    ops.extend(std::iter::repeat(OperatorSymbol::F2).take(r as usize));
    ops.extend(
        nu.parts()
            .iter()
            .map(|&p| OperatorSymbol::Alpha(-(p as i64))),
    );
    let value = vacuum_expectation_exact(&ops, mu.size())?;
    let denom: u64 = mu.parts().iter().chain(nu.parts()).product();
    Ok(value / rat(denom as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{character, frobenius_coords, partitions_of};
    use crate::series::sigma_series;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn basis(parts: &[u64], cutoff: u64) -> WedgeVector {
        WedgeVector::basis(p(parts), cutoff).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let v = apply_alpha(-1, &WedgeVector::<Rational>::vacuum(4)).unwrap();
        assert_eq!(v, basis(&[1], 4));

        let v = apply_alpha(2, &basis(&[3, 2, 2], 8)).unwrap();
        let mut expected = basis(&[3, 2], 8);
        expected.add_term(p(&[3, 1, 1]), rat(-1)).unwrap();
        assert_eq!(v, expected);

        assert!(apply_alpha(1, &WedgeVector::<Rational>::vacuum(4))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn alpha_respects_cutoff() {
        let err = apply_alpha(-3, &basis(&[2], 4));
        assert_eq!(err, Err(Error::CutoffExceeded { size: 5, cutoff: 4 }));
    }

    #[test]
    fn f2_examples() {
        assert!(apply_f2(&basis(&[1], 3)).is_empty());
        assert_eq!(apply_f2(&basis(&[2], 3)), basis(&[2], 3));
        assert_eq!(
            apply_f2(&basis(&[3, 2, 2], 7)),
            basis(&[3, 2, 2], 7).scale(&rat(-1))
        );
    }

    #[test]
    fn maya_frobenius_agrees_with_partition_side() {
        for d in 0..=10 {
            for lambda in partitions_of(d) {
                assert_eq!(maya_frobenius(&lambda), frobenius_coords(&lambda));
                assert_eq!(f2_eigenvalue(&lambda), rat(central_character_f2(&lambda)));
            }
        }
    }

    #[test]
    fn maya_figure_example() {
        // λ = (3,2,2): black stones at 5/2, 1/2, −1/2, white at −3/2, −5/2
        let stones = maya_stones(&p(&[3, 2, 2]), 4);
        assert_eq!(stones, vec![5, 1, -1, -7]);
    }

    #[test]
    fn e_at_zero_is_alpha() {
        for d in 0..=6 {
            for lambda in partitions_of(d) {
                let v = WedgeVector::basis(lambda, 12).unwrap();
                for r in [-3i64, -2, -1, 1, 2, 3, 4] {
                    let via_e = apply_e(r, &rat(0), &v.to_series(), 3).unwrap();
                    let via_alpha = apply_alpha(r, &v).unwrap().to_series();
                    assert_eq!(via_e, via_alpha, "r={r}");
                }
            }
        }
    }

    #[test]
    fn e0_on_vacuum_is_the_correction() {
        let v = apply_e(0, &rat(1), &WedgeVector::vacuum(2).to_series(), 6).unwrap();
        let expected = inv_sigma_series(&rat(1), 6).unwrap();
        assert_eq!(v.coefficient(&Partition::empty()), expected);
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn e_minus_two_on_vacuum() {
        // 𝓔_{−2}(2z)|0⟩ = e^{z} v_(2) − e^{−z} v_(1,1)
        let v = apply_e(-2, &rat(2), &WedgeVector::vacuum(4).to_series(), 6).unwrap();
        assert_eq!(v.coefficient(&p(&[2])), exp_series(&rat(1), 6));
        assert_eq!(v.coefficient(&p(&[1, 1])), -exp_series(&rat(-1), 6));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn expectation_examples() {
        for d in 1..=5 {
            let ops = [OperatorSymbol::Alpha(d), OperatorSymbol::Alpha(-d)];
            assert_eq!(vacuum_expectation_exact(&ops, d as u64).unwrap(), rat(d));
        }
        for d in 1..=4 {
            let ops = [OperatorSymbol::e(0, rat(d))];
            let s = vacuum_expectation(&ops, 8, 0).unwrap();
            assert_eq!(s, inv_sigma_series(&rat(d), 8).unwrap());
        }
    }

    #[test]
    fn expectation_guards() {
        let ops = [OperatorSymbol::Alpha(3), OperatorSymbol::Alpha(-3)];
        assert_eq!(
            vacuum_expectation(&ops, 4, 2),
            Err(Error::CutoffTooSmall {
                required: 3,
                cutoff: 2
            })
        );
        // positive energy on the right: zero without touching the cutoff
        let ops = [OperatorSymbol::Alpha(-3), OperatorSymbol::Alpha(3)];
        assert!(vacuum_expectation(&ops, 4, 0).unwrap().is_zero());
        let ops = [OperatorSymbol::Alpha(-1)];
        assert!(vacuum_expectation(&ops, 4, 5).unwrap().is_zero());
    }

    #[test]
    fn murnaghan_nakayama_on_the_wedge() {
        for d in 1..=6 {
            for mu in partitions_of(d) {
                let mut v: WedgeVector = WedgeVector::vacuum(d);
                for &part in mu.parts() {
                    v = apply_alpha(-(part as i64), &v).unwrap();
                }
                for lambda in partitions_of(d) {
                    assert_eq!(
                        v.coefficient(&lambda),
                        rat(character(&lambda, &mu).unwrap())
                    );
                }
            }
        }
    }

    #[test]
    fn e0_commutes_with_alpha_up_to_sigma() {
        // [𝓔_0(z), α_{−1}] = ς(z)·𝓔_{−1}(z) applied to the vacuum
        let n = 6;
        let vac = WedgeVector::vacuum(3).to_series();
        let lhs = {
            let a = apply_e(0, &rat(1), &apply_alpha(-1, &vac).unwrap(), n + 1).unwrap();
            let b = apply_alpha(-1, &apply_e(0, &rat(1), &vac, n + 1).unwrap()).unwrap();
            a.minus(&b)
        };
        let e = apply_e(-1, &rat(1), &vac, n + 1).unwrap();
        let sigma = sigma_series(&rat(1), n + 1);
        let rhs = WedgeVector {
            terms: e
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), c * &sigma))
                .collect(),
            cutoff: e.cutoff,
        };
        assert_eq!(lhs.require_order(n).unwrap(), rhs.require_order(n).unwrap());
    }
}
