use serde::{Deserialize, Serialize};

use super::sampling::sample_with_signature;
use super::wall::{chamber_signature, Wall};
use crate::error::{Error, Result};
use crate::partitions::{find_wall, HurwitzInput};
use crate::patterns::closed_form;
use crate::rational::{rat, Rational};
use crate::series::{inv_sigma_series, sigma_series, LaurentSeries};

/// A wall `W_{I,J}` oriented so that `δ = |μ_I| − |ν_J|` is positive at the
/// target, together with `d₁ = |μ_I|` and `d₂ = |ν_{J^c}|`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WallCrossingSpec {
    pub wall: Wall,
    pub delta: u64,
    pub d1: u64,
    pub d2: u64,
}

impl WallCrossingSpec {
    pub fn new(target: &HurwitzInput, wall: Wall) -> Result<Self> {
        let (m, n) = (target.m(), target.n());
        let wall = Wall::new(wall.i, wall.j, m, n)?;
        let delta = wall.value(target);
        if delta == 0 {
            return Err(Error::OnWall(wall.to_string()));
        }
        if delta < 0 {
            return Err(Error::NonPositiveDelta(delta));
        }
        let full_n = (1 << n) - 1;
        Ok(WallCrossingSpec {
            wall,
            delta: delta as u64,
            d1: target.mu_sum(wall.i),
            d2: target.nu_sum(!wall.j & full_n),
        })
    }

    /// Like [`WallCrossingSpec::new`], replacing the wall by its complement
    /// when that makes `δ` positive.
    pub fn toward(target: &HurwitzInput, wall: Wall) -> Result<Self> {
        Self::new(target, wall.oriented_toward(target)?)
    }

    /// `(μ_I; ν_J ∪ {δ})` and `(μ_{I^c} ∪ {δ}; ν_{J^c})`, sorted descending.
    pub fn sub_inputs(&self, target: &HurwitzInput) -> Result<(HurwitzInput, HurwitzInput)> {
        let pick = |parts: &[u64], set: u32, inside: bool| -> Vec<u64> {
            parts
                .iter()
                .enumerate()
                .filter(|(i, _)| (set & (1 << i) != 0) == inside)
                .map(|(_, &p)| p)
                .collect()
        };
        let mut nu_j = pick(target.nu(), self.wall.j, true);
        nu_j.push(self.delta);
        let mut mu_ic = pick(target.mu(), self.wall.i, false);
        mu_ic.push(self.delta);
        let first = HurwitzInput::new(pick(target.mu(), self.wall.i, true), nu_j)?
            .sorted()
            .0;
        let second = HurwitzInput::new(mu_ic, pick(target.nu(), self.wall.j, false))?
            .sorted()
            .0;
        for sub in [&first, &second] {
            if find_wall(sub).is_some() {
                return Err(Error::SubInputOnWall(sub.to_string()));
            }
        }
        Ok((first, second))
    }
}

fn ratio_series(a: u64, b: u64, order: i64) -> Result<LaurentSeries> {
    let s = sigma_series(&rat(a as i64), order + 1);
    let inv = inv_sigma_series(&rat(b as i64), order)?;
    (&s * &inv).require_order(order)
}

/// `ς(d₁z)/ς(δd₁z) · ς(d₂z)/ς(δd₂z) · ς(δdz)/ς(dz)`, whose constant term is
/// `1/δ`.
pub fn wall_crossing_prefactor(
    spec: &WallCrossingSpec,
    d: u64,
    order: i64,
) -> Result<LaurentSeries> {
    let a = ratio_series(spec.d1, spec.delta * spec.d1, order)?;
    let b = ratio_series(spec.d2, spec.delta * spec.d2, order)?;
    let c = ratio_series(spec.delta * d, d, order)?;
    (&(&a * &b) * &c).require_order(order)
}

/// `δ² · prefactor · H_{μ_I, ν_J ∪ δ}(z) · H_{μ_{I^c} ∪ δ, ν_{J^c}}(z)` at
/// `target`, which must lie on the positive side of `wall`.
pub fn wall_crossing_rhs(target: &HurwitzInput, wall: Wall, order: i64) -> Result<LaurentSeries> {
    let spec = WallCrossingSpec::new(target, wall)?;
    let (first, second) = spec.sub_inputs(target)?;
    let h1 = closed_form(&first, None)?.evaluate_series(&first, order)?;
    let h2 = closed_form(&second, None)?.evaluate_series(&second, order)?;
    let pre = wall_crossing_prefactor(&spec, target.d(), order)?;
    let delta_sq = Rational::from_integer((spec.delta * spec.delta).into());
    (&(&pre * &h1) * &h2).scale(&delta_sq).require_order(order)
}

/// `S²(target) − S¹(target)`: the closed forms of the chambers of `p2`
/// (positive side of `wall`) and `p1` (negative side), both evaluated at
/// `target`. Identical chambers give zero.
pub fn wall_crossing_lhs(
    target: &HurwitzInput,
    wall: Wall,
    p1: &HurwitzInput,
    p2: &HurwitzInput,
    order: i64,
) -> Result<LaurentSeries> {
    target.same_shape(p1)?;
    target.same_shape(p2)?;
    let (m, n) = (target.m(), target.n());
    let wall = Wall::new(wall.i, wall.j, m, n)?;
    let s1 = chamber_signature(p1)?;
    let s2 = chamber_signature(p2)?;
    if s1 == s2 {
        return Ok(LaurentSeries::zero(order));
    }
    if s1.flipped(&wall) != s2 || wall.value(p1) > 0 || wall.value(p2) < 0 {
        return Err(Error::NotAdjacent(format!(
            "{p1} and {p2} are not on the negative and positive sides of {wall} only"
        )));
    }
    let a = closed_form(p2, None)?.evaluate_series(target, order)?;
    let b = closed_form(p1, None)?.evaluate_series(target, order)?;
    Ok(&a - &b)
}

/// A point of the chamber across `wall` from `target`. Fails with
/// [`Error::NoSample`] when `wall` is not a facet of the target's chamber,
/// since flipping that one sign then describes an empty chamber.
pub fn sample_across(target: &HurwitzInput, wall: Wall, seed: u64) -> Result<HurwitzInput> {
    let sig = chamber_signature(target)?.flipped(&wall);
    let start = target
        .mu()
        .iter()
        .chain(target.nu())
        .copied()
        .max()
        .unwrap_or(2);
    Ok(sample_with_signature(&sig, 1, seed, start)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(mu: &[u64], nu: &[u64]) -> HurwitzInput {
        HurwitzInput::new(mu.to_vec(), nu.to_vec()).unwrap()
    }

    #[test]
    fn spec_for_the_worked_example() {
        let target = input(&[6, 1], &[4, 3]);
        let spec = WallCrossingSpec::new(&target, Wall { i: 1, j: 1 }).unwrap();
        assert_eq!((spec.delta, spec.d1, spec.d2), (2, 6, 3));
        let (a, b) = spec.sub_inputs(&target).unwrap();
        assert_eq!(a, input(&[6], &[4, 2]));
        assert_eq!(b, input(&[2, 1], &[3]));
        assert_eq!(
            WallCrossingSpec::new(&target, Wall { i: 2, j: 2 }),
            Err(Error::NonPositiveDelta(-2))
        );
        assert_eq!(
            WallCrossingSpec::toward(&target, Wall { i: 2, j: 2 }).unwrap(),
            spec
        );
    }

    #[test]
    fn prefactor_starts_at_one_over_delta() {
        let target = input(&[6, 1], &[4, 3]);
        let spec = WallCrossingSpec::new(&target, Wall { i: 1, j: 1 }).unwrap();
        let pre = wall_crossing_prefactor(&spec, 7, 6).unwrap();
        assert_eq!(
            pre.coefficient(0).unwrap(),
            Rational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn both_sides_agree_on_the_worked_example() {
        let target = input(&[6, 1], &[4, 3]);
        let wall = Wall { i: 1, j: 1 };
        let p1 = input(&[4, 3], &[5, 2]);
        let lhs = wall_crossing_lhs(&target, wall, &p1, &target, 12).unwrap();
        let rhs = wall_crossing_rhs(&target, wall, 12).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn same_chamber_gives_zero_and_far_chambers_are_rejected() {
        let target = input(&[6, 1], &[4, 3]);
        let wall = Wall { i: 1, j: 1 };
        assert!(wall_crossing_lhs(&target, wall, &target, &target, 8)
            .unwrap()
            .is_zero());
        // differs at both (2,2) walls
        let far = input(&[3, 4], &[2, 5]);
        assert!(matches!(
            wall_crossing_lhs(&target, wall, &far, &target, 8),
            Err(Error::NotAdjacent(_))
        ));
    }

    #[test]
    fn non_facet_walls_have_no_neighbor() {
        // μ₁ − ν₁ > ν₃ > 0 throughout this chamber
        let target = input(&[8, 3], &[6, 4, 1]);
        assert!(matches!(
            sample_across(&target, Wall { i: 1, j: 1 }, 0),
            Err(Error::NoSample(_))
        ));
    }

    #[test]
    fn sampled_neighbor_is_across_the_wall() {
        let target = input(&[6, 1], &[4, 3]);
        let wall = Wall { i: 1, j: 1 };
        let p1 = sample_across(&target, wall, 3).unwrap();
        assert!(wall.value(&p1) < 0);
        assert_eq!(
            chamber_signature(&p1).unwrap().flipped(&wall),
            chamber_signature(&target).unwrap()
        );
    }
}
