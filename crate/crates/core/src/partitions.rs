//! Partitions, Frobenius coordinates, symmetric-group characters and the
//! character-sum oracle for disconnected double Hurwitz numbers.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
    size: u64,
}

impl Partition {
    /// Strict constructor: parts must be positive and weakly decreasing.
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        let size = parts.iter().sum();
        Ok(Partition { parts, size })
    }

    /// Sorts the parts descending. The flag reports whether the input order
    /// had to change.
    pub fn normalized(mut parts: Vec<u64>) -> Result<(Self, bool)> {
        let sorted = parts.windows(2).all(|w| w[0] >= w[1]);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok((Partition::new(parts)?, !sorted))
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    fn from_sorted_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row `i` (0-based), zero past the last part.
    pub fn part(&self, i: usize) -> u64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u64)
            .collect();
        Partition::from_sorted_unchecked(parts)
    }

    /// Sum of contents `j - i` over all boxes `(i, j)`.
    pub fn content_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                let i = i as i64;
                p * (p - 1) / 2 - i * p
            })
            .sum()
    }

    /// Number of standard Young tableaux, by the hook-length formula.
    pub fn dimension(&self) -> BigInt {
        let conj = self.conjugate();
        let mut hooks = BigInt::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - j as u64 - 1;
                let leg = conj.part(j) - i as u64 - 1;
                hooks *= BigInt::from(arm + leg + 1);
            }
        }
        crate::rational::factorial(self.size) / hooks
    }

    /// Size of the conjugacy class of cycle type `self` in `S_d`.
    pub fn class_size(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for &p in &self.parts {
            z *= BigInt::from(p);
            *counts.entry(p).or_default() += 1;
        }
        for &c in counts.values() {
            z *= crate::rational::factorial(c);
        }
        crate::rational::factorial(self.size) / z
    }

    /// Beta numbers `λ_i + (L - 1 - i)` for `L` rows, strictly decreasing.
    fn beta_set(&self, rows: usize) -> Vec<i64> {
        (0..rows)
            .map(|i| self.part(i) as i64 + (rows - 1 - i) as i64)
            .collect()
    }

    fn from_beta_set(mut beta: Vec<i64>) -> Partition {
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let rows = beta.len();
        let parts = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| (b - (rows - 1 - i) as i64) as u64)
            .filter(|&p| p > 0)
            .collect();
        Partition::from_sorted_unchecked(parts)
    }

    /// All ways of removing a border strip of `len` boxes.
    pub fn removable_border_strips(&self, len: u64) -> Vec<(BorderStrip, Partition)> {
        if len == 0 || len > self.size {
            return Vec::new();
        }
        let rows = self.len();
        let beta = self.beta_set(rows);
        let k = len as i64;
        let mut out = Vec::new();
        for (i, &b) in beta.iter().enumerate() {
            let target = b - k;
            if target < 0 || beta.contains(&target) {
                continue;
            }
            let height = beta[i + 1..].iter().filter(|&&x| x > target).count();
            let mut moved = beta.clone();
            moved[i] = target;
            let strip = BorderStrip {
                start_row: i,
                end_row: i + height,
                size: len,
            };
            out.push((strip, Partition::from_beta_set(moved)));
        }
        out
    }

    /// All ways of adding a border strip of `len` boxes.
    pub fn addable_border_strips(&self, len: u64) -> Vec<(BorderStrip, Partition)> {
        if len == 0 {
            return Vec::new();
        }
        let rows = self.len() + len as usize;
        let beta = self.beta_set(rows);
        let k = len as i64;
        let mut out = Vec::new();
        for (i, &b) in beta.iter().enumerate() {
            let target = b + k;
            if beta.contains(&target) {
                continue;
            }
            let height = beta[..i].iter().filter(|&&x| x < target).count();
            let mut moved = beta.clone();
            moved[i] = target;
            let strip = BorderStrip {
                start_row: i - height,
                end_row: i,
                size: len,
            };
            out.push((strip, Partition::from_beta_set(moved)));
        }
        out
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// All partitions of `d` in lexicographically descending order.
pub fn partitions_of(d: u64) -> Vec<Partition> {
    fn rec(remaining: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted_unchecked(prefix.clone()));
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// A positive half-integer stored as twice its value (always odd).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        assert!(twice % 2 != 0, "{twice}/2 is not a half-integer");
        HalfInteger(twice)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn to_rational(self) -> Rational {
        crate::rational::ratio(self.0, 2)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

impl fmt::Debug for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Modified Frobenius coordinates: electron and positron energy levels of the
/// Maya diagram of `v_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCoordinates {
    pub electrons: Vec<HalfInteger>,
    pub positrons: Vec<HalfInteger>,
}

impl FrobeniusCoordinates {
    pub fn size(&self) -> Rational {
        self.electrons
            .iter()
            .chain(&self.positrons)
            .map(|h| h.to_rational())
            .sum()
    }

    /// `½Σa′² − ½Σb′²`.
    pub fn f2(&self) -> Rational {
        let sq = |h: &HalfInteger| h.to_rational() * h.to_rational();
        let a: Rational = self.electrons.iter().map(sq).sum();
        let b: Rational = self.positrons.iter().map(sq).sum();
        (a - b) / crate::rational::rat(2)
    }

    pub fn to_partition(&self) -> Result<Partition> {
        let valid = |v: &[HalfInteger]| {
            v.iter().all(|h| h.0 > 0 && h.0 % 2 != 0) && v.windows(2).all(|w| w[0] > w[1])
        };
        if self.electrons.len() != self.positrons.len()
            || !valid(&self.electrons)
            || !valid(&self.positrons)
        {
            return Err(Error::InvalidPartition(format!(
                "not Frobenius coordinates: {self:?}"
            )));
        }
        let r = self.electrons.len();
        if r == 0 {
            return Ok(Partition::empty());
        }
        // a_i = a'_i - 1/2, λ_i = a_i + i (1-based); same for columns.
        let rows: Vec<u64> = (0..r)
            .map(|i| ((self.electrons[i].0 - 1) / 2) as u64 + i as u64 + 1)
            .collect();
        let cols: Vec<u64> = (0..r)
            .map(|j| ((self.positrons[j].0 - 1) / 2) as u64 + j as u64 + 1)
            .collect();
        let height = cols[0];
        let mut parts = rows;
        for i in (r as u64 + 1)..=height {
            parts.push(cols.iter().filter(|&&c| c >= i).count() as u64);
        }
        Partition::new(parts)
    }
}

pub fn frobenius_coords(lambda: &Partition) -> FrobeniusCoordinates {
    let conj = lambda.conjugate();
    let diag = (0..lambda.len())
        .take_while(|&i| lambda.part(i) > i as u64)
        .count();
    let electrons = (0..diag)
        .map(|i| HalfInteger(2 * (lambda.part(i) as i64 - i as i64) - 1))
        .collect();
    let positrons = (0..diag)
        .map(|i| HalfInteger(2 * (conj.part(i) as i64 - i as i64) - 1))
        .collect();
    FrobeniusCoordinates {
        electrons,
        positrons,
    }
}

/// A border strip (rim hook) spanning rows `start_row..=end_row` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BorderStrip {
    pub start_row: usize,
    pub end_row: usize,
    pub size: u64,
}

impl BorderStrip {
    /// Number of vertical steps.
    pub fn height(&self) -> usize {
        self.end_row - self.start_row
    }

    pub fn sign(&self) -> i64 {
        if self.height() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

thread_local! {
    static CHARACTER_MEMO: RefCell<HashMap<(Partition, Vec<u64>), i64>> =
        RefCell::new(HashMap::new());
}

/// `χ^λ_μ` by the Murnaghan–Nakayama rule, removing the largest part of `μ`
/// first. Memoized per thread.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            mu: lambda.size(),
            nu: mu.size(),
        });
    }
    Ok(character_rec(lambda, mu.parts()))
}

fn character_rec(lambda: &Partition, mu: &[u64]) -> i64 {
    let Some((&first, rest)) = mu.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    if rest.is_empty() {
        // single strip: nonzero only for hooks
        return lambda
            .removable_border_strips(first)
            .into_iter()
            .filter(|(_, p)| p.is_empty())
            .map(|(s, _)| s.sign())
            .sum();
    }
    let key = (lambda.clone(), mu.to_vec());
    if let Some(v) = CHARACTER_MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let value = lambda
        .removable_border_strips(first)
        .into_iter()
        .map(|(strip, smaller)| strip.sign() * character_rec(&smaller, rest))
        .sum();
    CHARACTER_MEMO.with(|m| m.borrow_mut().insert(key, value));
    value
}

/// The column `λ ↦ χ^λ_μ` restricted to its support, built by adding border
/// strips of sizes `μ_i` to the empty partition.
pub fn class_characters(mu: &Partition) -> BTreeMap<Partition, i64> {
    let mut column: BTreeMap<Partition, i64> = BTreeMap::from([(Partition::empty(), 1)]);
    for &part in mu.parts().iter().rev() {
        let mut next: BTreeMap<Partition, i64> = BTreeMap::new();
        for (lambda, coeff) in &column {
            for (strip, bigger) in lambda.addable_border_strips(part) {
                *next.entry(bigger).or_default() += strip.sign() * coeff;
            }
        }
        next.retain(|_, c| *c != 0);
        column = next;
    }
    column
}

/// Central character of a transposition, `f₂(λ)`: the content sum.
pub fn central_character_f2(lambda: &Partition) -> i64 {
    lambda.content_sum()
}

/// Ramification data `(μ, ν)` with labelled parts.
///
/// Part order is kept as given: chambers, walls and closed forms refer to parts
/// by position. Use [`HurwitzInput::sorted`] for the canonical descending
/// labelling.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInput", into = "RawInput")]
pub struct HurwitzInput {
    mu: Vec<u64>,
    nu: Vec<u64>,
    d: u64,
}

#[derive(Serialize, Deserialize)]
struct RawInput {
    mu: Vec<u64>,
    nu: Vec<u64>,
}

impl TryFrom<RawInput> for HurwitzInput {
    type Error = Error;

    fn try_from(raw: RawInput) -> Result<Self> {
        HurwitzInput::new(raw.mu, raw.nu)
    }
}

impl From<HurwitzInput> for RawInput {
    fn from(h: HurwitzInput) -> Self {
        RawInput { mu: h.mu, nu: h.nu }
    }
}

impl HurwitzInput {
    pub fn new(mu: Vec<u64>, nu: Vec<u64>) -> Result<Self> {
        if mu.is_empty() || nu.is_empty() {
            return Err(Error::InvalidPartition("mu and nu must be nonempty".into()));
        }
        if mu.iter().chain(&nu).any(|&p| p == 0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if mu.len() > 16 || nu.len() > 16 {
            return Err(Error::InvalidPartition("at most 16 parts per side".into()));
        }
        let dm: u64 = mu.iter().sum();
        let dn: u64 = nu.iter().sum();
        if dm != dn {
            return Err(Error::SizeMismatch { mu: dm, nu: dn });
        }
        Ok(HurwitzInput { mu, nu, d: dm })
    }

    pub fn from_partitions(mu: &Partition, nu: &Partition) -> Result<Self> {
        HurwitzInput::new(mu.parts().to_vec(), nu.parts().to_vec())
    }

    pub fn mu(&self) -> &[u64] {
        &self.mu
    }

    pub fn nu(&self) -> &[u64] {
        &self.nu
    }

    pub fn m(&self) -> usize {
        self.mu.len()
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `r = 2g - 2 + m + n`.
    pub fn r_for_genus(&self, g: u64) -> u64 {
        2 * g + (self.m() + self.n()) as u64 - 2
    }

    pub fn genus_for_r(&self, r: u64) -> Option<u64> {
        let shift = (self.m() + self.n()) as u64 - 2;
        (r >= shift && (r - shift) % 2 == 0).then(|| (r - shift) / 2)
    }

    pub fn mu_sum(&self, set: u32) -> u64 {
        subset_sum(&self.mu, set)
    }

    pub fn nu_sum(&self, set: u32) -> u64 {
        subset_sum(&self.nu, set)
    }

    pub fn mu_partition(&self) -> Partition {
        Partition::normalized(self.mu.clone()).expect("validated").0
    }

    pub fn nu_partition(&self) -> Partition {
        Partition::normalized(self.nu.clone()).expect("validated").0
    }

    /// Descending relabelling; the flag reports whether anything moved.
    pub fn sorted(&self) -> (HurwitzInput, bool) {
        let (mu, a) = Partition::normalized(self.mu.clone()).expect("validated");
        let (nu, b) = Partition::normalized(self.nu.clone()).expect("validated");
        (
            HurwitzInput {
                mu: mu.parts,
                nu: nu.parts,
                d: self.d,
            },
            a || b,
        )
    }

    pub fn same_shape(&self, other: &HurwitzInput) -> Result<()> {
        if self.m() != other.m() || self.n() != other.n() {
            return Err(Error::ShapeMismatch {
                expected_m: self.m(),
                expected_n: self.n(),
                m: other.m(),
                n: other.n(),
            });
        }
        Ok(())
    }

    /// Coordinates `μ_1..μ_m, ν_1..ν_{n-1}` (the last `ν` part eliminated).
    pub fn reduced_coordinates(&self) -> Vec<Rational> {
        self.mu
            .iter()
            .chain(&self.nu[..self.n() - 1])
            .map(|&x| Rational::from_integer(BigInt::from(x)))
            .collect()
    }
}

impl fmt::Display for HurwitzInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.mu), join(&self.nu))
    }
}

impl fmt::Debug for HurwitzInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HurwitzInput{self}")
    }
}

pub fn subset_sum(parts: &[u64], set: u32) -> u64 {
    parts
        .iter()
        .enumerate()
        .filter(|(i, _)| set & (1 << i) != 0)
        .map(|(_, &p)| p)
        .sum()
}

/// Renders an index bitmask as a 1-based set, e.g. `{1,3}`.
pub fn format_index_set(set: u32) -> String {
    let items: Vec<String> = (0..32)
        .filter(|i| set & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// First proper pair `(I, J)` with `|μ_I| = |ν_J|`, if any. Both sets are
/// nonempty and proper, since positive parts rule out every other pair.
pub fn find_wall(input: &HurwitzInput) -> Option<(u32, u32)> {
    let full_m = (1u32 << input.m()) - 1;
    let full_n = (1u32 << input.n()) - 1;
    for i in 1..full_m {
        let a = input.mu_sum(i);
        for j in 1..full_n {
            if a == input.nu_sum(j) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_on_wall(input: &HurwitzInput) -> bool {
    find_wall(input).is_some()
}

/// Disconnected double Hurwitz number from the character sum
/// `(1/∏μ_i ∏ν_j) Σ_λ χ^λ_μ f₂(λ)^r χ^λ_ν`.
pub fn hurwitz_oracle(input: &HurwitzInput, r: u32) -> Rational {
    let mu = input.mu_partition();
    let nu = input.nu_partition();
    let col_mu = class_characters(&mu);
    let col_nu = if mu == nu {
        col_mu.clone()
    } else {
        class_characters(&nu)
    };
    let mut total = BigInt::zero();
    for (lambda, &a) in &col_mu {
        if let Some(&b) = col_nu.get(lambda) {
            let f2 = BigInt::from(central_character_f2(lambda));
            total += BigInt::from(a) * BigInt::from(b) * num_traits::pow(f2, r as usize);
        }
    }
    let denom: BigInt = mu
        .parts()
        .iter()
        .chain(nu.parts())
        .map(|&p| BigInt::from(p))
        .product();
    Rational::new(total, denom)
}

/// Same sum, but driven by [`character`] over every partition of `d`.
pub fn hurwitz_oracle_full_sum(input: &HurwitzInput, r: u32) -> Result<Rational> {
    let mu = input.mu_partition();
    let nu = input.nu_partition();
    let mut total = BigInt::zero();
    for lambda in partitions_of(input.d()) {
        let a = character(&lambda, &mu)?;
        if a == 0 {
            continue;
        }
        let b = character(&lambda, &nu)?;
        let f2 = BigInt::from(central_character_f2(&lambda));
        total += BigInt::from(a * b) * num_traits::pow(f2, r as usize);
    }
    let denom: BigInt = mu
        .parts()
        .iter()
        .chain(nu.parts())
        .map(|&p| BigInt::from(p))
        .product();
    Ok(Rational::new(total, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Euler's pentagonal-number recurrence.
    fn partition_count(n: i64) -> i64 {
        let mut table = vec![0i64; n as usize + 1];
        table[0] = 1;
        for i in 1..=n {
            let mut sum = 0;
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum += sign * table[(i - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= i {
                    sum += sign * table[(i - g2) as usize];
                }
                k += 1;
            }
            table[i as usize] = sum;
        }
        table[n as usize]
    }

    #[test]
    fn partition_counts_match_pentagonal_recurrence() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        for d in 0..=14 {
            assert_eq!(
                partitions_of(d).len() as i64,
                partition_count(d as i64),
                "d={d}"
            );
        }
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(8).len(), 22);
    }

    #[test]
    fn partitions_are_lex_descending_and_distinct() {
        let ps = partitions_of(6);
        assert!(ps.windows(2).all(|w| w[0].parts() > w[1].parts()));
        assert_eq!(ps[0], p(&[6]));
        assert_eq!(ps.last().unwrap(), &p(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        let (q, moved) = Partition::normalized(vec![1, 3, 2]).unwrap();
        assert_eq!(q, p(&[3, 2, 1]));
        assert!(moved);
        assert!(!Partition::normalized(vec![3, 1]).unwrap().1);
    }

    #[test]
    fn frobenius_examples() {
        let empty = frobenius_coords(&Partition::empty());
        assert!(empty.electrons.is_empty() && empty.positrons.is_empty());

        let f = frobenius_coords(&p(&[3, 2, 2]));
        assert_eq!(f.electrons, vec![HalfInteger(5), HalfInteger(1)]);
        assert_eq!(f.positrons, vec![HalfInteger(5), HalfInteger(3)]);

        let f = frobenius_coords(&p(&[2]));
        assert_eq!(f.electrons, vec![HalfInteger(3)]);
        assert_eq!(f.positrons, vec![HalfInteger(1)]);
        assert_eq!(f.size(), rat(2));
    }

    #[test]
    fn frobenius_round_trips_and_sums_to_size() {
        for d in 0..=12 {
            for lambda in partitions_of(d) {
                let f = frobenius_coords(&lambda);
                assert_eq!(f.size(), rat(d as i64));
                assert_eq!(f.to_partition().unwrap(), lambda);
                assert_eq!(f.f2(), rat(central_character_f2(&lambda)));
            }
        }
    }

    #[test]
    fn character_examples() {
        for mu in partitions_of(5) {
            assert_eq!(character(&p(&[5]), &mu).unwrap(), 1);
        }
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 2]), &p(&[2, 1, 1])).unwrap(), 0);
        assert_eq!(
            character(&p(&[2, 1]), &p(&[2, 2])),
            Err(Error::SizeMismatch { mu: 3, nu: 4 })
        );
    }

    /// Character table of S_4 in the ordering of `partitions_of(4)`.
    #[test]
    fn s4_character_table() {
        let expected = [
            [1, 1, 1, 1, 1],
            [-1, 0, -1, 1, 3],
            [0, -1, 2, 0, 2],
            [1, 0, -1, -1, 3],
            [-1, 1, 1, -1, 1],
        ];
        let ps = partitions_of(4);
        for (i, lambda) in ps.iter().enumerate() {
            for (j, mu) in ps.iter().enumerate() {
                assert_eq!(
                    character(lambda, mu).unwrap(),
                    expected[i][j],
                    "{lambda} {mu}"
                );
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for d in 1..=6 {
            let ps = partitions_of(d);
            for mu in &ps {
                for nu in &ps {
                    let s: i64 = ps
                        .iter()
                        .map(|l| character(l, mu).unwrap() * character(l, nu).unwrap())
                        .sum();
                    if mu == nu {
                        let centralizer = crate::rational::factorial(d) / mu.class_size();
                        assert_eq!(BigInt::from(s), centralizer, "{mu}");
                    } else {
                        assert_eq!(s, 0, "{mu} {nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_character_is_hook_length_dimension() {
        for d in 0..=6 {
            let ones = Partition::new(vec![1; d as usize]).unwrap();
            for lambda in partitions_of(d) {
                assert_eq!(
                    BigInt::from(character(&lambda, &ones).unwrap()),
                    lambda.dimension()
                );
            }
        }
    }

    #[test]
    fn class_characters_match_recursive_characters() {
        for d in 1..=7 {
            for mu in partitions_of(d) {
                let column = class_characters(&mu);
                for lambda in partitions_of(d) {
                    let expected = character(&lambda, &mu).unwrap();
                    assert_eq!(column.get(&lambda).copied().unwrap_or(0), expected);
                }
            }
        }
    }

    #[test]
    fn f2_examples() {
        assert_eq!(central_character_f2(&p(&[1])), 0);
        assert_eq!(central_character_f2(&p(&[2])), 1);
        assert_eq!(central_character_f2(&p(&[1, 1])), -1);
        assert_eq!(central_character_f2(&p(&[3, 2, 2])), -1);
    }

    #[test]
    fn f2_is_the_central_character_of_a_transposition() {
        for d in 2..=8 {
            let mut parts = vec![2];
            parts.extend(std::iter::repeat(1).take(d as usize - 2));
            let transposition = Partition::new(parts).unwrap();
            let c = transposition.class_size();
            for lambda in partitions_of(d) {
                let chi = character(&lambda, &transposition).unwrap();
                let value = Rational::new(c.clone() * BigInt::from(chi), lambda.dimension());
                assert_eq!(value, rat(central_character_f2(&lambda)), "{lambda}");
            }
        }
    }

    #[test]
    fn border_strip_removal_signs() {
        // α_2 v_(3,2,2) = v_(3,2) − v_(3,1,1)
        let mut got: Vec<(Partition, i64)> = p(&[3, 2, 2])
            .removable_border_strips(2)
            .into_iter()
            .map(|(s, q)| (q, s.sign()))
            .collect();
        got.sort();
        assert_eq!(got, vec![(p(&[3, 1, 1]), -1), (p(&[3, 2]), 1)]);
    }

    #[test]
    fn strip_addition_inverts_removal() {
        for d in 0..=6 {
            for lambda in partitions_of(d) {
                for k in 1..=4 {
                    for (strip, bigger) in lambda.addable_border_strips(k) {
                        assert_eq!(bigger.size(), d + k);
                        let back: Vec<_> = bigger
                            .removable_border_strips(k)
                            .into_iter()
                            .filter(|(_, q)| *q == lambda)
                            .collect();
                        assert_eq!(back.len(), 1);
                        assert_eq!(back[0].0.sign(), strip.sign());
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let one = HurwitzInput::new(vec![1], vec![1]).unwrap();
        assert_eq!(hurwitz_oracle(&one, 0), rat(1));
        assert_eq!(hurwitz_oracle(&one, 1), rat(0));
        assert_eq!(hurwitz_oracle(&one, 4), rat(0));
        let h = HurwitzInput::new(vec![2], vec![1, 1]).unwrap();
        assert_eq!(hurwitz_oracle(&h, 1), rat(1));
        let dd = HurwitzInput::new(vec![3], vec![3]).unwrap();
        assert_eq!(hurwitz_oracle(&dd, 0), ratio(1, 3));
    }

    #[test]
    fn oracle_routes_agree() {
        for d in 1..=6 {
            for mu in partitions_of(d) {
                for nu in partitions_of(d) {
                    let h = HurwitzInput::from_partitions(&mu, &nu).unwrap();
                    for r in 0..4 {
                        assert_eq!(
                            hurwitz_oracle(&h, r),
                            hurwitz_oracle_full_sum(&h, r).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn input_validation() {
        assert!(matches!(
            HurwitzInput::new(vec![2], vec![1]),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(HurwitzInput::new(vec![], vec![]).is_err());
        assert!(HurwitzInput::new(vec![0, 2], vec![2]).is_err());
        let h = HurwitzInput::new(vec![1, 3], vec![4]).unwrap();
        assert_eq!(h.r_for_genus(1), 3);
        assert_eq!(h.genus_for_r(3), Some(1));
        assert_eq!(h.genus_for_r(2), None);
        let (s, moved) = h.sorted();
        assert!(moved);
        assert_eq!(s.mu(), &[3, 1]);
    }

    #[test]
    fn wall_detection() {
        let on = HurwitzInput::new(vec![2, 1], vec![2, 1]).unwrap();
        assert!(is_on_wall(&on));
        let off = HurwitzInput::new(vec![5, 2], vec![4, 3]).unwrap();
        assert!(!is_on_wall(&off));
        for nu in partitions_of(7) {
            let h = HurwitzInput::new(vec![7], nu.parts().to_vec()).unwrap();
            assert!(!is_on_wall(&h));
        }
    }
}
