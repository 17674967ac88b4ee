use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::sampling::sample_with_signature;
use super::wall::chamber_signature;
use crate::error::{Error, Result};
use crate::partitions::{hurwitz_oracle, HurwitzInput};
use crate::rational::Rational;
use crate::series::{Monomial, MultiPoly};

/// All exponent vectors in `nvars` variables of total degree at most
/// `degree`, graded and then lexicographic.
pub fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(left: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(left - 1, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, degree, &mut Vec::new(), &mut out);
    out.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
    out
}

/// Exact solution of `A x = b` for an overdetermined or square system.
///
/// Rows are scaled to integers and reduced by fraction-free (Bareiss)
/// elimination. Errors with [`Error::SingularSystem`] when the columns are
/// dependent and [`Error::InconsistentData`] when no exact solution exists.
pub fn solve_exact(rows: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let unknowns = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let lcm = row
                .iter()
                .chain(std::iter::once(b))
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .chain(std::iter::once(b))
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        rest.par_iter_mut().for_each(|row| {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..=unknowns {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
        });
        prev = pivot.clone();
        rank += 1;
    }
    if rank < unknowns {
        return Err(Error::SingularSystem { rank, unknowns });
    }
    if a[rank..].iter().any(|row| !row[unknowns].is_zero()) {
        return Err(Error::InconsistentData);
    }
    let mut x = vec![Rational::zero(); unknowns];
    for k in (0..unknowns).rev() {
        let mut acc = Rational::from_integer(a[k][unknowns].clone());
        for j in k + 1..unknowns {
            acc -= Rational::from_integer(a[k][j].clone()) * &x[j];
        }
        x[k] = acc / Rational::from_integer(a[k][k].clone());
    }
    Ok(x)
}

/// Interpolates `H^r` on `lattice` by a polynomial of degree at most
/// `4g − 3 + m + n` in `μ_1..μ_m, ν_1..ν_{n-1}`, using oracle values.
pub fn interpolate_polynomial(
    reference: &HurwitzInput,
    g: u32,
    lattice: &[HurwitzInput],
) -> Result<MultiPoly> {
    let sig = chamber_signature(reference)?;
    for p in lattice {
        reference.same_shape(p)?;
        if !sig.contains(p) {
            return Err(Error::ChamberMismatch(p.to_string()));
        }
    }
    let (m, n) = (reference.m(), reference.n());
    let r = reference.r_for_genus(g as u64) as u32;
    let values: Vec<Rational> = lattice.par_iter().map(|p| hurwitz_oracle(p, r)).collect();
    let degree = 4 * g as i64 - 3 + (m + n) as i64;
    if degree < 0 {
        return if values.iter().all(Zero::is_zero) {
            Ok(MultiPoly::zero())
        } else {
            Err(Error::InconsistentData)
        };
    }
    let monomials = monomials_up_to(m + n - 1, degree as u32);
    let rows: Vec<Vec<Rational>> = lattice
        .iter()
        .map(|p| {
            let point = p.reduced_coordinates();
            monomials
                .iter()
                .map(|e| MultiPoly::from_terms([(e.clone(), Rational::one())]).eval(&point))
                .collect()
        })
        .collect();
    let coeffs = solve_exact(&rows, &values)?;
    Ok(MultiPoly::from_terms(monomials.into_iter().zip(coeffs)))
}

/// Interpolates on a seeded sample of the chamber of `reference` with
/// `extra` more points than unknowns.
///
/// Every coordinate must take more distinct values than the degree, or a
/// product of linear factors in one variable vanishes on the whole sample,
/// so the sampling box starts above the degree and is enlarged whenever the
/// system comes out singular.
pub fn interpolate_in_chamber(
    reference: &HurwitzInput,
    g: u32,
    extra: usize,
    seed: u64,
) -> Result<(MultiPoly, Vec<HurwitzInput>)> {
    let sig = chamber_signature(reference)?;
    let degree = (4 * g as i64 - 3 + (reference.m() + reference.n()) as i64).max(0) as u32;
    let count = monomials_up_to(reference.m() + reference.n() - 1, degree).len() + extra;
    let mut bound = degree as u64 + 6;
    loop {
        let lattice = sample_with_signature(&sig, count, seed, bound)?;
        match interpolate_polynomial(reference, g, &lattice) {
            Err(Error::SingularSystem { .. }) if bound < 1 << 12 => bound *= 2,
            other => return other.map(|p| (p, lattice)),
        }
    }
}
