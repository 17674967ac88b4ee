use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::wall::{chamber_signature, ChamberSignature};
use crate::error::{Error, Result};
use crate::partitions::HurwitzInput;

const MAX_BOUND: u64 = 1 << 16;

/// `count` distinct labeled points with signature `sig`, found by seeded
/// rejection sampling in a box that grows from `start_bound`.
///
/// Parts `μ_1..μ_m, ν_1..ν_{n-1}` are drawn from `1..=B`; `ν_n` is whatever
/// balances the degree. Small boxes are tried first so that samples have
/// small degree.
pub fn sample_with_signature(
    sig: &ChamberSignature,
    count: usize,
    seed: u64,
    start_bound: u64,
) -> Result<Vec<HurwitzInput>> {
    let (m, n) = (sig.m, sig.n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut bound = start_bound.max(2);
    while out.len() < count {
        if bound > MAX_BOUND {
            return Err(Error::NoSample(format!(
                "fewer than {count} points in chamber {sig} (it may be empty)"
            )));
        }
        for _ in 0..(40 * count + 2000) {
            let mu: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=bound)).collect();
            let mut nu: Vec<u64> = (0..n - 1).map(|_| rng.gen_range(1..=bound)).collect();
            let d: u64 = mu.iter().sum();
            let used: u64 = nu.iter().sum();
            if used >= d {
                continue;
            }
            nu.push(d - used);
            let Ok(p) = HurwitzInput::new(mu, nu) else {
                continue;
            };
            if sig.contains(&p) && seen.insert(p.clone()) {
                out.push(p);
                if out.len() == count {
                    break;
                }
            }
        }
        bound += bound / 2 + 1;
    }
    Ok(out)
}

/// Samples from the chamber of `reference`.
pub fn sample_in_chamber(
    reference: &HurwitzInput,
    count: usize,
    seed: u64,
) -> Result<Vec<HurwitzInput>> {
    let sig = chamber_signature(reference)?;
    let start = reference
        .mu()
        .iter()
        .chain(reference.nu())
        .copied()
        .max()
        .unwrap_or(2);
    sample_with_signature(&sig, count, seed, start)
}

fn compositions(d: u64, k: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if k == 1 {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 1..=d.saturating_sub(k as u64 - 1) {
        prefix.push(first);
        compositions(d - first, k - 1, prefix, out);
        prefix.pop();
    }
}

/// The first labeled point of smallest degree in every chamber met while
/// scanning all inputs of degree at most `max_d`, keyed by signature.
pub fn chamber_representatives(
    m: usize,
    n: usize,
    max_d: u64,
) -> BTreeMap<ChamberSignature, HurwitzInput> {
    let mut found = BTreeMap::new();
    for d in (m.max(n) as u64)..=max_d {
        let (mut mus, mut nus) = (Vec::new(), Vec::new());
        compositions(d, m, &mut Vec::new(), &mut mus);
        compositions(d, n, &mut Vec::new(), &mut nus);
        for mu in &mus {
            for nu in &nus {
                let p = HurwitzInput::new(mu.clone(), nu.clone()).expect("same degree");
                if let Ok(sig) = chamber_signature(&p) {
                    found.entry(sig).or_insert(p);
                }
            }
        }
    }
    found
}
