use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{format_index_set, HurwitzInput};
use crate::patterns::IndexSet;

/// The hyperplane `|μ_I| = |ν_J|`. `W_{I,J}` and `W_{I^c,J^c}` are the same
/// hyperplane; the canonical representative is the one with `1 ∈ I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Wall {
    pub i: IndexSet,
    pub j: IndexSet,
}

impl Wall {
    /// A proper wall for `m + n` parts: `I` and `J` both nonempty and proper.
    pub fn new(i: IndexSet, j: IndexSet, m: usize, n: usize) -> Result<Self> {
        let full_m = (1 << m) - 1;
        let full_n = (1 << n) - 1;
        if i & !full_m != 0 || j & !full_n != 0 {
            return Err(Error::InvalidWall(format!(
                "W_{{{},{}}} refers to parts beyond {m}+{n}",
                format_index_set(i),
                format_index_set(j)
            )));
        }
        if i == 0 || j == 0 || i == full_m || j == full_n {
            return Err(Error::InvalidWall(format!(
                "W_{{{},{}}} is never attained by positive parts",
                format_index_set(i),
                format_index_set(j)
            )));
        }
        Ok(Wall { i, j })
    }

    pub fn complement(&self, m: usize, n: usize) -> Self {
        Wall {
            i: !self.i & ((1 << m) - 1),
            j: !self.j & ((1 << n) - 1),
        }
    }

    pub fn canonical(&self, m: usize, n: usize) -> Self {
        if self.i & 1 != 0 {
            *self
        } else {
            self.complement(m, n)
        }
    }

    /// `|μ_I| − |ν_J|`.
    pub fn value(&self, input: &HurwitzInput) -> i64 {
        input.mu_sum(self.i) as i64 - input.nu_sum(self.j) as i64
    }

    /// The representative of this hyperplane that is positive at `input`.
    pub fn oriented_toward(&self, input: &HurwitzInput) -> Result<Self> {
        match self.value(input).cmp(&0) {
            Ordering::Greater => Ok(*self),
            Ordering::Less => Ok(self.complement(input.m(), input.n())),
            Ordering::Equal => Err(Error::OnWall(self.to_string())),
        }
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "W_{{{},{}}}",
            format_index_set(self.i),
            format_index_set(self.j)
        )
    }
}

/// Canonical proper walls for `m + n` parts, ordered by `(I, J)`.
pub fn wall_list(m: usize, n: usize) -> Vec<Wall> {
    let full_m: IndexSet = (1 << m) - 1;
    let full_n: IndexSet = (1 << n) - 1;
    let mut out = Vec::new();
    for i in (1..full_m).filter(|i| i & 1 != 0) {
        for j in 1..full_n {
            out.push(Wall { i, j });
        }
    }
    out
}

/// Signs of `|μ_I| − |ν_J|` over the canonical walls. Two off-wall inputs lie
/// in the same chamber exactly when their signatures agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ChamberSignature {
    pub m: usize,
    pub n: usize,
    pub signs: Vec<(Wall, i8)>,
}

impl ChamberSignature {
    /// Sign of `|μ_I| − |ν_J|` for `wall` as given, canonical or not.
    pub fn sign(&self, wall: &Wall) -> Option<i8> {
        let w = wall.canonical(self.m, self.n);
        let flip = if w == *wall { 1 } else { -1 };
        self.signs
            .iter()
            .find(|(v, _)| *v == w)
            .map(|&(_, s)| s * flip)
    }

    /// Canonical walls at which the two signatures differ.
    pub fn differing_walls(&self, other: &ChamberSignature) -> Vec<Wall> {
        self.signs
            .iter()
            .zip(&other.signs)
            .filter(|(a, b)| a.1 != b.1)
            .map(|(a, _)| a.0)
            .collect()
    }

    /// The same signature with the sign at `wall` reversed.
    pub fn flipped(&self, wall: &Wall) -> Self {
        let w = wall.canonical(self.m, self.n);
        let mut out = self.clone();
        for (v, s) in &mut out.signs {
            if *v == w {
                *s = -*s;
            }
        }
        out
    }

    pub fn contains(&self, input: &HurwitzInput) -> bool {
        input.m() == self.m
            && input.n() == self.n
            && self
                .signs
                .iter()
                .all(|(w, s)| w.value(input).signum() == *s as i64)
    }
}

impl fmt::Display for ChamberSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.signs.is_empty() {
            return write!(f, "(single chamber)");
        }
        let items: Vec<String> = self
            .signs
            .iter()
            .map(|(w, s)| format!("{w}{}", if *s > 0 { "+" } else { "-" }))
            .collect();
        write!(f, "{}", items.join(" "))
    }
}

/// Signature of an off-wall input.
pub fn chamber_signature(input: &HurwitzInput) -> Result<ChamberSignature> {
    let mut signs = Vec::new();
    for w in wall_list(input.m(), input.n()) {
        let v = w.value(input);
        if v == 0 {
            return Err(Error::OnWall(w.to_string()));
        }
        signs.push((w, v.signum() as i8));
    }
    Ok(ChamberSignature {
        m: input.m(),
        n: input.n(),
        signs,
    })
}

/// Signature with zero signs allowed, for points that may sit on walls.
pub fn signature_of(input: &HurwitzInput) -> Vec<i8> {
    wall_list(input.m(), input.n())
        .iter()
        .map(|w| w.value(input).signum() as i8)
        .collect()
}
