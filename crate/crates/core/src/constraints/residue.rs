use std::fmt;

use crate::error::{invalid, Result};
use crate::poly::Bipartition;

/// `C_{p,j}([n])`: how many of `0..n` are congruent to `j` mod `p`.
pub fn class_counts(n: u64, p: u64) -> Vec<u64> {
    (0..p).map(|j| if j < n % p { n / p + 1 } else { n / p }).collect()
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `d_{p,j} = C_{p,j}(A) - C_{p,j}(B)` for `j = 0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscrepancyVector {
    pub p: u64,
    pub d: Vec<i64>,
}

impl DiscrepancyVector {
    pub fn new(p: u64, d: Vec<i64>) -> Result<Self> {
        if d.len() as u64 != p {
            return invalid(format!("discrepancy vector for p={p} has {} entries", d.len()));
        }
        Ok(Self { p, d })
    }

    /// The vector realized by an actual bipartition.
    pub fn of(bp: &Bipartition, p: u64) -> Self {
        let mut d = vec![0i64; p as usize];
        for i in 0..bp.n() {
            d[i % p as usize] += if bp.contains(i) { 1 } else { -1 };
        }
        Self { p, d }
    }

    pub fn negate(&self) -> Self {
        Self { p: self.p, d: self.d.iter().map(|x| -x).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(|&x| x == 0)
    }

    /// First nonzero entry positive (or the zero vector).
    pub fn is_normalized(&self) -> bool {
        self.d.iter().find(|&&x| x != 0).is_none_or(|&x| x > 0)
    }

    /// Counts of `A` per class: `(C_{p,j}([n]) + d_{p,j}) / 2`.
    pub fn to_profile(&self, n: u64) -> Result<ResidueProfile> {
        let c = class_counts(n, self.p);
        let counts = c
            .iter()
            .zip(&self.d)
            .map(|(&cj, &dj)| {
                let v = cj as i64 + dj;
                if v < 0 || v % 2 != 0 || v / 2 > cj as i64 {
                    invalid(format!("d={dj} is incompatible with class size {cj}"))
                } else {
                    Ok((v / 2) as u64)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ResidueProfile { p: self.p, counts })
    }

    pub fn from_profile(n: u64, profile: &ResidueProfile) -> Self {
        let c = class_counts(n, profile.p);
        Self {
            p: profile.p,
            d: c.iter().zip(&profile.counts).map(|(&cj, &a)| 2 * a as i64 - cj as i64).collect(),
        }
    }
}

impl fmt::Display for DiscrepancyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.d.iter())
    }
}

/// Number of elements of `A` in each residue class mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueProfile {
    pub p: u64,
    pub counts: Vec<u64>,
}

impl ResidueProfile {
    pub fn new(p: u64, counts: Vec<u64>) -> Self {
        Self { p, counts }
    }

    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }
}

impl fmt::Display for ResidueProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.counts.iter())
    }
}

pub(crate) fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}
