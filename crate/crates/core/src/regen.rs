//! Regenerative pairs.
//!
//! With `s = (-1)^m` and `S` the `s`-symmetrization, a pair `(f, g)` is
//! regenerative when both `S(f)` and `S(f ∨ g)` have order at least `m`. Then
//! `S(f ∨ g ∨ s g*)` has order at least `m` as well, and `(f ∨ g, s g*)` is again
//! a regenerative pair. Iterating yields symmetric witnesses of lengths
//! `2ν, 2ν + 2δ, 2ν + 4δ, ...` where `ν = len f` and `δ = len g`; the left
//! halves are nested, so one infinite sign sequence `f ∨ g ∨ s g* ∨ g ∨ ...`
//! describes the whole family.

use crate::error::{Error, Result};
use crate::poly::{Bipartition, LittlewoodPoly, SymmetrySign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegenerativePair {
    f: LittlewoodPoly,
    g: LittlewoodPoly,
    m: u32,
}

impl RegenerativePair {
    /// Unverified pair; see [`RegenerativePair::verified`].
    pub fn new(f: LittlewoodPoly, g: LittlewoodPoly, m: u32) -> Self {
        Self { f, g, m }
    }

    pub fn verified(f: LittlewoodPoly, g: LittlewoodPoly, m: u32) -> Result<Self> {
        if !verify_rp(&f, &g, m) {
            return Err(Error::Verification(format!(
                "(f, g) with lengths ({}, {}) is not a regenerative pair of order {m}",
                f.len(),
                g.len()
            )));
        }
        Ok(Self { f, g, m })
    }

    /// The pair `(f, s f*)` whose family doubles `S(f)` repeatedly.
    pub fn trivial(f: LittlewoodPoly, m: u32) -> Self {
        let g = f.reversal().scale(SymmetrySign::for_order(m));
        Self { f, g, m }
    }

    pub fn f(&self) -> &LittlewoodPoly {
        &self.f
    }

    pub fn g(&self) -> &LittlewoodPoly {
        &self.g
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn sign(&self) -> SymmetrySign {
        SymmetrySign::for_order(self.m)
    }

    /// `ν`, the length of `f`.
    pub fn nu(&self) -> usize {
        self.f.len()
    }

    /// `δ`, the length of `g`.
    pub fn delta(&self) -> usize {
        self.g.len()
    }

    /// Full lengths `(2ν, 2ν + 2δ)` of the two symmetrized witnesses.
    pub fn lengths(&self) -> (usize, usize) {
        (2 * self.nu(), 2 * (self.nu() + self.delta()))
    }

    pub fn verify(&self) -> bool {
        verify_rp(&self.f, &self.g, self.m)
    }

    /// First `len` signs of `f ∨ g ∨ s g* ∨ g ∨ s g* ∨ ...`.
    pub fn limit_prefix(&self, len: usize) -> Vec<i8> {
        let alt = self.g.reversal().scale(self.sign());
        let mut out: Vec<i8> = self.f.coeffs().iter().copied().take(len).collect();
        let mut block = 1usize;
        while out.len() < len {
            let h = if block % 2 == 1 { &self.g } else { &alt };
            out.extend(h.coeffs().iter().copied().take(len - out.len()));
            block += 1;
        }
        out
    }
}

pub fn verify_rp(f: &LittlewoodPoly, g: &LittlewoodPoly, m: u32) -> bool {
    let s = SymmetrySign::for_order(m);
    f.symmetrize(s).has_order_at_least(m) && f.join(g).symmetrize(s).has_order_at_least(m)
}

/// `(f ∨ g, s g*)`, re-verified.
///
/// The extension should always verify. A failure means a bug or bad input, so it is
/// reported as an internal error carrying the offending data.
pub fn rp_extend(pair: &RegenerativePair) -> Result<RegenerativePair> {
    let s = pair.sign();
    let next = RegenerativePair {
        f: pair.f.join(&pair.g),
        g: pair.g.reversal().scale(s),
        m: pair.m,
    };
    if !next.verify() {
        return Err(Error::Internal(format!(
            "extension of a regenerative pair failed verification: m={}, f={}, g={}",
            pair.m, pair.f, pair.g
        )));
    }
    Ok(next)
}

/// Member `k`: `S(f ∨ h_1 ∨ ... ∨ h_k)` with `h_i = g` for odd `i` and `s g*` for even `i`.
pub fn family_poly(pair: &RegenerativePair, k: usize) -> LittlewoodPoly {
    let half = pair.limit_prefix(pair.nu() + k * pair.delta());
    LittlewoodPoly::from_vec_unchecked(half).symmetrize(pair.sign())
}

pub fn family(pair: &RegenerativePair, k: usize) -> Bipartition {
    family_poly(pair, k).to_bipartition()
}

#[cfg(feature = "parallel")]
pub fn family_range(pair: &RegenerativePair, ks: std::ops::RangeInclusive<usize>) -> Vec<LittlewoodPoly> {
    use rayon::prelude::*;
    ks.into_par_iter().map(|k| family_poly(pair, k)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn family_range(pair: &RegenerativePair, ks: std::ops::RangeInclusive<usize>) -> Vec<LittlewoodPoly> {
    ks.map(|k| family_poly(pair, k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSequence {
    pub raw: Vec<usize>,
    /// `None` when no period was confirmed inside the horizon.
    pub preperiod: Option<Vec<usize>>,
    pub period: Option<Vec<usize>>,
}

/// Gaps between consecutive elements of the limit set `X` (positions of `+1` in
/// the limit sequence), examined over its first `horizon` positions.
///
/// The reported split minimizes the period length first and the preperiod second,
/// and is only accepted when the periodic tail repeats at least three times and
/// covers at least half of the observed differences. Horizons shorter than
/// `ν + 3δ` report the raw differences only.
pub fn difference_sequence(pair: &RegenerativePair, horizon: usize) -> DifferenceSequence {
    let seq = pair.limit_prefix(horizon);
    let x: Vec<usize> = seq.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i).collect();
    let raw: Vec<usize> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let len = raw.len();
    if horizon < pair.nu() + 3 * pair.delta() {
        return DifferenceSequence { raw, preperiod: None, period: None };
    }
    for period in 1..=len / 3 {
        // Smallest start P such that raw[i] == raw[i + period] for all i >= P.
        let mut start = len - period;
        while start > 0 && raw[start - 1] == raw[start - 1 + period] {
            start -= 1;
        }
        if len - start >= 3 * period && 2 * (len - start) >= len {
            return DifferenceSequence {
                preperiod: Some(raw[..start].to_vec()),
                period: Some(raw[start..start + period].to_vec()),
                raw,
            };
        }
    }
    DifferenceSequence { raw, preperiod: None, period: None }
}
