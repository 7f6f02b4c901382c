//! Enumeration of discrepancy vectors `d̄_p` compatible with an order-`m`
//! bipartition of `[n]`.
//!
//! Writing `m = s(p-1) + r` with `0 <= r <= p-2`, a vector must satisfy:
//!
//! * `|d_j| <= C_{p,j}([n])`, `sum_j d_j = 0`, `d_j ≡ C_{p,j}([n]) (mod 2)`;
//! * if `r = 0`: all `d_j` congruent mod `p^s`;
//! * if `r >= 1`: every `d_j` divisible by `p^s`, and for `0 <= j < r`,
//!   `sum_{k >= j} C(k, j) d_k ≡ 0 (mod p^{s+1})`;
//! * for `p = 2`, with `f(-1) = d_0 - d_1`: either `f(-1) = 0` or
//!   `|f(-1)| >= 2^m`; and `f(-1) = 0` is excluded when `m >= t - 1`, where `t` is
//!   the largest power of two dividing `n`.
//!
//! Coordinates are fixed from `d_{p-1}` down to `d_0`, each tried in descending
//! order, so the output order is reproducible.

use crate::error::{invalid, Error, Result};

use super::residue::{class_counts, is_prime, DiscrepancyVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Divisibility {
    Pass,
    Refuted,
}

/// A length-`n` LP of order `m` needs the 2-part of `n` to exceed `m`.
pub fn divisibility_check(n: u64, m: u32) -> Divisibility {
    if n == 0 {
        return Divisibility::Refuted;
    }
    let two_part = 1u128 << n.trailing_zeros();
    if two_part > m as u128 {
        Divisibility::Pass
    } else {
        Divisibility::Refuted
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpOptions {
    /// Keep only vectors whose first nonzero entry is positive (complementing `A`).
    pub normalize: bool,
    /// Apply the binomial congruences mod `p^{s+1}` when `r >= 1`.
    pub binomial_congruences: bool,
    /// Maximum number of search nodes; `None` is unbounded.
    pub budget: Option<u64>,
}

impl Default for DpOptions {
    fn default() -> Self {
        Self { normalize: false, binomial_congruences: true, budget: None }
    }
}

/// `m = s(p-1) + r` with `0 <= r <= p-2`.
pub fn split_order(m: u32, p: u64) -> (u32, u64) {
    if p == 2 {
        return (m, 0);
    }
    ((m as u64 / (p - 1)) as u32, m as u64 % (p - 1))
}

fn checked_pow(p: u64, e: u32) -> Option<i64> {
    let mut acc: i64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p as i64)?;
    }
    Some(acc)
}

fn binom(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

struct Setup {
    p: usize,
    m: u32,
    n: u64,
    caps: Vec<i64>,
    /// Suffix sums of caps: `tail_cap[j] = sum_{k < j} caps[k]`.
    head_cap: Vec<i64>,
    r: usize,
    /// `p^s`, or `None` when it exceeds every class size (only zeros survive).
    ps: Option<i64>,
    ps1: Option<i64>,
    binom: Vec<Vec<i128>>,
    opts: DpOptions,
}

impl Setup {
    fn candidates(&self, j: usize, fixed: &[i64]) -> Vec<i64> {
        // fixed[k] holds d_k for k > j (indices below j are unset).
        let cap = self.caps[j];
        let mut out = Vec::new();
        let mut v = cap;
        while v >= -cap {
            if self.admissible(j, v, fixed) {
                out.push(v);
            }
            v -= 2;
        }
        out
    }

    fn admissible(&self, j: usize, v: i64, fixed: &[i64]) -> bool {
        let p = self.p;
        if self.r >= 1 {
            // p^s beyond every class size leaves only zero.
            let divisible = match self.ps {
                Some(ps) => v % ps == 0,
                None => v == 0,
            };
            if !divisible {
                return false;
            }
        }
        if self.r == 0 && j < p - 1 {
            let top = fixed[p - 1];
            match self.ps {
                Some(ps) => {
                    if (v - top).rem_euclid(ps) != 0 {
                        return false;
                    }
                }
                None => {
                    if v != top {
                        return false;
                    }
                }
            }
        }
        if self.r >= 1 && j < self.r && self.opts.binomial_congruences {
            let Some(ps1) = self.ps1 else {
                return v == 0 && (j + 1..p).all(|k| fixed[k] == 0);
            };
            let mut acc: i128 = v as i128;
            for k in j + 1..p {
                acc += self.binom[k][j] * fixed[k] as i128;
            }
            if acc.rem_euclid(ps1 as i128) != 0 {
                return false;
            }
        }
        true
    }

    fn accept(&self, d: &[i64]) -> bool {
        if self.p == 2 {
            let f_minus_one = (d[0] - d[1]).unsigned_abs() as u128;
            let t = 1u128 << self.n.trailing_zeros();
            if f_minus_one == 0 {
                if self.m as u128 + 1 >= t {
                    return false;
                }
            } else if self.m < 127 && f_minus_one < (1u128 << self.m) {
                return false;
            }
        }
        if self.opts.normalize {
            return d.iter().find(|&&x| x != 0).is_none_or(|&x| x > 0);
        }
        true
    }
}

fn search(setup: &Setup, j: usize, sum: i64, fixed: &mut Vec<i64>, out: &mut Vec<Vec<i64>>, nodes: &mut u64) -> Result<()> {
    *nodes += 1;
    if let Some(b) = setup.opts.budget {
        if *nodes > b {
            return Err(Error::Resource(format!("feasible_dp exceeded its budget of {b} nodes")));
        }
    }
    for v in setup.candidates(j, fixed) {
        let s = sum + v;
        // The remaining coordinates 0..j must be able to cancel s.
        if s.abs() > setup.head_cap[j] {
            continue;
        }
        fixed[j] = v;
        if j == 0 {
            if s == 0 && setup.accept(fixed) {
                out.push(fixed.clone());
            }
        } else {
            search(setup, j - 1, s, fixed, out, nodes)?;
        }
    }
    fixed[j] = 0;
    Ok(())
}

/// All discrepancy vectors mod `p` allowed for an order-`m` bipartition of `[n]`.
pub fn feasible_dp(n: u64, m: u32, p: u64, opts: DpOptions) -> Result<Vec<DiscrepancyVector>> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if n == 0 {
        return invalid("n must be positive");
    }
    let caps: Vec<i64> = class_counts(n, p).into_iter().map(|c| c as i64).collect();
    let max_cap = *caps.iter().max().unwrap();
    let (s, r) = split_order(m, p);
    let ps = checked_pow(p, s).filter(|&v| v <= 2 * max_cap);
    let ps1 = checked_pow(p, s + 1).filter(|&v| v <= i64::MAX / 4);
    let mut head_cap = vec![0i64; p as usize];
    for j in 1..p as usize {
        head_cap[j] = head_cap[j - 1] + caps[j - 1];
    }
    let binom_table = (0..p).map(|k| (0..p).map(|j| binom(k, j)).collect()).collect();
    let setup = Setup {
        p: p as usize,
        m,
        n,
        caps,
        head_cap,
        r: r as usize,
        ps,
        ps1,
        binom: binom_table,
        opts,
    };
    let top = p as usize - 1;
    let top_values = setup.candidates(top, &vec![0; p as usize]);
    let run = |v: i64| -> Result<(Vec<Vec<i64>>, u64)> {
        let mut fixed = vec![0i64; p as usize];
        let mut out = Vec::new();
        let mut nodes = 0;
        if v.abs() > setup.head_cap[top] {
            return Ok((out, 1));
        }
        fixed[top] = v;
        if top == 0 {
            if v == 0 && setup.accept(&fixed) {
                out.push(fixed);
            }
        } else {
            search(&setup, top - 1, v, &mut fixed, &mut out, &mut nodes)?;
        }
        Ok((out, nodes))
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<Result<(Vec<Vec<i64>>, u64)>> = {
        use rayon::prelude::*;
        top_values.par_iter().map(|&v| run(v)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Result<(Vec<Vec<i64>>, u64)>> = top_values.iter().map(|&v| run(v)).collect();
    let mut out = Vec::new();
    let mut total_nodes = 0u64;
    for part in parts {
        let (vs, nodes) = part?;
        total_nodes += nodes;
        out.extend(vs);
    }
    if let Some(b) = opts.budget {
        if total_nodes > b {
            return Err(Error::Resource(format!("feasible_dp exceeded its budget of {b} nodes")));
        }
    }
    Ok(out.into_iter().map(|d| DiscrepancyVector { p, d }).collect())
}

/// Keeps vectors compatible with a `(-1)^m`-symmetric witness:
/// `d_j = (-1)^m d_{(n-1-j) mod p}`.
pub fn filter_symmetric(vectors: &[DiscrepancyVector], n: u64, m: u32) -> Vec<DiscrepancyVector> {
    let sign = if m % 2 == 0 { 1 } else { -1 };
    vectors
        .iter()
        .filter(|v| {
            let p = v.p;
            (0..p).all(|j| {
                let mirror = ((n - 1) % p + p - j) % p;
                v.d[j as usize] == sign * v.d[mirror as usize]
            })
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dvec(p: u64, d: &[i64]) -> DiscrepancyVector {
        DiscrepancyVector::new(p, d.to_vec()).unwrap()
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(divisibility_check(200, 8), Divisibility::Refuted);
        assert_eq!(divisibility_check(216, 8), Divisibility::Refuted);
        assert_eq!(divisibility_check(232, 8), Divisibility::Refuted);
        assert_eq!(divisibility_check(192, 10), Divisibility::Pass);
        assert_eq!(divisibility_check(48, 7), Divisibility::Pass);
        assert_eq!(divisibility_check(12, 4), Divisibility::Refuted);
    }

    #[test]
    fn mod_two_for_184() {
        let norm = DpOptions { normalize: true, ..Default::default() };
        assert_eq!(feasible_dp(184, 7, 2, norm).unwrap(), vec![dvec(2, &[64, -64])]);
        assert_eq!(
            feasible_dp(184, 7, 2, DpOptions::default()).unwrap(),
            vec![dvec(2, &[-64, 64]), dvec(2, &[64, -64])]
        );
    }

    #[test]
    fn mod_three_for_184() {
        let mut got = feasible_dp(184, 7, 3, DpOptions::default()).unwrap();
        got.sort();
        let mut want = vec![
            dvec(3, &[-54, 27, 27]),
            dvec(3, &[54, -27, -27]),
            dvec(3, &[0, -27, 27]),
            dvec(3, &[0, 27, -27]),
        ];
        want.sort();
        assert_eq!(got, want);
        let sym = filter_symmetric(&got, 184, 7);
        assert_eq!(sym, vec![dvec(3, &[0, -27, 27]), dvec(3, &[0, 27, -27])]);
    }

    #[test]
    fn mod_three_refutes_208_and_224() {
        assert!(feasible_dp(208, 9, 3, DpOptions::default()).unwrap().is_empty());
        assert!(feasible_dp(224, 9, 3, DpOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn mod_five_for_192() {
        let loose = DpOptions { binomial_congruences: false, ..Default::default() };
        let mut got = feasible_dp(192, 10, 5, loose).unwrap();
        got.sort();
        assert_eq!(got, vec![dvec(5, &[-25, 25, 0, 0, 0]), dvec(5, &[25, -25, 0, 0, 0])]);
        assert!(feasible_dp(192, 10, 5, DpOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn mod_three_for_176() {
        let got = feasible_dp(176, 8, 3, DpOptions { normalize: true, ..Default::default() }).unwrap();
        assert_eq!(got, vec![dvec(3, &[27, 27, -54])]);
        assert_eq!(feasible_dp(176, 8, 2, DpOptions::default()).unwrap(), vec![dvec(2, &[0, 0])]);
    }

    #[test]
    fn descending_order_from_last_coordinate() {
        let got = feasible_dp(184, 7, 3, DpOptions::default()).unwrap();
        let lasts: Vec<i64> = got.iter().map(|v| v.d[2]).collect();
        let mut sorted = lasts.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(lasts, sorted);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = DpOptions { budget: Some(3), ..Default::default() };
        assert!(matches!(feasible_dp(176, 8, 5, opts), Err(Error::Resource(_))));
        assert!(feasible_dp(10, 2, 4, DpOptions::default()).is_err());
    }

    #[test]
    fn outputs_meet_the_basic_conditions() {
        for (n, m, p) in [(176u64, 8u32, 5u64), (184, 7, 5), (96, 7, 3), (120, 6, 7), (64, 6, 5)] {
            let caps = class_counts(n, p);
            let (s, r) = split_order(m, p);
            for v in feasible_dp(n, m, p, DpOptions::default()).unwrap() {
                assert_eq!(v.d.iter().sum::<i64>(), 0);
                for (j, &d) in v.d.iter().enumerate() {
                    assert!(d.unsigned_abs() <= caps[j]);
                    assert_eq!((d - caps[j] as i64).rem_euclid(2), 0);
                }
                let ps = (p as i64).pow(s);
                if r == 0 {
                    assert!(v.d.iter().all(|&d| (d - v.d[0]).rem_euclid(ps) == 0));
                } else {
                    assert!(v.d.iter().all(|&d| d % ps == 0));
                    for j in 0..r as usize {
                        let acc: i128 =
                            (j..p as usize).map(|k| binom(k as u64, j as u64) * v.d[k] as i128).sum();
                        assert_eq!(acc.rem_euclid(ps as i128 * p as i128), 0);
                    }
                }
            }
        }
    }
}
