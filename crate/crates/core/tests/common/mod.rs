//! Checks shared by the property tests and the acceptance suite.

#![allow(dead_code)]

use littlewood::codec::{encode_half, expand_half_witness, hex_decode, hex_encode};
use littlewood::poly::{first_nonvanishing, MomentKind, MomentSpec, SymmetrySign};
use littlewood::search::{dfs_search, Mode, Pruning, SearchSpec, Shift};
use littlewood::{Bipartition, LittlewoodPoly};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const CASES: u32 = 1000;
pub const EXHAUSTIVE_N: usize = 16;

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

pub fn signs(max_len: usize) -> impl Strategy<Value = LittlewoodPoly> {
    prop::collection::vec(any::<bool>(), 1..=max_len)
        .prop_map(|v| LittlewoodPoly::new(v.into_iter().map(|b| if b { 1 } else { -1 }).collect()).unwrap())
}

/// Order by repeated synthetic division by `x - 1`.
pub fn order_by_division(f: &LittlewoodPoly) -> u32 {
    let mut c: Vec<i128> = f.coeffs().iter().map(|&x| x as i128).collect();
    let mut k = 0;
    loop {
        if c.iter().sum::<i128>() != 0 {
            return k;
        }
        // c(x) = (x - 1) q(x); divide from the top coefficient down
        let mut q = vec![0i128; c.len() - 1];
        let mut carry = 0i128;
        for i in (1..c.len()).rev() {
            carry += c[i];
            q[i - 1] = carry;
        }
        c = q;
        k += 1;
    }
}

fn power_sums_agree(bp: &Bipartition, upto: u32) -> bool {
    (0..upto).all(|j| {
        let (a, b) = bp.power_sums(j);
        a == b
    })
}

pub fn moment_order_equivalence() -> Result<(), String> {
    run((signs(24), -40i64..40), |(f, t)| {
        let m = f.order();
        prop_assert_eq!(m, order_by_division(&f));
        prop_assert_eq!(first_nonvanishing(&f, MomentSpec::POWER), m);
        prop_assert_eq!(first_nonvanishing(&f, MomentSpec::new(MomentKind::Binomial, t)), m);
        let bp = f.to_bipartition();
        prop_assert!(power_sums_agree(&bp, m));
        prop_assert!(!power_sums_agree(&bp, m + 1));
        prop_assert!(f.has_order_at_least(m) && !f.has_order_at_least(m + 1));
        Ok(())
    })
}

pub fn shift_invariance() -> Result<(), String> {
    run((signs(40), -100i64..100, any::<bool>()), |(f, t, power)| {
        let kind = if power { MomentKind::Power } else { MomentKind::Binomial };
        prop_assert_eq!(first_nonvanishing(&f, MomentSpec::new(kind, t)), f.order());
        Ok(())
    })?;
    run((1usize..=6, 1u32..=3, any::<bool>()), |(half, m, sym)| {
        let n = 2 * half;
        let mut base = SearchSpec::new(n, m).mode(Mode::Count);
        base.assume_symmetry = sym;
        let plain = dfs_search(&base).unwrap().count;
        let centered = dfs_search(&base.clone().shift(Shift::Centered)).unwrap().count;
        let power = dfs_search(&base.moment_kind(MomentKind::Power).shift(Shift::Centered)).unwrap().count;
        prop_assert_eq!(plain, centered);
        prop_assert_eq!(plain, power);
        Ok(())
    })
}

pub fn codec_round_trips() -> Result<(), String> {
    let sets = (1usize..=300).prop_flat_map(|n| (Just(n), prop::collection::btree_set(0..n, 0..=n)));
    run(sets, |(n, a)| {
        let a: Vec<usize> = a.into_iter().collect();
        let hex = hex_encode(&a, n).unwrap();
        prop_assert_eq!(hex.len(), n.div_ceil(4));
        prop_assert!(hex.chars().all(|c| c.is_ascii_digit() || c.is_ascii_uppercase()));
        prop_assert_eq!(hex_decode(&hex, n).unwrap(), a.clone());
        prop_assert_eq!(hex_decode(&hex.to_lowercase(), n).unwrap(), a);
        Ok(())
    })?;
    let halves = (1usize..=150, 0u32..=9).prop_flat_map(|(h, m)| (Just(h), Just(m), prop::collection::btree_set(0..h, 0..=h)));
    run(halves, |(h, m, a)| {
        let a: Vec<usize> = a.into_iter().collect();
        let hex = hex_encode(&a, h).unwrap();
        let full = expand_half_witness(&hex, 2 * h, m).unwrap();
        prop_assert!(full.to_poly().is_symmetric(SymmetrySign::for_order(m)));
        prop_assert_eq!(encode_half(&full).unwrap(), hex);
        Ok(())
    })
}

pub fn pruning_lossless() -> Result<(), String> {
    let cases = (1usize..=7, 1u32..=4, any::<bool>(), prop::sample::subsequence(vec![2u64, 3, 5], 0..=3), 0usize..=3);
    run(cases, |(half, m, sym, primes, tail)| {
        let n = 2 * half;
        let mut spec = SearchSpec::new(n, m).mode(Mode::Count).primes(&primes);
        spec.assume_symmetry = sym;
        spec.table_tail = tail;
        let pruned = dfs_search(&spec).unwrap();
        let bare = dfs_search(&spec.clone().pruning(Pruning::NONE)).unwrap();
        let mut no_primes = spec.clone();
        no_primes.primes.clear();
        prop_assert!(pruned.exhausted && bare.exhausted);
        prop_assert_eq!(pruned.count, bare.count);
        prop_assert_eq!(pruned.count, dfs_search(&no_primes).unwrap().count);
        prop_assert!(pruned.nodes_visited <= bare.nodes_visited);
        Ok(())
    })
}

pub fn symmetric_parity() -> Result<(), String> {
    run((signs(48), any::<bool>()), |(h, plus)| {
        let s = if plus { SymmetrySign::Plus } else { SymmetrySign::Minus };
        let f = h.symmetrize(s);
        let k = f.order();
        prop_assert_eq!(SymmetrySign::for_order(k), s);
        for m in 1..=k + 2 {
            if SymmetrySign::for_order(m) == s && f.has_order_at_least(m - 1) {
                prop_assert!(f.has_order_at_least(m));
            }
        }
        Ok(())
    })
}

/// Constructions keep their order bounds on random operands.
pub fn construction_bounds() -> Result<(), String> {
    run((signs(64), signs(64)), |(f, g)| {
        let (a, b) = (f.order(), g.order());
        prop_assert!(f.double().order() > a);
        prop_assert!(f.join(&g).order() >= a.min(b));
        let p = f.expanded_product(&g);
        prop_assert_eq!(p.len(), f.len() * g.len());
        prop_assert!(p.order() >= a + b);
        prop_assert_eq!(p.reversal(), f.reversal().expanded_product(&g.reversal()));
        prop_assert_eq!(f.reversal().reversal(), f);
        Ok(())
    })
}

/// Every sign vector of length `n` with `a_0 = +1`.
pub fn canonical_vectors(n: usize) -> impl Iterator<Item = LittlewoodPoly> {
    (0u64..1 << (n - 1)).map(move |bits| {
        let c: Vec<i8> = (0..n).map(|i| if i > 0 && bits >> (i - 1) & 1 == 1 { -1 } else { 1 }).collect();
        LittlewoodPoly::new(c).unwrap()
    })
}

/// Exhaustive checks over every `n <= max_n`: order by moments and by division
/// agree, symmetric witnesses have the right parity, the `f(-1)` bounds hold, and the
/// search counts (pruned, unpruned, symmetric) match brute force.
pub fn exhaustive_small(max_n: usize) -> Result<(), String> {
    for n in 1..=max_n {
        let mut at_least = vec![0u64; n + 2];
        let mut sym_at_least = vec![0u64; n + 2];
        let t = 1i64 << n.trailing_zeros();
        for f in canonical_vectors(n) {
            let k = f.order();
            if k != order_by_division(&f) {
                return Err(format!("order mismatch for {f}"));
            }
            for m in 0..=k as usize {
                at_least[m] += 1;
            }
            let v = f.eval_minus_one();
            if v != 0 && v.unsigned_abs() < 1u64 << k {
                return Err(format!("|f(-1)| = {} < 2^{k} for {f}", v.abs()));
            }
            if v == 0 && k as i64 >= t - 1 {
                return Err(format!("f(-1) = 0 with order {k} >= t - 1 = {} for {f}", t - 1));
            }
            if let Some(s) = f.symmetry() {
                if SymmetrySign::for_order(k) != s {
                    return Err(format!("symmetric {f} has exact order {k} of the wrong parity"));
                }
                for m in 0..=k as usize {
                    if SymmetrySign::for_order(m as u32) == s {
                        sym_at_least[m] += 1;
                    }
                }
            }
        }
        for m in 1..=(n as u32 + 1).min(6) {
            let want = at_least.get(m as usize).copied().unwrap_or(0);
            let spec = SearchSpec::new(n, m).mode(Mode::Count).primes(&[2, 3, 5]);
            let pruned = dfs_search(&spec).map_err(|e| e.to_string())?.count;
            let bare = dfs_search(&spec.clone().pruning(Pruning::NONE)).map_err(|e| e.to_string())?.count;
            if pruned != want || bare != want {
                return Err(format!("n={n} m={m}: brute {want}, pruned {pruned}, unpruned {bare}"));
            }
            if n % 2 == 0 {
                let sym = dfs_search(&spec.clone().symmetric()).map_err(|e| e.to_string())?.count;
                let want = sym_at_least.get(m as usize).copied().unwrap_or(0);
                if sym != want {
                    return Err(format!("n={n} m={m}: {want} symmetric witnesses, search found {sym}"));
                }
            }
        }
    }
    Ok(())
}
