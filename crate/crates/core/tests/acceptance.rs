//! Acceptance criteria 1 to 10. Runs as a plain binary and prints one line per
//! criterion; the process fails if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use littlewood::catalog::{self, catalog_verify, CatalogRecord};
use littlewood::certify::{stong_arithmetic, stong_certificate, stong_witnesses, tau_moment_check, STONG_LENGTHS};
use littlewood::codec::{decode_rp, expand_half_witness};
use littlewood::constraints::{
    contingency_feasible, divisibility_check, feasible_dp, nonexistence_report, Conclusion, DiscrepancyVector,
    Divisibility, DpOptions, ResidueProfile,
};
use littlewood::poly::{thue_morse, SymmetrySign};
use littlewood::regen::{difference_sequence, family_poly};
use littlewood::search::{dfs_search, Mode, Pruning, SearchSpec};
use littlewood::Bipartition;
use num_bigint::BigInt;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, limit: Duration, what: &str) -> std::result::Result<(), String> {
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:.2?}, limit {limit:?}");
    Ok(())
}

fn c1_thue_morse_orders() -> Check {
    let t = Instant::now();
    for m in 0..=16 {
        let tau = thue_morse(m).map_err(|e| e.to_string())?;
        ensure!(tau.len() == 1 << m, "tau_{m} has length {}", tau.len());
        ensure!(tau.order() == m, "tau_{m} has order {}", tau.order());
    }
    within(t, Duration::from_secs(10), "orders of tau_0..tau_16")?;
    Ok("exact order of tau_m is m for m = 0..16".into())
}

fn c2_figure_moments() -> Check {
    let bp = Bipartition::new(8, [0, 3, 5, 6]).map_err(|e| e.to_string())?;
    let mut sums = Vec::new();
    for j in 0..3 {
        let (a, b) = bp.power_sums(j);
        ensure!(a == b, "power sum {j}: A gives {a}, B gives {b}");
        sums.push(a);
    }
    let want: Vec<BigInt> = [4, 14, 70].into_iter().map(BigInt::from).collect();
    ensure!(sums == want, "power sums {sums:?}");
    let (a, b) = bp.power_sums(3);
    ensure!(a != b, "third power sums coincide");
    Ok("{0,3,5,6} and {1,2,4,7} share power sums 4, 14, 70".into())
}

fn c3_catalog() -> Check {
    let t = Instant::now();
    let records = catalog::embedded();
    let report = catalog_verify(&records);
    if let Some(f) = report.failures().next() {
        return Err(format!("{}: {:?}", f.record.label(), f.status));
    }
    let mut sporadic = 0;
    let mut pairs = 0;
    for rec in &records {
        match rec {
            CatalogRecord::Sporadic { m, .. } => {
                let w = rec.sporadic_witness().map_err(|e| e.to_string())?;
                ensure!(w.has_order_at_least(*m), "{} has order {}", rec.label(), w.order());
                ensure!(w.is_symmetric(SymmetrySign::for_order(*m)), "{} is not (-1)^m-symmetric", rec.label());
                sporadic += 1;
            }
            CatalogRecord::Rp { .. } => {
                let pair = decode_rp(rec).map_err(|e| e.to_string())?;
                ensure!(pair.verify(), "{} is not a regenerative pair", rec.label());
                pairs += 1;
            }
            _ => {}
        }
    }
    let big = records
        .iter()
        .find_map(|r| match r {
            CatalogRecord::Rp { m: 7, n: 200, n1: 328, hex, .. } => Some(hex.clone()),
            _ => None,
        })
        .ok_or("no (200, 328) pair in the catalog")?;
    let w = expand_half_witness(&big, 328, 7).map_err(|e| e.to_string())?;
    ensure!(w.to_poly().has_order_at_least(7), "the 328 witness fails order 7");
    let (a, b) = w.power_sums(6);
    let want = BigInt::from(28863168757954570u64);
    ensure!(a == want && b == want, "sixth power sums of the 328 witness: {a} and {b}");
    within(t, Duration::from_secs(30), "catalog verification")?;
    Ok(format!(
        "{} records verified ({sporadic} sporadic, {pairs} pairs); 328 witness sixth power sum {want}",
        report.checks.len()
    ))
}

fn c4_families() -> Check {
    let t = Instant::now();
    let records = catalog::embedded();
    let mut members = 0;
    let mut example = None;
    for rec in &records {
        let CatalogRecord::Rp { m, n, n1, .. } = rec else { continue };
        let pair = decode_rp(rec).map_err(|e| e.to_string())?;
        let s = SymmetrySign::for_order(*m);
        for k in 0..=10 {
            let f = family_poly(&pair, k);
            ensure!(f.len() == n + k * (n1 - n), "{} member {k} has length {}", rec.label(), f.len());
            ensure!(f.has_order_at_least(*m), "{} member {k} has order {}", rec.label(), f.order());
            ensure!(f.is_symmetric(s), "{} member {k} lost its symmetry", rec.label());
            members += 1;
        }
        if (*m, *n, *n1) == (3, 12, 20) {
            example = Some(pair);
        }
    }
    let pair = example.ok_or("no (12, 20) pair in the catalog")?;
    let d = difference_sequence(&pair, 200);
    ensure!(
        d.preperiod.as_deref() == Some(&[2, 4][..]) && d.period.as_deref() == Some(&[1, 1, 1, 5][..]),
        "(12,20) differences: preperiod {:?}, period {:?}",
        d.preperiod,
        d.period
    );
    within(t, Duration::from_secs(60), "family verification")?;
    Ok(format!("{members} family members verified; (12,20) differences (2,4) then (1,1,1,5) repeating"))
}

fn lengths_in(m: u32, upto: usize) -> std::result::Result<BTreeSet<usize>, String> {
    let mut out = BTreeSet::new();
    for n in 2..=upto {
        let r = dfs_search(&SearchSpec::new(n, m).primes(&[2, 3, 5])).map_err(|e| e.to_string())?;
        if r.count > 0 {
            out.insert(n);
        } else if !r.exhausted {
            return Err(format!("search for P({n}, {m}) stopped early"));
        }
    }
    Ok(out)
}

fn exhausted_empty(n: usize, m: u32) -> std::result::Result<bool, String> {
    let r = dfs_search(&SearchSpec::new(n, m).primes(&[2, 3, 5])).map_err(|e| e.to_string())?;
    Ok(r.count == 0 && r.exhausted)
}

fn found(n: usize, m: u32) -> std::result::Result<bool, String> {
    Ok(dfs_search(&SearchSpec::new(n, m)).map_err(|e| e.to_string())?.count > 0)
}

fn c5_small_n() -> Check {
    let t = Instant::now();
    let expect: [(u32, usize, &[usize]); 3] =
        [(1, 12, &[2, 4, 6, 8, 10, 12]), (2, 16, &[4, 8, 12, 16]), (3, 20, &[8, 12, 16, 20])];
    for (m, upto, want) in expect {
        let got = lengths_in(m, upto)?;
        ensure!(got.iter().copied().eq(want.iter().copied()), "L_{m} up to {upto}: {got:?}");
    }
    for (n, m) in [(8, 3), (16, 4), (24, 4)] {
        ensure!(found(n, m)?, "no witness for P({n}, {m})");
        ensure!(exhausted_empty(n, m + 1)?, "P({n}, {}) not shown empty", m + 1);
    }
    for (n, m) in [(18, 2), (18, 3), (20, 3), (20, 4)] {
        let spec = SearchSpec::new(n, m).mode(Mode::Count).primes(&[2, 3, 5]);
        let pruned = dfs_search(&spec).map_err(|e| e.to_string())?.count;
        let bare = dfs_search(&spec.pruning(Pruning::NONE)).map_err(|e| e.to_string())?.count;
        ensure!(pruned == bare, "n={n} m={m}: pruned count {pruned}, unpruned {bare}");
    }
    within(t, Duration::from_secs(600), "small-n searches")?;
    Ok(format!("L_1, L_2, L_3 small sets and m*(8)=3, m*(16)=4, m*(24)=4 in {:.1?}", t.elapsed()))
}

fn c6_refutations() -> Check {
    for (n, m) in [(200, 8), (216, 8), (232, 8)] {
        ensure!(divisibility_check(n, m) == Divisibility::Refuted, "divisibility does not refute ({n},{m})");
    }
    for (n, m, p) in [(208, 9, 3), (224, 9, 3), (192, 10, 5)] {
        let t = Instant::now();
        let r = nonexistence_report(n, m, &[p], None).map_err(|e| e.to_string())?;
        ensure!(r.conclusion == Conclusion::Refuted, "({n},{m}) mod {p} is {:?}", r.conclusion);
        r.replay().map_err(|e| e.to_string())?;
        within(t, Duration::from_secs(1), &format!("report for ({n},{m})"))?;
    }
    Ok("divisibility refutes 200, 216, 232 at m=8; prime 3 refutes (208,9), (224,9); prime 5 refutes (192,10)".into())
}

fn dv(p: u64, d: &[i64]) -> DiscrepancyVector {
    DiscrepancyVector::new(p, d.to_vec()).unwrap()
}

fn c7_intermediate() -> Check {
    let t = Instant::now();
    let normalized = DpOptions { normalize: true, ..DpOptions::default() };
    let d2 = feasible_dp(184, 7, 2, normalized).map_err(|e| e.to_string())?;
    ensure!(d2 == vec![dv(2, &[64, -64])], "d_2 for (184,7): {d2:?}");

    let r = nonexistence_report(184, 7, &[2, 3], None).map_err(|e| e.to_string())?;
    let allowed = [dv(3, &[0, -27, 27]), dv(3, &[0, 27, -27])];
    let survivors = r.survivors();
    let d3 = &survivors.iter().find(|(p, _)| *p == 3).ok_or("no mod-3 survivors recorded")?.1;
    ensure!(!d3.is_empty() && d3.iter().all(|v| allowed.contains(v)), "d_3 for (184,7) after p=2: {d3:?}");

    let mod3 = ResidueProfile::new(3, vec![43, 43, 2]);
    let listed: [[u64; 5]; 16] = [
        [23, 10, 10, 10, 35],
        [23, 10, 10, 35, 10],
        [23, 10, 35, 10, 10],
        [23, 35, 10, 10, 10],
        [18, 5, 5, 30, 30],
        [18, 5, 30, 5, 30],
        [18, 5, 30, 30, 5],
        [18, 30, 5, 5, 30],
        [18, 30, 5, 30, 5],
        [18, 30, 30, 5, 5],
        [28, 15, 15, 15, 15],
        [13, 0, 25, 25, 25],
        [13, 25, 0, 25, 25],
        [13, 25, 25, 0, 25],
        [13, 25, 25, 25, 0],
        [8, 20, 20, 20, 20],
    ];
    let alive: Vec<_> = listed
        .iter()
        .filter(|c| contingency_feasible(176, &mod3, &ResidueProfile::new(5, c.to_vec())))
        .collect();
    ensure!(alive == vec![&[8, 20, 20, 20, 20]], "mod-5 profiles surviving against (43,43,2): {alive:?}");
    within(t, Duration::from_secs(10), "intermediate facts")?;
    Ok("d_2(184,7) = {(64,-64)}; d_3 after p=2 within {(0,-27,27),(0,27,-27)}; (8,20,20,20,20) is the lone survivor".into())
}

fn c8_stong() -> Check {
    let t = Instant::now();
    let arith = stong_arithmetic().map_err(|e| e.to_string())?;
    let lengths: Vec<u128> = arith.components.iter().map(|c| c.length()).collect();
    ensure!(lengths == STONG_LENGTHS, "component lengths {lengths:?}");
    ensure!(lengths.iter().all(|l| l % (1u128 << 32) == 0), "a component length is not divisible by 2^32");
    ensure!(arith.root.length() == 1u128 << 51, "sum {}", arith.root.length());
    ensure!(arith.root.order_lb() >= 52, "order bound {}", arith.root.order_lb());
    within(t, Duration::from_secs(1), "placeholder arithmetic")?;

    let t = Instant::now();
    let records = catalog::embedded();
    let leaves = stong_witnesses(&records).map_err(|e| e.to_string())?;
    ensure!(leaves.contains_key(&(112, 7)), "catalog lacks the (112,7) witness");
    let cert = stong_certificate(&leaves).map_err(|e| e.to_string())?;
    ensure!(cert.root.length() == 1u128 << 51 && cert.root.order_lb() >= 52, "witness-backed certificate differs");
    within(t, Duration::from_secs(60), "witness-backed leaves")?;
    Ok("lengths 28179280429056 + 87668872445952 + 418591807635456 + 1717359853174784 = 2^51, order >= 52".into())
}

fn c9_tau_moments() -> Check {
    let t = Instant::now();
    for m in 0..=12 {
        tau_moment_check(m).map_err(|e| e.to_string())?;
    }
    within(t, Duration::from_secs(1), "tau moment formula")?;
    Ok("m-th derivative of tau_m at 1 equals (-1)^m m! 2^(m(m-1)/2) for m <= 12".into())
}

fn c10_properties() -> Check {
    let suites: [(&str, fn() -> std::result::Result<(), String>); 6] = [
        ("pruning", common::pruning_lossless),
        ("moment/order", common::moment_order_equivalence),
        ("codec", common::codec_round_trips),
        ("shift", common::shift_invariance),
        ("symmetry", common::symmetric_parity),
        ("constructions", common::construction_bounds),
    ];
    for (name, suite) in suites {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    common::exhaustive_small(common::EXHAUSTIVE_N).map_err(|e| format!("exhaustive: {e}"))?;
    Ok(format!(
        "{} suites x {} cases and exhaustive n <= {}; large nonexistence runs not reproduced",
        suites.len(),
        common::CASES,
        common::EXHAUSTIVE_N
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("Thue-Morse orders", c1_thue_morse_orders),
        ("equal power sums for {0,3,5,6}", c2_figure_moments),
        ("catalog verification", c3_catalog),
        ("regenerative families", c4_families),
        ("small-n exhaustive search", c5_small_n),
        ("constraint refutations", c6_refutations),
        ("intermediate constraint facts", c7_intermediate),
        ("2^51 certificate", c8_stong),
        ("tau moment formula", c9_tau_moments),
        ("property suites", c10_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
