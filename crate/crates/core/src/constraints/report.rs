//! Nonexistence reports: a replayable log of the constraint pipeline for `P(n, m)`.
//!
//! The pipeline runs the divisibility rule, then `feasible_dp` for each prime,
//! then pairwise arc consistency under [`contingency_feasible`], and finally a
//! depth-first pass over vector tuples (cheapest prime first) that keeps only
//! tuples whose members are pairwise compatible. Pairwise compatibility is a
//! necessary condition, so an empty result refutes `P(n, m)`; a nonempty one is
//! only inconclusive.
//!
//! Sign normalization (complementing `A`) is applied once, at the first prime
//! whose feasible set holds a nonzero vector. Every earlier set is `{0}`, which
//! complementation fixes, so the choice loses no generality.
//!
//! The text form has one record per line:
//!
//! ```text
//! report n=176 m=8 primes=2,3,5 budget=none
//! step rule=divisibility outcome=pass
//! step rule=feasible_dp p=3 normalize=true outcome=nonempty vectors=(27,27,-54)
//! step rule=contingency p=3 q=5 in_p=... in_q=... out_p=... out_q=...
//! step rule=joint order=5,3,2 budget=none sets=... visited=12 outcome=nonempty survivors=...
//! conclusion=inconclusive
//! ```

use std::fmt;

use crate::error::{Error, Result};

use super::dp::{divisibility_check, feasible_dp, Divisibility, DpOptions};
use super::flow::contingency_feasible;
use super::residue::{is_prime, DiscrepancyVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    Refuted,
    Inconclusive,
}

impl Conclusion {
    fn name(self) -> &'static str {
        match self {
            Conclusion::Refuted => "refuted",
            Conclusion::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Refuted,
    Nonempty,
    Empty,
    BudgetExhausted,
}

impl Outcome {
    fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Refuted => "refuted",
            Outcome::Nonempty => "nonempty",
            Outcome::Empty => "empty",
            Outcome::BudgetExhausted => "budget-exhausted",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "pass" => Outcome::Pass,
            "refuted" => Outcome::Refuted,
            "nonempty" => Outcome::Nonempty,
            "empty" => Outcome::Empty,
            "budget-exhausted" => Outcome::BudgetExhausted,
            _ => return Err(Error::Format(format!("unknown outcome {s:?}"))),
        })
    }

    fn of_set<T>(v: &[T]) -> Self {
        if v.is_empty() {
            Outcome::Empty
        } else {
            Outcome::Nonempty
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReportStep {
    Divisibility {
        outcome: Outcome,
    },
    FeasibleDp {
        p: u64,
        normalize: bool,
        outcome: Outcome,
        vectors: Vec<DiscrepancyVector>,
    },
    Contingency {
        p: u64,
        q: u64,
        in_p: Vec<DiscrepancyVector>,
        in_q: Vec<DiscrepancyVector>,
        out_p: Vec<DiscrepancyVector>,
        out_q: Vec<DiscrepancyVector>,
    },
    Joint {
        /// Primes in search order.
        order: Vec<u64>,
        budget: Option<u64>,
        sets: Vec<Vec<DiscrepancyVector>>,
        visited: u64,
        outcome: Outcome,
        /// Surviving tuples, components in `order`.
        survivors: Vec<Vec<DiscrepancyVector>>,
    },
}

impl ReportStep {
    pub fn rule(&self) -> &'static str {
        match self {
            ReportStep::Divisibility { .. } => "divisibility",
            ReportStep::FeasibleDp { .. } => "feasible_dp",
            ReportStep::Contingency { .. } => "contingency",
            ReportStep::Joint { .. } => "joint",
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            ReportStep::Divisibility { outcome }
            | ReportStep::FeasibleDp { outcome, .. }
            | ReportStep::Joint { outcome, .. } => *outcome,
            ReportStep::Contingency { out_p, out_q, .. } => {
                if out_p.is_empty() || out_q.is_empty() {
                    Outcome::Empty
                } else {
                    Outcome::Nonempty
                }
            }
        }
    }

    fn empties(&self) -> bool {
        matches!(self.outcome(), Outcome::Empty | Outcome::Refuted)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonexistenceReport {
    pub n: u64,
    pub m: u32,
    pub primes: Vec<u64>,
    pub budget: Option<u64>,
    pub steps: Vec<ReportStep>,
    pub conclusion: Conclusion,
}

impl NonexistenceReport {
    /// Vectors per prime still alive at the end of the log, in `primes` order.
    pub fn survivors(&self) -> Vec<(u64, Vec<DiscrepancyVector>)> {
        let mut current: Vec<(u64, Vec<DiscrepancyVector>)> = Vec::new();
        let set = |cur: &mut Vec<(u64, Vec<DiscrepancyVector>)>, p: u64, v: Vec<DiscrepancyVector>| {
            if let Some(slot) = cur.iter_mut().find(|(q, _)| *q == p) {
                slot.1 = v;
            } else {
                cur.push((p, v));
            }
        };
        for step in &self.steps {
            match step {
                ReportStep::FeasibleDp { p, vectors, .. } => set(&mut current, *p, vectors.clone()),
                ReportStep::Contingency { p, q, out_p, out_q, .. } => {
                    set(&mut current, *p, out_p.clone());
                    set(&mut current, *q, out_q.clone());
                }
                ReportStep::Joint { order, survivors, outcome, .. } if *outcome != Outcome::BudgetExhausted => {
                    for (i, &p) in order.iter().enumerate() {
                        let mut vs: Vec<DiscrepancyVector> = survivors.iter().map(|t| t[i].clone()).collect();
                        vs.sort();
                        vs.dedup();
                        set(&mut current, p, vs);
                    }
                }
                _ => {}
            }
        }
        current.sort_by_key(|(p, _)| *p);
        current
    }

    /// Re-executes every step from its recorded inputs and checks that the
    /// recorded outputs and the conclusion are reproduced exactly.
    pub fn replay(&self) -> Result<()> {
        let mut normalized_used = false;
        for (i, step) in self.steps.iter().enumerate() {
            let fresh = match step {
                ReportStep::Divisibility { .. } => divisibility_step(self.n, self.m),
                ReportStep::FeasibleDp { p, normalize, .. } => {
                    if *normalize {
                        if normalized_used {
                            return Err(Error::Verification(format!(
                                "step {i}: sign normalization used more than once"
                            )));
                        }
                        normalized_used = true;
                    }
                    dp_step(self.n, self.m, *p, *normalize, self.budget)
                }
                ReportStep::Contingency { p, q, in_p, in_q, .. } => {
                    contingency_step(self.n, *p, *q, in_p.clone(), in_q.clone())
                }
                ReportStep::Joint { order, budget, sets, .. } => joint_step(self.n, order.clone(), sets.clone(), *budget),
            };
            if &fresh != step {
                return Err(Error::Verification(format!(
                    "step {i} ({}) does not replay: recorded `{}`, recomputed `{}`",
                    step.rule(),
                    StepLine(step),
                    StepLine(&fresh)
                )));
            }
        }
        let expected = conclude(&self.steps);
        if expected != self.conclusion {
            return Err(Error::Verification(format!(
                "conclusion {} is not supported by the steps (expected {})",
                self.conclusion.name(),
                expected.name()
            )));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Format("empty report".into()))?;
        let head = fields(head, "report")?;
        let n = get(&head, "n")?.parse().map_err(|_| fmt_err("n"))?;
        let m = get(&head, "m")?.parse().map_err(|_| fmt_err("m"))?;
        let primes = parse_list(get(&head, "primes")?)?;
        let budget = parse_budget(get(&head, "budget")?)?;
        let mut steps = Vec::new();
        let mut conclusion = None;
        for line in lines {
            if let Some(c) = line.strip_prefix("conclusion=") {
                conclusion = Some(match c {
                    "refuted" => Conclusion::Refuted,
                    "inconclusive" => Conclusion::Inconclusive,
                    _ => return Err(fmt_err("conclusion")),
                });
                continue;
            }
            let f = fields(line, "step")?;
            let step = match get(&f, "rule")? {
                "divisibility" => ReportStep::Divisibility { outcome: Outcome::parse(get(&f, "outcome")?)? },
                "feasible_dp" => ReportStep::FeasibleDp {
                    p: get(&f, "p")?.parse().map_err(|_| fmt_err("p"))?,
                    normalize: get(&f, "normalize")? == "true",
                    outcome: Outcome::parse(get(&f, "outcome")?)?,
                    vectors: parse_vectors(get(&f, "vectors")?)?,
                },
                "contingency" => ReportStep::Contingency {
                    p: get(&f, "p")?.parse().map_err(|_| fmt_err("p"))?,
                    q: get(&f, "q")?.parse().map_err(|_| fmt_err("q"))?,
                    in_p: parse_vectors(get(&f, "in_p")?)?,
                    in_q: parse_vectors(get(&f, "in_q")?)?,
                    out_p: parse_vectors(get(&f, "out_p")?)?,
                    out_q: parse_vectors(get(&f, "out_q")?)?,
                },
                "joint" => ReportStep::Joint {
                    order: parse_list(get(&f, "order")?)?,
                    budget: parse_budget(get(&f, "budget")?)?,
                    sets: parse_tuples(get(&f, "sets")?)?,
                    visited: get(&f, "visited")?.parse().map_err(|_| fmt_err("visited"))?,
                    outcome: Outcome::parse(get(&f, "outcome")?)?,
                    survivors: parse_tuples(get(&f, "survivors")?)?,
                },
                other => return Err(Error::Format(format!("unknown rule {other:?}"))),
            };
            steps.push(step);
        }
        let conclusion = conclusion.ok_or_else(|| Error::Format("report has no conclusion line".into()))?;
        Ok(Self { n, m, primes, budget, steps, conclusion })
    }
}

fn fmt_err(field: &str) -> Error {
    Error::Format(format!("malformed report field {field:?}"))
}

fn fields<'a>(line: &'a str, kind: &str) -> Result<Vec<(&'a str, &'a str)>> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(kind) {
        return Err(Error::Format(format!("expected a `{kind}` line, found {line:?}")));
    }
    parts
        .map(|kv| kv.split_once('=').ok_or_else(|| Error::Format(format!("expected key=value, found {kv:?}"))))
        .collect()
}

fn get<'a>(fields: &[(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::Format(format!("missing field {key:?}")))
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.parse().map_err(|_| fmt_err("list"))).collect()
}

fn parse_budget(s: &str) -> Result<Option<u64>> {
    if s == "none" {
        Ok(None)
    } else {
        s.parse().map(Some).map_err(|_| fmt_err("budget"))
    }
}

fn parse_vector(s: &str) -> Result<DiscrepancyVector> {
    let inner = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(|| fmt_err("vector"))?;
    let d: Vec<i64> = inner.split(',').map(|x| x.parse().map_err(|_| fmt_err("vector"))).collect::<Result<_>>()?;
    Ok(DiscrepancyVector { p: d.len() as u64, d })
}

fn parse_vectors(s: &str) -> Result<Vec<DiscrepancyVector>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(';').map(parse_vector).collect()
}

fn parse_tuples(s: &str) -> Result<Vec<Vec<DiscrepancyVector>>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split('|').map(|t| t.split('/').map(parse_vector).collect()).collect()
}

struct Joined<'a, T>(&'a [T], &'a str);

impl<T: fmt::Display> fmt::Display for Joined<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(self.1)?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

struct Tuples<'a>(&'a [Vec<DiscrepancyVector>]);

impl fmt::Display for Tuples<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{}", Joined(t, "/"))?;
        }
        Ok(())
    }
}

fn budget_str(b: Option<u64>) -> String {
    b.map_or_else(|| "none".to_string(), |b| b.to_string())
}

struct StepLine<'a>(&'a ReportStep);

impl fmt::Display for StepLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let step = self.0;
        write!(f, "step rule={}", step.rule())?;
        match step {
            ReportStep::Divisibility { outcome } => write!(f, " outcome={}", outcome.name()),
            ReportStep::FeasibleDp { p, normalize, outcome, vectors } => write!(
                f,
                " p={p} normalize={normalize} outcome={} vectors={}",
                outcome.name(),
                Joined(vectors, ";")
            ),
            ReportStep::Contingency { p, q, in_p, in_q, out_p, out_q } => write!(
                f,
                " p={p} q={q} in_p={} in_q={} out_p={} out_q={} outcome={}",
                Joined(in_p, ";"),
                Joined(in_q, ";"),
                Joined(out_p, ";"),
                Joined(out_q, ";"),
                step.outcome().name()
            ),
            ReportStep::Joint { order, budget, sets, visited, outcome, survivors } => write!(
                f,
                " order={} budget={} sets={} visited={visited} outcome={} survivors={}",
                Joined(order, ","),
                budget_str(*budget),
                Tuples(sets),
                outcome.name(),
                Tuples(survivors)
            ),
        }
    }
}

impl fmt::Display for NonexistenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "report n={} m={} primes={} budget={}",
            self.n,
            self.m,
            Joined(&self.primes, ","),
            budget_str(self.budget)
        )?;
        for step in &self.steps {
            writeln!(f, "{}", StepLine(step))?;
        }
        writeln!(f, "conclusion={}", self.conclusion.name())
    }
}

fn divisibility_step(n: u64, m: u32) -> ReportStep {
    let outcome = match divisibility_check(n, m) {
        Divisibility::Pass => Outcome::Pass,
        Divisibility::Refuted => Outcome::Refuted,
    };
    ReportStep::Divisibility { outcome }
}

fn dp_step(n: u64, m: u32, p: u64, normalize: bool, budget: Option<u64>) -> ReportStep {
    let opts = DpOptions { normalize, binomial_congruences: true, budget };
    match feasible_dp(n, m, p, opts) {
        Ok(vectors) => ReportStep::FeasibleDp { p, normalize, outcome: Outcome::of_set(&vectors), vectors },
        Err(_) => ReportStep::FeasibleDp { p, normalize, outcome: Outcome::BudgetExhausted, vectors: Vec::new() },
    }
}

fn compatible(n: u64, a: &DiscrepancyVector, b: &DiscrepancyVector) -> bool {
    match (a.to_profile(n), b.to_profile(n)) {
        (Ok(pa), Ok(pb)) => contingency_feasible(n, &pa, &pb),
        _ => false,
    }
}

fn contingency_step(
    n: u64,
    p: u64,
    q: u64,
    in_p: Vec<DiscrepancyVector>,
    in_q: Vec<DiscrepancyVector>,
) -> ReportStep {
    let ok: Vec<Vec<bool>> = in_p.iter().map(|a| in_q.iter().map(|b| compatible(n, a, b)).collect()).collect();
    let out_p = in_p.iter().enumerate().filter(|(i, _)| ok[*i].iter().any(|&x| x)).map(|(_, v)| v.clone()).collect();
    let out_q = in_q
        .iter()
        .enumerate()
        .filter(|(k, _)| ok.iter().any(|row| row[*k]))
        .map(|(_, v)| v.clone())
        .collect();
    ReportStep::Contingency { p, q, in_p, in_q, out_p, out_q }
}

fn joint_step(n: u64, order: Vec<u64>, sets: Vec<Vec<DiscrepancyVector>>, budget: Option<u64>) -> ReportStep {
    let mut visited = 0u64;
    let mut survivors = Vec::new();
    let mut chosen: Vec<DiscrepancyVector> = Vec::new();
    let complete = joint_dfs(n, &sets, budget, &mut chosen, &mut visited, &mut survivors);
    let outcome = if !complete {
        Outcome::BudgetExhausted
    } else {
        Outcome::of_set(&survivors)
    };
    ReportStep::Joint { order, budget, sets, visited, outcome, survivors }
}

/// Returns false when the budget ran out.
fn joint_dfs(
    n: u64,
    sets: &[Vec<DiscrepancyVector>],
    budget: Option<u64>,
    chosen: &mut Vec<DiscrepancyVector>,
    visited: &mut u64,
    survivors: &mut Vec<Vec<DiscrepancyVector>>,
) -> bool {
    let depth = chosen.len();
    if depth == sets.len() {
        survivors.push(chosen.clone());
        return true;
    }
    for v in &sets[depth] {
        *visited += 1;
        if budget.is_some_and(|b| *visited > b) {
            return false;
        }
        if chosen.iter().all(|c| compatible(n, c, v)) {
            chosen.push(v.clone());
            let ok = joint_dfs(n, sets, budget, chosen, visited, survivors);
            chosen.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

fn conclude(steps: &[ReportStep]) -> Conclusion {
    if steps.iter().any(ReportStep::empties) {
        Conclusion::Refuted
    } else {
        Conclusion::Inconclusive
    }
}

/// Runs the constraint pipeline for `P(n, m)` over the given primes.
///
/// `budget` bounds both the node count of each `feasible_dp` enumeration and
/// the number of tuples visited by the joint pass; exhausting it stops the
/// pipeline with an inconclusive report holding the partial log.
pub fn nonexistence_report(n: u64, m: u32, primes: &[u64], budget: Option<u64>) -> Result<NonexistenceReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&p) = sorted.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let mut report = NonexistenceReport {
        n,
        m,
        primes: sorted.clone(),
        budget,
        steps: Vec::new(),
        conclusion: Conclusion::Inconclusive,
    };
    let finish = |mut r: NonexistenceReport| {
        r.conclusion = conclude(&r.steps);
        Ok(r)
    };

    let div = divisibility_step(n, m);
    let stop = div.empties();
    report.steps.push(div);
    if stop {
        return finish(report);
    }

    let mut sets: Vec<Vec<DiscrepancyVector>> = Vec::new();
    let mut normalized = false;
    for &p in &sorted {
        let mut step = dp_step(n, m, p, false, budget);
        if !normalized {
            if let ReportStep::FeasibleDp { vectors, .. } = &step {
                if vectors.iter().any(|v| !v.is_zero()) {
                    step = dp_step(n, m, p, true, budget);
                    normalized = true;
                }
            }
        }
        let outcome = step.outcome();
        if let ReportStep::FeasibleDp { vectors, .. } = &step {
            sets.push(vectors.clone());
        }
        report.steps.push(step);
        if outcome != Outcome::Nonempty {
            return finish(report);
        }
    }

    // Pairwise arc consistency until nothing changes.
    loop {
        let mut changed = false;
        for a in 0..sorted.len() {
            for b in a + 1..sorted.len() {
                let step = contingency_step(n, sorted[a], sorted[b], sets[a].clone(), sets[b].clone());
                let ReportStep::Contingency { out_p, out_q, .. } = &step else { unreachable!() };
                if out_p.len() != sets[a].len() || out_q.len() != sets[b].len() {
                    changed = true;
                    sets[a] = out_p.clone();
                    sets[b] = out_q.clone();
                }
                let empty = step.empties();
                report.steps.push(step);
                if empty {
                    return finish(report);
                }
            }
        }
        if !changed {
            break;
        }
    }

    if sorted.len() >= 3 {
        let mut idx: Vec<usize> = (0..sorted.len()).collect();
        idx.sort_by_key(|&i| (sets[i].len(), sorted[i]));
        let order = idx.iter().map(|&i| sorted[i]).collect();
        let ordered_sets = idx.iter().map(|&i| sets[i].clone()).collect();
        report.steps.push(joint_step(n, order, ordered_sets, budget));
    }
    finish(report)
}
