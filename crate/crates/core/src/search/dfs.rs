use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::constraints::{feasible_dp, DiscrepancyVector, DpOptions};
use crate::error::{invalid, Error, Result};
use crate::poly::{Bipartition, LittlewoodPoly, MomentKind};

use super::model::{Model, Shift};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    First,
    All,
    Count,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pruning {
    /// Cut when a partial moment can no longer be cancelled by the undecided weights.
    pub moments: bool,
    /// Cut when no feasible discrepancy vector is reachable in some prime.
    pub residues: bool,
}

impl Pruning {
    pub const ALL: Self = Self { moments: true, residues: true };
    pub const NONE: Self = Self { moments: false, residues: false };
}

/// Largest split-table tail; the table holds `2^tail` entries.
pub const MAX_TABLE_TAIL: usize = 24;

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub n: usize,
    pub m: u32,
    pub assume_symmetry: bool,
    pub shift: Shift,
    pub moment_kind: MomentKind,
    /// Primes whose feasible discrepancy sets drive residue pruning.
    pub primes: Vec<u64>,
    /// Fixed discrepancy vectors; restricts the searched space to that branch.
    pub dp_branch: Vec<DiscrepancyVector>,
    pub mode: Mode,
    /// Fix the first decided sign to `+1` (witnesses come in `±` pairs).
    pub canonical: bool,
    pub pruning: Pruning,
    pub max_nodes: Option<u64>,
    /// Number of leading variables enumerated up front to form parallel tasks.
    pub split_depth: usize,
    /// Decide the last `table_tail` variables with a precomputed table (0 disables it).
    pub table_tail: usize,
}

impl SearchSpec {
    pub fn new(n: usize, m: u32) -> Self {
        Self {
            n,
            m,
            assume_symmetry: false,
            shift: Shift::None,
            moment_kind: MomentKind::Binomial,
            primes: Vec::new(),
            dp_branch: Vec::new(),
            mode: Mode::First,
            canonical: true,
            pruning: Pruning::ALL,
            max_nodes: None,
            split_depth: 10,
            table_tail: 0,
        }
    }

    pub fn symmetric(mut self) -> Self {
        self.assume_symmetry = true;
        self
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn primes(mut self, primes: &[u64]) -> Self {
        self.primes = primes.to_vec();
        self
    }

    pub fn pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn shift(mut self, shift: Shift) -> Self {
        self.shift = shift;
        self
    }

    pub fn moment_kind(mut self, kind: MomentKind) -> Self {
        self.moment_kind = kind;
        self
    }

    pub fn max_nodes(mut self, budget: Option<u64>) -> Self {
        self.max_nodes = budget;
        self
    }

    /// Whether exhausting this search proves `P(n, m)` empty.
    pub fn covers_full_space(&self) -> bool {
        !self.assume_symmetry && self.dp_branch.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// `First`: at most one; `All`: every witness, sorted by `A`; `Count`: empty.
    pub witnesses: Vec<Bipartition>,
    pub count: u64,
    /// The searched space was fully explored.
    pub exhausted: bool,
    pub nodes_visited: u64,
}

struct Track {
    allowed: Vec<Vec<i64>>,
    contrib: Vec<Vec<(usize, i64)>>,
    /// `remaining[d][c]`: undecided indices of class `c` once variables `< d` are set.
    remaining: Vec<Vec<i64>>,
    /// A fixed branch is enforced even when residue pruning is off.
    required: bool,
}

impl Track {
    fn reachable(&self, d: usize, partial: &[i64]) -> bool {
        let rem = &self.remaining[d];
        self.allowed
            .iter()
            .any(|v| v.iter().zip(partial).zip(rem).all(|((&t, &x), &r)| (t - x).abs() <= r))
    }
}

struct Table {
    vars: Vec<usize>,
    /// `(hash of the row sums, sign mask)`, sorted.
    entries: Vec<(u64, u32)>,
}

fn key_hash(sums: &[i128]) -> u64 {
    let mut h = DefaultHasher::new();
    sums.hash(&mut h);
    h.finish()
}

struct Engine<'a> {
    spec: &'a SearchSpec,
    model: Model,
    /// `rem_abs[d * R + r]`: sum of `|weight|` over variables `>= d`.
    rem_abs: Vec<i128>,
    tracks: Vec<Track>,
    table: Option<Table>,
    /// Depth at which the table takes over (the number of DFS-decided variables).
    dfs_depth: usize,
    nodes: AtomicU64,
    abort: AtomicBool,
}

struct State {
    moments: Vec<i128>,
    residues: Vec<Vec<i64>>,
    signs: Vec<i8>,
}

#[derive(Default)]
struct Sink {
    witnesses: Vec<Vec<i8>>,
    count: u64,
    nodes: u64,
    error: Option<Error>,
}

const FLUSH: u64 = 1024;

impl<'a> Engine<'a> {
    fn new(spec: &'a SearchSpec) -> Result<Self> {
        let model = Model::build(spec.n, spec.m, spec.assume_symmetry, spec.shift, spec.moment_kind)?;
        let r = model.row_count();
        let nv = model.vars.len();
        let mut rem_abs = vec![0i128; (nv + 1) * r];
        for d in (0..nv).rev() {
            for row in 0..r {
                rem_abs[d * r + row] = rem_abs[(d + 1) * r + row] + model.weight(d, row).abs();
            }
        }
        let mut tracks = Vec::new();
        let mut primes: Vec<u64> = spec.primes.clone();
        for b in &spec.dp_branch {
            if b.d.len() as u64 != b.p {
                return invalid(format!("branch vector for p={} has {} entries", b.p, b.d.len()));
            }
            primes.push(b.p);
        }
        primes.sort_unstable();
        primes.dedup();
        for p in primes {
            let branch = spec.dp_branch.iter().find(|b| b.p == p);
            let allowed: Vec<Vec<i64>> = match branch {
                Some(b) => vec![b.d.clone()],
                None => {
                    if !spec.pruning.residues {
                        continue;
                    }
                    feasible_dp(spec.n as u64, spec.m, p, DpOptions::default())?.into_iter().map(|v| v.d).collect()
                }
            };
            let contrib = model.class_contributions(p);
            let mut remaining = vec![vec![0i64; p as usize]; nv + 1];
            for d in (0..nv).rev() {
                remaining[d] = remaining[d + 1].clone();
                for v in model.vars[d].indices() {
                    remaining[d][v.0 % p as usize] += 1;
                }
            }
            tracks.push(Track { allowed, contrib, remaining, required: branch.is_some() });
        }
        let tail = spec.table_tail.min(nv.saturating_sub(1));
        if spec.table_tail > MAX_TABLE_TAIL {
            return Err(Error::Resource(format!(
                "table tail {} exceeds the cap of {MAX_TABLE_TAIL}",
                spec.table_tail
            )));
        }
        let dfs_depth = nv - tail;
        let table = (tail > 0).then(|| build_table(&model, dfs_depth));
        Ok(Self { spec, model, rem_abs, tracks, table, dfs_depth, nodes: AtomicU64::new(0), abort: AtomicBool::new(false) })
    }

    fn fresh_state(&self) -> State {
        State {
            moments: vec![0; self.model.row_count()],
            residues: self.tracks.iter().map(|t| vec![0; t.remaining[0].len()]).collect(),
            signs: Vec::with_capacity(self.model.vars.len()),
        }
    }

    fn apply(&self, st: &mut State, sg: i8) {
        let v = st.signs.len();
        let r = self.model.row_count();
        for row in 0..r {
            st.moments[row] += sg as i128 * self.model.weights[v * r + row];
        }
        for (t, part) in self.tracks.iter().zip(st.residues.iter_mut()) {
            for &(c, x) in &t.contrib[v] {
                part[c] += sg as i64 * x;
            }
        }
        st.signs.push(sg);
    }

    fn undo(&self, st: &mut State) {
        let sg = st.signs.pop().expect("undo on empty assignment");
        let v = st.signs.len();
        let r = self.model.row_count();
        for row in 0..r {
            st.moments[row] -= sg as i128 * self.model.weights[v * r + row];
        }
        for (t, part) in self.tracks.iter().zip(st.residues.iter_mut()) {
            for &(c, x) in &t.contrib[v] {
                part[c] -= sg as i64 * x;
            }
        }
    }

    fn viable(&self, st: &State) -> bool {
        let d = st.signs.len();
        let r = self.model.row_count();
        if self.spec.pruning.moments {
            let rem = &self.rem_abs[d * r..(d + 1) * r];
            if st.moments.iter().zip(rem).any(|(x, b)| x.abs() > *b) {
                return false;
            }
        }
        for (t, part) in self.tracks.iter().zip(&st.residues) {
            if (self.spec.pruning.residues || t.required || d == self.model.vars.len()) && !t.reachable(d, part) {
                return false;
            }
        }
        true
    }

    fn choices(&self, depth: usize) -> &'static [i8] {
        if depth == 0 && self.spec.canonical {
            &[1]
        } else {
            &[1, -1]
        }
    }

    fn tick(&self, sink: &mut Sink) -> bool {
        sink.nodes += 1;
        if sink.nodes % FLUSH == 0 {
            let total = self.nodes.fetch_add(FLUSH, Ordering::Relaxed) + FLUSH;
            if self.spec.max_nodes.is_some_and(|b| total > b) {
                self.abort.store(true, Ordering::Relaxed);
            }
        }
        self.abort.load(Ordering::Relaxed)
    }

    /// Returns true when the search should stop.
    fn dfs(&self, st: &mut State, sink: &mut Sink) -> bool {
        if self.tick(sink) {
            return true;
        }
        if !self.viable(st) {
            return false;
        }
        let d = st.signs.len();
        if d == self.dfs_depth {
            return match &self.table {
                Some(table) => self.finish_with_table(table, st, sink),
                None => self.emit(st.signs.clone(), st, sink),
            };
        }
        for &sg in self.choices(d) {
            self.apply(st, sg);
            let stop = self.dfs(st, sink);
            self.undo(st);
            if stop {
                return true;
            }
        }
        false
    }

    fn finish_with_table(&self, table: &Table, st: &State, sink: &mut Sink) -> bool {
        let target: Vec<i128> = st.moments.iter().map(|x| -x).collect();
        let h = key_hash(&target);
        let lo = table.entries.partition_point(|e| e.0 < h);
        let r = self.model.row_count();
        for &(eh, mask) in &table.entries[lo..] {
            if eh != h {
                break;
            }
            let tail_signs: Vec<i8> = (0..table.vars.len()).map(|b| if mask >> b & 1 == 1 { 1 } else { -1 }).collect();
            let mut sums = vec![0i128; r];
            for (&v, &sg) in table.vars.iter().zip(&tail_signs) {
                for (row, s) in sums.iter_mut().enumerate() {
                    *s += sg as i128 * self.model.weights[v * r + row];
                }
            }
            if sums != target {
                continue;
            }
            let mut signs = st.signs.clone();
            signs.extend(tail_signs);
            let mut full = self.fresh_state();
            for &sg in &signs {
                self.apply(&mut full, sg);
            }
            if !self.viable(&full) {
                continue;
            }
            if self.emit(signs, &full, sink) {
                return true;
            }
        }
        false
    }

    fn emit(&self, signs: Vec<i8>, st: &State, sink: &mut Sink) -> bool {
        if st.moments.iter().any(|&x| x != 0) {
            return false;
        }
        let coeffs = self.model.expand(&signs);
        let poly = LittlewoodPoly::from_vec_unchecked(coeffs);
        if !poly.has_order_at_least(self.spec.m) {
            sink.error = Some(Error::Internal(format!(
                "search produced a candidate of order {} < {}: {poly}",
                poly.order(),
                self.spec.m
            )));
            return true;
        }
        sink.count += 1;
        match self.spec.mode {
            Mode::Count => false,
            Mode::All => {
                sink.witnesses.push(signs);
                false
            }
            Mode::First => {
                sink.witnesses.push(signs);
                true
            }
        }
    }

    /// Viable assignments of the first `depth` variables, in DFS order.
    fn prefixes(&self, depth: usize, sink: &mut Sink) -> Vec<Vec<i8>> {
        let mut out = Vec::new();
        let mut st = self.fresh_state();
        self.collect_prefixes(&mut st, depth, &mut out, sink);
        out
    }

    fn collect_prefixes(&self, st: &mut State, depth: usize, out: &mut Vec<Vec<i8>>, sink: &mut Sink) {
        if self.tick(sink) || !self.viable(st) {
            return;
        }
        let d = st.signs.len();
        if d == depth {
            out.push(st.signs.clone());
            return;
        }
        for &sg in self.choices(d) {
            self.apply(st, sg);
            self.collect_prefixes(st, depth, out, sink);
            self.undo(st);
        }
    }

    /// Runs the subtree below one prefix. The prefix node itself was counted
    /// while collecting prefixes, so the first tick is skipped.
    fn run_prefix(&self, prefix: &[i8]) -> Sink {
        let mut sink = Sink::default();
        let mut st = self.fresh_state();
        for &sg in prefix {
            self.apply(&mut st, sg);
        }
        let d = st.signs.len();
        if d == self.dfs_depth {
            match &self.table {
                Some(table) => self.finish_with_table(table, &st, &mut sink),
                None => self.emit(st.signs.clone(), &st, &mut sink),
            };
            return sink;
        }
        for &sg in self.choices(d) {
            self.apply(&mut st, sg);
            let stop = self.dfs(&mut st, &mut sink);
            self.undo(&mut st);
            if stop {
                break;
            }
        }
        sink
    }
}

fn build_table(model: &Model, start: usize) -> Table {
    let vars: Vec<usize> = (start..model.vars.len()).collect();
    let r = model.row_count();
    let mut sums: Vec<i128> = (0..r).map(|row| -vars.iter().map(|&v| model.weights[v * r + row]).sum::<i128>()).collect();
    let len = vars.len();
    let mut entries = Vec::with_capacity(1usize << len);
    let mut mask: u32 = 0;
    entries.push((key_hash(&sums), mask));
    // Gray-code order: each step flips one sign.
    for g in 1u64..(1u64 << len) {
        let b = g.trailing_zeros() as usize;
        mask ^= 1 << b;
        let sg: i128 = if mask >> b & 1 == 1 { 2 } else { -2 };
        let v = vars[b];
        for (row, s) in sums.iter_mut().enumerate() {
            *s += sg * model.weights[v * r + row];
        }
        entries.push((key_hash(&sums), mask));
    }
    entries.sort_unstable();
    Table { vars, entries }
}

/// Prefix tasks handed to one parallel batch in `First` mode.
const FIRST_MODE_BATCH: usize = 64;

#[cfg(feature = "parallel")]
fn run_batch(engine: &Engine<'_>, prefixes: &[Vec<i8>]) -> Vec<Sink> {
    use rayon::prelude::*;
    prefixes.par_iter().map(|p| engine.run_prefix(p)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_batch(engine: &Engine<'_>, prefixes: &[Vec<i8>]) -> Vec<Sink> {
    prefixes.iter().map(|p| engine.run_prefix(p)).collect()
}

/// Depth-first search for sign vectors of order at least `m`.
///
/// The output does not depend on the thread count: witnesses are taken in DFS
/// order (`First`) or sorted by `A` (`All`).
pub fn dfs_search(spec: &SearchSpec) -> Result<SearchResult> {
    let engine = Engine::new(spec)?;
    let depth = spec.split_depth.min(engine.dfs_depth);
    let mut head = Sink::default();
    let prefixes = engine.prefixes(depth, &mut head);
    let mut nodes = head.nodes;
    let mut count = 0u64;
    let mut found: Vec<Vec<i8>> = Vec::new();
    let batch = match spec.mode {
        Mode::First => FIRST_MODE_BATCH,
        _ => prefixes.len().max(1),
    };
    'outer: for chunk in prefixes.chunks(batch) {
        if engine.abort.load(Ordering::Relaxed) {
            break;
        }
        for sink in run_batch(&engine, chunk) {
            if let Some(e) = sink.error {
                return Err(e);
            }
            nodes += sink.nodes;
            count += sink.count;
            found.extend(sink.witnesses);
            if spec.mode == Mode::First && !found.is_empty() {
                found.truncate(1);
                count = 1;
                break 'outer;
            }
        }
    }
    let aborted = engine.abort.load(Ordering::Relaxed);
    let mut witnesses: Vec<Bipartition> = found
        .iter()
        .map(|signs| LittlewoodPoly::from_vec_unchecked(engine.model.expand(signs)).to_bipartition())
        .collect();
    if spec.mode == Mode::All {
        witnesses.sort();
    }
    let exhausted = !aborted && (spec.mode != Mode::First || witnesses.is_empty());
    Ok(SearchResult { witnesses, count, exhausted, nodes_visited: nodes })
}
