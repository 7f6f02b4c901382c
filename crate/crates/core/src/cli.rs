//! Command-line front end.
//!
//! Exit codes: 0 found or verified, 1 refuted or empty, 2 inconclusive, 3 usage
//! or input error, 4 malformed data, 5 resource limit, 6 failed verification of
//! supplied data, 7 internal consistency failure, 8 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{self, catalog_verify, CatalogRecord, CheckStatus};
use crate::certify::{stong_arithmetic, stong_certificate, stong_witnesses, StongCertificate};
use crate::codec::{decode_rp, encode_half, expand_half_witness, hex_decode, hex_encode};
use crate::constraints::{
    feasible_dp, filter_symmetric, nonexistence_report, Conclusion, DiscrepancyVector, DpOptions,
    NonexistenceReport,
};
use crate::error::{Error, Result};
use crate::poly::{Bipartition, LittlewoodPoly, MomentKind, SymmetrySign};
use crate::regen::{difference_sequence, family_range, RegenerativePair};
use crate::search::{dfs_search, ilp_export, mstar, Mode, Pruning, SearchSpec, Shift};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EMPTY: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "littlewood", version, about = "Littlewood polynomials with a high-order zero at x = 1")]
pub struct Cli {
    /// Output style: readable text or key=value lines.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for parallel stages (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact order at x = 1 of a sign vector.
    Order(PolyArgs),
    /// Check that a witness has order at least m (and the (-1)^m symmetry with --half).
    Verify(PolyArgs),
    /// Hex code of a set A in [n].
    Encode {
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
        #[arg(long)]
        n: usize,
    },
    /// The set A encoded by a hex string over [n].
    Decode {
        #[arg(long)]
        hex: String,
        #[arg(long)]
        n: usize,
    },
    /// Expand the left half of a (-1)^m-symmetric witness to the full set.
    Expand {
        #[arg(long)]
        hex: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
    },
    /// Depth-first witness search.
    Search(SearchArgs),
    /// Write the witness conditions as a 0/1 LP-format model.
    ExportIlp {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Residue-class constraints.
    #[command(subcommand)]
    Constraints(ConstraintsCmd),
    /// Re-execute a saved nonexistence report.
    Report {
        #[arg(long)]
        replay: PathBuf,
    },
    /// Verify regenerative pairs from the catalog, or one given pair.
    RpVerify {
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Members of the family generated by a catalog pair.
    RpFamily {
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long)]
        m: u32,
        /// Length 2ν of the pair's first witness.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Also report the difference sequence over this many limit positions.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Verify every catalog record.
    CatalogCheck {
        #[command(flatten)]
        catalog: CatalogArg,
    },
    /// The order-52 construction of length 2^51.
    Stong {
        #[command(flatten)]
        catalog: CatalogArg,
        /// Use placeholder leaves (length and order arithmetic only).
        #[arg(long)]
        arithmetic: bool,
        /// Write the certificate text here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounds on the largest order achievable at length n.
    Mstar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CatalogArg {
    /// Catalog file or directory of *.txt files (default: the built-in catalog).
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

impl CatalogArg {
    fn load(&self) -> Result<Vec<CatalogRecord>> {
        match &self.catalog {
            Some(p) => catalog::catalog_load(p),
            None => Ok(catalog::embedded()),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    #[arg(long, conflicts_with_all = ["signs", "set"])]
    pub hex: Option<String>,
    /// Signs as a string of '+' and '-'.
    #[arg(long, conflicts_with = "set")]
    pub signs: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub set: Option<Vec<usize>>,
    /// Full length n.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<u32>,
    /// The input is the left half; the full witness is its symmetrization.
    #[arg(long)]
    pub half: bool,
    /// With --half: antisymmetric completion.
    #[arg(long, conflicts_with = "sym")]
    pub anti: bool,
    /// With --half: symmetric completion.
    #[arg(long)]
    pub sym: bool,
}

impl PolyArgs {
    fn build(&self) -> Result<LittlewoodPoly> {
        let need_n = || self.n.ok_or_else(|| Error::InvalidInput("--n is required".into()));
        let width = |n: usize| if self.half { n / 2 } else { n };
        let base = if let Some(hex) = &self.hex {
            let w = width(need_n()?);
            Bipartition::new(w, hex_decode(hex, w)?)?.to_poly()
        } else if let Some(s) = &self.signs {
            LittlewoodPoly::from_signs(s)?
        } else if let Some(set) = &self.set {
            let w = width(need_n()?);
            Bipartition::new(w, set.iter().copied())?.to_poly()
        } else {
            return Err(Error::InvalidInput("give one of --hex, --signs, --set".into()));
        };
        if !self.half {
            if let Some(n) = self.n {
                if n != base.len() {
                    return Err(Error::InvalidInput(format!("--n {n} does not match the {} signs given", base.len())));
                }
            }
            return Ok(base);
        }
        let sign = self.half_sign()?;
        let full = base.symmetrize(sign);
        if let Some(n) = self.n {
            if n != full.len() {
                return Err(Error::InvalidInput(format!("--n {n} must be twice the half length {}", base.len())));
            }
        }
        Ok(full)
    }

    fn half_sign(&self) -> Result<SymmetrySign> {
        Ok(if self.anti {
            SymmetrySign::Minus
        } else if self.sym {
            SymmetrySign::Plus
        } else {
            let m = self.m.ok_or_else(|| Error::InvalidInput("--half needs --m, --anti or --sym".into()))?;
            SymmetrySign::for_order(m)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShiftArg {
    None,
    Centered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MomentArg {
    Power,
    Binomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    First,
    All,
    Count,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: u32,
    /// Restrict to (-1)^m-symmetric witnesses.
    #[arg(long)]
    pub symmetric: bool,
    #[arg(long, value_enum, default_value_t = ShiftArg::None)]
    pub shift: ShiftArg,
    #[arg(long, value_enum, default_value_t = MomentArg::Binomial)]
    pub moments: MomentArg,
    /// Primes whose feasible discrepancy sets prune the search.
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    /// Fixed discrepancy vector, e.g. `5:-20,5,5,5,5`; repeatable.
    #[arg(long = "dp")]
    pub dp: Vec<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::First)]
    pub mode: ModeArg,
    /// Do not fix the first sign.
    #[arg(long)]
    pub both_signs: bool,
    /// Disable all pruning.
    #[arg(long)]
    pub no_prune: bool,
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Decide this many trailing variables by table lookup.
    #[arg(long, default_value_t = 0)]
    pub table_tail: usize,
}

impl SearchArgs {
    fn spec(&self) -> Result<SearchSpec> {
        let mut spec = SearchSpec::new(self.n, self.m);
        spec.assume_symmetry = self.symmetric;
        spec.shift = match self.shift {
            ShiftArg::None => Shift::None,
            ShiftArg::Centered => Shift::Centered,
        };
        spec.moment_kind = match self.moments {
            MomentArg::Power => MomentKind::Power,
            MomentArg::Binomial => MomentKind::Binomial,
        };
        spec.primes = self.primes.clone();
        spec.dp_branch = self.dp.iter().map(|s| parse_dp(s)).collect::<Result<_>>()?;
        spec.mode = match self.mode {
            ModeArg::First => Mode::First,
            ModeArg::All => Mode::All,
            ModeArg::Count => Mode::Count,
        };
        spec.canonical = !self.both_signs;
        if self.no_prune {
            spec.pruning = Pruning::NONE;
        }
        spec.max_nodes = self.max_nodes;
        spec.table_tail = self.table_tail;
        Ok(spec)
    }
}

fn parse_dp(s: &str) -> Result<DiscrepancyVector> {
    let (p, d) = s
        .split_once(':')
        .ok_or_else(|| Error::InvalidInput(format!("expected p:d0,d1,..., found {s:?}")))?;
    let p: u64 = p.parse().map_err(|_| Error::InvalidInput(format!("bad prime in {s:?}")))?;
    let d = d
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad entry in {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    DiscrepancyVector::new(p, d)
}

#[derive(Subcommand, Debug)]
pub enum ConstraintsCmd {
    /// Feasible discrepancy vectors mod p.
    Feasible {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u64,
        /// Keep only vectors whose first nonzero entry is positive.
        #[arg(long)]
        normalize: bool,
        /// Skip the binomial congruences mod p^(s+1).
        #[arg(long)]
        no_congruences: bool,
        /// Keep only vectors compatible with a (-1)^m-symmetric witness.
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the constraint pipeline and print a replayable report.
    Report {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u32,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[arg(long)]
        budget: Option<u64>,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Lines for text mode, fields for kv mode, and the exit code.
struct Outcome {
    text: Vec<String>,
    kv: Vec<(String, String)>,
    code: i32,
}

impl Outcome {
    fn new(code: i32) -> Self {
        Self { text: Vec::new(), kv: Vec::new(), code }
    }

    fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    fn field(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.kv.push((k.to_string(), v.to_string()));
        self
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => 3,
        Error::Format(_) => 4,
        Error::Resource(_) => 5,
        Error::Verification(_) => 6,
        Error::Internal(_) => 7,
        Error::Io(_) => 8,
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(",")
    }
}

/// Parses `args` (including the program name), runs the command and writes its
/// output to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = with_threads(cli.threads, || dispatch(&cli.command));
    match result {
        Ok(o) => {
            match cli.format {
                Format::Text => {
                    for l in &o.text {
                        let _ = writeln!(out, "{l}");
                    }
                }
                Format::Kv => {
                    for (k, v) in &o.kv {
                        let _ = writeln!(out, "{k}={v}");
                    }
                }
            }
            o.code
        }
        Err(e) => {
            let _ = match cli.format {
                Format::Text => writeln!(out, "error: {e}"),
                Format::Kv => writeln!(out, "error={}", e.to_string().replace('\n', " ")),
            };
            error_code(&e)
        }
    }
}

#[cfg(feature = "parallel")]
fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Order(p) => cmd_order(p),
        Command::Verify(p) => cmd_verify(p),
        Command::Encode { set, n } => {
            let hex = hex_encode(set, *n)?;
            let mut o = Outcome::new(EXIT_OK);
            o.line(hex.clone()).field("hex", hex).field("n", n);
            Ok(o)
        }
        Command::Decode { hex, n } => {
            let a = hex_decode(hex, *n)?;
            let poly = Bipartition::new(*n, a.iter().copied())?.to_poly();
            let mut o = Outcome::new(EXIT_OK);
            o.line(format!("A = {{{}}}", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .line(format!("signs = {poly}"))
                .field("n", n)
                .field("set", join(&a))
                .field("signs", poly);
            Ok(o)
        }
        Command::Expand { hex, n, m } => {
            let bp = expand_half_witness(hex, *n, *m)?;
            let poly = bp.to_poly();
            let order = poly.order();
            let mut o = Outcome::new(EXIT_OK);
            o.line(format!("A = {{{}}}", bp.a().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .line(format!("signs = {poly}"))
                .line(format!("exact order: {order}"))
                .field("n", n)
                .field("set", join(bp.a()))
                .field("order", order);
            Ok(o)
        }
        Command::Search(a) => cmd_search(a),
        Command::ExportIlp { search, out } => {
            let spec = search.spec()?;
            let model = ilp_export(&spec, out)?;
            let mut o = Outcome::new(EXIT_OK);
            o.line(format!(
                "wrote {}: {} binaries, {} equalities, largest coefficient {}",
                out.display(),
                model.vars,
                model.rows.len(),
                model.max_coefficient()
            ))
            .field("path", out.display())
            .field("binaries", model.vars)
            .field("equalities", model.rows.len())
            .field("max_coefficient", model.max_coefficient());
            Ok(o)
        }
        Command::Constraints(c) => cmd_constraints(c),
        Command::Report { replay } => {
            let text = fs::read_to_string(replay)?;
            let report = NonexistenceReport::parse(&text)?;
            report.replay()?;
            let mut o = Outcome::new(EXIT_OK);
            o.line(format!(
                "replayed {} steps for n={} m={}: conclusion {} reproduced",
                report.steps.len(),
                report.n,
                report.m,
                conclusion_name(report.conclusion)
            ))
            .field("steps", report.steps.len())
            .field("replay", "ok")
            .field("conclusion", conclusion_name(report.conclusion));
            Ok(o)
        }
        Command::RpVerify { catalog, f, g, m } => cmd_rp_verify(catalog, f, g, *m),
        Command::RpFamily { catalog, m, n, k, horizon } => cmd_rp_family(catalog, *m, *n, *k, *horizon),
        Command::CatalogCheck { catalog } => cmd_catalog_check(catalog),
        Command::Stong { catalog, arithmetic, out } => cmd_stong(catalog, *arithmetic, out.as_ref()),
        Command::Mstar { n, budget } => {
            let b = mstar(*n, *budget)?;
            let upper = b.upper.map_or_else(|| "unknown".to_string(), |u| u.to_string());
            let mut o = Outcome::new(if b.upper.is_some() { EXIT_OK } else { EXIT_INCONCLUSIVE });
            o.line(format!("m*({}) : lower = {}, upper = {}", n, b.lower, upper));
            if let Some(c) = &b.certificate {
                o.line(format!("upper bound: {c}"));
            }
            if let Some(w) = &b.witness {
                o.line(format!("witness: {}", w.to_poly()));
            }
            o.field("n", n).field("lower", b.lower).field("upper", upper);
            Ok(o)
        }
    }
}

fn cmd_order(p: &PolyArgs) -> Result<Outcome> {
    let poly = p.build()?;
    let exact = poly.order();
    match p.m {
        Some(m) => {
            let yes = exact >= m;
            let mut o = Outcome::new(if yes { EXIT_OK } else { EXIT_EMPTY });
            o.line(format!("order ≥ {m}: {}; exact order: {exact}", if yes { "yes" } else { "no" }))
                .field("n", poly.len())
                .field("m", m)
                .field("order_at_least", yes)
                .field("order", exact);
            Ok(o)
        }
        None => {
            let mut o = Outcome::new(EXIT_OK);
            o.line(format!("exact order: {exact}")).field("n", poly.len()).field("order", exact);
            Ok(o)
        }
    }
}

fn cmd_verify(p: &PolyArgs) -> Result<Outcome> {
    let m = p.m.ok_or_else(|| Error::InvalidInput("verify needs --m".into()))?;
    let poly = p.build()?;
    let order_ok = poly.has_order_at_least(m);
    let want = SymmetrySign::for_order(m);
    let sym_ok = !p.half || poly.is_symmetric(want);
    let ok = order_ok && sym_ok;
    let mut o = Outcome::new(if ok { EXIT_OK } else { EXIT_EMPTY });
    o.line(format!(
        "n={} m={m}: order {}; symmetry {}; {}",
        poly.len(),
        if order_ok { "ok" } else { "FAILED" },
        if !p.half {
            "not required"
        } else if sym_ok {
            "ok"
        } else {
            "FAILED"
        },
        if ok { "verified" } else { "rejected" }
    ))
    .field("n", poly.len())
    .field("m", m)
    .field("order_ok", order_ok)
    .field("symmetry_ok", sym_ok)
    .field("verified", ok);
    Ok(o)
}

fn cmd_search(a: &SearchArgs) -> Result<Outcome> {
    let spec = a.spec()?;
    let r = dfs_search(&spec)?;
    let code = if r.count > 0 {
        EXIT_OK
    } else if r.exhausted {
        EXIT_EMPTY
    } else {
        EXIT_INCONCLUSIVE
    };
    let mut o = Outcome::new(code);
    let scope = if spec.covers_full_space() { "full space" } else { "restricted subspace" };
    o.line(format!(
        "n={} m={}: {} witness(es); exhausted={} ({scope}); nodes={}",
        a.n, a.m, r.count, r.exhausted, r.nodes_visited
    ));
    for w in &r.witnesses {
        let half = if a.symmetric { encode_half(w).ok() } else { None };
        let hex = hex_encode(w.a(), w.n())?;
        match half {
            Some(h) => o.line(format!("{} hex={hex} half={h}", w.to_poly())),
            None => o.line(format!("{} hex={hex}", w.to_poly())),
        };
    }
    o.field("n", a.n)
        .field("m", a.m)
        .field("count", r.count)
        .field("exhausted", r.exhausted)
        .field("full_space", spec.covers_full_space())
        .field("nodes", r.nodes_visited);
    for w in &r.witnesses {
        o.field("witness", hex_encode(w.a(), w.n())?);
    }
    Ok(o)
}

fn conclusion_name(c: Conclusion) -> &'static str {
    match c {
        Conclusion::Refuted => "refuted",
        Conclusion::Inconclusive => "inconclusive",
    }
}

fn cmd_constraints(c: &ConstraintsCmd) -> Result<Outcome> {
    match c {
        ConstraintsCmd::Feasible { n, m, p, normalize, no_congruences, symmetric, budget } => {
            let opts = DpOptions { normalize: *normalize, binomial_congruences: !no_congruences, budget: *budget };
            let mut vs = feasible_dp(*n, *m, *p, opts)?;
            if *symmetric {
                vs = filter_symmetric(&vs, *n, *m);
            }
            let mut o = Outcome::new(if vs.is_empty() { EXIT_EMPTY } else { EXIT_OK });
            o.line(format!("n={n} m={m} p={p}: {} feasible vector(s)", vs.len()));
            for v in &vs {
                let prof = v.to_profile(*n)?;
                o.line(format!("d={v} counts={prof}"));
            }
            o.field("n", n).field("m", m).field("p", p).field("count", vs.len());
            for v in &vs {
                o.field("vector", v);
            }
            Ok(o)
        }
        ConstraintsCmd::Report { n, m, primes, budget, out } => {
            let report = nonexistence_report(*n, *m, primes, *budget)?;
            let text = report.to_text();
            if let Some(path) = out {
                fs::write(path, &text)?;
            }
            let code = match report.conclusion {
                Conclusion::Refuted => EXIT_EMPTY,
                Conclusion::Inconclusive => EXIT_INCONCLUSIVE,
            };
            let mut o = Outcome::new(code);
            for l in text.lines() {
                o.line(l);
            }
            o.field("n", n).field("m", m).field("primes", join(primes)).field("steps", report.steps.len());
            for (p, vs) in report.survivors() {
                o.field(&format!("survivors_mod_{p}"), vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";"));
            }
            o.field("conclusion", conclusion_name(report.conclusion));
            Ok(o)
        }
    }
}

fn cmd_rp_verify(catalog: &CatalogArg, f: &Option<String>, g: &Option<String>, m: Option<u32>) -> Result<Outcome> {
    if let (Some(f), Some(g)) = (f, g) {
        let m = m.ok_or_else(|| Error::InvalidInput("--m is required with --f/--g".into()))?;
        let pair = RegenerativePair::new(LittlewoodPoly::from_signs(f)?, LittlewoodPoly::from_signs(g)?, m);
        let ok = pair.verify();
        let (a, b) = pair.lengths();
        let mut o = Outcome::new(if ok { EXIT_OK } else { EXIT_EMPTY });
        o.line(format!("pair ({a},{b}) m={m}: {}", if ok { "regenerative" } else { "not regenerative" }))
            .field("lengths", format!("{a},{b}"))
            .field("m", m)
            .field("verified", ok);
        return Ok(o);
    }
    let records = catalog.load()?;
    let mut o = Outcome::new(EXIT_OK);
    let mut failed = 0;
    let mut total = 0;
    for rec in &records {
        let CatalogRecord::Rp { m: rm, .. } = rec else { continue };
        if m.is_some_and(|x| x != *rm) {
            continue;
        }
        total += 1;
        let ok = decode_rp(rec).map(|p| p.verify()).unwrap_or(false);
        if !ok {
            failed += 1;
        }
        o.line(format!("{}: {}", rec.label(), if ok { "ok" } else { "FAILED" }));
        o.field(&rec.label().replace(' ', "_"), ok);
    }
    o.line(format!("{} of {total} pairs verified", total - failed));
    o.field("pairs", total).field("failed", failed);
    if failed > 0 {
        o.code = EXIT_EMPTY;
    }
    Ok(o)
}

fn cmd_rp_family(catalog: &CatalogArg, m: u32, n: usize, k: usize, horizon: Option<usize>) -> Result<Outcome> {
    let records = catalog.load()?;
    let rec = records
        .iter()
        .find(|r| matches!(r, CatalogRecord::Rp { m: rm, n: rn, .. } if *rm == m && *rn == n))
        .ok_or_else(|| Error::InvalidInput(format!("no regenerative pair with m={m}, n={n} in the catalog")))?;
    let pair = decode_rp(rec)?;
    let mut o = Outcome::new(EXIT_OK);
    let members = family_range(&pair, 0..=k);
    for (i, f) in members.iter().enumerate() {
        let ok = f.has_order_at_least(m) && f.is_symmetric(pair.sign());
        if !ok {
            o.code = EXIT_EMPTY;
        }
        let half = encode_half(&f.to_bipartition())?;
        o.line(format!("k={i} n={} order≥{m}: {} half={half}", f.len(), if ok { "yes" } else { "no" }));
        o.field(&format!("k{i}"), format!("{}:{ok}", f.len()));
    }
    if let Some(h) = horizon {
        let d = difference_sequence(&pair, h);
        match (&d.preperiod, &d.period) {
            (Some(pre), Some(per)) => {
                o.line(format!("differences: preperiod ({}) period ({})", join(pre), join(per)));
                o.field("preperiod", join(pre)).field("period", join(per));
            }
            _ => {
                o.line(format!("differences (no period within horizon): {}", join(&d.raw)));
                o.field("raw", join(&d.raw));
            }
        }
    }
    Ok(o)
}

fn cmd_catalog_check(catalog: &CatalogArg) -> Result<Outcome> {
    let records = catalog.load()?;
    let report = catalog_verify(&records);
    let mut o = Outcome::new(EXIT_OK);
    let (mut ok, mut unchecked, mut failed) = (0, 0, 0);
    for c in &report.checks {
        let status = match &c.status {
            CheckStatus::Verified => {
                ok += 1;
                "verified".to_string()
            }
            CheckStatus::Unchecked(why) => {
                unchecked += 1;
                format!("unchecked ({why})")
            }
            CheckStatus::Failed(why) => {
                failed += 1;
                format!("FAILED ({why})")
            }
        };
        o.line(format!("[{}] {}: {status}", c.index, c.record.label()));
    }
    o.line(format!("{ok} verified, {unchecked} unchecked, {failed} failed"));
    o.field("records", report.checks.len()).field("verified", ok).field("unchecked", unchecked).field("failed", failed);
    if failed > 0 {
        o.code = EXIT_EMPTY;
    }
    Ok(o)
}

fn cmd_stong(catalog: &CatalogArg, arithmetic: bool, out: Option<&PathBuf>) -> Result<Outcome> {
    let cert: StongCertificate = if arithmetic {
        stong_arithmetic()?
    } else {
        let records = catalog.load()?;
        stong_certificate(&stong_witnesses(&records)?)?
    };
    let mut o = Outcome::new(EXIT_OK);
    for (name, c) in ["a", "b", "c", "d"].iter().zip(&cert.components) {
        o.line(format!("{name}: length {} order ≥ {}", c.length(), c.order_lb()));
        o.field(&format!("length_{name}"), c.length());
    }
    let total = cert.root.length();
    let exp = total.trailing_zeros();
    let pow = if total.is_power_of_two() { format!(" = 2^{exp}") } else { String::new() };
    o.line(format!("sum = {total}{pow}; order ≥ {}", cert.root.order_lb()));
    o.field("sum", total).field("order_lb", cert.root.order_lb()).field("leaves", if arithmetic { "placeholder" } else { "verified" });
    if let Some(path) = out {
        fs::write(path, cert.root.to_string())?;
        o.line(format!("certificate written to {}", path.display()));
    }
    Ok(o)
}
