//! The on-disk witness catalog.
//!
//! Line-oriented text, one record per line:
//!
//! ```text
//! # comment
//! lm       m=7 finite=96,112 start=192 step=8
//! mstar    n=144 m=8 bound=exact
//! rp       m=3 n=12 n1=20 hex=A3C
//! sporadic m=5 n=40 hex=C1EC9 provenance=published notes="free text"
//! ```
//!
//! Hex strings are left halves of `(-1)^m`-symmetric witnesses. The shipped
//! catalog lives in `data/catalog.txt` at the workspace root and is embedded
//! into the library at build time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;

use crate::codec::{decode_rp, expand_half_witness};
use crate::error::{Error, Result};
use crate::poly::{thue_morse, LittlewoodPoly, SymmetrySign};
use crate::regen::{family_poly, RegenerativePair};

pub const EMBEDDED: &str = include_str!("../../../data/catalog.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    Lm,
    MStar,
    Rp,
    Sporadic,
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Table::Lm => "lm",
            Table::MStar => "mstar",
            Table::Rp => "rp",
            Table::Sporadic => "sporadic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Exact,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogRecord {
    Lm { m: u32, finite: Vec<u64>, start: u64, step: u64 },
    MStar { n: u64, m: u32, bound: Bound },
    Rp { m: u32, n: usize, n1: usize, hex: String, notes: Option<String> },
    Sporadic { m: u32, n: usize, hex: String, provenance: String, notes: Option<String> },
}

impl CatalogRecord {
    pub fn table(&self) -> Table {
        match self {
            CatalogRecord::Lm { .. } => Table::Lm,
            CatalogRecord::MStar { .. } => Table::MStar,
            CatalogRecord::Rp { .. } => Table::Rp,
            CatalogRecord::Sporadic { .. } => Table::Sporadic,
        }
    }

    /// Short identifier used in reports.
    pub fn label(&self) -> String {
        match self {
            CatalogRecord::Lm { m, .. } => format!("lm m={m}"),
            CatalogRecord::MStar { n, .. } => format!("mstar n={n}"),
            CatalogRecord::Rp { m, n, n1, .. } => format!("rp m={m} n={n} n1={n1}"),
            CatalogRecord::Sporadic { m, n, .. } => format!("sporadic m={m} n={n}"),
        }
    }

    /// Whether `n` belongs to the set described by an `lm` record.
    pub fn lm_contains(&self, n: u64) -> Option<bool> {
        match self {
            CatalogRecord::Lm { finite, start, step, .. } => {
                Some(finite.contains(&n) || (n >= *start && (n - start) % step == 0))
            }
            _ => None,
        }
    }

    /// The full symmetric witness of a `sporadic` record.
    pub fn sporadic_witness(&self) -> Result<LittlewoodPoly> {
        match self {
            CatalogRecord::Sporadic { m, n, hex, .. } => Ok(expand_half_witness(hex, *n, *m)?.to_poly()),
            other => Err(Error::InvalidInput(format!("{} carries no single witness", other.label()))),
        }
    }
}

impl fmt::Display for CatalogRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let notes = |f: &mut fmt::Formatter<'_>, notes: &Option<String>| match notes {
            Some(s) => write!(f, " notes=\"{s}\""),
            None => Ok(()),
        };
        match self {
            CatalogRecord::Lm { m, finite, start, step } => {
                let fin: Vec<String> = finite.iter().map(|x| x.to_string()).collect();
                write!(f, "lm m={m} finite={} start={start} step={step}", fin.join(","))
            }
            CatalogRecord::MStar { n, m, bound } => {
                let b = match bound {
                    Bound::Exact => "exact",
                    Bound::Lower => "lower",
                };
                write!(f, "mstar n={n} m={m} bound={b}")
            }
            CatalogRecord::Rp { m, n, n1, hex, notes: nt } => {
                write!(f, "rp m={m} n={n} n1={n1} hex={hex}")?;
                notes(f, nt)
            }
            CatalogRecord::Sporadic { m, n, hex, provenance, notes: nt } => {
                write!(f, "sporadic m={m} n={n} hex={hex} provenance={provenance}")?;
                notes(f, nt)
            }
        }
    }
}

fn tokenize(line: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for c in line.chars() {
        match c {
            '"' => quoted = !quoted,
            c if c.is_whitespace() && !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if quoted {
        return Err(Error::Format(format!("unterminated quote in {line:?}")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

struct Fields<'a> {
    line_no: usize,
    map: BTreeMap<String, String>,
    table: &'a str,
}

impl Fields<'_> {
    fn take(&mut self, key: &str) -> Result<String> {
        self.map.remove(key).ok_or_else(|| {
            Error::Format(format!("line {}: {} record is missing `{key}`", self.line_no, self.table))
        })
    }

    fn num<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let v = self.take(key)?;
        v.parse()
            .map_err(|_| Error::Format(format!("line {}: `{key}={v}` is not a number", self.line_no)))
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            Some(k) => Err(Error::Format(format!("line {}: unknown field `{k}`", self.line_no))),
            None => Ok(()),
        }
    }
}

pub fn parse(text: &str) -> Result<Vec<CatalogRecord>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens = tokenize(line)?;
        let (table, rest) = tokens.split_first().expect("non-empty line has a token");
        let mut map = BTreeMap::new();
        for tok in rest {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("line {line_no}: expected key=value, got {tok:?}")))?;
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Format(format!("line {line_no}: duplicate field `{k}`")));
            }
        }
        let mut fields = Fields { line_no, map, table };
        let record = match table.as_str() {
            "lm" => {
                let m = fields.num("m")?;
                let finite = fields
                    .take("finite")?
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse()
                            .map_err(|_| Error::Format(format!("line {line_no}: bad length {s:?}")))
                    })
                    .collect::<Result<Vec<u64>>>()?;
                let start = fields.num("start")?;
                let step = fields.num("step")?;
                if step == 0 {
                    return Err(Error::Format(format!("line {line_no}: step must be positive")));
                }
                CatalogRecord::Lm { m, finite, start, step }
            }
            "mstar" => {
                let n = fields.num("n")?;
                let m = fields.num("m")?;
                let bound = match fields.take("bound")?.as_str() {
                    "exact" => Bound::Exact,
                    "lower" => Bound::Lower,
                    other => return Err(Error::Format(format!("line {line_no}: unknown bound {other:?}"))),
                };
                CatalogRecord::MStar { n, m, bound }
            }
            "rp" => CatalogRecord::Rp {
                m: fields.num("m")?,
                n: fields.num("n")?,
                n1: fields.num("n1")?,
                hex: fields.take("hex")?.to_ascii_uppercase(),
                notes: fields.map.remove("notes"),
            },
            "sporadic" => CatalogRecord::Sporadic {
                m: fields.num("m")?,
                n: fields.num("n")?,
                hex: fields.take("hex")?.to_ascii_uppercase(),
                provenance: fields.take("provenance")?,
                notes: fields.map.remove("notes"),
            },
            other => return Err(Error::Format(format!("line {line_no}: unknown table {other:?}"))),
        };
        fields.finish()?;
        out.push(record);
    }
    Ok(out)
}

/// Reads a catalog file, or every `*.txt` file of a directory in name order.
pub fn catalog_load(path: impl AsRef<Path>) -> Result<Vec<CatalogRecord>> {
    let path = path.as_ref();
    if path.is_dir() {
        let mut files: Vec<_> = fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        files.sort();
        let mut out = Vec::new();
        for f in files {
            out.extend(parse(&fs::read_to_string(f)?)?);
        }
        Ok(out)
    } else {
        parse(&fs::read_to_string(path)?)
    }
}

pub fn embedded() -> Vec<CatalogRecord> {
    parse(EMBEDDED).expect("embedded catalog parses")
}

/// Every regenerative pair of the catalog, decoded but not verified.
pub fn regenerative_pairs(records: &[CatalogRecord]) -> Result<Vec<RegenerativePair>> {
    records.iter().filter(|r| r.table() == Table::Rp).map(decode_rp).collect()
}

/// A catalog witness of exactly length `n` and order at least `m`, if one is
/// carried directly (sporadic record, regenerative-pair member or Thue–Morse).
pub fn find_witness(records: &[CatalogRecord], n: usize, m: u32) -> Result<Option<LittlewoodPoly>> {
    for r in records {
        if let CatalogRecord::Sporadic { m: rm, n: rn, .. } = r {
            if *rn == n && *rm >= m {
                return r.sporadic_witness().map(Some);
            }
        }
    }
    for r in records {
        if let CatalogRecord::Rp { m: rm, .. } = r {
            if *rm < m {
                continue;
            }
            let rp = decode_rp(r)?;
            let (base, _) = rp.lengths();
            let step = 2 * rp.delta();
            if n >= base && (n - base) % step == 0 {
                return Ok(Some(family_poly(&rp, (n - base) / step)));
            }
        }
    }
    if n.is_power_of_two() && n.trailing_zeros() >= m {
        return thue_morse(n.trailing_zeros()).map(Some);
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Verified,
    /// Nothing in the catalog can confirm or refute the record.
    Unchecked(String),
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct RecordCheck {
    pub index: usize,
    pub record: CatalogRecord,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct CatalogReport {
    pub checks: Vec<RecordCheck>,
}

impl CatalogReport {
    pub fn failures(&self) -> impl Iterator<Item = &RecordCheck> {
        self.checks.iter().filter(|c| matches!(c.status, CheckStatus::Failed(_)))
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Lengths (up to a horizon) that the catalog proves are in `L_m`, for each `m`.
///
/// Seeds are sporadic witnesses, regenerative-pair members and Thue–Morse
/// lengths; closure applies doubling (`n ∈ L_m ⇒ 2n ∈ L_{m+1}`), monotonicity
/// in `m`, addition within one `m`, and expanded products.
pub fn derivable_lengths(records: &[CatalogRecord], m_max: u32, horizon: u64) -> Result<Vec<BTreeSet<u64>>> {
    let mut sets = vec![BTreeSet::new(); m_max as usize + 1];
    let add = |sets: &mut Vec<BTreeSet<u64>>, m: u32, n: u64| {
        if n <= horizon {
            for mm in 0..=m.min(m_max) {
                sets[mm as usize].insert(n);
            }
        }
    };
    let mut k = 0;
    while (1u64 << k) <= horizon {
        add(&mut sets, k, 1 << k);
        k += 1;
    }
    for check in catalog_verify(records).checks {
        if check.status != CheckStatus::Verified {
            continue;
        }
        match &check.record {
            CatalogRecord::Sporadic { m, n, .. } => add(&mut sets, *m, *n as u64),
            CatalogRecord::Rp { m, n, n1, .. } => {
                let step = (n1 - n) as u64;
                let mut len = *n as u64;
                while len <= horizon {
                    add(&mut sets, *m, len);
                    len += step;
                }
            }
            _ => {}
        }
    }
    loop {
        let before: usize = sets.iter().map(|s| s.len()).sum();
        for m in 0..=m_max as usize {
            let cur: Vec<u64> = sets[m].iter().copied().collect();
            if m < m_max as usize {
                for &n in &cur {
                    add(&mut sets, m as u32 + 1, 2 * n);
                }
            }
            for (i, &a) in cur.iter().enumerate() {
                for &b in &cur[i..] {
                    if a + b > horizon {
                        break;
                    }
                    add(&mut sets, m as u32, a + b);
                }
            }
            for m2 in 1..=m {
                let other: Vec<u64> = sets[m2].iter().copied().collect();
                let m1 = m - m2;
                if m1 == 0 {
                    continue;
                }
                let first: Vec<u64> = sets[m1].iter().copied().collect();
                for &a in &first {
                    for &b in &other {
                        if a.saturating_mul(b) <= horizon {
                            add(&mut sets, m as u32, a * b);
                        }
                    }
                }
            }
        }
        let after: usize = sets.iter().map(|s| s.len()).sum();
        if after == before {
            break;
        }
    }
    Ok(sets)
}

/// Range over which `lm` rows are checked against derivable witnesses.
pub const LM_CHECK_HORIZON: u64 = 512;

/// Re-derives every record that the catalog itself can check.
pub fn catalog_verify(records: &[CatalogRecord]) -> CatalogReport {
    let mut checks = Vec::with_capacity(records.len());
    for (index, record) in records.iter().enumerate() {
        let (status, detail) = match record {
            CatalogRecord::Sporadic { m, n, .. } => match record.sporadic_witness() {
                Ok(f) => {
                    let s = SymmetrySign::for_order(*m);
                    let order = f.order();
                    if f.len() != *n {
                        (CheckStatus::Failed(format!("decoded length {} != {n}", f.len())), String::new())
                    } else if !f.is_symmetric(s) {
                        (CheckStatus::Failed(format!("witness is not {s}-symmetric")), String::new())
                    } else if order < *m {
                        (CheckStatus::Failed(format!("order {order} < {m}")), String::new())
                    } else {
                        (CheckStatus::Verified, format!("exact order {order}"))
                    }
                }
                Err(e) => (CheckStatus::Failed(e.to_string()), String::new()),
            },
            CatalogRecord::Rp { .. } => match decode_rp(record) {
                Ok(rp) if rp.verify() => (CheckStatus::Verified, format!("lengths {:?}", rp.lengths())),
                Ok(_) => (CheckStatus::Failed("not a regenerative pair".into()), String::new()),
                Err(e) => (CheckStatus::Failed(e.to_string()), String::new()),
            },
            CatalogRecord::MStar { n, m, bound } => {
                let witness = usize::try_from(*n)
                    .ok()
                    .map(|n| find_witness(records, n, *m))
                    .transpose();
                match witness {
                    Ok(Some(Some(f))) if f.has_order_at_least(*m) => {
                        let b = if *bound == Bound::Exact { "; upper bound not re-derived" } else { "" };
                        (CheckStatus::Verified, format!("lower bound {m} certified by a catalog witness{b}"))
                    }
                    Ok(Some(Some(_))) => (CheckStatus::Failed("catalog witness has lower order".into()), String::new()),
                    Ok(_) => (CheckStatus::Unchecked("no catalog witness of this length".into()), String::new()),
                    Err(e) => (CheckStatus::Failed(e.to_string()), String::new()),
                }
            }
            CatalogRecord::Lm { .. } => (CheckStatus::Unchecked("see lm closure".into()), String::new()),
        };
        checks.push(RecordCheck { index, record: record.clone(), status, detail });
    }
    // lm rows need the witness closure, which itself relies on the checks above.
    if records.iter().any(|r| r.table() == Table::Lm) {
        let witness_only: Vec<CatalogRecord> =
            records.iter().filter(|r| r.table() != Table::Lm).cloned().collect();
        let m_max = records
            .iter()
            .filter_map(|r| match r {
                CatalogRecord::Lm { m, .. } => Some(*m),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        match derivable_lengths(&witness_only, m_max, LM_CHECK_HORIZON) {
            Ok(sets) => {
                for check in checks.iter_mut() {
                    let CatalogRecord::Lm { m, .. } = &check.record else { continue };
                    let missing: Vec<u64> = (1..=LM_CHECK_HORIZON)
                        .filter(|&n| check.record.lm_contains(n) == Some(true))
                        .filter(|n| !sets[*m as usize].contains(n))
                        .collect();
                    let extra: Vec<u64> = sets[*m as usize]
                        .iter()
                        .copied()
                        .filter(|&n| check.record.lm_contains(n) == Some(false))
                        .collect();
                    (check.status, check.detail) = if !extra.is_empty() {
                        (CheckStatus::Failed(format!("catalog witnesses lengths outside the row: {extra:?}")), String::new())
                    } else if missing.is_empty() {
                        (CheckStatus::Verified, format!("every member up to {LM_CHECK_HORIZON} has a derived witness"))
                    } else {
                        (CheckStatus::Unchecked(format!("no derived witness for {missing:?}")), String::new())
                    };
                }
            }
            Err(e) => {
                for check in checks.iter_mut().filter(|c| c.record.table() == Table::Lm) {
                    check.status = CheckStatus::Failed(e.to_string());
                }
            }
        }
    }
    CatalogReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_catalog_parses_and_round_trips() {
        let recs = embedded();
        assert!(recs.len() > 50);
        let text: String = recs.iter().map(|r| format!("{r}\n")).collect();
        assert_eq!(parse(&text).unwrap(), recs);
    }

    #[test]
    fn parse_errors() {
        assert!(parse("rp m=3 n=12 hex=A3C").is_err());
        assert!(parse("bogus m=3").is_err());
        assert!(parse("mstar n=8 m=3 bound=exact extra=1").is_err());
        assert!(parse("sporadic m=5 n=40 hex=C1EC9 provenance=x notes=\"open").is_err());
        assert!(parse("mstar n=eight m=3 bound=exact").is_err());
    }

    #[test]
    fn m_star_of_eight_is_certified_by_tau3() {
        let recs = embedded();
        let w = find_witness(&recs, 8, 3).unwrap().unwrap();
        assert_eq!(w, thue_morse(3).unwrap());
        let report = catalog_verify(&recs);
        let row = report
            .checks
            .iter()
            .find(|c| c.record == CatalogRecord::MStar { n: 8, m: 3, bound: Bound::Exact })
            .unwrap();
        assert_eq!(row.status, CheckStatus::Verified);
    }

    #[test]
    fn corrupted_hex_fails_the_record_and_its_dependents() {
        let mut recs = embedded();
        let idx = recs
            .iter()
            .position(|r| matches!(r, CatalogRecord::Sporadic { n: 40, .. }))
            .unwrap();
        if let CatalogRecord::Sporadic { hex, .. } = &mut recs[idx] {
            *hex = "C1EC8".into();
        }
        let report = catalog_verify(&recs);
        let failed: Vec<usize> = report
            .failures()
            .filter(|c| c.record.table() != Table::Lm)
            .map(|c| c.index)
            .collect();
        let mstar40 = recs
            .iter()
            .position(|r| matches!(r, CatalogRecord::MStar { n: 40, .. }))
            .unwrap();
        let mut want = vec![idx, mstar40];
        want.sort();
        assert_eq!(failed, want);
    }
}
