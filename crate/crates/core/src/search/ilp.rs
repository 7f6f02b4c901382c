//! Export of the witness conditions as a 0/1 feasibility model in LP text format.
//!
//! Variable `z_v` is 1 when the sign decided by variable `v` is `+1`. A moment row
//! `sum_v (2 z_v - 1) w_v = 0` is written as `sum_v 2 w_v z_v = sum_v w_v`, then
//! divided by the gcd of its coefficients.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_integer::Integer;

use crate::constraints::class_counts;
use crate::error::{invalid, Result};

use super::dfs::SearchSpec;
use super::model::Model;

const TERMS_PER_LINE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRow {
    pub name: String,
    /// `(variable, coefficient)` with nonzero coefficients.
    pub terms: Vec<(usize, i128)>,
    pub rhs: i128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    pub vars: usize,
    pub rows: Vec<LinearRow>,
    pub comment: String,
}

impl IlpModel {
    pub fn max_coefficient(&self) -> i128 {
        self.rows.iter().flat_map(|r| r.terms.iter().map(|t| t.1.abs())).max().unwrap_or(0)
    }

    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "\\ {}", self.comment);
        out.push_str("Minimize\n obj: 0 z0\nSubject To\n");
        for row in &self.rows {
            let _ = write!(out, " {}:", row.name);
            if row.terms.is_empty() {
                out.push_str(" 0 z0");
            }
            for (k, &(v, c)) in row.terms.iter().enumerate() {
                if k > 0 && k % TERMS_PER_LINE == 0 {
                    out.push_str("\n   ");
                }
                let sign = if c < 0 { '-' } else { '+' };
                if k == 0 && c >= 0 {
                    let _ = write!(out, " {} z{v}", c);
                } else {
                    let _ = write!(out, " {sign} {} z{v}", c.abs());
                }
            }
            let _ = writeln!(out, " = {}", row.rhs);
        }
        out.push_str("Binary\n");
        for chunk in (0..self.vars).collect::<Vec<_>>().chunks(16) {
            out.push(' ');
            out.push_str(&chunk.iter().map(|v| format!("z{v}")).collect::<Vec<_>>().join(" "));
            out.push('\n');
        }
        out.push_str("End\n");
        out
    }
}

fn reduce(name: String, coeffs: Vec<i128>, rhs: i128) -> LinearRow {
    let g = coeffs.iter().fold(rhs.abs(), |g, &c| g.gcd(&c));
    let g = if g == 0 { 1 } else { g };
    LinearRow {
        name,
        terms: coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(v, &c)| (v, c / g)).collect(),
        rhs: rhs / g,
    }
}

pub fn ilp_model(spec: &SearchSpec) -> Result<IlpModel> {
    let model = Model::build(spec.n, spec.m, spec.assume_symmetry, spec.shift, spec.moment_kind)?;
    let nv = model.vars.len();
    let mut rows = Vec::new();
    for (r, &j) in model.rows.iter().enumerate() {
        let w: Vec<i128> = (0..nv).map(|v| model.weight(v, r)).collect();
        let rhs: i128 = w.iter().sum();
        rows.push(reduce(format!("m{j}"), w.iter().map(|x| 2 * x).collect(), rhs));
    }
    for b in &spec.dp_branch {
        if b.d.len() as u64 != b.p {
            return invalid(format!("branch vector for p={} has {} entries", b.p, b.d.len()));
        }
        let contrib = model.class_contributions(b.p);
        let sizes = class_counts(spec.n as u64, b.p);
        for c in 0..b.p as usize {
            if b.d[c].unsigned_abs() > sizes[c] {
                return invalid(format!("branch entry d_{c} = {} exceeds the class size {}", b.d[c], sizes[c]));
            }
            let coef: Vec<i128> = contrib
                .iter()
                .map(|cs| cs.iter().filter(|(k, _)| *k == c).map(|(_, x)| *x as i128).sum())
                .collect();
            let rhs = b.d[c] as i128 + coef.iter().sum::<i128>();
            rows.push(reduce(format!("p{}c{c}", b.p), coef.iter().map(|x| 2 * x).collect(), rhs));
        }
    }
    let comment = format!(
        "witness model n={} m={} symmetric={} shift={} moments={:?} rows={}",
        spec.n,
        spec.m,
        spec.assume_symmetry,
        model.moments.shift,
        spec.moment_kind,
        rows.len()
    );
    Ok(IlpModel { vars: nv, rows, comment })
}

pub fn ilp_export(spec: &SearchSpec, path: impl AsRef<Path>) -> Result<IlpModel> {
    let model = ilp_model(spec)?;
    fs::write(path, model.to_lp())?;
    Ok(model)
}
