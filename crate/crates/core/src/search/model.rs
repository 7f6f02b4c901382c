//! The linear system a witness must satisfy, in the variables the search decides.
//!
//! Without symmetry there is one variable per index `i`, ascending, and one row
//! per moment `j < m`. Under `(-1)^m` symmetry the variable for `i < n/2` also
//! fixes `a_{n-1-i} = s a_i`; variables run outside-in and only the rows
//! `j <= m-2` are kept, since a symmetric polynomial of order at least `m-1`
//! with `s = (-1)^m` automatically has order at least `m`. Rows whose weights
//! all vanish are dropped.

use crate::error::{invalid, Error, Result};
use crate::poly::{MomentKind, MomentSpec, SymmetrySign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Shift {
    #[default]
    None,
    /// `t = n/2 - 1`, so the domain becomes `[-n/2 + 1, n/2]`.
    Centered,
}

impl Shift {
    pub fn offset(self, n: usize) -> i64 {
        match self {
            Shift::None => 0,
            Shift::Centered => (n / 2) as i64 - 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Var {
    pub index: usize,
    /// `(k, s)`: index `k` carries `s` times this variable's sign.
    pub partner: Option<(usize, i8)>,
}

impl Var {
    pub fn indices(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        std::iter::once((self.index, 1)).chain(self.partner)
    }
}

#[derive(Clone, Debug)]
pub struct Model {
    pub n: usize,
    pub m: u32,
    pub symmetry: Option<SymmetrySign>,
    pub moments: MomentSpec,
    pub vars: Vec<Var>,
    /// Moment exponents of the kept rows.
    pub rows: Vec<u32>,
    /// `weights[v * rows.len() + r]`: the coefficient of variable `v` in row `r`.
    pub weights: Vec<i128>,
}

impl Model {
    pub fn build(n: usize, m: u32, assume_symmetry: bool, shift: Shift, kind: MomentKind) -> Result<Self> {
        if n == 0 {
            return invalid("n must be positive");
        }
        if assume_symmetry && n % 2 != 0 {
            return invalid(format!("a symmetric witness needs even n, got {n}"));
        }
        let moments = MomentSpec::new(kind, shift.offset(n));
        let symmetry = assume_symmetry.then(|| SymmetrySign::for_order(m));
        let vars: Vec<Var> = match symmetry {
            Some(s) => (0..n / 2)
                .map(|i| Var { index: i, partner: Some((n - 1 - i, s.value() as i8)) })
                .collect(),
            None => (0..n).map(|i| Var { index: i, partner: None }).collect(),
        };
        let top = if symmetry.is_some() { m.saturating_sub(1) } else { m };
        let mut rows = Vec::new();
        let mut weights_by_row: Vec<Vec<i128>> = Vec::new();
        for j in 0..top {
            let mut col = Vec::with_capacity(vars.len());
            for v in &vars {
                let mut w: i128 = 0;
                for (i, s) in v.indices() {
                    let x = moments.weight_i128(i as i64, j).ok_or_else(|| overflow(n, j))?;
                    w = w.checked_add(s as i128 * x).ok_or_else(|| overflow(n, j))?;
                }
                col.push(w);
            }
            let mut total: i128 = 0;
            for w in &col {
                total = total.checked_add(w.abs()).ok_or_else(|| overflow(n, j))?;
            }
            if total != 0 {
                rows.push(j);
                weights_by_row.push(col);
            }
        }
        let r = rows.len();
        let mut weights = vec![0i128; vars.len() * r];
        for (ri, col) in weights_by_row.iter().enumerate() {
            for (v, &w) in col.iter().enumerate() {
                weights[v * r + ri] = w;
            }
        }
        Ok(Self { n, m, symmetry, moments, vars, rows, weights })
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn weight(&self, var: usize, row: usize) -> i128 {
        self.weights[var * self.rows.len() + row]
    }

    /// Contributions of each variable to the residue classes mod `p`.
    pub fn class_contributions(&self, p: u64) -> Vec<Vec<(usize, i64)>> {
        self.vars
            .iter()
            .map(|v| {
                let mut out: Vec<(usize, i64)> = Vec::new();
                for (i, s) in v.indices() {
                    let c = i % p as usize;
                    match out.iter_mut().find(|(k, _)| *k == c) {
                        Some(e) => e.1 += s as i64,
                        None => out.push((c, s as i64)),
                    }
                }
                out.retain(|&(_, x)| x != 0);
                out
            })
            .collect()
    }

    /// Full sign vector from one sign per variable.
    pub fn expand(&self, signs: &[i8]) -> Vec<i8> {
        let mut a = vec![0i8; self.n];
        for (v, &sg) in self.vars.iter().zip(signs) {
            for (i, s) in v.indices() {
                a[i] = sg * s;
            }
        }
        a
    }
}

fn overflow(n: usize, j: u32) -> Error {
    Error::Resource(format!("moment weights for n={n}, j={j} exceed 128-bit integers"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_model_shape() {
        let m = Model::build(4, 2, false, Shift::None, MomentKind::Power).unwrap();
        assert_eq!(m.vars.len(), 4);
        assert_eq!(m.rows, vec![0, 1]);
        assert_eq!((0..4).map(|v| m.weight(v, 1)).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn symmetric_rows_stop_at_m_minus_two() {
        let m = Model::build(20, 3, true, Shift::None, MomentKind::Binomial).unwrap();
        assert_eq!(m.vars.len(), 10);
        // antisymmetric: row 0 vanishes identically and is dropped
        assert_eq!(m.rows, vec![1]);
        let e = Model::build(16, 4, true, Shift::None, MomentKind::Power).unwrap();
        assert_eq!(e.rows, vec![0, 1, 2]);
    }

    #[test]
    fn centered_power_rows_under_symmetry() {
        let m = Model::build(12, 4, true, Shift::Centered, MomentKind::Power).unwrap();
        assert_eq!(m.moments.shift, 5);
        // pair (0, 11) maps to x = -5 and 6
        assert_eq!(m.weight(0, 0), 2);
        assert_eq!(m.weight(0, 1), 1);
        assert!(Model::build(7, 2, true, Shift::None, MomentKind::Power).is_err());
    }

    #[test]
    fn expand_respects_partners() {
        let m = Model::build(6, 3, true, Shift::None, MomentKind::Power).unwrap();
        assert_eq!(m.expand(&[1, -1, -1]), vec![1, -1, -1, 1, 1, -1]);
        assert_eq!(m.class_contributions(2)[0], vec![(0, 1), (1, -1)]);
        assert_eq!(m.class_contributions(3)[1], vec![]);
    }
}
