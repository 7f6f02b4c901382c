//! Witness search for `P(n, m)`.

pub mod dfs;
pub mod ilp;
pub mod model;

pub use dfs::{dfs_search, Mode, Pruning, SearchResult, SearchSpec, MAX_TABLE_TAIL};
pub use ilp::{ilp_export, ilp_model, IlpModel, LinearRow};
pub use model::{Model, Shift};

use crate::constraints::{nonexistence_report, Conclusion};
use crate::error::Result;
use crate::poly::Bipartition;

/// Bounds on `m*(n)`, the largest `m` with `P(n, m)` nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MStarBounds {
    pub n: usize,
    pub lower: u32,
    /// Known only when `P(n, lower + 1)` was shown empty.
    pub upper: Option<u32>,
    pub witness: Option<Bipartition>,
    /// How the upper bound was established.
    pub certificate: Option<String>,
}

const MSTAR_PRIMES: [u64; 3] = [2, 3, 5];

/// Raises `m` until a witness can no longer be found.
///
/// Each level first tries the constraint pipeline, then a symmetric search, then
/// a full search. Only a refutation or an exhausted full search sets the upper
/// bound; a symmetric search that comes back empty proves nothing.
pub fn mstar(n: usize, budget: Option<u64>) -> Result<MStarBounds> {
    let mut out = MStarBounds { n, lower: 0, upper: None, witness: None, certificate: None };
    let mut m = 1u32;
    loop {
        let report = nonexistence_report(n as u64, m, &MSTAR_PRIMES, budget)?;
        if report.conclusion == Conclusion::Refuted {
            out.upper = Some(m - 1);
            out.certificate = Some(format!("constraints refute P({n}, {m})"));
            return Ok(out);
        }
        if n % 2 == 0 {
            let sym = dfs_search(&SearchSpec::new(n, m).symmetric().primes(&MSTAR_PRIMES).max_nodes(budget))?;
            if let Some(w) = sym.witnesses.into_iter().next() {
                out.lower = m;
                out.witness = Some(w);
                m += 1;
                continue;
            }
        }
        let full = dfs_search(&SearchSpec::new(n, m).primes(&MSTAR_PRIMES).max_nodes(budget))?;
        if let Some(w) = full.witnesses.into_iter().next() {
            out.lower = m;
            out.witness = Some(w);
            m += 1;
            continue;
        }
        if full.exhausted {
            out.upper = Some(m - 1);
            out.certificate = Some(format!(
                "exhaustive search of P({n}, {m}) visited {} nodes",
                full.nodes_visited
            ));
        }
        return Ok(out);
    }
}
