//! Necessary conditions on the residue-class structure of a witness.

pub mod dp;
pub mod flow;
pub mod report;
pub mod residue;

pub use dp::{divisibility_check, feasible_dp, filter_symmetric, split_order, Divisibility, DpOptions};
pub use flow::{cell_capacities, contingency_feasible};
pub use report::{nonexistence_report, Conclusion, NonexistenceReport, ReportStep};
pub use residue::{class_counts, is_prime, DiscrepancyVector, ResidueProfile};
