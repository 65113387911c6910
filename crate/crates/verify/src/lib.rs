//! Property checks: the randomized dense Feshbach identity suite and, on
//! kernel sequences, soft-photon sum rules, scalar symmetry and
//! reflection, contraction rates along a trace, and the comparison of the
//! kernel recursion with a dense truncated-Fock Feshbach computation.

pub mod contraction;
pub mod feshbach;
pub mod oracle;
pub mod report;
pub mod sumrule;
pub mod symmetry;

pub use contraction::{measure_contraction, ContractionRow};
pub use feshbach::{feshbach_suite, FeshbachSuite};
pub use oracle::{oracle_compare, oracle_series, OracleConfig, OracleError, OracleReport};
pub use report::CheckReport;
pub use sumrule::{check_sum_rules, random_directions, SumRuleReport};
pub use symmetry::{check_reflection, check_scalar_symmetry, InjectedTau3};
