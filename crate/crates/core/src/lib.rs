//! A CDCL SAT solver with clause vivification.
//!
//! Besides the usual machinery (two watched literals, VSIDS, first-UIP learning with
//! minimization, LBD-based restarts and clause database reduction), the solver periodically
//! shortens clauses by vivification: the negations of a clause's literals are propagated one by
//! one, and the implication graph tells which literals can be dropped. Every step is counted in
//! [`metrics::MetricsAccumulator`].
//!
//! ```
//! use vivisat::{parse_dimacs, SolveResult, Solver, SolverConfig};
//!
//! let f = parse_dimacs(b"p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
//! let mut solver = Solver::from_formula(&f, SolverConfig::default());
//! assert_eq!(solver.solve(), SolveResult::Sat(vec![false, true]));
//! ```
pub mod clause_db;
pub mod formula;
pub mod metrics;
pub mod options;
pub mod restart;
pub mod search;
pub mod vivify;

pub use formula::{parse_dimacs, Formula, Lit, Var};
pub use metrics::{MetricsAccumulator, Report, ReportFormat};
pub use search::{Answer, Budget, SolveResult, Solver, SolverConfig};
