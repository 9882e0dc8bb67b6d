//! Problem files, the expression grammar and the `mahlerkit` driver.

pub mod parse;
pub mod problem;
pub mod run;

pub use parse::{format_rational, parse_ratfunc_expr, parse_rational, ParseError};
pub use problem::{Mode, ProblemFile};
pub use run::{run_file, run_problem, run_text, Options, Outcome};
