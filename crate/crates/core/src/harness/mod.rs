//! Inequality checks, seeded search with shrinking, reproduction of the
//! worked examples and family-based constant estimates.

pub mod check;
pub mod constants;
pub mod families;
pub mod generate;
pub mod reproduce;
pub mod search;
pub mod shrink;

pub use check::{check_conjecture, check_theorem1, CheckMode, CheckReport, Verdict};
pub use constants::{estimate_constants, ConstantEstimate};
pub use generate::{generate, Domain, InstanceClass};
pub use reproduce::{reproduce_examples, ReproductionReport};
pub use search::{read_jsonl, search, write_jsonl, SearchConfig, SearchOutcome, SearchSummary};
pub use shrink::shrink;
