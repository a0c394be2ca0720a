//! Type-A Hecke algebras at roots of unity: partitions, cores, and Specht
//! modules with their invariant forms.

pub mod partition;
mod specht;

pub use partition::{Partition, Tableau};
pub use specht::{
    binomial, build_specht, gram_rank, gram_rank_at_rational, hook_recursion_check, specht_summary,
    HookRecursionReport, SpechtData, SpechtSummary, MAX_N,
};
