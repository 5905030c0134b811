//! Exact arithmetic for the integral Lie ring of partitions `Lie(n)` and the
//! chain of idealizers that starts at the abelian subring spanned by
//! `∂_1, ..., ∂_n`.
//!
//! * [`partition`] and [`bfile`]: partitions, counting sequences, OEIS data
//! * [`ring`] and [`expr`]: basis elements, the bracket, element syntax
//! * [`grading`]: level functions and closed-form layer enumeration
//! * [`oracle`]: brute-force idealizer chain straight from the definition
//! * [`report`] and [`verify`]: rank tables and the full check suite

pub mod bfile;
pub mod error;
pub mod expr;
pub mod grading;
pub mod oracle;
pub mod partition;
pub mod report;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{parse_element, print_element};
pub use grading::{
    decompose, entry_index, enumerate_chain, enumerate_chain_set, enumerate_layer, lev, period_map,
    predicted_sizes, threshold, wd, Entry, LayerSet, LevelIndex,
};
pub use oracle::{compare_chain, oracle_chain, ChainDiff, OracleConfig};
pub use partition::{enumerate_partitions, partition_counts, CountTriple, Partition};
pub use report::{build_chain_report, ChainReport, Format, LevelRecord, Method};
pub use ring::{
    basis_enumerate, bracket, bracket_basis, in_span, BasisElement, RingContext, RingElement,
};
pub use verify::{run_verify, VerifyConfig, VerifyReport};
