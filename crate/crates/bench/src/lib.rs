//! Fixtures shared by the criterion benches.

use nestmaps_core::grassmann::{incidence_graph, NestingIncidence};
use nestmaps_core::FieldSpec;

/// `(q, n, i, j)` configurations with a bijective nesting map.
pub const MATCH_CONFIGS: [(u64, usize, usize, usize); 5] =
    [(2, 4, 1, 3), (3, 4, 1, 3), (2, 5, 2, 3), (2, 6, 2, 4), (2, 6, 1, 5)];

pub fn field(q: u64) -> FieldSpec {
    FieldSpec::of_order(q).expect("built-in field order")
}

pub fn incidence(q: u64, n: usize, i: usize, j: usize) -> NestingIncidence {
    incidence_graph(i, j, n, &field(q)).expect("valid dimensions")
}

pub fn label(q: u64, n: usize, i: usize, j: usize) -> String {
    format!("q{q}_n{n}_i{i}_j{j}")
}
