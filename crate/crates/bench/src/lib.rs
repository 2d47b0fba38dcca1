//! Fixtures shared by the benchmarks.

use lietrace_core::{algebra_data, AlgebraData, AlgebraId};

pub fn algebra(name: &str) -> AlgebraData {
    algebra_data(AlgebraId::parse(name).expect("known algebra")).expect("catalog data")
}
