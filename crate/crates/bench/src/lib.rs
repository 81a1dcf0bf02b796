//! Workloads shared by the benchmarks.

use qflag_core::FlagType;

/// Flag types timed by the engine benchmarks, smallest first.
pub fn bench_flags() -> Vec<FlagType> {
    [&[1, 3][..], &[2, 4], &[1, 2, 3], &[1, 3, 5], &[2, 5], &[1, 2, 3, 4]]
        .iter()
        .map(|d| FlagType::new(d).expect("valid flag type"))
        .collect()
}
