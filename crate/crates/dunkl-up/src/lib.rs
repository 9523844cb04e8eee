//! Batch front end for the Dunkl uncertainty library: named test
//! functions, scenario configuration, parallel bound sweeps, JSON/CSV
//! reports and the acceptance self-test.

// validation guards are written `!(x > 0.0)` so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod battery;
pub mod config;
pub mod presets;
pub mod report;
pub mod runner;
pub mod selftest;

/// Thread cap from `DUNKL_UP_THREADS` (unset or 0 means automatic).
pub fn thread_count_from_env() -> Option<usize> {
    match std::env::var("DUNKL_UP_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => None,
            Ok(n) => Some(n),
        },
        Err(_) => None,
    }
}

/// Builds a rayon pool honoring the cap; `None` uses rayon's default.
pub fn build_pool(threads: Option<usize>) -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool construction")
}
