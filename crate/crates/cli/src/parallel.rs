//! Optional thread fan-out for the exhaustive searches, capped by the
//! `CONTENTMAX_THREADS` environment variable. The search space is split by
//! support index and the per-part results merge deterministically, so the
//! outcome is independent of scheduling.

use contentmax_core::search::{
    max_ct_over_dags, max_ct_over_dags_part, merge_results, SearchResult,
};
use contentmax_core::Pattern;

pub const THREADS_VAR: &str = "CONTENTMAX_THREADS";

/// Reads the thread cap from the environment; absence means single-threaded.
pub fn thread_cap() -> Result<usize, String> {
    match std::env::var(THREADS_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(1),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(format!("{THREADS_VAR} is not valid unicode"))
        }
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got `{s}`")),
    }
}

/// The DAG maximization search, fanned out over `threads` scoped workers.
pub fn max_ct_over_dags_parallel(
    total: u64,
    pattern: &Pattern,
    vertices: usize,
    threads: usize,
) -> SearchResult {
    let parts = threads.max(1) as u64;
    if parts == 1 {
        return max_ct_over_dags(total, pattern, vertices);
    }
    let results: Vec<SearchResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..parts)
            .map(|part| {
                scope.spawn(move || max_ct_over_dags_part(total, pattern, vertices, part, parts))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    results
        .into_iter()
        .reduce(merge_results)
        .expect("at least one part")
}
