//! Execution policy: data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default), `par_map` fans out over the rayon
//! pool; without it, it degrades to a plain iterator. Both preserve input
//! order, so results are identical either way — callers must consume RNG
//! state only outside the mapped closure.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when the `parallel` feature is enabled.
/// Output order matches input order regardless of scheduling.
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential map with the same signature as [`par_map`]; the comparison
/// lane for benchmarks and for verifying scheduling independence.
pub fn seq_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Whether this build dispatches `par_map` onto a thread pool.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Caps the global rayon pool at `workers` threads. Returns false if the
/// pool was already initialized (first caller wins) or parallelism is
/// compiled out. `workers == 0` leaves the default.
pub fn configure_workers(workers: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        if workers == 0 {
            return true;
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_and_seq_agree_elementwise() {
        let items: Vec<u64> = (0..1000).collect();
        let f = |x: &u64| x.wrapping_mul(0x9e3779b97f4a7c15) ^ (x >> 3);
        assert_eq!(par_map(&items, f), seq_map(&items, f));
    }
}
