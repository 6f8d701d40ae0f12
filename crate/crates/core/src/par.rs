//! Thin indirection over rayon so the whole crate can be built with or
//! without data parallelism.
//!
//! Every parallel region in this crate maps an index range (or a mutable
//! slice) through a pure function and merges the results in index order, so
//! the output is bit-identical whichever path runs. The `parallel` feature
//! (default) routes through rayon; without it these helpers are plain loops.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Work-size threshold below which parallel dispatch is not worth the
/// scheduling overhead. Chosen empirically; correctness does not depend on it.
#[cfg(feature = "parallel")]
pub(crate) const MIN_PAR_WORK: usize = 1 << 12;

/// Maps `0..n` through `f`, in parallel when available and worthwhile.
/// `weight` is a rough per-item cost in scalar operations.
pub fn map_indexed<T, F>(n: usize, weight: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if n.saturating_mul(weight) >= MIN_PAR_WORK && n > 1 {
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    let _ = weight;
    (0..n).map(f).collect()
}

/// Applies `f` to every element of `items`, in parallel when worthwhile.
pub fn for_each_mut<T, F>(items: &mut [T], weight: usize, f: F)
where
    T: Send,
    F: Fn(&mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if items.len().saturating_mul(weight) >= MIN_PAR_WORK && items.len() > 1 {
            items.par_iter_mut().for_each(f);
            return;
        }
    }
    let _ = weight;
    items.iter_mut().for_each(f);
}

/// Runs `f` inside a rayon pool with exactly `threads` workers and returns
/// its result. With the `parallel` feature disabled (or `threads == 0`) this
/// just calls `f`. Used by the benches to compare thread counts on identical
/// inputs.
pub fn run_with_threads<R, F>(threads: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        if threads > 0 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("failed to build local thread pool");
            return pool.install(f);
        }
    }
    let _ = threads;
    f()
}

/// Environment variable capping the global worker count.
pub const THREADS_ENV: &str = "HYPERCL_THREADS";

/// Installs a global thread cap from `HYPERCL_THREADS`, if set to a positive
/// integer. Call once at process start (later calls are ignored by rayon).
/// A no-op without the `parallel` feature.
pub fn init_thread_cap_from_env() {
    #[cfg(feature = "parallel")]
    {
        if let Ok(raw) = std::env::var(THREADS_ENV) {
            if let Ok(k) = raw.trim().parse::<usize>() {
                if k > 0 {
                    // Ignore the error: the global pool may already exist.
                    let _ = rayon::ThreadPoolBuilder::new()
                        .num_threads(k)
                        .build_global();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_indexed_matches_sequential_loop() {
        let big: Vec<u64> = map_indexed(10_000, 1000, |i| (i as u64) * 3 + 1);
        let small: Vec<u64> = map_indexed(7, 1, |i| (i as u64) * 3 + 1);
        assert_eq!(big[9_999], 9_999 * 3 + 1);
        assert_eq!(small, vec![1, 4, 7, 10, 13, 16, 19]);
    }

    #[test]
    fn for_each_mut_touches_every_slot() {
        let mut v: Vec<usize> = (0..5000).collect();
        for_each_mut(&mut v, 1000, |x| *x += 1);
        assert!(v.iter().enumerate().all(|(i, &x)| x == i + 1));
    }

    #[test]
    fn run_with_threads_returns_result() {
        let r = run_with_threads(1, || map_indexed(100, 1, |i| i).iter().sum::<usize>());
        assert_eq!(r, 4950);
    }
}
