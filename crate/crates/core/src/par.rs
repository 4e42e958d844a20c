//! Thin data-parallel layer over rayon.
//!
//! Every engine goes through these helpers so that the `parallel` feature can
//! be switched off and the same code runs sequentially. All reductions used by
//! callers are associative and commutative, and collections keep input order,
//! so results never depend on the number of workers.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Runs `f` with a pool of `workers` threads (ignored without `parallel`).
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}

/// Number of workers the current pool would use.
pub fn current_workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Maps every item and folds the results with `combine`, starting from `identity`.
pub fn map_reduce<T, R, M, C, I>(items: &[T], identity: I, map: M, combine: C) -> R
where
    T: Sync,
    R: Send,
    M: Fn(&T) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(map).reduce(identity, combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(map).fold(identity(), combine)
    }
}

/// Same as [`map_reduce`] over the integer range `0..len`.
pub fn range_reduce<R, M, C, I>(len: u64, identity: I, map: M, combine: C) -> R
where
    R: Send,
    M: Fn(u64) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(map).reduce(identity, combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(map).fold(identity(), combine)
    }
}

pub fn range_sum(len: u64, map: impl Fn(u64) -> u64 + Sync + Send) -> u64 {
    range_reduce(len, || 0, map, |a, b| a + b)
}

/// Order-preserving parallel map.
pub fn map_collect<T, R, M>(items: &[T], map: M) -> Vec<R>
where
    T: Sync,
    R: Send,
    M: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(map).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(map).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions_do_not_depend_on_worker_count() {
        let one = with_workers(1, || range_sum(10_000, |i| i * i % 97));
        let four = with_workers(4, || range_sum(10_000, |i| i * i % 97));
        assert_eq!(one, four);
        let v: Vec<u64> = (0..100).collect();
        let a = with_workers(3, || map_collect(&v, |x| x * 2));
        assert_eq!(a, v.iter().map(|x| x * 2).collect::<Vec<_>>());
    }
}
