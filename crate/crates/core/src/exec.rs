//! Order-preserving map over independent work items: rayon under the
//! `parallel` feature, a plain loop otherwise. `map_seq` is always available
//! so the two paths can be benchmarked against each other.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

pub fn map_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Sizes the global worker pool. A no-op without the `parallel` feature and
/// after the pool has already been initialized.
#[cfg(feature = "parallel")]
pub fn set_global_jobs(jobs: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
pub fn set_global_jobs(_jobs: usize) -> Result<(), String> {
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs: Vec<u64> = (0..10_000).collect();
        let squared = map(xs.clone(), |x| x * x);
        let seq = map_seq(xs, |x| x * x);
        assert_eq!(squared, seq);
    }
}
