//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature (default) work is spread over rayon's pool; without it
//! everything runs on the calling thread. Output order always matches input order.

use std::env;

/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "ME_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Executor {
    Sequential,
    #[default]
    Parallel,
}

impl Executor {
    /// `Parallel` silently degrades to sequential when the feature is off.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Executor::Sequential => items.iter().map(f).collect(),
            Executor::Parallel => par_map(items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Reads `ME_THREADS` and sizes the global pool. Returns the requested cap, if any.
///
/// Must run before the first parallel map; later calls have no effect on the pool.
pub fn configure_threads_from_env() -> Result<Option<usize>, String> {
    let Ok(raw) = env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))?;
    if n == 0 {
        return Err(format!("{THREADS_ENV} must be a positive integer, got `{raw}`"));
    }
    #[cfg(feature = "parallel")]
    {
        // an already-initialized pool is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(Some(n))
}
