//! Execution settings shared by every estimator: worker pool and cache limit.

use std::fmt;
#[cfg(feature = "parallel")]
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{CgcError, Result};

/// Largest sample for which the full pairwise distance triangle is materialized.
pub const DEFAULT_CACHE_CAP: usize = 10_000;

/// Where and how computations run.
///
/// `Engine::default()` uses the global rayon pool when the `parallel` feature
/// is enabled. `Engine::sequential()` (or one worker) bypasses rayon entirely.
#[derive(Clone)]
pub struct Engine {
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
    sequential: bool,
    cache_cap: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            #[cfg(feature = "parallel")]
            pool: None,
            sequential: !cfg!(feature = "parallel"),
            cache_cap: DEFAULT_CACHE_CAP,
        }
    }
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("workers", &self.workers())
            .field("cache_cap", &self.cache_cap)
            .finish()
    }
}

impl Engine {
    pub fn sequential() -> Self {
        Engine {
            sequential: true,
            ..Engine::default()
        }
    }

    /// Engine with a dedicated pool of `workers` threads. `None` means all cores.
    pub fn with_workers(workers: Option<usize>) -> Result<Self> {
        match workers {
            None => Ok(Engine::default()),
            Some(0) => Err(CgcError::InvalidInput("worker count must be at least 1".into())),
            Some(1) => Ok(Engine::sequential()),
            #[cfg(feature = "parallel")]
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| CgcError::InvalidInput(format!("cannot start worker pool: {e}")))?;
                Ok(Engine {
                    pool: Some(Arc::new(pool)),
                    sequential: false,
                    cache_cap: DEFAULT_CACHE_CAP,
                })
            }
            #[cfg(not(feature = "parallel"))]
            Some(_) => Ok(Engine::sequential()),
        }
    }

    pub fn cache_cap(&self) -> usize {
        self.cache_cap
    }

    pub fn with_cache_cap(mut self, cap: usize) -> Self {
        self.cache_cap = cap;
        self
    }

    /// Number of worker threads computations will use.
    pub fn workers(&self) -> usize {
        if self.sequential {
            return 1;
        }
        #[cfg(feature = "parallel")]
        {
            match &self.pool {
                Some(pool) => pool.current_num_threads(),
                None => rayon::current_num_threads(),
            }
        }
        #[cfg(not(feature = "parallel"))]
        1
    }

    /// Evaluates `f(0..n)` and returns results in index order.
    pub(crate) fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if !self.sequential {
            let run = || (0..n).into_par_iter().map(&f).collect();
            return match &self.pool {
                Some(pool) => pool.install(run),
                None => run(),
            };
        }
        (0..n).map(f).collect()
    }

    /// Writes `f(i)` into `out[i]` for every index.
    pub(crate) fn fill<T, F>(&self, out: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if !self.sequential {
            let run = |out: &mut [T]| out.par_iter_mut().enumerate().for_each(|(i, slot)| f(i, slot));
            return match &self.pool {
                Some(pool) => pool.install(|| run(out)),
                None => run(out),
            };
        }
        out.iter_mut().enumerate().for_each(|(i, slot)| f(i, slot));
    }
}
