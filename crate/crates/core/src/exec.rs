//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature disabled every helper runs on the calling
//! thread, and `Execution::Parallel` behaves like `Execution::Sequential`.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub fn num_threads(exec: Execution) -> usize {
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            return rayon::current_num_threads();
        }
    }
    let _ = exec;
    1
}

/// Maps `f` over `items`, preserving order.
pub fn map_collect<T, R, F>(exec: Execution, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            use rayon::prelude::*;
            return items.into_par_iter().map(f).collect();
        }
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

/// Like [`map_collect`] for fallible closures; the first error in item order wins.
pub fn try_map_collect<T, R, E, F>(exec: Execution, items: Vec<T>, f: F) -> Result<Vec<R>, E>
where
    T: Send,
    R: Send,
    E: Send,
    F: Fn(T) -> Result<R, E> + Send + Sync,
{
    map_collect(exec, items, f).into_iter().collect()
}

pub fn join<A, B, RA, RB>(exec: Execution, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            return rayon::join(a, b);
        }
    }
    let _ = exec;
    (a(), b())
}
