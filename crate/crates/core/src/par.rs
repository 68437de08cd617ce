//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature enabled these dispatch to rayon whenever the
//! caller asks for parallelism; otherwise everything runs on the calling
//! thread. Results never depend on which path ran: `find_first` keeps the
//! first hit in index order and `map` preserves input order.

/// Runtime switch passed down by callers that offer both execution paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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

/// Evaluates `f` on `0..n` and returns the result for the smallest index
/// producing `Some`.
pub fn find_first<T, F>(n: usize, exec: Execution, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..n).find_map(f)
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
