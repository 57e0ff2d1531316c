//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the `Parallel` mode runs on rayon; without
//! it both modes run sequentially. Results never depend on the mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// `f` over `0..n`, results in index order.
pub fn map_collect<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

/// Smallest index in `0..n` for which `f` yields `Some`, with its value.
/// Deterministic under parallelism.
pub fn find_first<T, F>(exec: Exec, n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n)
            .into_par_iter()
            .filter_map(|i| f(i).map(|t| (i, t)))
            .find_first(|_| true),
        _ => (0..n).find_map(|i| f(i).map(|t| (i, t))),
    }
}

/// Like [`find_first`] but `f` can fail; the first error or hit by index wins.
pub fn try_find_first<T, E, F>(exec: Exec, n: usize, f: F) -> Result<Option<(usize, T)>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<Option<T>, E> + Sync + Send,
{
    let hit = find_first(exec, n, |i| match f(i) {
        Ok(None) => None,
        Ok(Some(t)) => Some(Ok(t)),
        Err(e) => Some(Err(e)),
    });
    match hit {
        None => Ok(None),
        Some((i, Ok(t))) => Ok(Some((i, t))),
        Some((_, Err(e))) => Err(e),
    }
}

/// Runs `f` with at most `jobs` worker threads for `Parallel` work.
/// Without the `parallel` feature this simply calls `f`.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(map_collect(exec, 5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(find_first(exec, 1000, |i| (i % 97 == 96).then_some(i)), Some((96, 96)));
            assert_eq!(find_first(exec, 10, |_| None::<()>), None);
            let r: Result<_, usize> = try_find_first(exec, 100, |i| if i == 40 { Err(i) } else { Ok((i == 50).then_some(i)) });
            assert_eq!(r, Err(40));
        }
    }
}
