//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the work is spread over the current rayon
//! pool. A single-thread pool, or a build without the feature, takes the
//! plain sequential path. Both paths return identical values.

use std::sync::atomic::{AtomicUsize, Ordering};

/// True when work will actually be distributed.
pub fn is_parallel() -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads() > 1
    }
    #[cfg(not(feature = "parallel"))]
    {
        false
    }
}

/// Order-preserving map.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..n`.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Lets a branch notice that an earlier branch already succeeded.
pub struct Cancel<'a> {
    index: usize,
    winner: &'a AtomicUsize,
}

impl Cancel<'_> {
    pub fn cancelled(&self) -> bool {
        self.winner.load(Ordering::Relaxed) < self.index
    }

    /// A token that never fires.
    pub fn never() -> Cancel<'static> {
        static NEVER: AtomicUsize = AtomicUsize::new(usize::MAX);
        Cancel { index: 0, winner: &NEVER }
    }
}

pub struct FirstSuccess<R, S> {
    /// Lowest-index branch that succeeded.
    pub hit: Option<(usize, R)>,
    /// Side data of every branch up to and including the winner, in order.
    /// Later branches may have been cut short, so they are dropped; this keeps
    /// the reported totals independent of scheduling.
    pub side: Vec<S>,
}

/// Runs branches in index order semantics: the result is the lowest-index
/// success, exactly as a sequential scan with early exit would report.
pub fn first_success<T, R, S, F>(items: &[T], f: F) -> FirstSuccess<R, S>
where
    T: Sync,
    R: Send,
    S: Send,
    F: Fn(&T, &Cancel) -> (Option<R>, S) + Sync + Send,
{
    let winner = AtomicUsize::new(usize::MAX);
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        let mut all: Vec<(Option<R>, S)> = items
            .par_iter()
            .enumerate()
            .map(|(i, item)| {
                let cancel = Cancel { index: i, winner: &winner };
                if cancel.cancelled() {
                    return (None, None);
                }
                let (r, s) = f(item, &cancel);
                if r.is_some() {
                    winner.fetch_min(i, Ordering::Relaxed);
                }
                (r, Some(s))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .filter_map(|(r, s)| s.map(|s| (r, s)))
            .collect();
        // entries skipped above all come after the winner, so positions agree
        let cut = all.iter().position(|(r, _)| r.is_some());
        let hit_at = cut.map(|i| i + 1).unwrap_or(all.len());
        all.truncate(hit_at);
        let mut side = Vec::with_capacity(all.len());
        let mut hit = None;
        for (i, (r, s)) in all.into_iter().enumerate() {
            if let Some(r) = r {
                hit = Some((i, r));
            }
            side.push(s);
        }
        return FirstSuccess { hit, side };
    }
    let mut side = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let cancel = Cancel { index: i, winner: &winner };
        let (r, s) = f(item, &cancel);
        side.push(s);
        if let Some(r) = r {
            return FirstSuccess { hit: Some((i, r)), side };
        }
    }
    FirstSuccess { hit: None, side }
}
