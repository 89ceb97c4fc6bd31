//! Coloring enumeration split over worker threads. Chunks are merged in
//! state order, so results do not depend on the worker count.

use std::ops::Range;
use std::thread;

use heapknot_core::algebra::FiniteGroup;
use heapknot_core::coloring::{colorings_in_range, count_in_range, state_space, Coloring, DEFAULT_STATE_BUDGET};
use heapknot_core::link_model::FramedLink;
use heapknot_core::state_sum::{invariant_of_colorings, require_cocycle, InvariantValue};
use heapknot_core::tsd_complex::Cochain2;
use heapknot_core::{Error, Result};

/// Environment variable overriding the enumeration budget.
pub const BUDGET_VAR: &str = "HEAPKNOT_STATE_BUDGET";

/// The state budget from [`BUDGET_VAR`], or the default.
pub fn state_budget() -> std::result::Result<u128, String> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{BUDGET_VAR} must be a nonnegative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_STATE_BUDGET),
    }
}

/// Default worker count: the available parallelism.
pub fn default_workers() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn chunks(total: u128, workers: usize) -> Vec<Range<u128>> {
    let pieces = (workers.max(1) as u128 * 4).min(total.max(1));
    let step = total.div_ceil(pieces).max(1);
    (0..pieces).map(|i| (i * step).min(total)..((i + 1) * step).min(total)).filter(|r| !r.is_empty()).collect()
}

fn checked_total(link: &FramedLink, g: &FiniteGroup, budget: u128) -> Result<u128> {
    let total = state_space(link, g);
    if total > budget {
        return Err(Error::Budget { what: "coloring states", needed: total, limit: budget });
    }
    Ok(total)
}

/// Runs `work` on every chunk with at most `workers` threads at a time and
/// returns the results in chunk order.
fn map_chunks<T: Send>(ranges: Vec<Range<u128>>, workers: usize, work: impl Fn(Range<u128>) -> T + Sync) -> Vec<T> {
    let workers = workers.max(1);
    let mut out = Vec::with_capacity(ranges.len());
    for batch in ranges.chunks(workers) {
        let results: Vec<T> = thread::scope(|s| {
            let handles: Vec<_> = batch.iter().cloned().map(|r| s.spawn(|| work(r))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        out.extend(results);
    }
    out
}

/// `Col_X(L)`.
pub fn count(link: &FramedLink, g: &FiniteGroup, budget: u128, workers: usize) -> Result<u64> {
    let total = checked_total(link, g, budget)?;
    Ok(map_chunks(chunks(total, workers), workers, |r| count_in_range(link, g, r)).into_iter().sum())
}

/// All colorings, in state order.
pub fn colorings(link: &FramedLink, g: &FiniteGroup, budget: u128, workers: usize) -> Result<Vec<Coloring>> {
    let total = checked_total(link, g, budget)?;
    Ok(map_chunks(chunks(total, workers), workers, |r| colorings_in_range(link, g, r)).into_iter().flatten().collect())
}

/// The cocycle invariant.
pub fn invariant(link: &FramedLink, g: &FiniteGroup, psi: &Cochain2, budget: u128, workers: usize) -> Result<InvariantValue> {
    require_cocycle(g, psi)?;
    let total = checked_total(link, g, budget)?;
    let parts = map_chunks(chunks(total, workers), workers, |r| {
        invariant_of_colorings(link, psi, &colorings_in_range(link, g, r))
    });
    let mut value = InvariantValue::empty(psi.coefficients(), link.component_count());
    for p in &parts {
        value.merge(p)?;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use heapknot_core::algebra::make_group;
    use heapknot_core::cocycle_lib::psi_dihedral;
    use heapknot_core::link_model::torus_2;

    #[test]
    fn worker_count_does_not_matter() {
        let g = make_group("D3").unwrap();
        let link = torus_2(4);
        let psi = psi_dihedral(3, 1).unwrap().cochain;
        let reference = invariant(&link, &g, &psi, DEFAULT_STATE_BUDGET, 1).unwrap();
        for w in [2, 3, 8] {
            assert_eq!(invariant(&link, &g, &psi, DEFAULT_STATE_BUDGET, w).unwrap(), reference);
            assert_eq!(count(&link, &g, DEFAULT_STATE_BUDGET, w).unwrap(), reference.total());
            assert_eq!(colorings(&link, &g, DEFAULT_STATE_BUDGET, w).unwrap().len() as u64, reference.total());
        }
    }

    #[test]
    fn chunks_cover_the_range() {
        for (total, workers) in [(0u128, 4usize), (1, 4), (10, 3), (1296, 8)] {
            let cs = chunks(total, workers);
            let covered: u128 = cs.iter().map(|r| r.end - r.start).sum();
            assert_eq!(covered, total);
            assert!(cs.windows(2).all(|w| w[0].end == w[1].start));
        }
    }
}
