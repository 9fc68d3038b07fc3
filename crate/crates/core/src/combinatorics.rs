//! Colexicographic enumeration of `k`-subsets and multisets, with
//! deterministic partitioning of the rank space across workers.

use rayon::prelude::*;

/// `C(n, k)` in `u128`, saturating.
pub fn choose(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// The `rank`-th `k`-subset of `0..n` in colex order.
pub fn unrank_colex(mut rank: u128, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (1..=k).rev() {
        // largest c with C(c, i) <= rank
        let mut c = i - 1;
        while choose(c + 1, i) <= rank {
            c += 1;
        }
        out[i - 1] = c;
        rank -= choose(c, i);
    }
    out
}

/// Advances `subset` to its colex successor within `0..n`; false at the end.
pub fn next_colex(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in 0..k {
        let limit = if i + 1 < k { subset[i + 1] } else { n };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (j, s) in subset.iter_mut().enumerate().take(i) {
                *s = j;
            }
            return true;
        }
    }
    false
}

/// Per-worker partial result of a sweep.
#[derive(Clone, Debug)]
pub struct Chunk<T> {
    pub visited: u64,
    pub value: T,
}

/// Visits every `k`-subset of `0..n` once, splitting the colex rank range
/// into `workers` contiguous chunks. Chunk results come back in rank order,
/// so any order-sensitive fold over them is independent of scheduling.
pub fn sweep_subsets<T, F>(
    n: usize,
    k: usize,
    workers: usize,
    init: impl Fn() -> T + Sync,
    visit: F,
) -> Vec<Chunk<T>>
where
    T: Send,
    F: Fn(&mut T, &[usize]) + Sync,
{
    let total = choose(n, k);
    let workers = workers.max(1) as u128;
    let bounds: Vec<(u128, u128)> = (0..workers)
        .map(|w| (total * w / workers, total * (w + 1) / workers))
        .collect();
    bounds
        .into_par_iter()
        .map(|(start, end)| {
            let mut value = init();
            let mut visited = 0;
            if start < end {
                let mut subset = unrank_colex(start, k);
                for _ in start..end {
                    visit(&mut value, &subset);
                    visited += 1;
                    next_colex(&mut subset, n);
                }
            }
            Chunk { visited, value }
        })
        .collect()
}

/// As [`sweep_subsets`] over `k`-multisets of `0..n` (non-decreasing sequences).
pub fn sweep_multisets<T, F>(
    n: usize,
    k: usize,
    workers: usize,
    init: impl Fn() -> T + Sync,
    visit: F,
) -> Vec<Chunk<T>>
where
    T: Send,
    F: Fn(&mut T, &[usize]) + Sync,
{
    if n == 0 {
        return vec![Chunk {
            visited: 0,
            value: init(),
        }];
    }
    sweep_subsets(n + k - 1, k, workers, init, |acc, s| {
        let multiset: Vec<usize> = s.iter().enumerate().map(|(i, &x)| x - i).collect();
        visit(acc, &multiset);
    })
}
