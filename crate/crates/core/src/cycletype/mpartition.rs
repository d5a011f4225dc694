use std::collections::HashSet;

use super::{Clustering, Partition};

/// Exact split of `p` into clusters that each sum to `m`.
///
/// Backtracking over part multiplicities: each new cluster starts with the
/// largest remaining part, is completed with non-increasing parts, and
/// multiplicity vectors already known to be unsplittable are skipped.
/// `None` means no such split exists (or `m` is not a proper divisor of n).
pub fn is_m_partition(p: &Partition, m: usize) -> Option<Clustering> {
    if m < 2 || m >= p.n() || !p.n().is_multiple_of(m) {
        return None;
    }
    let mult = p.multiplicities();
    if mult[0].0 > m {
        return None;
    }
    exact_split(&mult, m).map(|clusters| Clustering::new(clusters).expect("non-empty"))
}

/// The largest part forms its own cluster, which must be divisible by `m`,
/// and the remaining parts split exactly into clusters that sum to `m`.
///
/// Needs at least two parts.
pub fn is_special_m_partition(p: &Partition, m: usize) -> Option<Clustering> {
    if m < 2 || p.len() < 2 || !p.largest().is_multiple_of(m) {
        return None;
    }
    let rest_sum = p.n() - p.largest();
    if !rest_sum.is_multiple_of(m) {
        return None;
    }
    let rest = Partition::from_sorted_unchecked(p.parts()[1..].to_vec());
    let mult = rest.multiplicities();
    if mult[0].0 > m {
        return None;
    }
    let mut clusters = exact_split(&mult, m)?;
    clusters.push(Partition::from_sorted_unchecked(vec![p.largest()]));
    Some(Clustering::new(clusters).expect("non-empty"))
}

fn exact_split(mult: &[(usize, usize)], m: usize) -> Option<Vec<Partition>> {
    let clusters = split(mult, m, false, u64::MAX).expect("unbounded")?;
    Some(clusters.into_iter().map(|(c, _)| c).collect())
}

/// Exact split of a multiset into ic-clusters for block size `m`: each cluster
/// sums to `k_i m` and every part in it is divisible by `k_i`. Returns the
/// clusters with their `k_i`, `Ok(None)` if there is no such split, and
/// `Err(())` once more than `budget` nodes have been expanded.
pub(crate) fn ic_split(
    mult: &[(usize, usize)],
    m: usize,
    budget: u64,
) -> Result<Option<Vec<(Partition, usize)>>, ()> {
    split(mult, m, true, budget)
}

fn split(
    mult: &[(usize, usize)],
    m: usize,
    ic: bool,
    budget: u64,
) -> Result<Option<Vec<(Partition, usize)>>, ()> {
    let values: Vec<usize> = mult.iter().map(|&(v, _)| v).collect();
    let mut counts: Vec<usize> = mult.iter().map(|&(_, c)| c).collect();
    let mut search = Split {
        values: &values,
        m,
        ic,
        budget,
        nodes: 0,
        failed: HashSet::new(),
        current: Vec::new(),
        done: Vec::new(),
    };
    let found = search.next_cluster(&mut counts);
    if search.nodes > budget {
        return Err(());
    }
    Ok(found.then_some(search.done))
}

struct Split<'a> {
    /// Distinct part values, decreasing.
    values: &'a [usize],
    m: usize,
    /// Allow multipliers `k_i > 1`; otherwise every cluster sums to `m`.
    ic: bool,
    budget: u64,
    nodes: u64,
    /// Count vectors shown to admit no split.
    failed: HashSet<Vec<usize>>,
    current: Vec<usize>,
    done: Vec<(Partition, usize)>,
}

impl Split<'_> {
    fn next_cluster(&mut self, counts: &mut [usize]) -> bool {
        let Some(first) = counts.iter().position(|&c| c > 0) else {
            return true;
        };
        if self.failed.contains(counts) {
            return false;
        }
        let v = self.values[first];
        let multipliers: Vec<usize> = if self.ic {
            crate::arith::divisors(v)
                .into_iter()
                .filter(|&k| k * self.m >= v)
                .collect()
        } else {
            vec![1]
        };
        let start = self.current.len();
        counts[first] -= 1;
        self.current.push(v);
        let mut ok = false;
        for k in multipliers {
            if self.extend(counts, start, first, k, k * self.m - v) {
                ok = true;
                break;
            }
        }
        self.current.pop();
        counts[first] += 1;
        if !ok && self.nodes <= self.budget {
            self.failed.insert(counts.to_vec());
        }
        ok
    }

    // Completes the open cluster `current[start..]`, of multiplier `k`, with
    // parts of index >= `from`.
    fn extend(
        &mut self,
        counts: &mut [usize],
        start: usize,
        from: usize,
        k: usize,
        room: usize,
    ) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if room == 0 {
            let cluster = Partition::from_sorted_unchecked(self.current[start..].to_vec());
            self.done.push((cluster, k));
            if self.next_cluster(counts) {
                return true;
            }
            self.done.pop();
            return false;
        }
        // Sum of everything still usable from `from` on.
        let avail: usize = (from..counts.len())
            .filter(|&i| self.values[i].is_multiple_of(k))
            .map(|i| counts[i] * self.values[i])
            .sum();
        if avail < room {
            return false;
        }
        for i in from..counts.len() {
            if counts[i] == 0 || self.values[i] > room || !self.values[i].is_multiple_of(k) {
                continue;
            }
            counts[i] -= 1;
            self.current.push(self.values[i]);
            let ok = self.extend(counts, start, i, k, room - self.values[i]);
            self.current.pop();
            counts[i] += 1;
            if ok {
                return true;
            }
        }
        false
    }
}
