use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CycleTypeError, Partition};
use crate::arith::gcd_all;

/// A partition of the parts of a [`Partition`] into clusters.
///
/// Clusters are stored canonically: each cluster non-increasing, clusters
/// sorted in decreasing order, so two clusterings that differ only by a
/// permutation of equal parts compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Clustering {
    clusters: Vec<Partition>,
}

impl Clustering {
    pub fn new(mut clusters: Vec<Partition>) -> Result<Self, CycleTypeError> {
        if clusters.is_empty() {
            return Err(CycleTypeError::EmptyPartition);
        }
        clusters.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Clustering { clusters })
    }

    pub fn from_parts(clusters: Vec<Vec<usize>>) -> Result<Self, CycleTypeError> {
        let clusters = clusters
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>, _>>()?;
        Clustering::new(clusters)
    }

    pub fn clusters(&self) -> &[Partition] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// The sum of each cluster, in cluster order.
    pub fn cluster_sums(&self) -> Vec<usize> {
        self.clusters.iter().map(Partition::n).collect()
    }

    /// The partition obtained by forgetting the clustering.
    pub fn source(&self) -> Partition {
        let parts: Vec<usize> = self
            .clusters
            .iter()
            .flat_map(|c| c.parts().iter().copied())
            .collect();
        Partition::new(parts).expect("clusters are non-empty")
    }

    /// Whether this is a clustering of `p` (same multiset of parts).
    pub fn is_clustering_of(&self, p: &Partition) -> bool {
        &self.source() == p
    }

    /// If every cluster `i` is an ic-partition of type `(l_i / m, m)`, returns
    /// the per-cluster multipliers `k_i = l_i / m`.
    pub fn multipliers_for_block_size(&self, m: usize) -> Option<Vec<usize>> {
        if m == 0 {
            return None;
        }
        let mut ks = Vec::with_capacity(self.clusters.len());
        for c in &self.clusters {
            if c.n() % m != 0 {
                return None;
            }
            let k = c.n() / m;
            if c.parts().iter().any(|p| p % k != 0) {
                return None;
            }
            ks.push(k);
        }
        Some(ks)
    }

    /// gcd of the cluster sums.
    pub fn sums_gcd(&self) -> usize {
        gcd_all(&self.cluster_sums())
    }
}

impl TryFrom<Vec<Vec<usize>>> for Clustering {
    type Error = CycleTypeError;

    fn try_from(v: Vec<Vec<usize>>) -> Result<Self, Self::Error> {
        Clustering::from_parts(v)
    }
}

impl From<Clustering> for Vec<Vec<usize>> {
    fn from(c: Clustering) -> Self {
        c.clusters.into_iter().map(Vec::from).collect()
    }
}

impl fmt::Display for Clustering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.clusters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Lazy stream of the clusterings of a partition, each produced exactly once
/// up to permutations of equal parts.
///
/// Parts of equal size are indistinguishable, so the clusterings are the
/// partitions of a multiset. They are generated in decreasing lexicographic
/// order of cluster multiplicity vectors (Knuth's multipartition algorithm,
/// TAOCP 7.2.1.5 M) which never produces a duplicate. The whole search state
/// lives in the stack arrays below, so the stream can be stopped and resumed.
#[derive(Clone, Debug)]
pub struct Clusterings {
    values: Vec<usize>,
    // Component index, unpartitioned amount and part amount per stack slot.
    comp: Vec<usize>,
    rest: Vec<usize>,
    take: Vec<usize>,
    frame: Vec<usize>,
    a: usize,
    b: usize,
    depth: usize,
    phase: Phase,
    visited: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    Start,
    Subtract,
    Decrease,
    Done,
}

impl Clusterings {
    pub fn new(p: &Partition) -> Self {
        let mult = p.multiplicities();
        let m = mult.len();
        let total = p.len();
        let size = m * total + 1;
        let mut comp = vec![0; size];
        let mut rest = vec![0; size];
        let mut take = vec![0; size];
        for (j, &(_, count)) in mult.iter().enumerate() {
            comp[j] = j;
            rest[j] = count;
            take[j] = count;
        }
        Clusterings {
            values: mult.iter().map(|&(v, _)| v).collect(),
            comp,
            rest,
            take,
            frame: vec![0; total + 2],
            a: 0,
            b: m,
            depth: 0,
            phase: Phase::Start,
            visited: 0,
        }
    }

    /// Number of clusterings produced so far.
    pub fn visited(&self) -> u64 {
        self.visited
    }

    /// Moves to the next clustering; `false` once the stream is exhausted.
    pub(crate) fn advance(&mut self) -> bool {
        loop {
            match self.phase {
                Phase::Done => return false,
                Phase::Start => {
                    self.frame[0] = 0;
                    self.frame[1] = self.b;
                    self.phase = Phase::Subtract;
                }
                Phase::Subtract => {
                    let (mut j, mut k) = (self.a, self.b);
                    let mut relaxed = false;
                    while j < self.b {
                        self.rest[k] = self.rest[j] - self.take[j];
                        if self.rest[k] == 0 {
                            relaxed = true;
                        } else if !relaxed {
                            self.comp[k] = self.comp[j];
                            self.take[k] = self.take[j].min(self.rest[k]);
                            relaxed = self.rest[k] < self.take[j];
                            k += 1;
                        } else {
                            self.comp[k] = self.comp[j];
                            self.take[k] = self.rest[k];
                            k += 1;
                        }
                        j += 1;
                    }
                    if k > self.b {
                        self.a = self.b;
                        self.b = k;
                        self.depth += 1;
                        self.frame[self.depth + 1] = self.b;
                        continue;
                    }
                    self.phase = Phase::Decrease;
                    self.visited += 1;
                    return true;
                }
                Phase::Decrease => loop {
                    let mut j = self.b - 1;
                    while self.take[j] == 0 {
                        j -= 1;
                    }
                    if j == self.a && self.take[j] == 1 {
                        if self.depth == 0 {
                            self.phase = Phase::Done;
                            return false;
                        }
                        self.depth -= 1;
                        self.b = self.a;
                        self.a = self.frame[self.depth];
                        continue;
                    }
                    self.take[j] -= 1;
                    for k in j + 1..self.b {
                        self.take[k] = self.rest[k];
                    }
                    self.phase = Phase::Subtract;
                    break;
                },
            }
        }
    }

    /// Number of clusters in the current clustering.
    pub(crate) fn current_len(&self) -> usize {
        self.depth + 1
    }

    /// `(value, multiplicity)` entries of cluster `i` of the current clustering.
    pub(crate) fn current_cluster(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.frame[i]..self.frame[i + 1])
            .filter(move |&j| self.take[j] > 0)
            .map(move |j| (self.values[self.comp[j]], self.take[j]))
    }

    pub(crate) fn current_sum(&self, i: usize) -> usize {
        self.current_cluster(i).map(|(v, c)| v * c).sum()
    }

    pub(crate) fn current(&self) -> Clustering {
        let clusters = (0..self.current_len())
            .map(|i| {
                let mut parts = Vec::new();
                for (v, c) in self.current_cluster(i) {
                    parts.extend(std::iter::repeat_n(v, c));
                }
                Partition::from_sorted_unchecked(parts)
            })
            .collect();
        Clustering::new(clusters).expect("at least one cluster")
    }
}

impl Iterator for Clusterings {
    type Item = Clustering;

    fn next(&mut self) -> Option<Clustering> {
        if self.advance() {
            Some(self.current())
        } else {
            None
        }
    }
}

/// Every clustering of `p`, each exactly once up to permutations of equal parts.
pub fn enumerate_clusterings(p: &Partition) -> Clusterings {
    Clusterings::new(p)
}

/// gcd test on a clustering of a partition of `n`.
///
/// With `g` the gcd of the cluster sums `l_i`, returns `g` and the multipliers
/// `k_i = l_i / g` when `1 < g < n` and every part of cluster `i` is divisible
/// by `k_i`. Such a clustering certifies an i-partition of type `(n / g, g)`.
pub fn clustering_gcd_test(c: &Clustering, n: usize) -> Option<(usize, Vec<usize>)> {
    let g = c.sums_gcd();
    if g <= 1 || g >= n {
        return None;
    }
    c.multipliers_for_block_size(g).map(|ks| (g, ks))
}
