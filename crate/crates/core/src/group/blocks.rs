use serde::Serialize;

use super::{GroupError, PermutationGroup};
use crate::arith::proper_divisors;
use crate::perm::Permutation;

/// A partition of the points, invariant under some group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    /// From a block id per point; ids are renumbered by smallest point.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; labels.len()];
        for (x, l) in labels.iter().enumerate() {
            let id = *remap.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[id].push(x);
            block_of[x] = id;
        }
        BlockSystem { block_of, blocks }
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        let labels: Vec<usize> = (0..uf.parent.len()).map(|x| uf.find(x)).collect();
        BlockSystem::from_labels(&labels)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The common block size, if all blocks have the same size.
    pub fn block_size(&self) -> Option<usize> {
        let m = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == m).then_some(m)
    }

    /// One block, or all singletons.
    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1 || self.blocks.len() == self.block_of.len()
    }

    /// Every generator maps every block onto a block.
    pub fn is_invariant_under(&self, gens: &[Permutation]) -> bool {
        gens.iter().all(|g| {
            g.degree() == self.block_of.len()
                && self.blocks.iter().all(|b| {
                    let target = self.block_of[g.image(b[0])];
                    b.iter().all(|&x| self.block_of[g.image(x)] == target)
                })
        })
    }
}

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; returns the new class size, or `None` if already one class.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        Some(self.size[big])
    }

    /// Merges `a` and `b` and then closes the partition under `gens`, which
    /// must already leave the partition invariant. Returns `false` as soon as
    /// a class grows beyond `max_size`.
    fn merge_closed(&mut self, gens: &[Permutation], a: usize, b: usize, max_size: usize) -> bool {
        let mut queue = Vec::new();
        match self.union(a, b) {
            None => return true,
            Some(s) if s > max_size => return false,
            Some(_) => queue.push((a, b)),
        }
        while let Some((x, y)) = queue.pop() {
            for g in gens {
                let (gx, gy) = (g.image(x), g.image(y));
                match self.union(gx, gy) {
                    None => {}
                    Some(s) if s > max_size => return false,
                    Some(_) => queue.push((gx, gy)),
                }
            }
        }
        true
    }
}

/// Finest invariant partition in which `a` and `b` share a block.
///
/// For a transitive group this is a block system, and the group is primitive
/// iff it is the single block for every `b` with `a` fixed.
pub fn minimal_block_closure(
    group: &PermutationGroup,
    a: usize,
    b: usize,
) -> Result<BlockSystem, GroupError> {
    let n = group.degree();
    if a == b || a >= n || b >= n {
        return Err(GroupError::BadSeed);
    }
    if !group.is_transitive() {
        return Err(GroupError::NotTransitive);
    }
    let mut uf = UnionFind::new(n);
    uf.merge_closed(group.generators(), a, b, n);
    Ok(BlockSystem::from_union_find(&mut uf))
}

/// Transitive with no block system other than the trivial ones.
pub fn is_primitive_group(group: &PermutationGroup) -> bool {
    let n = group.degree();
    if !group.is_transitive() {
        return false;
    }
    (1..n).all(|b| {
        let mut uf = UnionFind::new(n);
        uf.merge_closed(group.generators(), 0, b, n);
        let r = uf.find(0);
        uf.size[r] == n
    })
}

/// Searches for a partition of the points into blocks of size `m` that every
/// element of `gens` preserves.
///
/// Depth-first over invariant partitions: start from singletons, take the
/// smallest point whose block is still smaller than `m`, merge its block with
/// a candidate block (smallest first) and close under `gens`. Blocks tried and
/// rejected for a point are forbidden from joining it in later branches;
/// branches where a block exceeds `m`, or where the allowed blocks cannot fill
/// the current one to exactly `m`, are cut. Exact; each merge-and-close counts
/// as one node of `budget`.
pub fn invariant_uniform_partition_search(
    degree: usize,
    gens: &[Permutation],
    m: usize,
    budget: u64,
) -> Result<Option<BlockSystem>, GroupError> {
    if m <= 1 || m >= degree || !degree.is_multiple_of(m) {
        return Err(GroupError::InvalidBlockSize { m, n: degree });
    }
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(GroupError::DegreeMismatch {
            left: degree,
            right: g.degree(),
        });
    }
    let mut search = UniformSearch {
        gens,
        m,
        nodes: 0,
        budget,
    };
    let mut forbidden = Vec::new();
    let mut uf = UnionFind::new(degree);
    Ok(search
        .dfs(&mut uf, &mut forbidden)?
        .map(|mut uf| BlockSystem::from_union_find(&mut uf)))
}

struct UniformSearch<'a> {
    gens: &'a [Permutation],
    m: usize,
    nodes: u64,
    budget: u64,
}

impl UniformSearch<'_> {
    fn dfs(
        &mut self,
        uf: &mut UnionFind,
        forbidden: &mut Vec<(usize, usize)>,
    ) -> Result<Option<UnionFind>, GroupError> {
        let n = uf.parent.len();
        let Some(x) = (0..n).find(|&p| {
            let r = uf.find(p);
            uf.size[r] < self.m
        }) else {
            return Ok(Some(uf.clone()));
        };
        let rx = uf.find(x);
        let room = self.m - uf.size[rx];
        let blocked: Vec<usize> = forbidden
            .iter()
            .filter_map(|&(u, v)| {
                let (ru, rv) = (uf.find(u), uf.find(v));
                if ru == rx {
                    Some(rv)
                } else if rv == rx {
                    Some(ru)
                } else {
                    None
                }
            })
            .collect();
        // One candidate per block, named by its smallest point.
        let mut candidates = Vec::new();
        let mut seen_roots = vec![false; n];
        seen_roots[rx] = true;
        for p in 0..n {
            let r = uf.find(p);
            if !seen_roots[r] {
                seen_roots[r] = true;
                if uf.size[r] <= room && !blocked.contains(&r) {
                    candidates.push((p, uf.size[r]));
                }
            }
        }
        if !subset_sum_reachable(candidates.iter().map(|c| c.1), room) {
            return Ok(None);
        }
        let depth = forbidden.len();
        for &(c, _) in &candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(GroupError::Inconclusive {
                    what: "uniform partition search nodes".into(),
                    budget: self.budget,
                });
            }
            let mut next = uf.clone();
            if next.merge_closed(self.gens, x, c, self.m)
                && forbidden.iter().all(|&(u, v)| next.find(u) != next.find(v))
            {
                if let Some(found) = self.dfs(&mut next, forbidden)? {
                    forbidden.truncate(depth);
                    return Ok(Some(found));
                }
            }
            forbidden.push((x, c));
        }
        forbidden.truncate(depth);
        Ok(None)
    }
}

fn subset_sum_reachable(sizes: impl Iterator<Item = usize>, target: usize) -> bool {
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for s in sizes {
        for t in (s..=target).rev() {
            if reach[t - s] {
                reach[t] = true;
            }
        }
        if reach[target] {
            return true;
        }
    }
    reach[target]
}

/// No partition into blocks of any size `1 < m < n` is preserved by all of
/// `elements`, i.e. they lie in no maximal imprimitive subgroup of `S_n`.
pub fn is_primitive_set(
    degree: usize,
    elements: &[Permutation],
    node_budget: u64,
) -> Result<bool, GroupError> {
    for m in proper_divisors(degree) {
        if invariant_uniform_partition_search(degree, elements, m, node_budget)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
