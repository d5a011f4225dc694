//! Reference implementations used as oracles. They follow the definitions
//! directly and share no code with the library's search.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

/// Every partition of `n`, parts non-increasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            current.push(part);
            rec(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every multiset of exactly `len` values from `1..=max`, non-increasing.
pub fn bounded_multisets(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in (1..=max).rev() {
            current.push(v);
            rec(len, v, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max, &mut Vec::new(), &mut out);
    out
}

/// A clustering as sorted clusters of non-increasing parts.
pub type Canonical = Vec<Vec<usize>>;

pub fn canonical(clusters: Vec<Vec<usize>>) -> Canonical {
    let mut clusters: Vec<Vec<usize>> = clusters
        .into_iter()
        .map(|mut c| {
            c.sort_unstable_by(|a, b| b.cmp(a));
            c
        })
        .collect();
    clusters.sort();
    clusters
}

/// Every set partition of the part positions, as restricted growth strings,
/// without any symmetry reduction.
pub fn raw_clusterings(parts: &[usize]) -> Vec<Canonical> {
    let l = parts.len();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; l];
    fn rec(i: usize, max: usize, parts: &[usize], rgs: &mut Vec<usize>, out: &mut Vec<Canonical>) {
        if i == parts.len() {
            let blocks = rgs.iter().max().map_or(0, |m| m + 1);
            let mut clusters = vec![Vec::new(); blocks];
            for (j, &b) in rgs.iter().enumerate() {
                clusters[b].push(parts[j]);
            }
            out.push(canonical(clusters));
            return;
        }
        for b in 0..=max {
            rgs[i] = b;
            rec(i + 1, max.max(b + 1), parts, rgs, out);
        }
    }
    if l > 0 {
        rec(1, 1, parts, &mut rgs, &mut out);
    }
    out
}

/// A cluster is an ic-partition of type `(sum / m, m)`: `m` divides its sum
/// and the quotient divides every part.
fn is_ic(cluster: &[usize], m: usize) -> bool {
    let sum: usize = cluster.iter().sum();
    sum.is_multiple_of(m) && cluster.iter().all(|&x| x % (sum / m) == 0)
}

/// i-type by brute force over raw restricted growth strings.
pub fn itype_by_raw_clusterings(parts: &[usize]) -> BTreeSet<(usize, usize)> {
    let n: usize = parts.iter().sum();
    let candidates: Vec<usize> = (2..n).filter(|m| n.is_multiple_of(*m)).collect();
    let mut out = BTreeSet::new();
    for c in raw_clusterings(parts) {
        for &m in &candidates {
            if c.iter().all(|cluster| is_ic(cluster, m)) {
                out.insert((n / m, m));
            }
        }
    }
    out
}

/// i-type by a dynamic program over sub-multisets: a multiset is coverable by
/// ic-clusters with block size `m` iff some cluster containing its first
/// remaining value is ic and the rest is coverable.
pub fn itype_by_definition(parts: &[usize]) -> BTreeSet<(usize, usize)> {
    let n: usize = parts.iter().sum();
    let mut values: Vec<usize> = parts.to_vec();
    values.sort_unstable();
    values.dedup();
    let counts: Vec<usize> = values
        .iter()
        .map(|v| parts.iter().filter(|&p| p == v).count())
        .collect();
    let mut out = BTreeSet::new();
    for m in (2..n).filter(|m| n.is_multiple_of(*m)) {
        let mut memo = HashMap::new();
        if coverable(&values, counts.clone(), m, &mut memo) {
            out.insert((n / m, m));
        }
    }
    out
}

fn coverable(
    values: &[usize],
    counts: Vec<usize>,
    m: usize,
    memo: &mut HashMap<Vec<usize>, bool>,
) -> bool {
    let Some(first) = counts.iter().position(|&c| c > 0) else {
        return true;
    };
    if let Some(&v) = memo.get(&counts) {
        return v;
    }
    // choose a sub-multiset containing one copy of values[first]
    let mut pick = vec![0usize; counts.len()];
    pick[first] = 1;
    let mut result = false;
    loop {
        let cluster: Vec<usize> = pick
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(values[i], c))
            .collect();
        if is_ic(&cluster, m) {
            let rest: Vec<usize> = counts.iter().zip(&pick).map(|(c, p)| c - p).collect();
            if coverable(values, rest, m, memo) {
                result = true;
                break;
            }
        }
        // next pick vector, odometer style with pick[first] >= 1
        let mut i = 0;
        loop {
            if i == counts.len() {
                memo.insert(counts, result);
                return result;
            }
            let low = usize::from(i == first);
            if pick[i] < counts[i] {
                pick[i] += 1;
                break;
            }
            pick[i] = low;
            i += 1;
        }
    }
    memo.insert(counts, result);
    result
}
