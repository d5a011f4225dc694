use std::collections::{BTreeMap, BTreeSet};

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::clustering::Clusterings;
use super::mpartition::ic_split;
use super::{Clustering, CycleTypeError, Partition};
use crate::arith::{divisors, gcd, proper_divisors};
use crate::Budgets;

/// `p` written as `k` times a partition of `m`: the cycle type of an element
/// that permutes `k` blocks of size `m` cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ICTypeWitness {
    pub k: usize,
    pub m: usize,
    /// The parts divided by `k`; they form a partition of `m`.
    pub quotient_parts: Vec<usize>,
}

/// Checks whether `p` is an ic-partition of type `(k, m)`.
pub fn is_ic_partition(p: &Partition, k: usize, m: usize) -> Option<ICTypeWitness> {
    if k == 0 || m == 0 || k.checked_mul(m) != Some(p.n()) {
        return None;
    }
    if p.parts().iter().any(|part| part % k != 0) {
        return None;
    }
    Some(ICTypeWitness {
        k,
        m,
        quotient_parts: p.parts().iter().map(|part| part / k).collect(),
    })
}

/// An ic-partition of type `(k, m)` is also one of type `(k / d, m d)`.
pub fn ic_type_scaling(w: &ICTypeWitness, d: usize) -> Result<ICTypeWitness, CycleTypeError> {
    if d == 0 || !w.k.is_multiple_of(d) {
        return Err(CycleTypeError::NotADivisor { d, k: w.k });
    }
    Ok(ICTypeWitness {
        k: w.k / d,
        m: w.m * d,
        quotient_parts: w.quotient_parts.iter().map(|q| q * d).collect(),
    })
}

/// Greedy split of the parts into clusters that each sum to exactly `m`.
///
/// Each cluster is filled by repeatedly adding the largest remaining part
/// that still fits. A `None` does not mean that no such split exists.
pub fn greedy_uniform_clustering(p: &Partition, m: usize) -> Option<Clustering> {
    if m <= 1 || m >= p.n() || !p.n().is_multiple_of(m) {
        return None;
    }
    // Remaining parts as (value, count), values descending.
    let mut remaining = p.multiplicities();
    let mut left = p.len();
    let mut clusters = Vec::with_capacity(p.n() / m);
    while left > 0 {
        let mut cluster = Vec::new();
        let mut room = m;
        while room > 0 {
            let slot = remaining.iter_mut().find(|(v, c)| *c > 0 && *v <= room)?;
            slot.1 -= 1;
            room -= slot.0;
            cluster.push(slot.0);
            left -= 1;
        }
        clusters.push(Partition::from_sorted_unchecked(cluster));
    }
    Clustering::new(clusters).ok()
}

/// How a pair of the i-type was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateSource {
    /// Greedy split into clusters of sum `m`.
    Greedy,
    /// All parts share a divisor; singleton clusters.
    GcdShortcut,
    /// Exact backtracking split into ic-clusters for one block size.
    ExactSplit,
    /// Found by the exhaustive clustering search.
    Search,
    /// Exact split into clusters of sum `m` (m-partitions).
    MPartition,
    /// Largest part alone, the rest split into clusters of sum `m`.
    SpecialMPartition,
}

/// A clustering certifying that a partition is an i-partition of type `(k, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ITypeWitness {
    pub k: usize,
    pub m: usize,
    pub clustering: Clustering,
    /// `k_i` for each cluster, aligned with `clustering.clusters()`.
    pub multipliers: Vec<usize>,
    pub source: CertificateSource,
}

impl ITypeWitness {
    /// Re-checks the certificate against `p`: the clustering is a clustering
    /// of `p`, the `k_i` sum to `k`, cluster `i` sums to `k_i m` and all of its
    /// parts are divisible by `k_i`.
    pub fn verify(&self, p: &Partition) -> bool {
        self.k > 1
            && self.m > 1
            && self.k * self.m == p.n()
            && self.clustering.is_clustering_of(p)
            && self.multipliers.len() == self.clustering.len()
            && self.multipliers.iter().sum::<usize>() == self.k
            && self
                .clustering
                .clusters()
                .iter()
                .zip(&self.multipliers)
                .all(|(c, &ki)| {
                    ki > 0 && c.n() == ki * self.m && c.parts().iter().all(|x| x % ki == 0)
                })
    }
}

/// Witness for a clustering in which every cluster sums to a multiple of `m`
/// with parts divisible by the multiplier.
fn witness_for(
    clustering: Clustering,
    m: usize,
    n: usize,
    source: CertificateSource,
) -> Option<ITypeWitness> {
    let multipliers = clustering.multipliers_for_block_size(m)?;
    Some(ITypeWitness {
        k: n / m,
        m,
        clustering,
        multipliers,
        source,
    })
}

/// The i-type of a partition: every `(k, m)` with `k, m > 1` for which it is an
/// i-partition, one certificate each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ITypeSet {
    n: usize,
    witnesses: BTreeMap<(usize, usize), ITypeWitness>,
    clusterings_visited: u64,
}

impl ITypeSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> BTreeSet<(usize, usize)> {
        self.witnesses.keys().copied().collect()
    }

    pub fn contains(&self, k: usize, m: usize) -> bool {
        self.witnesses.contains_key(&(k, m))
    }

    pub fn witness(&self, k: usize, m: usize) -> Option<&ITypeWitness> {
        self.witnesses.get(&(k, m))
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &ITypeWitness> {
        self.witnesses.values()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    /// Clusterings inspected by the exhaustive search (0 if shortcuts sufficed).
    pub fn clusterings_visited(&self) -> u64 {
        self.clusterings_visited
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ITypeSet serializes")
    }
}

impl Serialize for ITypeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Witnesses<'a>(&'a BTreeMap<(usize, usize), ITypeWitness>);
        struct Entry<'a>(&'a ITypeWitness);

        impl Serialize for Entry<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut st = serializer.serialize_struct("Witness", 3)?;
                st.serialize_field("clusters", &self.0.clustering)?;
                st.serialize_field("k_i", &self.0.multipliers)?;
                st.serialize_field("source", &self.0.source)?;
                st.end()
            }
        }

        impl Serialize for Witnesses<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for ((k, m), w) in self.0 {
                    map.serialize_entry(&format!("{k},{m}"), &Entry(w))?;
                }
                map.end()
            }
        }

        let pairs: Vec<[usize; 2]> = self.witnesses.keys().map(|&(k, m)| [k, m]).collect();
        let mut st = serializer.serialize_struct("ITypeSet", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("itype", &pairs)?;
        st.serialize_field("witnesses", &Witnesses(&self.witnesses))?;
        st.end()
    }
}

/// Certificate from a common divisor of all parts: singleton clusters, type
/// `(n / g0, g0)` where `g0` is the gcd of the parts. `None` unless
/// `1 < g0 < n`.
pub fn gcd_shortcut(p: &Partition) -> Option<ITypeWitness> {
    let g0 = p.parts_gcd();
    if g0 <= 1 || g0 >= p.n() {
        return None;
    }
    singleton_witness(p, g0)
}

fn singleton_witness(p: &Partition, m: usize) -> Option<ITypeWitness> {
    let clusters = p
        .parts()
        .iter()
        .map(|&x| Partition::from_sorted_unchecked(vec![x]))
        .collect();
    witness_for(
        Clustering::new(clusters).ok()?,
        m,
        p.n(),
        CertificateSource::GcdShortcut,
    )
}

/// i-type with the default clustering budget.
pub fn i_type_set(p: &Partition) -> Result<ITypeSet, CycleTypeError> {
    i_type_set_with_budget(p, Budgets::default().nodes)
}

/// i-type, inspecting at most `max_clusterings` clusterings in the exhaustive
/// phase. Running out of budget is reported as [`CycleTypeError::Inconclusive`].
pub fn i_type_set_with_budget(
    p: &Partition,
    max_clusterings: u64,
) -> Result<ITypeSet, CycleTypeError> {
    search(p, max_clusterings, false)
}

/// Whether some permutation (hence every permutation) of this cycle type lies
/// in an imprimitive group, i.e. the i-type is non-empty.
pub fn is_imprimitive_cycle_type(p: &Partition) -> Result<bool, CycleTypeError> {
    is_imprimitive_cycle_type_with_budget(p, Budgets::default().nodes)
}

pub fn is_imprimitive_cycle_type_with_budget(
    p: &Partition,
    max_clusterings: u64,
) -> Result<bool, CycleTypeError> {
    Ok(!search(p, max_clusterings, true)?.is_empty())
}

fn search(
    p: &Partition,
    max_clusterings: u64,
    first_only: bool,
) -> Result<ITypeSet, CycleTypeError> {
    let n = p.n();
    let mut set = ITypeSet {
        n,
        witnesses: BTreeMap::new(),
        clusterings_visited: 0,
    };
    let candidates = proper_divisors(n);
    if candidates.is_empty() {
        return Ok(set);
    }
    let done =
        |set: &ITypeSet| set.witnesses.len() == candidates.len() || (first_only && !set.is_empty());

    for &m in &candidates {
        if let Some(c) = greedy_uniform_clustering(p, m) {
            let w =
                witness_for(c, m, n, CertificateSource::Greedy).expect("greedy clusters sum to m");
            set.witnesses.insert((n / m, m), w);
            if done(&set) {
                return Ok(set);
            }
        }
    }

    let g0 = p.parts_gcd();
    if g0 > 1 {
        for m in divisors(g0) {
            if m > 1 && m < n && !set.witnesses.contains_key(&(n / m, m)) {
                if let Some(w) = singleton_witness(p, m) {
                    set.witnesses.insert((n / m, m), w);
                }
            }
        }
        if done(&set) {
            return Ok(set);
        }
    }

    // Exact split per block size, memoized on the remaining multiset.
    let mult = p.multiplicities();
    let mut pending: Vec<usize> = Vec::new();
    for &m in &candidates {
        if set.witnesses.contains_key(&(n / m, m)) {
            continue;
        }
        match ic_split(&mult, m, max_clusterings) {
            Ok(Some(clusters)) => {
                let c = Clustering::new(clusters.into_iter().map(|(c, _)| c).collect())
                    .expect("non-empty");
                let w = witness_for(c, m, n, CertificateSource::ExactSplit).expect("ic clusters");
                set.witnesses.insert((n / m, m), w);
                if done(&set) {
                    return Ok(set);
                }
            }
            Ok(None) => {}
            Err(()) => pending.push(m),
        }
    }
    if pending.is_empty() {
        return Ok(set);
    }

    // Exhaustive phase for block sizes the split could not settle. A clustering with sums l_i certifies block size m iff
    // m divides every l_i and every part of cluster i is divisible by l_i / m.
    let mut stream = Clusterings::new(p);
    let mut sums = Vec::new();
    while stream.advance() {
        if stream.visited() > max_clusterings {
            return Err(CycleTypeError::Inconclusive {
                visited: max_clusterings,
                unresolved: pending.iter().map(|&m| (n / m, m)).collect(),
            });
        }
        sums.clear();
        let mut g = 0;
        for i in 0..stream.current_len() {
            let s = stream.current_sum(i);
            g = gcd(g, s);
            sums.push(s);
        }
        if g <= 1 {
            continue;
        }
        let mut found = Vec::new();
        for &m in pending.iter().filter(|&&m| g % m == 0) {
            let ok = sums.iter().enumerate().all(|(i, &s)| {
                let k = s / m;
                stream.current_cluster(i).all(|(v, _)| v % k == 0)
            });
            if ok {
                found.push(m);
            }
        }
        if found.is_empty() {
            continue;
        }
        let clustering = stream.current();
        for m in found {
            let w = witness_for(clustering.clone(), m, n, CertificateSource::Search)
                .expect("checked above");
            set.witnesses.insert((n / m, m), w);
        }
        pending.retain(|&m| !set.witnesses.contains_key(&(n / m, m)));
        if pending.is_empty() || done(&set) {
            break;
        }
    }
    set.clusterings_visited = stream.visited();
    Ok(set)
}

/// True when no pair `(k, m)` is common to all the given i-types.
///
/// If a transitive group contains elements whose i-types have empty
/// intersection, no block system is preserved by all of them, so the group is
/// primitive. An empty list gives `false`.
pub fn disjoint_itype_certificate(types: &[BTreeSet<(usize, usize)>]) -> bool {
    let Some((first, rest)) = types.split_first() else {
        return false;
    };
    let mut common = first.clone();
    for t in rest {
        common.retain(|pair| t.contains(pair));
    }
    common.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn pairs(v: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        v.iter().copied().collect()
    }

    #[test]
    fn ic_partition_examples() {
        let p = part(&[30, 24, 12]);
        let w = is_ic_partition(&p, 2, 33).unwrap();
        assert_eq!(w.quotient_parts, vec![15, 12, 6]);
        let w = is_ic_partition(&p, 6, 11).unwrap();
        assert_eq!(w.quotient_parts, vec![5, 4, 2]);
        // every part is a multiple of 3
        assert!(is_ic_partition(&p, 3, 22).is_some());
        assert!(is_ic_partition(&p, 11, 6).is_none());
        // k * m must equal n
        assert!(is_ic_partition(&p, 4, 16).is_none());
        assert!(is_ic_partition(&part(&[9]), 1, 9).is_some());
    }

    #[test]
    fn scaling_examples() {
        let p = part(&[30, 24, 12]);
        let w6 = is_ic_partition(&p, 6, 11).unwrap();
        let w2 = ic_type_scaling(&w6, 3).unwrap();
        assert_eq!(w2, is_ic_partition(&p, 2, 33).unwrap());
        assert_eq!(ic_type_scaling(&w6, 1).unwrap(), w6);
        assert_eq!(
            ic_type_scaling(&w6, 4),
            Err(CycleTypeError::NotADivisor { d: 4, k: 6 })
        );

        let tens = part(&[10; 6]);
        let w = is_ic_partition(&tens, 10, 6).unwrap();
        let scaled = ic_type_scaling(&w, 2).unwrap();
        assert_eq!((scaled.k, scaled.m), (5, 12));
        assert_eq!(scaled, is_ic_partition(&tens, 5, 12).unwrap());
    }

    #[test]
    fn greedy_examples() {
        let c = greedy_uniform_clustering(&part(&[1, 1, 1, 1, 2, 2]), 2).unwrap();
        assert_eq!(
            c,
            Clustering::from_parts(vec![vec![2], vec![2], vec![1, 1], vec![1, 1]]).unwrap()
        );
        let c = greedy_uniform_clustering(&part(&[2, 3, 5]), 5).unwrap();
        assert_eq!(
            c,
            Clustering::from_parts(vec![vec![5], vec![3, 2]]).unwrap()
        );
        let c = greedy_uniform_clustering(&part(&[3, 3, 2, 2, 2]), 6).unwrap();
        assert_eq!(
            c,
            Clustering::from_parts(vec![vec![3, 3], vec![2, 2, 2]]).unwrap()
        );
    }

    #[test]
    fn greedy_is_incomplete() {
        // Greedy opens with 5 + 4 and is stuck; 5 + 3 + 2 and 4 + 3 + 3 works.
        let p = part(&[5, 4, 3, 3, 3, 2]);
        assert!(greedy_uniform_clustering(&p, 10).is_none());
        assert!(i_type_set(&p).unwrap().contains(2, 10));
    }

    #[test]
    fn greedy_rejects_bad_block_size() {
        let p = part(&[2, 3, 5]);
        assert!(greedy_uniform_clustering(&p, 3).is_none());
        assert!(greedy_uniform_clustering(&p, 10).is_none());
        assert!(greedy_uniform_clustering(&p, 1).is_none());
    }

    #[test]
    fn eight_eight() {
        // Alternate the points of each 8-cycle between two blocks: 4 blocks of
        // size 4 preserved by the element, so (4,4) belongs here too.
        let t = i_type_set(&part(&[8, 8])).unwrap();
        assert_eq!(t.pairs(), pairs(&[(2, 8), (4, 4), (8, 2)]));
    }

    #[test]
    fn threes_and_a_fixed_point() {
        let t = i_type_set(&part(&[3, 3, 3, 3, 3, 1])).unwrap();
        assert_eq!(t.pairs(), pairs(&[(4, 4)]));
        assert!(t.witnesses().all(|w| w.verify(&part(&[3, 3, 3, 3, 3, 1]))));
    }

    #[test]
    fn prime_degree_is_empty() {
        for p in [2, 3, 5, 7, 11, 13, 97] {
            assert!(i_type_set(&part(&[p])).unwrap().is_empty());
            assert!(i_type_set(&part(&[p - 1, 1])).unwrap().is_empty());
        }
    }

    #[test]
    fn worked_example_has_eleven_six() {
        let p = part(&[1, 5, 10, 10, 10, 10, 10, 10]);
        let t = i_type_set(&p).unwrap();
        assert!(t.contains(11, 6));
        let w = t.witness(11, 6).unwrap();
        assert!(w.verify(&p));
        assert!(t.witnesses().all(|w| w.verify(&p)));
    }

    #[test]
    fn single_cycle_of_composite_length() {
        let t = i_type_set(&part(&[12])).unwrap();
        assert_eq!(t.pairs(), pairs(&[(6, 2), (4, 3), (3, 4), (2, 6)]));
        let t = i_type_set(&part(&[4, 2])).unwrap();
        // (4,2) = 2 * (2,1) is ic of type (2,3); singletons give (3,2).
        assert_eq!(t.pairs(), pairs(&[(2, 3), (3, 2)]));
    }

    #[test]
    fn imprimitive_examples() {
        assert!(is_imprimitive_cycle_type(&part(&[6, 12, 12, 12, 12, 12])).unwrap());
        assert!(is_imprimitive_cycle_type(&part(&[1, 5, 10, 10, 10, 10, 10, 10])).unwrap());
        assert!(!is_imprimitive_cycle_type(&part(&[7, 4])).unwrap());
        assert!(!is_imprimitive_cycle_type(&part(&[1])).unwrap());
    }

    #[test]
    fn gcd_shortcut_examples() {
        let w = gcd_shortcut(&part(&[30, 24, 12])).unwrap();
        assert_eq!((w.k, w.m), (11, 6));
        assert_eq!(w.multipliers, vec![5, 4, 2]);
        assert!(w.verify(&part(&[30, 24, 12])));
        let w = gcd_shortcut(&part(&[4, 6])).unwrap();
        assert_eq!((w.k, w.m), (5, 2));
        assert!(gcd_shortcut(&part(&[3, 4])).is_none());
        // a single part: g0 = n
        assert!(gcd_shortcut(&part(&[8])).is_none());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        // greedy fails for m = 10 and the parts are coprime
        let p = part(&[5, 4, 3, 3, 3, 2]);
        let full = i_type_set(&p).unwrap();
        assert_eq!(full.pairs(), BTreeSet::from([(2, 10)]));
        assert_eq!(
            full.witness(2, 10).unwrap().source,
            CertificateSource::ExactSplit
        );
        match i_type_set_with_budget(&p, 1) {
            Err(CycleTypeError::Inconclusive { visited, .. }) => assert_eq!(visited, 1),
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn disjointness() {
        assert!(disjoint_itype_certificate(&[
            pairs(&[(2, 8), (8, 2)]),
            pairs(&[(4, 4)])
        ]));
        assert!(disjoint_itype_certificate(&[pairs(&[]), pairs(&[(2, 8)])]));
        assert!(!disjoint_itype_certificate(&[
            pairs(&[(2, 8)]),
            pairs(&[(2, 8), (4, 4)])
        ]));
        assert!(!disjoint_itype_certificate(&[]));
    }

    #[test]
    fn json_shape() {
        let t = i_type_set(&part(&[3, 3, 3, 3, 3, 1])).unwrap();
        let v = t.to_json();
        assert_eq!(v["n"], 16);
        assert_eq!(v["itype"], serde_json::json!([[4, 4]]));
        let w = &v["witnesses"]["4,4"];
        assert!(w["clusters"].is_array());
        let ks: Vec<usize> = serde_json::from_value(w["k_i"].clone()).unwrap();
        assert_eq!(ks.iter().sum::<usize>(), 4);
    }
}
