use std::collections::HashMap;

use super::{check_degree, ConstructionError};
use crate::arith::binomial;
use crate::group::PermutationGroup;
use crate::perm::Permutation;

pub fn symmetric_group(n: usize) -> PermutationGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).expect("cycle"));
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).expect("transposition"));
        }
    }
    PermutationGroup::new(n, gens).expect("degrees agree")
}

/// Generated by the 3-cycles `(0, 1, i)`.
pub fn alternating_group(n: usize) -> PermutationGroup {
    let gens = (2..n)
        .map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]).expect("3-cycle"))
        .collect();
    PermutationGroup::new(n, gens).expect("degrees agree")
}

/// Generated by `(0, 1, …, n-1)`.
pub fn cyclic_group(n: usize) -> PermutationGroup {
    let gens = if n >= 2 {
        vec![Permutation::from_cycles(n, &[(0..n).collect()]).expect("cycle")]
    } else {
        Vec::new()
    };
    PermutationGroup::new(n, gens).expect("degrees agree")
}

/// The induced action on k-subsets.
#[derive(Clone, Debug)]
pub struct SubsetAction {
    pub group: PermutationGroup,
    /// Point `i` is `subsets[i]`; lexicographic order.
    pub subsets: Vec<Vec<usize>>,
    /// The induced group has the order of the original.
    pub faithful: bool,
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for x in start..=n - (k - current.len()) {
            current.push(x);
            rec(x + 1, n, k, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut current, &mut out);
    }
    out
}

pub fn action_on_k_subsets(
    g: &PermutationGroup,
    k: usize,
) -> Result<SubsetAction, ConstructionError> {
    let n = g.degree();
    if k > n {
        return Err(ConstructionError::Shape(format!(
            "{k}-subsets of {n} points"
        )));
    }
    check_degree(binomial(n, k))?;
    let subsets = k_subsets(n, k);
    let index: HashMap<&[usize], usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let gens = g
        .generators()
        .iter()
        .map(|s| {
            let images = subsets
                .iter()
                .map(|set| {
                    let mut image: Vec<usize> = set.iter().map(|&x| s.image(x)).collect();
                    image.sort_unstable();
                    index[image.as_slice()]
                })
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let group = PermutationGroup::new(subsets.len(), gens)?;
    let faithful = group.order() == g.order();
    Ok(SubsetAction {
        group,
        subsets,
        faithful,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_orders() {
        assert_eq!(symmetric_group(1).order(), 1);
        assert_eq!(symmetric_group(2).order(), 2);
        assert_eq!(symmetric_group(6).order(), 720);
        assert_eq!(alternating_group(3).order(), 3);
        assert_eq!(alternating_group(6).order(), 360);
        assert_eq!(cyclic_group(7).order(), 7);
        assert_eq!(cyclic_group(1).order(), 1);
    }

    #[test]
    fn a6_on_pairs() {
        let a = action_on_k_subsets(&alternating_group(6), 2).unwrap();
        assert_eq!(a.group.degree(), 15);
        assert_eq!(a.group.order(), 360);
        assert!(a.faithful);
        assert_eq!(a.subsets[0], vec![0, 1]);
        assert_eq!(a.subsets[14], vec![4, 5]);
    }

    #[test]
    fn s4_on_pairs_and_everything() {
        let a = action_on_k_subsets(&symmetric_group(4), 2).unwrap();
        assert_eq!(a.group.degree(), 6);
        assert!(a.faithful);
        let all = action_on_k_subsets(&symmetric_group(4), 4).unwrap();
        assert_eq!(all.group.degree(), 1);
        assert_eq!(all.group.order(), 1);
        assert!(!all.faithful);
    }
}
