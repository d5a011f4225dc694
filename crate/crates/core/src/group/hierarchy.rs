use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::blocks::is_primitive_set;
use super::{ClassData, GroupError, PermutationGroup};
use crate::perm::Permutation;
use crate::Budgets;

/// True iff no member of `set` lies in the subgroup generated by the others.
pub fn is_independent_set(
    group: &PermutationGroup,
    set: &[Permutation],
) -> Result<bool, GroupError> {
    if let Some(g) = set.iter().find(|g| !group.contains(g)) {
        return Err(GroupError::NotAMember(g.to_string()));
    }
    independent(group.degree(), set)
}

fn independent(degree: usize, set: &[Permutation]) -> Result<bool, GroupError> {
    for i in 0..set.len() {
        let others: Vec<Permutation> = set
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        if PermutationGroup::new(degree, others)?.contains(&set[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cycle_notation<S: Serializer>(w: &Option<Vec<Permutation>>, s: S) -> Result<S::Ok, S::Error> {
    w.as_ref()
        .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>())
        .serialize(s)
}

/// Outcome of one existence search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    /// `None` when the budget ran out before a decision.
    pub holds: Option<bool>,
    /// Whether the verdict is final (witness found or search completed).
    pub exhaustive: bool,
    pub subsets_examined: u64,
    #[serde(serialize_with = "cycle_notation")]
    pub witness: Option<Vec<Permutation>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub k: usize,
    /// Some k-subset is a primitive set.
    pub ep: Decision,
    /// Every independent k-subset is a primitive set. A witness is an
    /// independent k-subset that is not.
    pub ap: Decision,
}

impl LevelReport {
    /// No k-subset is a primitive set.
    pub fn np(&self) -> Option<bool> {
        self.ep.holds.map(|h| !h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    pub degree: usize,
    pub order: u128,
    pub classes: usize,
    pub levels: Vec<LevelReport>,
    /// Largest k with NP k established.
    pub np_max: Option<usize>,
    /// Smallest k with EP k established.
    pub ep_min: Option<usize>,
    /// Smallest k with AP k established.
    pub ap_min: Option<usize>,
    /// k with EP k and NP (k-1) both established.
    pub nep: Option<usize>,
}

/// Decides EP k and AP k for k = 1..=k_max.
///
/// Conjugating a set by a group element preserves primitivity and
/// independence, so every k-subset is conjugate to one whose first element
/// (in the order by class, then enumeration index) is a class representative
/// and whose later elements come after it in that order. Only those subsets
/// are examined. Subsets containing the identity are skipped: adding the
/// identity changes neither property, and independence excludes it.
pub fn classify_hierarchy(
    group: &PermutationGroup,
    k_max: usize,
    budgets: &Budgets,
) -> Result<HierarchyReport, GroupError> {
    let data = group.class_data(budgets.elements)?;
    let order = data.elements.len();
    let mut sorted: Vec<usize> = (0..order).collect();
    sorted.sort_by_key(|&i| (data.class_of[i], i));
    let ctx = Context {
        degree: group.degree(),
        data: &data,
        sorted,
        budgets,
    };

    let mut levels: Vec<LevelReport> = Vec::new();
    for k in 1..=k_max {
        let previous_ep = levels.last().and_then(|l| l.ep.holds);
        let ep = if previous_ep == Some(true) && k <= order.saturating_sub(1) {
            // A primitive (k-1)-set stays primitive with any further element.
            let mut w = levels.last().unwrap().ep.witness.clone().unwrap();
            let extra = data
                .elements
                .iter()
                .find(|g| !g.is_identity() && !w.contains(g))
                .cloned()
                .expect("group has more than k elements");
            w.push(extra);
            Decision {
                holds: Some(true),
                exhaustive: true,
                subsets_examined: 0,
                witness: Some(w),
            }
        } else {
            ctx.search(k, |set| is_primitive_set(ctx.degree, set, budgets.nodes))?
        };
        let ap = {
            let d = ctx.search(k, |set| {
                Ok(!is_primitive_set(ctx.degree, set, budgets.nodes)?
                    && independent(ctx.degree, set)?)
            })?;
            // The search looks for a counterexample.
            Decision {
                holds: d.holds.map(|found| !found),
                ..d
            }
        };
        levels.push(LevelReport { k, ep, ap });
    }

    let np_max = levels
        .iter()
        .filter(|l| l.np() == Some(true))
        .map(|l| l.k)
        .max();
    let ep_min = levels
        .iter()
        .find(|l| l.ep.holds == Some(true))
        .map(|l| l.k);
    let ap_min = levels
        .iter()
        .find(|l| l.ap.holds == Some(true))
        .map(|l| l.k);
    let nep = ep_min.filter(|&k| k == 1 || levels[k - 2].np() == Some(true));
    Ok(HierarchyReport {
        degree: group.degree(),
        order: group.order(),
        classes: data.classes.len(),
        levels,
        np_max,
        ep_min,
        ap_min,
        nep,
    })
}

struct Context<'a> {
    degree: usize,
    data: &'a ClassData,
    /// Element indices ordered by (class, index).
    sorted: Vec<usize>,
    budgets: &'a Budgets,
}

const BATCH: usize = 2048;

impl Context<'_> {
    /// First reduced k-subset satisfying `pred`, in a fixed order. Batches are
    /// evaluated in parallel and scanned in order, so the witness does not
    /// depend on scheduling.
    fn search<F>(&self, k: usize, pred: F) -> Result<Decision, GroupError>
    where
        F: Fn(&[Permutation]) -> Result<bool, GroupError> + Sync,
    {
        let budget = self.budgets.subsets;
        let mut examined = 0u64;
        let mut subsets = ReducedSubsets::new(self, k);
        loop {
            let room = (budget - examined).min(BATCH as u64) as usize;
            let batch: Vec<Vec<usize>> = subsets.by_ref().take(room).collect();
            if batch.is_empty() {
                let exhausted = subsets.next().is_none();
                return Ok(Decision {
                    holds: exhausted.then_some(false),
                    exhaustive: exhausted,
                    subsets_examined: examined,
                    witness: None,
                });
            }
            let results: Vec<Result<bool, GroupError>> = batch
                .par_iter()
                .map(|positions| pred(&self.members(positions)))
                .collect();
            for (positions, r) in batch.iter().zip(results) {
                examined += 1;
                if r? {
                    return Ok(Decision {
                        holds: Some(true),
                        exhaustive: true,
                        subsets_examined: examined,
                        witness: Some(self.members(positions)),
                    });
                }
            }
        }
    }

    fn members(&self, positions: &[usize]) -> Vec<Permutation> {
        positions
            .iter()
            .map(|&p| self.data.elements[self.sorted[p]].clone())
            .collect()
    }
}

/// k-subsets of positions in the sorted list: a class representative first,
/// then k-1 strictly increasing later positions; the identity never occurs.
struct ReducedSubsets {
    reps: Vec<usize>,
    next_rep: usize,
    len: usize,
    k: usize,
    current: Option<Vec<usize>>,
}

impl ReducedSubsets {
    fn new(ctx: &Context<'_>, k: usize) -> Self {
        let identity_class = ctx.data.class_of[0];
        let mut reps = Vec::new();
        for (pos, &i) in ctx.sorted.iter().enumerate() {
            let c = ctx.data.class_of[i];
            if c != identity_class && ctx.data.classes[c].rep_index == i {
                reps.push(pos);
            }
        }
        ReducedSubsets {
            reps,
            next_rep: 0,
            len: ctx.sorted.len(),
            k,
            current: None,
        }
    }

    fn start_next_rep(&mut self) -> Option<Vec<usize>> {
        while self.next_rep < self.reps.len() {
            let p = self.reps[self.next_rep];
            self.next_rep += 1;
            if p + self.k <= self.len {
                return Some((0..self.k).map(|i| p + i).collect());
            }
        }
        None
    }
}

impl Iterator for ReducedSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let next = match self.current.take() {
            None => self.start_next_rep(),
            Some(mut c) => {
                // Advance positions 1..k like a combination counter.
                let k = self.k;
                let mut i = k;
                let mut advanced = false;
                while i > 1 {
                    i -= 1;
                    if c[i] < self.len - (k - i) {
                        c[i] += 1;
                        for j in i + 1..k {
                            c[j] = c[j - 1] + 1;
                        }
                        advanced = true;
                        break;
                    }
                }
                if advanced {
                    Some(c)
                } else {
                    self.start_next_rep()
                }
            }
        };
        self.current = next.clone();
        next
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::group;
    use crate::perm::parse_perm;

    #[test]
    fn independence() {
        let s4 = group(4, &["(1,2,3,4)", "(1,2)"]);
        let g = parse_perm("(1,2,3)", 4).unwrap();
        assert!(is_independent_set(&s4, std::slice::from_ref(&g)).unwrap());
        assert!(!is_independent_set(&s4, &[g.clone(), g.pow(2)]).unwrap());
        assert!(!is_independent_set(&s4, &[Permutation::identity(4)]).unwrap());
        let h = parse_perm("(1,2)", 4).unwrap();
        assert!(is_independent_set(&s4, &[g, h]).unwrap());
        let a4 = group(4, &["(1,2,3)", "(2,3,4)"]);
        assert!(matches!(
            is_independent_set(&a4, &[parse_perm("(1,2)", 4).unwrap()]),
            Err(GroupError::NotAMember(_))
        ));
    }

    #[test]
    fn prime_degree_is_ap1() {
        let d5 = group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]);
        let r = classify_hierarchy(&d5, 1, &Budgets::default()).unwrap();
        assert_eq!(r.levels[0].ap.holds, Some(true));
        assert_eq!(r.ap_min, Some(1));
        assert_eq!(r.nep, Some(1));
    }

    #[test]
    fn cyclic_of_composite_degree() {
        // Every subset of C6 preserves the blocks of the 6-cycle.
        let c6 = group(6, &["(1,2,3,4,5,6)"]);
        let r = classify_hierarchy(&c6, 2, &Budgets::default()).unwrap();
        assert_eq!(r.np_max, Some(2));
        assert_eq!(r.ep_min, None);
        assert_eq!(r.levels[0].ap.holds, Some(false));
    }

    #[test]
    fn subset_reduction_counts() {
        // S3 has two non-identity classes.
        let s3 = group(3, &["(1,2)", "(1,2,3)"]);
        let data = s3.class_data(100).unwrap();
        let mut sorted: Vec<usize> = (0..6).collect();
        sorted.sort_by_key(|&i| (data.class_of[i], i));
        let budgets = Budgets::default();
        let ctx = Context {
            degree: 3,
            data: &data,
            sorted,
            budgets: &budgets,
        };
        let singles: Vec<_> = ReducedSubsets::new(&ctx, 1).collect();
        assert_eq!(singles.len(), 2);
        let pairs: Vec<_> = ReducedSubsets::new(&ctx, 2).collect();
        // each non-identity rep paired with every later position
        let expected: usize = ReducedSubsets::new(&ctx, 1).map(|s| 5 - s[0]).sum();
        assert_eq!(pairs.len(), expected);
        assert!(pairs.iter().all(|p| p[0] < p[1]));
    }

    #[test]
    fn budget_truncation_is_flagged() {
        let c6 = group(6, &["(1,2,3,4,5,6)"]);
        let budgets = Budgets {
            subsets: 3,
            ..Budgets::default()
        };
        let r = classify_hierarchy(&c6, 2, &budgets).unwrap();
        let ep2 = &r.levels[1].ep;
        assert_eq!(ep2.holds, None);
        assert!(!ep2.exhaustive);
        assert_eq!(ep2.subsets_examined, 3);
    }
}
