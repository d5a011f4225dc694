use std::collections::BTreeMap;

use serde::Serialize;

use super::{PermError, Permutation};
use crate::arith::{divisors, mobius};
use crate::cycletype::Partition;

/// Number of cycles of each length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCountVector {
    /// Sum of `length * count`.
    pub degree: usize,
    /// Cycle length to number of cycles; zero counts are omitted.
    pub counts: BTreeMap<usize, usize>,
}

impl CycleCountVector {
    pub fn from_permutation(a: &Permutation) -> Self {
        let mut counts = BTreeMap::new();
        for c in a.all_cycles() {
            *counts.entry(c.len()).or_insert(0) += 1;
        }
        CycleCountVector {
            degree: a.degree(),
            counts,
        }
    }

    pub fn to_partition(&self) -> Option<Partition> {
        let parts: Vec<usize> = self
            .counts
            .iter()
            .flat_map(|(&len, &c)| std::iter::repeat_n(len, c))
            .collect();
        Partition::new(parts).ok()
    }
}

/// `d -> fix(a^d)` for every divisor `d` of the order of `a`.
pub fn fixed_point_profile(a: &Permutation) -> BTreeMap<usize, usize> {
    let order = a.order() as usize;
    divisors(order)
        .into_iter()
        .map(|d| (d, a.pow(d as i64).fixed_points()))
        .collect()
}

/// Recovers the cycle counts from the fixed-point numbers of the powers.
///
/// An `f`-cycle contributes `f` fixed points to `a^d` exactly when `f | d`, so
/// `fix(d) = Σ_{f | d} f c_f` and by Möbius inversion
/// `f c_f = Σ_{e | f} μ(f / e) fix(e)`. The map must contain every divisor of
/// its largest key.
pub fn cycle_counts_from_fixed_points(
    fixed: &BTreeMap<usize, usize>,
) -> Result<CycleCountVector, PermError> {
    let bad = |msg: String| Err(PermError::NotAFixedPointProfile(msg));
    let Some((&top, _)) = fixed.iter().next_back() else {
        return bad("no data".into());
    };
    if fixed.contains_key(&0) {
        return bad("exponent 0".into());
    }
    let divs = divisors(top);
    if let Some(d) = divs.iter().find(|d| !fixed.contains_key(d)) {
        return bad(format!("missing divisor {d} of {top}"));
    }
    if fixed.len() != divs.len() {
        return bad(format!("keys are not the divisors of {top}"));
    }
    let mut counts = BTreeMap::new();
    let mut degree = 0;
    for &f in &divs {
        let weighted: i64 = divisors(f)
            .into_iter()
            .map(|e| mobius(f / e) * fixed[&e] as i64)
            .sum();
        if weighted < 0 || weighted % f as i64 != 0 {
            return bad(format!("{f} c_{f} = {weighted}"));
        }
        let c = (weighted / f as i64) as usize;
        if c > 0 {
            counts.insert(f, c);
            degree += f * c;
        }
    }
    if degree != fixed[&top] {
        return bad(format!(
            "cycles cover {degree} points, fix({top}) = {}",
            fixed[&top]
        ));
    }
    Ok(CycleCountVector { degree, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_perm;

    fn profile(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn six_cycle() {
        let c =
            cycle_counts_from_fixed_points(&profile(&[(1, 0), (2, 0), (3, 0), (6, 6)])).unwrap();
        assert_eq!(c.counts, profile(&[(6, 1)]));
        assert_eq!(c.degree, 6);
    }

    #[test]
    fn identity() {
        let c = cycle_counts_from_fixed_points(&profile(&[(1, 9)])).unwrap();
        assert_eq!(c.counts, profile(&[(1, 9)]));
    }

    #[test]
    fn type_three_two_one() {
        let g = parse_perm("(1,2,3)(4,5)", 6).unwrap();
        let fix = fixed_point_profile(&g);
        assert_eq!(fix, profile(&[(1, 1), (2, 3), (3, 4), (6, 6)]));
        let c = cycle_counts_from_fixed_points(&fix).unwrap();
        assert_eq!(c, CycleCountVector::from_permutation(&g));
        assert_eq!(c.to_partition().unwrap(), g.cycle_type());
    }

    #[test]
    fn unweighted_reading_does_not_invert() {
        // Reading fix(d) as Σ_{f|d} c_f and inverting that instead gives
        // c_f = Σ μ(f/e) fix(e), which is not the cycle count.
        let fix = profile(&[(1, 1), (2, 3), (3, 4), (6, 6)]);
        let unweighted: BTreeMap<usize, i64> = divisors(6)
            .into_iter()
            .map(|f| {
                let v = divisors(f)
                    .into_iter()
                    .map(|e| mobius(f / e) * fix[&e] as i64)
                    .sum();
                (f, v)
            })
            .collect();
        let true_counts: BTreeMap<usize, i64> =
            [(1, 1), (2, 1), (3, 1), (6, 0)].into_iter().collect();
        assert_ne!(unweighted, true_counts);
    }

    #[test]
    fn rejects_inconsistent_data() {
        assert!(cycle_counts_from_fixed_points(&profile(&[(1, 0), (2, 1)])).is_err());
        assert!(cycle_counts_from_fixed_points(&profile(&[(1, 0), (4, 4)])).is_err());
        assert!(cycle_counts_from_fixed_points(&profile(&[(1, 2), (2, 1)])).is_err());
        assert!(cycle_counts_from_fixed_points(&BTreeMap::new()).is_err());
    }
}
