use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CycleTypeError;
use crate::arith::{gcd, gcd_all};

/// A partition of `n`: positive parts kept in non-increasing order.
///
/// This is the cycle type of a permutation (fixed points count as parts of
/// size 1). Equality and ordering are on the canonical sorted form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, CycleTypeError> {
        if parts.is_empty() {
            return Err(CycleTypeError::EmptyPartition);
        }
        if parts.contains(&0) {
            return Err(CycleTypeError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// Builds from parts already known to be positive and non-empty.
    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.is_empty() && parts.windows(2).all(|w| w[0] >= w[1]));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    /// gcd of all parts.
    pub fn parts_gcd(&self) -> usize {
        gcd_all(&self.parts)
    }

    /// Cycle type of the `e`-th power of any permutation of this type: an
    /// `l`-cycle splits into `gcd(l, e)` cycles of length `l / gcd(l, e)`.
    pub fn power(&self, e: usize) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len());
        for &l in &self.parts {
            // gcd(l, 0) = l, so the zeroth power is the identity type.
            let g = gcd(l, e);
            parts.extend(std::iter::repeat_n(l / g, g));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted_unchecked(parts)
    }

    /// Distinct part values (descending) with their multiplicities.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = CycleTypeError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `30,24,12`, `[30,24,12]` or `(30,24,12)`; whitespace is ignored.
impl FromStr for Partition {
    type Err = CycleTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = match (compact.chars().next(), compact.chars().last()) {
            (Some('['), Some(']')) | (Some('('), Some(')')) => &compact[1..compact.len() - 1],
            _ => compact.as_str(),
        };
        if inner.is_empty() {
            return Err(CycleTypeError::EmptyPartition);
        }
        let parts = inner
            .split(',')
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| CycleTypeError::Parse(format!("invalid part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}
