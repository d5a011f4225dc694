//! Permutations of `{0, …, n-1}` in image form.
//!
//! Text I/O is 1-based cycle notation. Products compose left to right:
//! `(a * b)(x) = b(a(x))`, so `a * b` means "first `a`, then `b`".

mod counts;
mod parse;

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::lcm;
use crate::cycletype::{i_type_set, CycleTypeError, Partition};

pub use counts::{cycle_counts_from_fixed_points, fixed_point_profile, CycleCountVector};
pub use parse::parse_perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("images do not form a bijection of 0..{degree}")]
    NotABijection { degree: usize },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("point {point} appears more than once")]
    RepeatedPoint { point: usize },
    #[error("point {point} out of range for degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("not a fixed-point profile: {0}")]
    NotAFixedPointProfile(String),
}

/// A bijection of `{0, …, n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection { degree: n });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Images known to be a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds from disjoint 0-based cycles; unlisted points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::OutOfRange {
                        point: x + 1,
                        degree,
                    });
                }
                if used[x] {
                    return Err(PermError::RepeatedPoint { point: x + 1 });
                }
                used[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self^e`; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Permutation {
        let n = self.degree();
        let mut images = vec![0; n];
        for cycle in self.all_cycles() {
            let len = cycle.len() as i64;
            let shift = e.rem_euclid(len) as usize;
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + shift) % cycle.len()];
            }
        }
        Permutation { images }
    }

    /// lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.all_cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// `h⁻¹ · self · h`: relabels each point `x` as `h(x)`.
    pub fn conjugate_by(&self, h: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != h.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: h.degree(),
            });
        }
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[h.images[x]] = h.images[y];
        }
        Ok(Permutation { images })
    }

    /// All cycles including fixed points, each starting at its smallest point,
    /// ordered by that point.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycles of length at least 2.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    /// Cycle lengths including fixed points. Panics on degree 0.
    pub fn cycle_type(&self) -> Partition {
        let lengths: Vec<usize> = self.all_cycles().iter().map(Vec::len).collect();
        Partition::new(lengths).expect("degree is positive")
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x)
            .count()
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i != x)
            .map(|(i, _)| i)
    }

    /// Smallest moved point.
    pub fn first_moved(&self) -> Option<usize> {
        self.support().next()
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product; panics on degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degrees agree")
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;

    fn try_from(images: Vec<usize>) -> Result<Self, PermError> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// 1-based cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// True iff no imprimitive group contains `a`, i.e. its cycle type has
/// empty i-type.
pub fn is_primitive_permutation(a: &Permutation) -> Result<bool, CycleTypeError> {
    Ok(i_type_set(&a.cycle_type())?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        parse_perm(text, n).unwrap()
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        // 1 -a-> 2 -b-> 3
        assert_eq!((&a * &b).image(0), 2);
        assert_eq!(&a * &b, p("(1,3,2)", 3));
        assert!((&a * &a).is_identity());
    }

    #[test]
    fn order_and_power() {
        let g = p("(1,2,3)(4,5)", 6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.cycle_type(), Partition::new(vec![3, 2, 1]).unwrap());
        assert_eq!(p("(1,2,3,4)", 4).pow(-1), p("(1,4,3,2)", 4));
        assert!(g.pow(6).is_identity());
        assert_eq!(g.pow(2), &g * &g);
        assert_eq!(g.pow(-7), g.inverse());
        assert_eq!(g.pow(0), Permutation::identity(6));
    }

    #[test]
    fn inverse_and_conjugate() {
        let g = p("(1,2,3)(4,5)", 6);
        assert!((&g * &g.inverse()).is_identity());
        let h = p("(1,6)(2,4)", 6);
        let c = g.conjugate_by(&h).unwrap();
        assert_eq!(c, &(&h.inverse() * &g) * &h);
        assert_eq!(c.cycle_type(), g.cycle_type());
    }

    #[test]
    fn degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(
            a.compose(&b),
            Err(PermError::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn display_round_trip() {
        let g = p("(4,5)(1,2,3)", 6);
        assert_eq!(g.to_string(), "(1,2,3)(4,5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(parse_perm(&g.to_string(), 6).unwrap(), g);
    }

    #[test]
    fn from_images_checks_bijection() {
        assert!(Permutation::from_images(vec![1, 0, 2]).is_ok());
        assert!(Permutation::from_images(vec![1, 1, 2]).is_err());
        assert!(Permutation::from_images(vec![3, 0, 1]).is_err());
    }

    #[test]
    fn primitive_permutations() {
        assert!(!is_primitive_permutation(&p("(1,2,3,4,5,6)", 6)).unwrap());
        for n in 3..=12 {
            let cycle: Vec<usize> = (1..n).collect();
            let g = Permutation::from_cycles(n, &[cycle]).unwrap();
            assert!(is_primitive_permutation(&g).unwrap(), "type (1,{})", n - 1);
        }
        let g = p("(1,2)(3,4,5)(6,7,8,9,10,11,12,13,14,15)", 15);
        assert!(!is_primitive_permutation(&g).unwrap());
        assert!(is_primitive_permutation(&p("(1,2)", 2)).unwrap());
    }
}
