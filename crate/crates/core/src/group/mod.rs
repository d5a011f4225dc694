//! Finite permutation groups: order and membership through a stabilizer
//! chain, orbits, block systems, conjugacy classes, spectra and the
//! primitive-set hierarchy.

mod blocks;
mod chain;
mod classes;
mod file;
mod hierarchy;

use std::sync::OnceLock;

use thiserror::Error;

use crate::cycletype::CycleTypeError;
use crate::perm::{PermError, Permutation};
use chain::StabChain;

pub use blocks::{
    invariant_uniform_partition_search, is_primitive_group, is_primitive_set,
    minimal_block_closure, BlockSystem,
};
pub use chain::Elements;
pub use classes::{has_primitive_element, ClassData, ConjugacyClass, Spectrum};
pub use file::{format_group_file, parse_group_file};
pub use hierarchy::{
    classify_hierarchy, is_independent_set, Decision, HierarchyReport, LevelReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generators have degrees {left} and {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("group too large for enumeration: order {order} exceeds budget {budget}")]
    TooLarge { order: u128, budget: u64 },
    #[error("group is not transitive; use invariant_uniform_partition_search")]
    NotTransitive,
    #[error("element {0} is not in the group")]
    NotAMember(String),
    #[error("block size {m} is not a proper divisor of degree {n}")]
    InvalidBlockSize { m: usize, n: usize },
    #[error("inconclusive: {what} exceeded budget {budget}")]
    Inconclusive { what: String, budget: u64 },
    #[error("seed points must be two distinct points below the degree")]
    BadSeed,
    #[error("group file line {line}: {message}")]
    File { line: usize, message: String },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    CycleType(#[from] CycleTypeError),
}

/// A permutation group given by generators. The stabilizer chain is built on
/// first use and cached.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermutationGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl PermutationGroup {
    /// Group generated by `generators` on `degree` points; an empty list gives
    /// the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermutationGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// Group generated by a non-empty list of permutations of equal degree.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self, GroupError> {
        let degree = generators.first().ok_or(GroupError::NoGenerators)?.degree();
        PermutationGroup::new(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    /// Every element exactly once, in a fixed order; refuses groups larger
    /// than `budget`.
    pub fn elements(&self, budget: u64) -> Result<Elements<'_>, GroupError> {
        let order = self.order();
        if order > budget as u128 {
            return Err(GroupError::TooLarge { order, budget });
        }
        Ok(Elements::new(self.chain()))
    }

    /// Position of `g` in the order of [`PermutationGroup::elements`].
    pub fn element_index(&self, g: &Permutation) -> Option<u128> {
        if g.degree() != self.degree {
            return None;
        }
        self.chain().rank(g)
    }

    /// Element at a position of the enumeration order.
    pub fn element_at(&self, index: u128) -> Option<Permutation> {
        (index < self.order()).then(|| self.chain().element(index))
    }

    /// Orbits sorted by smallest point, each sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Subgroup generated by some elements (not checked for membership).
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<PermutationGroup, GroupError> {
        PermutationGroup::new(self.degree, generators)
    }

    /// `h⁻¹ G h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Result<PermutationGroup, GroupError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.conjugate_by(h))
            .collect::<Result<Vec<_>, _>>()?;
        PermutationGroup::new(self.degree, gens)
    }
}

/// Orbits of the group generated by `gens`, sorted by smallest point.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}
