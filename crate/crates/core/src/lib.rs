//! Imprimitivity of permutations and permutation groups.
//!
//! [`cycletype`] decides from a cycle type alone whether a permutation lies in
//! an imprimitive group. [`perm`] and [`group`] provide permutations and an
//! exact permutation-group engine (Schreier–Sims, blocks, spectra, the
//! primitive-set hierarchy). [`constructions`] builds wreath products, set
//! actions, affine groups and diagonal actions.

pub mod arith;
pub mod constructions;
pub mod cycletype;
pub mod group;
pub mod perm;

/// Work limits for the exhaustive searches. Exceeding one yields an
/// inconclusive result, never a wrong answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Budgets {
    /// Search nodes: clusterings visited, or partition-search DFS nodes.
    pub nodes: u64,
    /// Group elements enumerated.
    pub elements: u64,
    /// Subsets examined by the hierarchy search.
    pub subsets: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            nodes: 10_000_000,
            elements: 10_000_000,
            subsets: 1_000_000,
        }
    }
}
