//! Example families of permutation groups: wreath products in the imprimitive
//! and product actions, actions on k-subsets, affine groups over prime fields,
//! diagonal actions of `T × T`, and a catalog of named instances.
//!
//! Point numbering is fixed so that printed groups are stable:
//! tuples and vectors are numbered row-major (first coordinate most
//! significant), subsets lexicographically, and group elements in the
//! enumeration order of the stabilizer chain.

mod actions;
mod affine;
mod catalog;
mod diagonal;
mod fp;
mod wreath;

use thiserror::Error;

use crate::group::GroupError;
use crate::perm::PermError;

pub use actions::{
    action_on_k_subsets, alternating_group, cyclic_group, symmetric_group, SubsetAction,
};
pub use affine::{
    affine_element_is_imprimitive, affine_group, agl_wreath_converse_check, point_index,
    point_vector, AffineMap, ConverseReport,
};
pub use catalog::{
    catalog, catalog_names, regenerate_catalog_matrices, search_matrix_subgroup,
    ElementOrderProfile, Regenerated,
};
pub use diagonal::{diagonal_square, DiagonalSquare};
pub use fp::{general_linear_group, matrix_group_elements, FpMatrix, FpPolynomial};
pub use wreath::{
    product_action_base_group, product_action_predicted_primitive, wreath_imprimitive,
    wreath_product_action,
};

/// Largest degree any builder will produce.
pub const DEGREE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix {0} is singular")]
    Singular(String),
    #[error("polynomial degree {0} is outside the supported range 1..=8")]
    UnsupportedDegree(usize),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("permutation is not an affine map of F_{p}^{k}")]
    NotAffine { p: usize, k: usize },
    #[error("affine map {0} is not in AGL(1,p) wr C_q: its linear part is not monomial")]
    NotMonomial(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
    #[error("no matrix subgroup matched the search")]
    NotFound,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn check_degree(degree: Option<usize>) -> Result<usize, ConstructionError> {
    match degree {
        Some(d) if d <= DEGREE_CAP => Ok(d),
        Some(d) => Err(ConstructionError::DegreeCap {
            degree: d,
            cap: DEGREE_CAP,
        }),
        None => Err(ConstructionError::DegreeCap {
            degree: usize::MAX,
            cap: DEGREE_CAP,
        }),
    }
}
