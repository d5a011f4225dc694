//! Cycle types as integer partitions, and the test deciding whether a
//! permutation of a given cycle type lies in some imprimitive group.

mod clustering;
mod itype;
mod mpartition;
mod partition;

use thiserror::Error;

pub use clustering::{clustering_gcd_test, enumerate_clusterings, Clustering, Clusterings};
pub use itype::{
    disjoint_itype_certificate, gcd_shortcut, greedy_uniform_clustering, i_type_set,
    i_type_set_with_budget, ic_type_scaling, is_ic_partition, is_imprimitive_cycle_type,
    is_imprimitive_cycle_type_with_budget, CertificateSource, ICTypeWitness, ITypeSet,
    ITypeWitness,
};
pub use mpartition::{is_m_partition, is_special_m_partition};
pub use partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleTypeError {
    #[error("empty partition")]
    EmptyPartition,
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a divisor: {d} does not divide {k}")]
    NotADivisor { d: usize, k: usize },
    #[error(
        "inconclusive: clustering budget of {visited} exhausted with {unresolved:?} unresolved"
    )]
    Inconclusive {
        visited: u64,
        unresolved: Vec<(usize, usize)>,
    },
}
