//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmeError {
    #[error("invalid multiset spec: {0}")]
    InvalidSpec(String),

    #[error("invalid colored permutation: {0}")]
    InvalidPermutation(String),

    #[error("unsupported statistic: {0}")]
    UnsupportedStatistic(String),

    #[error("capacity exceeded: required {required}, cap {cap}")]
    CapacityExceeded { required: u128, cap: u128 },

    #[error("degree {deg} exceeds bound {bound}")]
    DegreeError { deg: usize, bound: usize },

    #[error("polynomial is not palindromic with respect to degree {0}")]
    NotPalindromic(usize),

    #[error("input is not an Ehrhart polynomial: {0}")]
    NotEhrhart(String),

    #[error("identity kind incompatible with spec: {0}")]
    InvalidKindSpec(String),

    #[error("barred-permutation mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
