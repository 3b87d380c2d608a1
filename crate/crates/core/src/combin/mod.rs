//! Partitions, tableaux, permutations and the index sets of the cellular basis.

mod admissible;
mod partition;
mod perm;
mod tableau;

pub use admissible::{admissibility, forbidden_r_values, forced_r_values, is_admissible};
pub use partition::{nu_ep, partitions, Partition};
pub use perm::{dfn, dfn_count, s_ab, Perm, ReducedWord};
pub use tableau::{std_tableaux, StandardTableau};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinError {
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("node {0:?} is outside {1}")]
    NodeOutside((u32, u32), Partition),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<u8>),
    #[error("letter out of range in {0:?}")]
    LetterOutOfRange(Vec<u8>),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<u8>),
    #[error("|{big}| != |{small}| + 2*{f}")]
    SizeMismatch {
        big: Partition,
        small: Partition,
        f: u32,
    },
    #[error("invalid cell: n={n}, f={f}, lambda={lambda}")]
    InvalidCell { n: u32, f: u32, lambda: Partition },
    #[error("the parameter spec does not decide this question")]
    Undecidable,
}

/// A cell label `(f, λ)` of `B_n`, with `λ ⊢ n - 2f`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CellIndex {
    pub n: u32,
    pub f: u32,
    pub lambda: Partition,
}

impl CellIndex {
    pub fn new(n: u32, f: u32, lambda: Partition) -> Result<Self, CombinError> {
        if n == 0 || 2 * f > n || lambda.size() + 2 * f != n {
            return Err(CombinError::InvalidCell { n, f, lambda });
        }
        Ok(CellIndex { n, f, lambda })
    }

    /// `|Std(λ)| · |D_{f,n}|`.
    pub fn dim(&self) -> u128 {
        self.lambda.hook_count() * dfn_count(self.f as usize, self.n as usize)
    }

    /// The cell order: `(k, λ) ⊴ (f, μ)` iff `k < f`, or `k = f` and `λ ⊴ μ`.
    pub fn below_or_equal(&self, other: &CellIndex) -> bool {
        self.f < other.f || (self.f == other.f && other.lambda.dominates(&self.lambda))
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.lambda)
    }
}

/// All cells of `B_n`: `f` ascending, partitions in enumeration order.
pub fn cells(n: u32) -> Vec<CellIndex> {
    let mut out = Vec::new();
    for f in 0..=n / 2 {
        for lambda in partitions(n - 2 * f) {
            out.push(CellIndex { n, f, lambda });
        }
    }
    out
}
