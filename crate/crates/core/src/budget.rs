use serde::{Deserialize, Serialize};

/// Resource limits. Every enumeration checks its bound before starting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Budget {
    /// Candidate count for cocycle and witness searches.
    pub enumeration: u128,
    /// Simplices per dimension of a truncated simplicial set.
    pub simplices: u128,
    /// Entries of a single coboundary matrix.
    pub matrix_entries: u128,
    /// Search nodes for the simplicial homotopy search.
    pub search_nodes: u128,
    /// Chains per level enumerated one by one in the appendix sweep.
    pub chains: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: 100_000_000,
            simplices: 10_000_000,
            matrix_entries: 20_000_000,
            search_nodes: 50_000_000,
            chains: 20_000,
        }
    }
}

impl Budget {
    /// Default limits with the enumeration bound replaced.
    pub fn with_enumeration(limit: u128) -> Self {
        Budget {
            enumeration: limit,
            ..Budget::default()
        }
    }
}
