use serde::{Deserialize, Serialize};

/// Caps that make expensive stages refuse early instead of running away.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest admissible size `n` of the action basis.
    pub max_basis_size: usize,
    /// Largest `r` for which all nonempty variable subsets are enumerated.
    pub max_subset_vars: usize,
    /// Largest number of terms of a symbolic determinant.
    pub max_det_terms: u64,
    /// Largest number of torsion-block candidates tried per image of the
    /// lattice basis.
    pub max_torsion_candidates: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis_size: 256,
            max_subset_vars: 20,
            max_det_terms: 1_000_000,
            max_torsion_candidates: 1_000_000,
        }
    }
}
