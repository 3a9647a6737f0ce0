//! Regular and A-sequences, typical cubes, and the Koszul cube checks.

mod be;
mod cube;
mod random;
mod sequence;

pub use be::{be_acyclicity, BeReport};
pub use cube::{
    det_is_a_sequence, determinant, generators_presentation, is_koszul_cube, is_reduced_koszul, koszul_analysis,
    koszul_degenerate_directions, typical_cube, typical_cube_with_labels, verify_weight_decomposition,
    BoundaryDiagnostic, GeneratorsReport, KoszulVerdict, WeightEntry, WeightReport,
};
pub use random::{random_koszul, RandomKoszulParams, MAX_DEGREE, MAX_EXPONENT, MAX_STEPS, MAX_SUMMANDS};
pub use sequence::{
    factor_sequence_check, is_a_sequence, is_regular_sequence, FactorReport, Failure, SequenceReport, Solution,
};

/// Longest sequence whose permutations are enumerated.
pub const DEFAULT_PERM_CAP: usize = 6;
