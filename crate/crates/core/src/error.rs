use thiserror::Error;

/// Errors raised by profile construction, solvers and gadget generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("voter {0} appears {1} times in the profile (expected exactly once)")]
    BadProfileShape(usize, usize),
    #[error("order of voter {voter} is not a permutation of 0..={n}")]
    NotAPermutation { voter: usize, n: usize },
    #[error("delegation target {target} of voter {voter} is out of range 0..={n}")]
    BadDelegationTarget {
        voter: usize,
        target: usize,
        n: usize,
    },
    #[error("delegation function has {got} entries, profile has {expected} voters")]
    DelegationSizeMismatch { got: usize, expected: usize },
    #[error("voter id {0} is out of range 1..={1}")]
    VoterOutOfRange(usize, usize),
    #[error("abstainer {0} cannot be a guru")]
    AbstainerGuru(usize),
    #[error("vertex {0} is not in the digraph")]
    NotAVertex(usize),
    #[error("digraph has {got} vertices, exhaustive enumeration is capped at {cap}")]
    TooManyVertices { got: usize, cap: usize },
    #[error("profile is not single-peaked: voter {voter} ranks {far} above {mid}")]
    NotSinglePeaked {
        voter: usize,
        mid: usize,
        far: usize,
    },
    #[error("acceptance of voter {voter} is not an interval around her")]
    NotIntervalCatch { voter: usize },
    #[error("profile is not symmetric: {0} accepts {1} but {1} does not accept {0}")]
    NotSymmetric(usize, usize),
    #[error("distance matrix is not symmetric at ({0},{1})")]
    AsymmetricDistance(usize, usize),
    #[error("invalid distance or threshold value for voter {0}")]
    BadDistanceValue(usize),
    #[error("thresholds are inconsistent with the profile: {0} accepts {1} (threshold not above {1}'s) but {1} does not accept {0}")]
    ThresholdMismatch(usize, usize),
    #[error("expected {expected} thresholds, got {got}")]
    ThresholdSizeMismatch { got: usize, expected: usize },
    #[error("CNF instance has {0} variables, exhaustive satisfiability is capped at {1}")]
    TooManyVariables(usize, usize),
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
