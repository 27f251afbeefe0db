use serde::Serialize;
use thiserror::Error;

use crate::wps::WeightVector;

/// Why a weight system has no Du Val basket in this census.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum AnalysisError {
    #[error("{0} is not well-formed")]
    NotWellFormed(WeightVector),

    #[error("{weights} weights with {degrees} degrees do not cut out a surface")]
    NotSurfaceCodimension { weights: usize, degrees: usize },

    #[error("K3 condition fails: degrees sum to {degree_sum}, weights to {weight_sum}")]
    NotK3 { weight_sum: u64, degree_sum: u64 },

    #[error("the general member contains the singular stratum {0:?}")]
    ContainedSingularStratum(Vec<usize>),

    #[error("the general member meets the singular stratum {0:?} in a curve")]
    NonIsolatedSingularLocus(Vec<usize>),

    #[error("quasismoothness fails at vertex {0}")]
    QuasismoothnessFailureAtVertex(usize),

    #[error("transverse weights {transverse:?} on stratum {stratum:?} are not of type 1/{order}(1,-1)")]
    NotDuVal {
        stratum: Vec<usize>,
        transverse: Vec<u64>,
        order: u64,
    },

    #[error("basket total {0} exceeds the Neron-Severi bound 19")]
    BasketRankExceeded(u64),

    #[error("basket total 19 would give a projective K3 orbifold with b2 = 3")]
    ForbiddenBettiThree,

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
}
