use thiserror::Error;

use crate::algebra::AssociativityFailure;
use crate::rough::CongruenceWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown gamma `{0}`")]
    UnknownGamma(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("a carrier needs at least one element")]
    EmptyCarrier,
    #[error("a structure needs at least one gamma")]
    NoGammas,
    #[error("order too large: {elements} elements x {gammas} gammas exceeds 64 cells")]
    TooLarge { elements: usize, gammas: usize },
    #[error("table has {found} cells, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("table cell value {0} is not a carrier index")]
    CellOutOfRange(usize),
    #[error("structure is not a Gamma-semigroup: {0}")]
    NotAssociative(AssociativityFailure),
    #[error("operands belong to different carriers")]
    StructureMismatch,
    #[error("source and target use different gamma lists")]
    GammaMismatch,
    #[error("image of `{0}` is empty")]
    EmptyImage(String),
    #[error("map has {found} images, source has {expected} elements")]
    MapArity { expected: usize, found: usize },
    #[error("subset mask has members outside the carrier")]
    MaskOutOfRange,
    #[error("subset must be non-empty")]
    EmptySubset,
    #[error("malformed set literal `{0}`")]
    BadLiteral(String),
    #[error("blocks do not partition the carrier")]
    NotAPartition,
    #[error("partition is not a congruence: {0:?}")]
    NotCongruence(CongruenceWitness),
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("instance budget exceeded: {required} instances required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("theorem {id} expects {expected} subset parameter(s), got {found}")]
    ParamShape {
        id: String,
        expected: usize,
        found: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
