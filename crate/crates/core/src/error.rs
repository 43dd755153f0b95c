use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid factor: rank p + rank q must be positive")]
    InvalidFactor,

    #[error("invalid tail rule: {0}")]
    InvalidTail(String),

    #[error("factor index {index} is out of range (action has {len} factors)")]
    IndexOutOfRange { index: u64, len: u64 },

    #[error("factor indices start at 1")]
    ZeroIndex,

    #[error("action `{0}` has only finitely many factors")]
    FiniteAction(String),

    #[error("invalid range {m}..{n}")]
    InvalidRange { m: u64, n: u64 },

    #[error("cannot push an element at stage {from} back to stage {to}")]
    BackwardPush { from: u64, to: u64 },

    #[error("stage mismatch: element at stage {element}, trace vector at stage {trace}")]
    StageMismatch { element: u64, trace: u64 },

    #[error("value {0} lies outside [0, 1]")]
    OutOfUnitInterval(String),

    #[error("the crossed product has a unique tracial state; no extreme trace pair exists")]
    UniqueTrace,

    #[error("tracial Rokhlin property undecided at cutoff {0}")]
    Undecided(u64),

    #[error("malformed element `{0}`: expected `a,b@n`")]
    MalformedElement(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("unsupported colimit system: {0}")]
    UnsupportedColimit(String),

    #[error("invalid G-set: {0}")]
    InvalidGSet(String),

    #[error("action is not free: group element {group} fixes point {point}")]
    NotFree { group: usize, point: usize },

    #[error("invalid cover: base set {index} has colliding translates")]
    CollidingCover { index: usize },

    #[error("invalid cover: cover union insufficient")]
    CoverInsufficient,

    #[error("invalid cover: {0}")]
    InvalidCover(String),
}
