use std::fmt;

use serde::Serialize;

use crate::citations::Citation;
use crate::lambda::TailProductResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_decided(self) -> bool {
        self != Decision::Unknown
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Decision::Yes => Some(true),
            Decision::No => Some(false),
            Decision::Unknown => None,
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "Yes",
            Decision::No => "No",
            Decision::Unknown => "Unknown",
        })
    }
}

/// Evidence attached to a decision. Every variant can be re-checked from the
/// action spec alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A symmetric factor in the recurring part of the tail.
    RecurringSymmetricFactor { index: u64 },
    FinitelyManySymmetricFactors { last_index: Option<u64> },
    /// Λ(m, ∞) evaluated at the reference index m. The condition is
    /// tail-only, so one m past the last symmetric factor decides all m.
    TailProduct { m: u64, result: TailProductResult },
    /// A factor with q > 0 in the recurring part of the tail.
    RecurringGapFactor { index: u64 },
    FinitelyManyGapFactors { last_index: Option<u64> },
    /// Pushforward of a K0 class landing in the positive cone.
    PositivePushforward { stage: u64, vector: [String; 2] },
    /// The class vanishes from this stage on.
    ZeroClass { stage: u64 },
    /// u = a + b < 0: the total rank is negative at every stage.
    NegativeTotal { u: String },
    /// u = 0 but v = a − b survives forever.
    NonzeroInfinitesimal { v: String },
    /// |v|·Λ(stage, ∞) exceeds u, so no pushforward becomes positive.
    ThresholdExceeded { threshold: String, tail_product: TailProductResult },
    /// Undecided at this cutoff.
    Cutoff { cutoff: u64 },
    /// Follows from another verdict by a stated equivalence.
    Equivalent { field: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub witness: Witness,
    pub citations: Vec<Citation>,
}

impl Verdict {
    pub fn new(decision: Decision, witness: Witness, citations: &[Citation]) -> Self {
        Verdict { decision, witness, citations: citations.to_vec() }
    }

    pub fn yes(witness: Witness, citations: &[Citation]) -> Self {
        Self::new(Decision::Yes, witness, citations)
    }

    pub fn no(witness: Witness, citations: &[Citation]) -> Self {
        Self::new(Decision::No, witness, citations)
    }
}
