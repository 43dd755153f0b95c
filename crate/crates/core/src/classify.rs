//! Decision procedures for the strict Rokhlin, tracial Rokhlin, and
//! outerness conditions on product-type ℤ/2 actions, plus the facts that
//! follow from them (simplicity, UHF-ness, trace count).
//!
//! All three conditions concern only the tail of the factor sequence, so
//! each is decided from the tail rule; the prefix only affects witnesses.

use serde::{Serialize, Serializer};

use crate::action::{supernatural_of_algebra, ActionSpec};
use crate::citations::{self, Citation};
use crate::error::Result;
use crate::lambda::{big_lambda_limit, TailProductResult};
use crate::supernatural::SupernaturalNumber;
use crate::verdict::{Decision, Verdict, Witness};

/// First symmetric factor past the prefix.
fn recurring_symmetric_index(spec: &ActionSpec) -> u64 {
    spec.next_symmetric_after(spec.prefix_len())
        .expect("recurring symmetric factors exist")
}

fn recurring_gap_index(spec: &ActionSpec) -> u64 {
    let start = spec.tail_start();
    (start..)
        .find(|&n| spec.factor_at(n).map(|f| f.q != 0u32.into()).unwrap_or(false))
        .expect("recurring gap factors exist")
}

pub fn strict_rokhlin_verdict(spec: &ActionSpec) -> Result<Verdict> {
    spec.require_infinite()?;
    let cites = [citations::STRICT_ROKHLIN];
    Ok(if spec.symmetric_factors_recur() {
        Verdict::yes(Witness::RecurringSymmetricFactor { index: recurring_symmetric_index(spec) }, &cites)
    } else {
        Verdict::no(
            Witness::FinitelyManySymmetricFactors { last_index: spec.last_symmetric_index() },
            &cites,
        )
    })
}

/// Index m past which no factor is symmetric (or the prefix end when
/// symmetric factors recur). Λ(m', ∞) = Λ(m', m)·Λ(m, ∞), so Λ(m, ∞) = 0
/// at this m decides the condition for every m'.
pub fn reference_index(spec: &ActionSpec) -> u64 {
    if spec.symmetric_factors_recur() {
        spec.prefix_len()
    } else {
        spec.last_symmetric_index().unwrap_or(0).max(spec.prefix_len())
    }
}

pub fn tracial_rokhlin_verdict(spec: &ActionSpec, cutoff: u64) -> Result<Verdict> {
    spec.require_infinite()?;
    let m = reference_index(spec);
    let result = big_lambda_limit(spec, m, cutoff)?;
    let cites = [citations::TRACIAL_ROKHLIN, citations::INFINITE_PRODUCT];
    Ok(match &result {
        TailProductResult::Zero { .. } => Verdict::yes(Witness::TailProduct { m, result }, &cites),
        TailProductResult::Positive { .. } => Verdict::no(Witness::TailProduct { m, result }, &cites),
        TailProductResult::Unknown { cutoff, .. } => {
            Verdict::new(Decision::Unknown, Witness::Cutoff { cutoff: *cutoff }, &cites)
        }
    })
}

pub fn outer_simple_verdict(spec: &ActionSpec) -> Result<Verdict> {
    spec.require_infinite()?;
    let cites = [citations::OUTER, citations::SIMPLE];
    Ok(if spec.gap_factors_recur() {
        Verdict::yes(Witness::RecurringGapFactor { index: recurring_gap_index(spec) }, &cites)
    } else {
        Verdict::no(Witness::FinitelyManyGapFactors { last_index: spec.last_gap_index() }, &cites)
    })
}

pub fn crossed_product_uhf_verdict(
    spec: &ActionSpec,
) -> Result<(Verdict, Option<SupernaturalNumber>)> {
    let strict = strict_rokhlin_verdict(spec)?;
    let supernatural = match strict.decision {
        Decision::Yes => Some(supernatural_of_algebra(spec)?),
        _ => None,
    };
    let verdict = Verdict {
        decision: strict.decision,
        witness: strict.witness,
        citations: vec![citations::UHF],
    };
    Ok((verdict, supernatural))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceCount {
    One,
    Two,
    Unknown,
}

impl Serialize for TraceCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TraceCount::One => serializer.serialize_u8(1),
            TraceCount::Two => serializer.serialize_u8(2),
            TraceCount::Unknown => serializer.serialize_str("unknown"),
        }
    }
}

pub fn extreme_trace_count(spec: &ActionSpec, cutoff: u64) -> Result<TraceCount> {
    Ok(match tracial_rokhlin_verdict(spec, cutoff)?.decision {
        Decision::Yes => TraceCount::One,
        Decision::No => TraceCount::Two,
        Decision::Unknown => TraceCount::Unknown,
    })
}

/// Facts that hold for every product-type action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlwaysTrueFacts {
    pub action_strictly_approx_representable: bool,
    pub dual_action_strict_rokhlin: bool,
    pub crossed_product_af: bool,
    pub citations: Vec<Citation>,
}

impl Default for AlwaysTrueFacts {
    fn default() -> Self {
        AlwaysTrueFacts {
            action_strictly_approx_representable: true,
            dual_action_strict_rokhlin: true,
            crossed_product_af: true,
            citations: vec![
                citations::STRICTLY_APPROX_REPRESENTABLE,
                citations::DUAL_STRICT_ROKHLIN,
                citations::CROSSED_PRODUCT_AF,
            ],
        }
    }
}

/// A statement whose truth value is read off another verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedFact {
    pub statement: &'static str,
    pub decision: Decision,
    pub from: &'static str,
    pub citations: Vec<Citation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub strict_rokhlin: Verdict,
    pub tracial_rokhlin: Verdict,
    pub outer: Verdict,
    pub crossed_product_simple: Verdict,
    pub crossed_product_uhf: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossed_product_supernatural: Option<SupernaturalNumber>,
    pub algebra_supernatural: SupernaturalNumber,
    pub extreme_trace_count: TraceCount,
    pub always_true_facts: AlwaysTrueFacts,
    pub derived: Vec<DerivedFact>,
    pub cutoff: u64,
}

impl ClassificationReport {
    pub fn has_unknown(&self) -> bool {
        [
            &self.strict_rokhlin,
            &self.tracial_rokhlin,
            &self.outer,
            &self.crossed_product_simple,
            &self.crossed_product_uhf,
        ]
        .iter()
        .any(|v| v.decision == Decision::Unknown)
    }

    /// Checks the implication lattice between the verdicts; returns the
    /// first violated relation.
    pub fn lattice_violation(&self) -> Option<&'static str> {
        let strict = self.strict_rokhlin.decision;
        let tracial = self.tracial_rokhlin.decision;
        let outer = self.outer.decision;
        if outer != self.crossed_product_simple.decision {
            return Some("outer ⇔ simple");
        }
        if strict != self.crossed_product_uhf.decision {
            return Some("strict ⇔ UHF");
        }
        if strict == Decision::Yes && tracial == Decision::No {
            return Some("strict ⇒ tracial");
        }
        if tracial == Decision::Yes && outer == Decision::No {
            return Some("tracial ⇒ outer");
        }
        let count_ok = matches!(
            (tracial, self.extreme_trace_count),
            (Decision::Yes, TraceCount::One) | (Decision::No, TraceCount::Two) | (Decision::Unknown, TraceCount::Unknown)
        );
        if !count_ok {
            return Some("tracial ⇔ unique trace");
        }
        if (strict == Decision::Yes) != self.crossed_product_supernatural.is_some() {
            return Some("UHF carries its supernatural number");
        }
        None
    }
}

pub fn classify(spec: &ActionSpec, cutoff: u64) -> Result<ClassificationReport> {
    let strict_rokhlin = strict_rokhlin_verdict(spec)?;
    let tracial_rokhlin = tracial_rokhlin_verdict(spec, cutoff)?;
    let outer = outer_simple_verdict(spec)?;
    let crossed_product_simple = Verdict {
        decision: outer.decision,
        witness: Witness::Equivalent { field: "outer" },
        citations: vec![citations::SIMPLE],
    };
    let (crossed_product_uhf, crossed_product_supernatural) = crossed_product_uhf_verdict(spec)?;
    let extreme_trace_count = match tracial_rokhlin.decision {
        Decision::Yes => TraceCount::One,
        Decision::No => TraceCount::Two,
        Decision::Unknown => TraceCount::Unknown,
    };
    let derived = vec![
        DerivedFact {
            statement: "dual action strictly approximately representable",
            decision: strict_rokhlin.decision,
            from: "strict_rokhlin",
            citations: vec![citations::DUAL_APPROX_REPRESENTABLE],
        },
        DerivedFact {
            statement: "dual action tracially approximately representable",
            decision: tracial_rokhlin.decision,
            from: "tracial_rokhlin",
            citations: vec![citations::DUAL_APPROX_REPRESENTABLE],
        },
        DerivedFact {
            statement: "dual action trivial on K0",
            decision: strict_rokhlin.decision,
            from: "strict_rokhlin",
            citations: vec![citations::DUAL_TRIVIAL_ON_K0],
        },
        DerivedFact {
            statement: "K0 of the crossed product totally ordered",
            decision: strict_rokhlin.decision,
            from: "strict_rokhlin",
            citations: vec![citations::TOTALLY_ORDERED],
        },
        DerivedFact {
            statement: "dual action trivial on the trace space",
            decision: tracial_rokhlin.decision,
            from: "tracial_rokhlin",
            citations: vec![citations::UNIQUE_TRACE],
        },
    ];
    let report = ClassificationReport {
        strict_rokhlin,
        tracial_rokhlin,
        outer,
        crossed_product_simple,
        crossed_product_uhf,
        crossed_product_supernatural,
        algebra_supernatural: supernatural_of_algebra(spec)?,
        extreme_trace_count,
        always_true_facts: AlwaysTrueFacts::default(),
        derived,
        cutoff,
    };
    debug_assert_eq!(report.lattice_violation(), None);
    Ok(report)
}
