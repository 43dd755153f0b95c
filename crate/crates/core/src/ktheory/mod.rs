//! Ordered K₀ of the crossed product, presented as the colimit of ℤ² along
//! Tₙ = [[pₙ, qₙ], [qₙ, pₙ]].
//!
//! In the coordinates u = a + b, v = a − b every Tₙ is diagonal: u scales
//! by kₙ = pₙ + qₙ and v by pₙ − qₙ. Equality and positivity are decided
//! lazily from these two scalings.

pub mod colimit;
pub mod matrix;
pub mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::action::{ActionSpec, RankPair};
use crate::citations;
use crate::classify::strict_rokhlin_verdict;
use crate::error::{Error, Result};
use crate::interval::Rational;
use crate::lambda::{big_lambda_limit, TailProductResult};
use crate::verdict::{Decision, Verdict, Witness};

pub use colimit::{fgab_colimit, FgAbPresentation, MapPattern};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Snf};

/// Step budget for the pushforward search once a finite stage is known to
/// exist.
const SEARCH_LIMIT: u64 = 1 << 12;

/// Tₙ = [[p, q], [q, p]].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionMatrix {
    pub p: BigUint,
    pub q: BigUint,
}

impl TransitionMatrix {
    pub fn from_factor(rp: &RankPair) -> Self {
        TransitionMatrix { p: rp.p.clone(), q: rp.q.clone() }
    }

    pub fn apply(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let p = BigInt::from(self.p.clone());
        let q = BigInt::from(self.q.clone());
        (&p * a + &q * b, &q * a + &p * b)
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let p = BigInt::from(self.p.clone());
        let q = BigInt::from(self.q.clone());
        IntMatrix::from_rows(&[vec![p.clone(), q.clone()], vec![q, p]]).expect("2×2")
    }
}

pub fn transition(spec: &ActionSpec, n: u64) -> Result<TransitionMatrix> {
    Ok(TransitionMatrix::from_factor(&spec.factor_at(n)?))
}

/// A class (a, b) ∈ K₀(M_t(n) ⊕ M_t(n)) at stage n. Written `a,b@n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0Element {
    pub stage: u64,
    pub a: BigInt,
    pub b: BigInt,
}

impl K0Element {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, stage: u64) -> Self {
        K0Element { stage, a: a.into(), b: b.into() }
    }

    pub fn u(&self) -> BigInt {
        &self.a + &self.b
    }

    pub fn v(&self) -> BigInt {
        &self.a - &self.b
    }

    pub fn is_zero_vector(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_nonnegative_vector(&self) -> bool {
        !self.a.is_negative() && !self.b.is_negative()
    }

    pub fn neg(&self) -> K0Element {
        K0Element { stage: self.stage, a: -&self.a, b: -&self.b }
    }

    pub fn scale(&self, c: &BigInt) -> K0Element {
        K0Element { stage: self.stage, a: &self.a * c, b: &self.b * c }
    }

    fn vector_strings(&self) -> [String; 2] {
        [self.a.to_string(), self.b.to_string()]
    }
}

impl fmt::Display for K0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}@{}", self.a, self.b, self.stage)
    }
}

impl FromStr for K0Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedElement(s.to_string());
        let (vector, stage) = s.trim().split_once('@').ok_or_else(bad)?;
        let (a, b) = vector.split_once(',').ok_or_else(bad)?;
        let a = a.trim().parse::<BigInt>().map_err(|_| bad())?;
        let b = b.trim().parse::<BigInt>().map_err(|_| bad())?;
        let stage = stage.trim().parse::<u64>().map_err(|_| bad())?;
        Ok(K0Element { stage, a, b })
    }
}

impl Serialize for K0Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for K0Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Apply T_{from+1}, …, T_to.
pub fn push_forward(spec: &ActionSpec, el: &K0Element, to_stage: u64) -> Result<K0Element> {
    if to_stage < el.stage {
        return Err(Error::BackwardPush { from: el.stage, to: to_stage });
    }
    let (mut a, mut b) = (el.a.clone(), el.b.clone());
    for n in el.stage + 1..=to_stage {
        (a, b) = transition(spec, n)?.apply(&a, &b);
    }
    Ok(K0Element { stage: to_stage, a, b })
}

/// The dual action on K₀: (a, b) ↦ (b, a).
pub fn flip(el: &K0Element) -> K0Element {
    K0Element { stage: el.stage, a: el.b.clone(), b: el.a.clone() }
}

pub fn is_equal(spec: &ActionSpec, x: &K0Element, y: &K0Element) -> Result<bool> {
    let n = x.stage.max(y.stage);
    let x = push_forward(spec, x, n)?;
    let y = push_forward(spec, y, n)?;
    if x.u() != y.u() {
        return Ok(false);
    }
    Ok(x.v() == y.v() || spec.next_symmetric_after(n).is_some())
}

pub fn is_zero(spec: &ActionSpec, el: &K0Element) -> Result<bool> {
    is_equal(spec, el, &K0Element::new(0, 0, el.stage))
}

/// Whether some pushforward of `el` lies in ℤ²₊ (zero class included).
///
/// At stage N ≥ n the pushforward is nonnegative iff |v|·Λ(n, N) ≤ u, and
/// Λ(n, N) only decreases in N, so the answer is read off Λ(n, ∞).
pub fn is_positive(spec: &ActionSpec, el: &K0Element, cutoff: u64) -> Result<Verdict> {
    spec.require_infinite()?;
    let cites = [citations::K0_COLIMIT, citations::ETA_NONZERO];
    let (u, v) = (el.u(), el.v());
    if u.is_negative() {
        return Ok(Verdict::no(Witness::NegativeTotal { u: u.to_string() }, &cites));
    }
    if v.is_zero() {
        return Ok(found(el.clone(), &cites));
    }
    if let Some(sym) = spec.next_symmetric_after(el.stage) {
        let hit = search(spec, el, sym)?.expect("annihilated at the symmetric factor");
        return Ok(found(hit, &cites));
    }
    if u.is_zero() {
        return Ok(Verdict::no(Witness::NonzeroInfinitesimal { v: v.to_string() }, &cites));
    }
    let threshold = Rational::new(u.clone(), v.abs());
    if el.is_nonnegative_vector() {
        return Ok(found(el.clone(), &cites));
    }
    let limit = big_lambda_limit(spec, el.stage, cutoff)?;
    let bounds = limit.enclosure();
    let unknown = |cutoff| Verdict::new(Decision::Unknown, Witness::Cutoff { cutoff }, &cites);
    if limit.is_zero() || *bounds.hi() < threshold {
        return Ok(match search(spec, el, el.stage + SEARCH_LIMIT)? {
            Some(hit) => found(hit, &cites),
            None => unknown(el.stage + SEARCH_LIMIT),
        });
    }
    if *bounds.lo() > threshold {
        return Ok(Verdict::no(
            Witness::ThresholdExceeded { threshold: threshold.to_string(), tail_product: limit },
            &cites,
        ));
    }
    let reach = match &limit {
        TailProductResult::Positive { cutoff, .. } | TailProductResult::Unknown { cutoff, .. } => *cutoff,
        TailProductResult::Zero { .. } => unreachable!(),
    };
    Ok(match search(spec, el, reach)? {
        Some(hit) => found(hit, &cites),
        None => unknown(reach),
    })
}

fn found(el: K0Element, cites: &[crate::citations::Citation]) -> Verdict {
    if el.is_zero_vector() {
        Verdict::yes(Witness::ZeroClass { stage: el.stage }, cites)
    } else {
        Verdict::yes(
            Witness::PositivePushforward { stage: el.stage, vector: el.vector_strings() },
            cites,
        )
    }
}

/// First pushforward up to stage `last` in the positive cone.
fn search(spec: &ActionSpec, el: &K0Element, last: u64) -> Result<Option<K0Element>> {
    let mut cur = el.clone();
    loop {
        if cur.is_nonnegative_vector() {
            return Ok(Some(cur));
        }
        if cur.stage >= last {
            return Ok(None);
        }
        let (a, b) = transition(spec, cur.stage + 1)?.apply(&cur.a, &cur.b);
        cur = K0Element { stage: cur.stage + 1, a, b };
    }
}

/// K₀ is totally ordered exactly when symmetric factors recur.
pub fn is_totally_ordered(spec: &ActionSpec) -> Result<Verdict> {
    let strict = strict_rokhlin_verdict(spec)?;
    Ok(Verdict { citations: vec![citations::TOTALLY_ORDERED], ..strict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn el(s: &str) -> K0Element {
        s.parse().unwrap()
    }

    #[test]
    fn transitions() {
        let t = transition(&fixtures::car2(), 2).unwrap();
        assert_eq!((t.p, t.q), (3u32.into(), 1u32.into()));
        for n in 1..5 {
            let t = transition(&fixtures::car1(), n).unwrap();
            assert_eq!((t.p, t.q), (1u32.into(), 1u32.into()));
        }
        let m = TransitionMatrix::from_factor(&RankPair::new(5u32, 3u32)).to_matrix();
        assert_eq!(m, IntMatrix::from_rows(&[vec![5, 3], vec![3, 5]]).unwrap());
    }

    #[test]
    fn element_syntax() {
        let x = el("1,-1@1");
        assert_eq!(x, K0Element::new(1, -1, 1));
        assert_eq!(x.to_string(), "1,-1@1");
        assert_eq!(el(" -3 , 4 @ 0"), K0Element::new(-3, 4, 0));
        for bad in ["1,-1", "1@2", "a,b@1", "1,2@-1", ""] {
            assert!(matches!(bad.parse::<K0Element>(), Err(Error::MalformedElement(_))));
        }
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"1,-1@1\"");
        assert_eq!(serde_json::from_str::<K0Element>(&json).unwrap(), x);
    }

    #[test]
    fn pushforwards() {
        let car3 = fixtures::car3();
        assert_eq!(push_forward(&car3, &el("1,-1@1"), 3).unwrap(), el("12,-12@3"));
        let x = el("2,5@3");
        assert_eq!(push_forward(&car3, &x, 3).unwrap(), x);
        assert_eq!(push_forward(&fixtures::car1(), &el("1,-1@1"), 2).unwrap(), el("0,0@2"));
        assert!(matches!(push_forward(&car3, &x, 2), Err(Error::BackwardPush { .. })));
    }

    #[test]
    fn flips() {
        assert_eq!(flip(&el("3,5@2")), el("5,3@2"));
        assert_eq!(flip(&el("4,4@0")), el("4,4@0"));
        let eta = el("1,-1@1");
        assert_eq!(flip(&eta), eta.neg());
        assert!(!is_equal(&fixtures::car3(), &flip(&eta), &eta).unwrap());
    }

    #[test]
    fn equality() {
        let zero = el("0,0@1");
        let eta = el("1,-1@1");
        assert!(is_equal(&fixtures::car1(), &eta, &zero).unwrap());
        assert!(!is_equal(&fixtures::car3(), &eta, &zero).unwrap());
        assert!(is_equal(&fixtures::car3(), &eta, &eta).unwrap());
        // same class written at two stages
        let car2 = fixtures::car2();
        let later = push_forward(&car2, &eta, 4).unwrap();
        assert!(is_equal(&car2, &eta, &later).unwrap());
    }

    #[test]
    fn positivity() {
        let car3 = fixtures::car3();
        let eta = el("1,-1@1");
        assert_eq!(is_positive(&car3, &eta, 64).unwrap().decision, Decision::No);
        assert_eq!(is_positive(&car3, &eta.neg(), 64).unwrap().decision, Decision::No);
        for s in ["1,0@0", "1,0@3", "0,0@2"] {
            assert_eq!(is_positive(&car3, &el(s), 64).unwrap().decision, Decision::Yes);
        }
        // car2 never annihilates v and u = 0
        let v = is_positive(&fixtures::car2(), &eta, 64).unwrap();
        assert_eq!(v.decision, Decision::No);
        assert!(matches!(v.witness, Witness::NonzeroInfinitesimal { .. }));
        // car1 kills η at stage 2
        let v = is_positive(&fixtures::car1(), &eta, 64).unwrap();
        assert_eq!(v.witness, Witness::ZeroClass { stage: 2 });
        let v = is_positive(&fixtures::car2(), &el("1,-3@1"), 64).unwrap();
        assert!(matches!(v.witness, Witness::NegativeTotal { .. }));
        // car2 has Λ(1, ∞) = 0, so any u > 0 eventually dominates
        let v = is_positive(&fixtures::car2(), &el("3,-1@1"), 64).unwrap();
        assert_eq!(v.witness, Witness::PositivePushforward { stage: 2, vector: ["8".into(), "0".into()] });
        // car3: Λ(1, ∞) ≈ 0.2888 sits between 1/5 and 1/3
        assert_eq!(is_positive(&car3, &el("2,-1@1"), 64).unwrap().decision, Decision::Yes);
        let v = is_positive(&car3, &el("3,-2@1"), 64).unwrap();
        assert!(matches!(v.witness, Witness::ThresholdExceeded { .. }));
    }

    #[test]
    fn total_order() {
        assert_eq!(is_totally_ordered(&fixtures::car1()).unwrap().decision, Decision::Yes);
        assert_eq!(is_totally_ordered(&fixtures::car2()).unwrap().decision, Decision::No);
        assert_eq!(is_totally_ordered(&fixtures::car3()).unwrap().decision, Decision::No);
    }
}
