//! Product-type ℤ/2 actions α = ⊗ Ad(pₙ − qₙ) on D = ⊗ M_{k(n)}.
//!
//! A factor is recorded only through the ranks of its two eigenprojections;
//! explicit matrices never appear outside test oracles. Factor indices are
//! 1-based.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::supernatural::{factorize, valuation, Exponent, SupernaturalNumber};

/// Ranks of the +1 and −1 eigenprojections of one tensor factor M_{p+q}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankPair {
    pub p: BigUint,
    pub q: BigUint,
}

impl RankPair {
    pub fn new(p: impl Into<BigUint>, q: impl Into<BigUint>) -> Self {
        RankPair { p: p.into(), q: q.into() }
    }

    /// Matrix size k = p + q.
    pub fn size(&self) -> BigUint {
        &self.p + &self.q
    }

    /// Signed eigenrank gap p − q.
    pub fn gap(&self) -> BigInt {
        BigInt::from(self.p.clone()) - BigInt::from(self.q.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.p == self.q
    }

    pub fn is_normalized(&self) -> bool {
        self.p >= self.q
    }
}

impl fmt::Display for RankPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Swap so that p ≥ q. Exchanging pₙ and qₙ leaves Ad(pₙ − qₙ) unchanged.
pub fn normalize(rp: &RankPair) -> Result<RankPair> {
    if rp.p.is_zero() && rp.q.is_zero() {
        return Err(Error::InvalidFactor);
    }
    if rp.p >= rp.q {
        Ok(rp.clone())
    } else {
        Ok(RankPair { p: rp.q.clone(), q: rp.p.clone() })
    }
}

fn biguint_json<S: Serializer, T: SerializeTuple<Ok = S::Ok, Error = S::Error>>(
    tup: &mut T,
    n: &BigUint,
) -> std::result::Result<(), S::Error> {
    match n.to_u64() {
        Some(v) => tup.serialize_element(&v),
        None => tup.serialize_element(&n.to_string()),
    }
}

impl Serialize for RankPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        biguint_json::<S, _>(&mut tup, &self.p)?;
        biguint_json::<S, _>(&mut tup, &self.q)?;
        tup.end()
    }
}

impl<'de> Deserialize<'de> for RankPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(deserializer)?;
        if raw.len() != 2 {
            return Err(de::Error::custom("rank pair must have exactly two entries"));
        }
        let mut vals = raw.into_iter().map(|v| match v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(BigUint::from)
                .ok_or_else(|| de::Error::custom("rank must be a nonnegative integer")),
            serde_json::Value::String(s) => s
                .parse::<BigUint>()
                .map_err(|_| de::Error::custom("rank must be a nonnegative integer")),
            _ => Err(de::Error::custom("rank must be a nonnegative integer")),
        });
        let p = vals.next().unwrap()?;
        let q = vals.next().unwrap()?;
        Ok(RankPair { p, q })
    }
}

/// Closed-form tail: factor n (exponent e = n − shift) has
/// k = A·Bᵉ, p = α·Bᵉ + β, q = γ·Bᵉ + δ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffinePower {
    #[serde(rename = "B")]
    pub base: u64,
    #[serde(rename = "A")]
    pub scale: u64,
    #[serde(rename = "alpha")]
    pub p_coeff: i64,
    #[serde(rename = "beta")]
    pub p_offset: i64,
    #[serde(rename = "gamma")]
    pub q_coeff: i64,
    #[serde(rename = "delta")]
    pub q_offset: i64,
    #[serde(default, skip_serializing_if = "is_zero_u64")]
    pub shift: u64,
}

fn is_zero_u64(v: &u64) -> bool {
    *v == 0
}

impl AffinePower {
    pub fn power(&self, e: u64) -> BigInt {
        let e = u32::try_from(e).expect("exponent fits in u32");
        BigInt::from(self.base).pow(e)
    }

    /// Raw (p, q) at exponent e, before normalization.
    pub fn eval(&self, e: u64) -> (BigInt, BigInt) {
        let b = self.power(e);
        (
            &b * self.p_coeff + self.p_offset,
            &b * self.q_coeff + self.q_offset,
        )
    }

    /// Coefficients (α − γ, β − δ) of the gap p − q = (α − γ)·Bᵉ + (β − δ).
    pub fn gap_coeffs(&self) -> (i64, i64) {
        (self.p_coeff - self.q_coeff, self.p_offset - self.q_offset)
    }

    /// Smallest e ≥ `from` with p − q = 0, if any. The gap is strictly
    /// monotone in e unless α = γ, so there is at most one root when
    /// α ≠ γ.
    fn symmetric_exponent(&self, from: u64) -> Option<u64> {
        let (d1, d0) = self.gap_coeffs();
        if d1 == 0 {
            return (d0 == 0).then_some(from);
        }
        let target = -(d0 as i128);
        let d1 = d1 as i128;
        if target % d1 != 0 {
            return None;
        }
        let mut t = target / d1;
        if t < 1 {
            return None;
        }
        let b = self.base as i128;
        let mut e = 0u64;
        while t % b == 0 {
            t /= b;
            e += 1;
        }
        (t == 1 && e >= from).then_some(e)
    }

    fn validate(&self, first_exponent: u64) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidTail(msg.to_string()));
        if self.base < 2 {
            return bad("B must be at least 2");
        }
        if self.scale < 1 {
            return bad("A must be at least 1");
        }
        if self.p_coeff < 0 || self.q_coeff < 0 {
            return bad("alpha and gamma must be nonnegative");
        }
        if self.p_coeff as i128 + self.q_coeff as i128 != self.scale as i128 {
            return bad("alpha + gamma must equal A");
        }
        if self.p_offset as i128 + self.q_offset as i128 != 0 {
            return bad("beta + delta must equal 0");
        }
        // p and q are nondecreasing in e, so checking the first tail factor
        // covers the whole tail.
        let (p, q) = self.eval(first_exponent);
        if p.is_negative() || q.is_negative() {
            return bad("ranks must be nonnegative on every tail factor");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TailRule {
    Periodic(Vec<RankPair>),
    AffinePower(AffinePower),
    None,
}

/// A full product-type action: finitely many explicit factors followed by
/// a tail rule. Constructed only through [`ActionSpec::new`], which
/// validates and normalizes every factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionSpec {
    name: String,
    prefix: Vec<RankPair>,
    tail: TailRule,
}

impl ActionSpec {
    pub fn new(name: impl Into<String>, prefix: Vec<RankPair>, tail: TailRule) -> Result<Self> {
        let prefix = prefix.iter().map(normalize).collect::<Result<Vec<_>>>()?;
        let tail = match tail {
            TailRule::Periodic(pairs) => {
                if pairs.is_empty() {
                    return Err(Error::InvalidTail("periodic tail needs at least one pair".into()));
                }
                TailRule::Periodic(pairs.iter().map(normalize).collect::<Result<Vec<_>>>()?)
            }
            TailRule::AffinePower(rule) => {
                let first = prefix.len() as u64 + 1;
                if rule.shift > first {
                    return Err(Error::InvalidTail(format!(
                        "shift {} exceeds first tail index {first}",
                        rule.shift
                    )));
                }
                rule.validate(first - rule.shift)?;
                TailRule::AffinePower(rule)
            }
            TailRule::None => {
                if prefix.is_empty() {
                    return Err(Error::InvalidTail("an action needs at least one factor".into()));
                }
                TailRule::None
            }
        };
        Ok(ActionSpec { name: name.into(), prefix, tail })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prefix(&self) -> &[RankPair] {
        &self.prefix
    }

    pub fn tail(&self) -> &TailRule {
        &self.tail
    }

    pub fn prefix_len(&self) -> u64 {
        self.prefix.len() as u64
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self.tail, TailRule::None)
    }

    pub(crate) fn require_infinite(&self) -> Result<()> {
        if self.is_infinite() {
            Ok(())
        } else {
            Err(Error::FiniteAction(self.name.clone()))
        }
    }

    /// Number of factors, `None` when infinite.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<u64> {
        (!self.is_infinite()).then(|| self.prefix_len())
    }

    /// Normalized factor n (1-based).
    pub fn factor_at(&self, n: u64) -> Result<RankPair> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        let n0 = self.prefix_len();
        if n <= n0 {
            return Ok(self.prefix[(n - 1) as usize].clone());
        }
        match &self.tail {
            TailRule::None => Err(Error::IndexOutOfRange { index: n, len: n0 }),
            TailRule::Periodic(pairs) => {
                let i = (n - n0 - 1) % pairs.len() as u64;
                Ok(pairs[i as usize].clone())
            }
            TailRule::AffinePower(rule) => {
                let (p, q) = rule.eval(n - rule.shift);
                let rp = RankPair::new(
                    p.to_biguint().expect("validated nonnegative"),
                    q.to_biguint().expect("validated nonnegative"),
                );
                normalize(&rp)
            }
        }
    }

    /// t(n) = k(1)·k(2)⋯k(n), the matrix size of Dₙ; t(0) = 1.
    pub fn stage_size(&self, n: u64) -> Result<BigUint> {
        let mut t = BigUint::one();
        for j in 1..=n {
            t *= self.factor_at(j)?.size();
        }
        Ok(t)
    }

    /// First index > `after` whose factor is symmetric (λ = 0).
    pub fn next_symmetric_after(&self, after: u64) -> Option<u64> {
        let n0 = self.prefix_len();
        if let Some(i) = (after + 1..=n0).find(|&i| self.prefix[(i - 1) as usize].is_symmetric()) {
            return Some(i);
        }
        let start = (after + 1).max(n0 + 1);
        match &self.tail {
            TailRule::None => None,
            TailRule::Periodic(pairs) => {
                let len = pairs.len() as u64;
                (start..start + len).find(|&n| pairs[((n - n0 - 1) % len) as usize].is_symmetric())
            }
            TailRule::AffinePower(rule) => rule
                .symmetric_exponent(start - rule.shift)
                .map(|e| e + rule.shift),
        }
    }

    /// Whether infinitely many factors are symmetric.
    pub fn symmetric_factors_recur(&self) -> bool {
        match &self.tail {
            TailRule::None => false,
            TailRule::Periodic(pairs) => pairs.iter().any(RankPair::is_symmetric),
            TailRule::AffinePower(rule) => rule.gap_coeffs() == (0, 0),
        }
    }

    /// Last symmetric factor when there are only finitely many of them.
    pub fn last_symmetric_index(&self) -> Option<u64> {
        debug_assert!(!self.symmetric_factors_recur());
        let mut last = None;
        let mut cursor = 0;
        while let Some(i) = self.next_symmetric_after(cursor) {
            last = Some(i);
            cursor = i;
        }
        last
    }

    /// Whether infinitely many factors have q > 0 (λ < 1).
    pub fn gap_factors_recur(&self) -> bool {
        match &self.tail {
            TailRule::None => false,
            TailRule::Periodic(pairs) => pairs.iter().any(|rp| !rp.q.is_zero()),
            TailRule::AffinePower(rule) => {
                let p_grows = rule.p_coeff > 0 || rule.p_offset > 0;
                let q_grows = rule.q_coeff > 0 || rule.q_offset > 0;
                p_grows && q_grows
            }
        }
    }

    /// Last factor with q > 0 when there are only finitely many. On such
    /// tails one eigenprojection vanishes identically, so only the prefix
    /// can contribute.
    pub fn last_gap_index(&self) -> Option<u64> {
        debug_assert!(!self.gap_factors_recur());
        (1..=self.prefix_len())
            .rev()
            .find(|&i| !self.prefix[(i - 1) as usize].q.is_zero())
    }

    /// First tail index (N₀ + 1).
    pub fn tail_start(&self) -> u64 {
        self.prefix_len() + 1
    }
}

/// Supernatural number of D = ⊗ M_{k(n)}: the exponent of ρ is Σₙ v_ρ(k(n)).
pub fn supernatural_of_algebra(spec: &ActionSpec) -> Result<SupernaturalNumber> {
    spec.require_infinite()?;
    let mut out = SupernaturalNumber::one();
    let mut prefix_primes = Vec::new();
    for rp in spec.prefix() {
        let k = to_u128(&rp.size())?;
        prefix_primes.push(k);
    }
    match spec.tail() {
        TailRule::Periodic(pairs) => {
            for rp in pairs {
                let k = to_u128(&rp.size())?;
                out = &out * &SupernaturalNumber::infinite_power_of(k);
            }
        }
        TailRule::AffinePower(rule) => {
            // v_ρ(A·Bᵉ) = v_ρ(A) + e·v_ρ(B): any prime dividing A or B
            // contributes to every tail factor.
            let ab = rule.scale as u128 * rule.base as u128;
            out = &out * &SupernaturalNumber::infinite_power_of(ab);
        }
        TailRule::None => unreachable!(),
    }
    for k in prefix_primes {
        for (prime, _) in factorize(k) {
            out.add_exponent(prime, Exponent::Finite(valuation(k, prime)));
        }
    }
    Ok(out)
}

fn to_u128(n: &BigUint) -> Result<u128> {
    n.to_u128()
        .ok_or_else(|| Error::InvalidTail(format!("matrix size {n} too large to factor")))
}

// ---------------------------------------------------------------------------
// JSON document

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TailDoc {
    Periodic { pairs: Vec<RankPair> },
    AffinePower(AffinePower),
    None,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpecDoc {
    pub name: String,
    #[serde(default)]
    pub prefix: Vec<RankPair>,
    pub tail: TailDoc,
}

impl TryFrom<ActionSpecDoc> for ActionSpec {
    type Error = Error;

    fn try_from(doc: ActionSpecDoc) -> Result<Self> {
        let tail = match doc.tail {
            TailDoc::Periodic { pairs } => TailRule::Periodic(pairs),
            TailDoc::AffinePower(rule) => TailRule::AffinePower(rule),
            TailDoc::None => TailRule::None,
        };
        ActionSpec::new(doc.name, doc.prefix, tail)
    }
}

impl From<&ActionSpec> for ActionSpecDoc {
    fn from(spec: &ActionSpec) -> Self {
        let tail = match spec.tail() {
            TailRule::Periodic(pairs) => TailDoc::Periodic { pairs: pairs.clone() },
            TailRule::AffinePower(rule) => TailDoc::AffinePower(rule.clone()),
            TailRule::None => TailDoc::None,
        };
        ActionSpecDoc { name: spec.name().to_string(), prefix: spec.prefix().to_vec(), tail }
    }
}

impl Serialize for ActionSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ActionSpecDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ActionSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = ActionSpecDoc::deserialize(deserializer)?;
        ActionSpec::try_from(doc).map_err(de::Error::custom)
    }
}

pub fn parse_spec_json(text: &str) -> Result<ActionSpec> {
    let doc: ActionSpecDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    ActionSpec::try_from(doc)
}

// ---------------------------------------------------------------------------
// Built-in fixtures

pub mod fixtures {
    use super::*;

    pub const NAMES: [&str; 4] = ["car1", "car2", "car3", "notcar"];

    /// ⊗ M₂ with every factor Ad(diag(1, −1)).
    pub fn car1() -> ActionSpec {
        ActionSpec::new("car1", vec![], TailRule::Periodic(vec![RankPair::new(1u32, 1u32)]))
            .expect("valid fixture")
    }

    /// ⊗ M_{2ⁿ} with Ad(1_{2^{n−1}+1} ⊕ −1_{2^{n−1}−1}): written with
    /// exponent n − 1 so the coefficients are integral,
    /// k = 2·2^{n−1}, p = 2^{n−1} + 1, q = 2^{n−1} − 1.
    pub fn car2() -> ActionSpec {
        let rule = AffinePower {
            base: 2,
            scale: 2,
            p_coeff: 1,
            p_offset: 1,
            q_coeff: 1,
            q_offset: -1,
            shift: 1,
        };
        ActionSpec::new("car2", vec![], TailRule::AffinePower(rule)).expect("valid fixture")
    }

    /// ⊗ M_{2ⁿ} with Ad(1_{2ⁿ−1} ⊕ −1): k = 2ⁿ, p = 2ⁿ − 1, q = 1.
    /// Factor 1 is (1,1), so Λ(0,∞) = 0 while Λ(m,∞) > 0 for m ≥ 1.
    pub fn car3() -> ActionSpec {
        let rule = AffinePower {
            base: 2,
            scale: 1,
            p_coeff: 1,
            p_offset: -1,
            q_coeff: 0,
            q_offset: 1,
            shift: 0,
        };
        ActionSpec::new("car3", vec![], TailRule::AffinePower(rule)).expect("valid fixture")
    }

    /// M₂ ⊗ ⊗_{n≥2} M₃ with id on M₂ and Ad(1₂ ⊕ −1₁) on every M₃, so
    /// λₙ = 1/3 for n ≥ 2. D has supernatural number 2¹·3^∞, hence is not
    /// absorbed by the 2^∞ UHF algebra.
    pub fn notcar() -> ActionSpec {
        ActionSpec::new(
            "notcar",
            vec![RankPair::new(2u32, 0u32)],
            TailRule::Periodic(vec![RankPair::new(2u32, 1u32)]),
        )
        .expect("valid fixture")
    }

    pub fn by_name(name: &str) -> Result<ActionSpec> {
        match name {
            "car1" => Ok(car1()),
            "car2" => Ok(car2()),
            "car3" => Ok(car3()),
            "notcar" => Ok(notcar()),
            other => Err(Error::UnknownFixture(other.to_string())),
        }
    }
}
