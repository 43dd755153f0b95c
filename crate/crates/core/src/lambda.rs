//! λₙ = (p − q)/(p + q), the finite products Λ(m, n) = λ_{m+1}⋯λₙ, their
//! limits Λ(m, ∞), and condensation of factor ranges into a single factor.
//!
//! Λ(m, ∞) = 0 exactly when some λₙ (n > m) vanishes or Σ(1 − λₙ)
//! diverges. Both tail families admit a closed-form test for this, so the
//! zero/positive decision never depends on floating point.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::action::{ActionSpec, RankPair, TailRule};
use crate::error::{Error, Result};
use crate::interval::{RatInterval, Rational};

/// Default number of factors multiplied out exactly before the geometric
/// tail bound takes over.
pub const DEFAULT_CUTOFF: u64 = 64;

pub fn lambda_of(rp: &RankPair) -> Rational {
    Rational::new(rp.gap(), BigInt::from(rp.size()))
}

pub fn lambda(spec: &ActionSpec, n: u64) -> Result<Rational> {
    Ok(lambda_of(&spec.factor_at(n)?))
}

/// Λ(m, n) = λ_{m+1}⋯λₙ, with Λ(m, m) = 1.
pub fn big_lambda(spec: &ActionSpec, m: u64, n: u64) -> Result<Rational> {
    if n < m {
        return Err(Error::InvalidRange { m, n });
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in m + 1..=n {
        let f = spec.factor_at(j)?;
        num *= f.gap();
        den *= BigInt::from(f.size());
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZeroCertificate {
    /// λ = 0 at this index.
    SymmetricFactor { index: u64 },
    /// A period entry with λ = `gap_lambda` < 1 recurs forever, so
    /// Σ(1 − λₙ) ≥ Σ(1 − gap_lambda) diverges. `tail_lambda_max` is the
    /// largest λ over the period.
    PeriodicGap {
        test: &'static str,
        #[serde(serialize_with = "crate::interval::serialize_rational")]
        gap_lambda: Rational,
        #[serde(serialize_with = "crate::interval::serialize_rational")]
        tail_lambda_max: Rational,
    },
    /// λₙ → `limit` < 1, so 1 − λₙ is bounded away from 0.
    AffineLimit {
        test: &'static str,
        #[serde(serialize_with = "crate::interval::serialize_rational")]
        limit: Rational,
    },
}

impl ZeroCertificate {
    pub fn comparison_test(&self) -> &'static str {
        match self {
            ZeroCertificate::SymmetricFactor { .. } => "zero_factor",
            ZeroCertificate::PeriodicGap { test, .. } | ZeroCertificate::AffineLimit { test, .. } => {
                test
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TailProductResult {
    Zero { certificate: ZeroCertificate },
    /// 0 < lower ≤ Λ(m, ∞) ≤ upper ≤ 1.
    Positive { bounds: RatInterval, cutoff: u64 },
    Unknown { cutoff: u64, partial: RatInterval },
}

impl TailProductResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, TailProductResult::Zero { .. })
    }

    /// The certified enclosure of Λ(m, ∞).
    pub fn enclosure(&self) -> RatInterval {
        match self {
            TailProductResult::Zero { .. } => RatInterval::point(Rational::zero()),
            TailProductResult::Positive { bounds, .. } => bounds.clone(),
            TailProductResult::Unknown { partial, .. } => partial.clone(),
        }
    }
}

/// Decide Λ(m, ∞) = 0, or enclose it in a certified interval.
///
/// `cutoff` is the last factor index multiplied out exactly (raised to at
/// least m and the end of the prefix).
pub fn big_lambda_limit(spec: &ActionSpec, m: u64, cutoff: u64) -> Result<TailProductResult> {
    spec.require_infinite()?;
    if let Some(index) = spec.next_symmetric_after(m) {
        return Ok(TailProductResult::Zero {
            certificate: ZeroCertificate::SymmetricFactor { index },
        });
    }
    let n0 = spec.prefix_len();
    match spec.tail() {
        TailRule::None => unreachable!(),
        TailRule::Periodic(pairs) => {
            let lambdas: Vec<Rational> = pairs.iter().map(lambda_of).collect();
            let one = Rational::one();
            if let Some(gap_lambda) = lambdas.iter().filter(|l| **l < one).max() {
                return Ok(TailProductResult::Zero {
                    certificate: ZeroCertificate::PeriodicGap {
                        test: "periodic_recurrence",
                        gap_lambda: gap_lambda.clone(),
                        tail_lambda_max: lambdas.iter().max().unwrap().clone(),
                    },
                });
            }
            // every tail λ equals 1
            let n = m.max(n0);
            let exact = big_lambda(spec, m, n)?;
            Ok(TailProductResult::Positive { bounds: RatInterval::point(exact), cutoff: n })
        }
        TailRule::AffinePower(rule) => {
            let (d1, d0) = rule.gap_coeffs();
            let scale = rule.scale as i64;
            if d1.abs() < scale {
                return Ok(TailProductResult::Zero {
                    certificate: ZeroCertificate::AffineLimit {
                        test: "limit_comparison",
                        limit: Rational::new(BigInt::from(d1.abs()), BigInt::from(scale)),
                    },
                });
            }
            // |α − γ| = A: with sign s of α − γ, once s·gap ≥ 0 we have
            // 1 − λₙ = K / (A·Bᵉ) where K = −s·(β − δ) ≥ 0.
            let sign = d1.signum();
            let k_const = -sign * d0;
            let n = cutoff.max(m).max(n0);
            let regime_start = {
                let mut e = rule.shift.max(n0 + 1) - rule.shift;
                let e_first = e;
                loop {
                    let gap = rule.power(e) * d1 + d0;
                    if gap.signum() == BigInt::from(sign) || gap.is_zero() {
                        break;
                    }
                    e += 1;
                    debug_assert!(e < e_first + 200);
                }
                e + rule.shift
            };
            let partial = big_lambda(spec, m, n)?;
            if n + 1 < regime_start {
                return Ok(TailProductResult::Unknown {
                    cutoff: n,
                    partial: RatInterval::new(Rational::zero(), partial),
                });
            }
            if k_const == 0 {
                return Ok(TailProductResult::Positive { bounds: RatInterval::point(partial), cutoff: n });
            }
            // Σ_{j>n} K/(A·B^{j−shift}) = K·B / (A·B^{n+1−shift}·(B − 1))
            let b = rule.base;
            let tail_sum = Rational::new(
                BigInt::from(k_const) * BigInt::from(b),
                BigInt::from(rule.scale) * rule.power(n + 1 - rule.shift) * BigInt::from(b - 1),
            );
            let one = Rational::one();
            if tail_sum >= one {
                return Ok(TailProductResult::Unknown {
                    cutoff: n,
                    partial: RatInterval::new(Rational::zero(), partial),
                });
            }
            // ∏(1 − xⱼ) ≥ 1 − Σxⱼ for xⱼ ∈ [0, 1]
            let lower = &partial * (one - tail_sum);
            Ok(TailProductResult::Positive { bounds: RatInterval::new(lower, partial), cutoff: n })
        }
    }
}

/// Collapse factors m+1..n into one factor (P, Q) with
/// P + Q = ∏k(j) and P − Q = ∏(pⱼ − qⱼ).
pub fn condense(spec: &ActionSpec, m: u64, n: u64) -> Result<RankPair> {
    if n <= m {
        return Err(Error::InvalidRange { m, n });
    }
    let factors = (m + 1..=n).map(|j| spec.factor_at(j)).collect::<Result<Vec<_>>>()?;
    Ok(condense_pairs(&factors))
}

pub fn condense_pairs(factors: &[RankPair]) -> RankPair {
    let mut size = BigUint::one();
    let mut gap = BigInt::one();
    for f in factors {
        size *= f.size();
        gap *= f.gap();
    }
    let size = BigInt::from(size);
    let p: BigInt = (&size + &gap) / 2;
    let q: BigInt = (&size - &gap) / 2;
    RankPair::new(
        p.to_biguint().expect("P ≥ 0"),
        q.to_biguint().expect("Q ≥ 0"),
    )
}
