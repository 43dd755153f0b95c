//! Tracial states on the crossed product through their stage vectors
//! (rₙ, sₙ): τₙ(a, b) = rₙ·tr(a) + sₙ·tr(b) on M_t(n) ⊕ M_t(n).
//!
//! The stage vectors of a trace are linked by T(λₙ)(rₙ, sₙ) = (rₙ₋₁, sₙ₋₁)
//! with T(λ) = ½[[1+λ, 1−λ], [1−λ, 1+λ]].

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::action::ActionSpec;
use crate::classify::tracial_rokhlin_verdict;
use crate::error::{Error, Result};
use crate::interval::{rat, RatInterval, Rational};
use crate::ktheory::K0Element;
use crate::lambda::{big_lambda_limit, TailProductResult};
use crate::verdict::Decision;

/// T(λ) for λ ∈ [0, 1], possibly known only up to an interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TMatrix {
    pub lambda: RatInterval,
}

impl TMatrix {
    /// ½(1 + λ)
    pub fn diagonal(&self) -> RatInterval {
        half_shift(&self.lambda, 1)
    }

    /// ½(1 − λ)
    pub fn off_diagonal(&self) -> RatInterval {
        half_shift(&self.lambda.neg(), 1)
    }

    pub fn entries(&self) -> [[RatInterval; 2]; 2] {
        let (d, o) = (self.diagonal(), self.off_diagonal());
        [[d.clone(), o.clone()], [o, d]]
    }

    pub fn apply(&self, r: &RatInterval, s: &RatInterval) -> (RatInterval, RatInterval) {
        let (d, o) = (self.diagonal(), self.off_diagonal());
        (d.mul(r).add(&o.mul(s)), o.mul(r).add(&d.mul(s)))
    }

    /// Entrywise product of two 2×2 interval matrices.
    pub fn compose(&self, other: &TMatrix) -> [[RatInterval; 2]; 2] {
        let a = self.entries();
        let b = other.entries();
        let cell = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
        [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
    }
}

fn half_shift(x: &RatInterval, c: i64) -> RatInterval {
    x.add(&RatInterval::point(rat(c, 1))).scale(&rat(1, 2))
}

pub fn t_matrix(lambda: RatInterval) -> Result<TMatrix> {
    let unit = RatInterval::new(Rational::zero(), Rational::one());
    if !unit.contains_interval(&lambda) {
        return Err(Error::OutOfUnitInterval(lambda.to_string()));
    }
    Ok(TMatrix { lambda })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extreme {
    /// The trace concentrated on the second summand as n → ∞.
    Zero,
    /// The trace concentrated on the first summand as n → ∞.
    One,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceVector {
    pub stage: u64,
    pub r: RatInterval,
    pub s: RatInterval,
}

impl TraceVector {
    pub fn swapped(&self) -> TraceVector {
        TraceVector { stage: self.stage, r: self.s.clone(), s: self.r.clone() }
    }
}

/// Stage-n vector of an extreme trace: (½(1 ± L), ½(1 ∓ L)) where L
/// encloses Λ(n, ∞).
pub fn extreme_trace_vector(
    spec: &ActionSpec,
    extreme: Extreme,
    n: u64,
    cutoff: u64,
) -> Result<TraceVector> {
    match tracial_rokhlin_verdict(spec, cutoff)?.decision {
        Decision::Yes => return Err(Error::UniqueTrace),
        Decision::Unknown => return Err(Error::Undecided(cutoff)),
        Decision::No => {}
    }
    let limit = big_lambda_limit(spec, n, cutoff)?;
    if let TailProductResult::Unknown { cutoff, .. } = limit {
        return Err(Error::Undecided(cutoff));
    }
    let l = limit.enclosure();
    let (big, small) = (half_shift(&l, 1), half_shift(&l.neg(), 1));
    Ok(match extreme {
        Extreme::One => TraceVector { stage: n, r: big, s: small },
        Extreme::Zero => TraceVector { stage: n, r: small, s: big },
    })
}

/// The dual-invariant trace, (½, ½) at every stage.
pub fn invariant_trace_vector(spec: &ActionSpec, n: u64) -> Result<TraceVector> {
    if n > 0 {
        spec.factor_at(n)?;
    }
    let half = RatInterval::point(rat(1, 2));
    Ok(TraceVector { stage: n, r: half.clone(), s: half })
}

/// τ(el) = (r·a + s·b)/t(n).
pub fn trace_of_element(spec: &ActionSpec, el: &K0Element, tv: &TraceVector) -> Result<RatInterval> {
    if el.stage != tv.stage {
        return Err(Error::StageMismatch { element: el.stage, trace: tv.stage });
    }
    let t = BigInt::from(spec.stage_size(el.stage)?);
    let a = Rational::from_integer(el.a.clone());
    let b = Rational::from_integer(el.b.clone());
    Ok(tv.r.scale(&a).add(&tv.s.scale(&b)).scale(&Rational::new(BigInt::one(), t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{RankPair, TailRule};
    use crate::fixtures;
    use crate::lambda::lambda;

    fn pt(n: i64, d: i64) -> RatInterval {
        RatInterval::point(rat(n, d))
    }

    #[test]
    fn t_matrix_values() {
        let id = t_matrix(pt(1, 1)).unwrap();
        assert_eq!(id.entries(), [[pt(1, 1), pt(0, 1)], [pt(0, 1), pt(1, 1)]]);
        let flat = t_matrix(pt(0, 1)).unwrap();
        assert_eq!(flat.entries(), [[pt(1, 2), pt(1, 2)], [pt(1, 2), pt(1, 2)]]);
        let half = t_matrix(pt(1, 2)).unwrap();
        assert_eq!(half.entries(), [[pt(3, 4), pt(1, 4)], [pt(1, 4), pt(3, 4)]]);
        assert!(matches!(t_matrix(pt(3, 2)), Err(Error::OutOfUnitInterval(_))));
        assert!(matches!(t_matrix(pt(-1, 2)), Err(Error::OutOfUnitInterval(_))));
    }

    #[test]
    fn multiplicative() {
        let prod = t_matrix(pt(1, 3)).unwrap().compose(&t_matrix(pt(3, 5)).unwrap());
        assert_eq!(prod, t_matrix(pt(1, 5)).unwrap().entries());
    }

    #[test]
    fn car3_extremes() {
        let car3 = fixtures::car3();
        let lo = Rational::new(64439.into(), 100000.into());
        let hi = Rational::new(64440.into(), 100000.into());
        let one = extreme_trace_vector(&car3, Extreme::One, 1, 40).unwrap();
        assert!(one.r.lo() >= &lo && one.r.hi() <= &hi);
        let zero = extreme_trace_vector(&car3, Extreme::Zero, 1, 40).unwrap();
        assert!(zero.s.lo() >= &lo && zero.s.hi() <= &hi);
        assert_eq!(zero, one.swapped());

        let eta = K0Element::new(1, -1, 1);
        let tau = trace_of_element(&car3, &eta, &one).unwrap();
        let lo = Rational::new(1443.into(), 10000.into());
        let hi = Rational::new(1444.into(), 10000.into());
        assert!(tau.lo() >= &lo && tau.hi() <= &hi);
    }

    #[test]
    fn compatibility_and_convergence() {
        let car3 = fixtures::car3();
        let tol = rat(1, 1_000_000_000);
        let mut prev = extreme_trace_vector(&car3, Extreme::One, 0, 40).unwrap();
        for n in 1..=20 {
            let cur = extreme_trace_vector(&car3, Extreme::One, n, 40).unwrap();
            let t = t_matrix(RatInterval::point(lambda(&car3, n).unwrap())).unwrap();
            let (r, s) = t.apply(&cur.r, &cur.s);
            assert!(r.within(&prev.r, &tol) && s.within(&prev.s, &tol), "stage {n}");
            assert!(cur.r.lo() >= prev.r.lo());
            prev = cur;
        }
    }

    #[test]
    fn identity_tail_gives_pure_trace() {
        let spec =
            ActionSpec::new("id", vec![], TailRule::Periodic(vec![RankPair::new(2u32, 0u32)])).unwrap();
        let v = extreme_trace_vector(&spec, Extreme::One, 3, 8).unwrap();
        assert_eq!((v.r, v.s), (pt(1, 1), pt(0, 1)));
    }

    #[test]
    fn refusals_and_invariant() {
        assert_eq!(
            extreme_trace_vector(&fixtures::car2(), Extreme::One, 1, 40),
            Err(Error::UniqueTrace)
        );
        for (spec, n) in [(fixtures::car2(), 5), (fixtures::car3(), 0), (fixtures::car1(), 3)] {
            let v = invariant_trace_vector(&spec, n).unwrap();
            assert_eq!((v.r, v.s), (pt(1, 2), pt(1, 2)));
        }
        let car3 = fixtures::car3();
        let inv = invariant_trace_vector(&car3, 2).unwrap();
        let t2 = BigInt::from(car3.stage_size(2).unwrap());
        let unit = K0Element { stage: 2, a: t2.clone(), b: BigInt::zero() };
        let full = TraceVector { stage: 2, r: pt(1, 1), s: pt(0, 1) };
        assert_eq!(trace_of_element(&car3, &unit, &full).unwrap(), pt(1, 1));
        let ones = K0Element::new(1, 1, 2);
        let expected = RatInterval::point(Rational::new(BigInt::one(), t2));
        assert_eq!(trace_of_element(&car3, &ones, &inv).unwrap(), expected);
        assert!(matches!(
            trace_of_element(&car3, &K0Element::new(1, 1, 1), &inv),
            Err(Error::StageMismatch { .. })
        ));
    }
}
