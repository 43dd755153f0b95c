//! Closed intervals with exact rational endpoints.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Whether the two intervals come within `tol` of each other.
    pub fn within(&self, other: &RatInterval, tol: &Rational) -> bool {
        &(&other.lo - &self.hi) <= tol && &(&self.lo - &other.hi) <= tol
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> RatInterval {
        self.mul(&RatInterval::point(c.clone()))
    }

    /// Decimal rendering rounded outward: `lo` toward −∞, `hi` toward +∞.
    pub fn outward_decimal(&self, digits: u32) -> (String, String) {
        (decimal_floor(&self.lo, digits), decimal_ceil(&self.hi, digits))
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            let (lo, hi) = self.outward_decimal(12);
            write!(f, "[{lo}, {hi}]")
        }
    }
}

/// Serialized as outward-rounded 12-digit decimals plus the exact value
/// when the interval is a single small rational.
impl Serialize for RatInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            lower: String,
            upper: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            exact: Option<String>,
        }
        let (lower, upper) = self.outward_decimal(12);
        let exact = (self.is_point() && self.lo.denom().bits() <= 64 && self.lo.numer().bits() <= 64)
            .then(|| self.lo.to_string());
        Repr { lower, upper, exact }.serialize(serializer)
    }
}

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

fn render_scaled(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let (int, frac) = n.abs().div_rem(&pow10(digits));
    let mut s = format!("{int}.{frac:0>width$}", width = digits as usize);
    if neg {
        s.insert(0, '-');
    }
    s
}

pub fn decimal_floor(x: &Rational, digits: u32) -> String {
    let scaled = x * Rational::from_integer(pow10(digits));
    render_scaled(&scaled.floor().to_integer(), digits)
}

pub fn decimal_ceil(x: &Rational, digits: u32) -> String {
    let scaled = x * Rational::from_integer(pow10(digits));
    render_scaled(&scaled.ceil().to_integer(), digits)
}

/// `serialize_with` helper: exact rationals as "p/q" strings.
pub fn serialize_rational<S: Serializer>(x: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&x.to_string())
}

pub fn unit_interval_contains(x: &Rational) -> bool {
    !x.is_negative() && x <= &Rational::one()
}
