//! Supernatural numbers: formal products ∏ ρ^{e_ρ} over primes with
//! exponents in ℕ ∪ {∞}. A UHF algebra is determined up to isomorphism by
//! the supernatural number of its matrix sizes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl Exponent {
    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinite)
    }
}

impl std::ops::Add for Exponent {
    type Output = Exponent;

    fn add(self, rhs: Exponent) -> Exponent {
        match (self, rhs) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => write!(f, "∞"),
        }
    }
}

/// Zero exponents are never stored, so structural equality is exponent-map
/// equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SupernaturalNumber {
    exponents: BTreeMap<u64, Exponent>,
}

impl SupernaturalNumber {
    /// The supernatural number 1.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_natural(n: u128) -> Self {
        let mut out = Self::one();
        for (prime, e) in factorize(n) {
            out.add_exponent(prime, Exponent::Finite(e));
        }
        out
    }

    /// ρ^∞ for every prime ρ dividing `n`.
    pub fn infinite_power_of(n: u128) -> Self {
        let mut out = Self::one();
        for (prime, _) in factorize(n) {
            out.add_exponent(prime, Exponent::Infinite);
        }
        out
    }

    pub fn add_exponent(&mut self, prime: u64, e: Exponent) {
        if e == Exponent::Finite(0) {
            return;
        }
        let slot = self.exponents.entry(prime).or_insert(Exponent::Finite(0));
        *slot = *slot + e;
    }

    pub fn exponent(&self, prime: u64) -> Exponent {
        self.exponents.get(&prime).copied().unwrap_or(Exponent::Finite(0))
    }

    pub fn exponents(&self) -> &BTreeMap<u64, Exponent> {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// True when every prime occurs with infinite exponent, i.e. the number
    /// is "of infinite type" (ρ^∞ · σ^∞ · …).
    pub fn is_infinite_type(&self) -> bool {
        self.exponents.values().all(|e| e.is_infinite())
    }

    /// The primes with infinite exponent. ℤ[1/S] only depends on these.
    pub fn infinite_primes(&self) -> Vec<u64> {
        self.exponents
            .iter()
            .filter(|(_, e)| e.is_infinite())
            .map(|(p, _)| *p)
            .collect()
    }
}

impl Mul for &SupernaturalNumber {
    type Output = SupernaturalNumber;

    fn mul(self, rhs: &SupernaturalNumber) -> SupernaturalNumber {
        let mut out = self.clone();
        for (&prime, &e) in &rhs.exponents {
            out.add_exponent(prime, e);
        }
        out
    }
}

impl Mul for SupernaturalNumber {
    type Output = SupernaturalNumber;

    fn mul(self, rhs: SupernaturalNumber) -> SupernaturalNumber {
        &self * &rhs
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(p, e)| format!("{p}^{e}"))
            .collect();
        write!(f, "{}", parts.join(" · "))
    }
}

// JSON shape: {"2": "inf", "3": 1}
impl Serialize for SupernaturalNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.exponents.len()))?;
        for (p, e) in &self.exponents {
            match e {
                Exponent::Finite(k) => map.serialize_entry(&p.to_string(), k)?,
                Exponent::Infinite => map.serialize_entry(&p.to_string(), "inf")?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SupernaturalNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SnVisitor;

        impl<'de> Visitor<'de> for SnVisitor {
            type Value = SupernaturalNumber;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from primes to exponents or \"inf\"")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out = SupernaturalNumber::one();
                while let Some((key, value)) = access.next_entry::<String, serde_json::Value>()? {
                    let prime: u64 = key.parse().map_err(de::Error::custom)?;
                    if factorize(prime as u128) != vec![(prime, 1)] {
                        return Err(de::Error::custom(format!("{prime} is not prime")));
                    }
                    let e = match value {
                        serde_json::Value::String(s) if s == "inf" => Exponent::Infinite,
                        serde_json::Value::Number(n) => Exponent::Finite(
                            n.as_u64().ok_or_else(|| de::Error::custom("bad exponent"))?,
                        ),
                        other => return Err(de::Error::custom(format!("bad exponent {other}"))),
                    };
                    out.add_exponent(prime, e);
                }
                Ok(out)
            }
        }

        deserializer.deserialize_map(SnVisitor)
    }
}

/// Prime factorization by trial division. Returns (prime, multiplicity)
/// pairs in increasing prime order; `factorize(0)` and `factorize(1)` are
/// empty.
pub fn factorize(mut n: u128) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// p-adic valuation of a nonzero natural number.
pub fn valuation(mut n: u128, prime: u64) -> u64 {
    let prime = prime as u128;
    let mut v = 0;
    while n != 0 && n.is_multiple_of(prime) {
        n /= prime;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(factorize(1 << 20), vec![(2, 20)]);
    }

    #[test]
    fn multiplication_adds_exponents() {
        let a = SupernaturalNumber::from_natural(12);
        let b = SupernaturalNumber::from_natural(18);
        let c = &a * &b;
        assert_eq!(c.exponent(2), Exponent::Finite(3));
        assert_eq!(c.exponent(3), Exponent::Finite(3));
        assert_eq!(c.exponent(5), Exponent::Finite(0));
    }

    #[test]
    fn infinity_absorbs() {
        let a = SupernaturalNumber::infinite_power_of(2);
        let b = SupernaturalNumber::from_natural(8);
        assert_eq!(&a * &b, a);
        assert!(a.is_infinite_type());
        assert!(!b.is_infinite_type());
    }

    #[test]
    fn json_shape() {
        let mut s = SupernaturalNumber::infinite_power_of(2);
        s.add_exponent(3, Exponent::Finite(1));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"2":"inf","3":1}"#);
        let back: SupernaturalNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(s.to_string(), "2^∞ · 3^1");
    }

    #[test]
    fn rejects_composite_keys() {
        assert!(serde_json::from_str::<SupernaturalNumber>(r#"{"4":1}"#).is_err());
    }
}
