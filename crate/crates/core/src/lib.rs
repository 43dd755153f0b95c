//! Exact classification invariants for product-type ℤ/2 actions on UHF
//! algebras: Rokhlin-type verdicts, the ordered K₀ of the crossed product,
//! its trace simplex, and Rokhlin towers for free actions on finite
//! quotients of Cantor systems.

pub mod action;
pub mod cantor;
pub mod citations;
pub mod classify;
pub mod error;
pub mod interval;
pub mod ktheory;
pub mod lambda;
pub mod supernatural;
pub mod traces;
pub mod verdict;

pub use action::{fixtures, ActionSpec, AffinePower, RankPair, TailRule};
pub use error::{Error, Result};
pub use interval::{RatInterval, Rational};
pub use verdict::{Decision, Verdict, Witness};
