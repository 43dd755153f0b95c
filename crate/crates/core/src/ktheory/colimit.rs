//! Colimits of finitely generated abelian groups ℤ^f ⊕ ⊕ℤ/dᵢ along an
//! eventually periodic sequence of endomorphisms.
//!
//! Only maps that keep the free and torsion summands apart are accepted:
//! the free block must be diagonal and the off-diagonal blocks zero. The
//! colimit then splits. A free generator scaled by c₁, c₂, … becomes
//! ℤ[1/∏|cₙ|] (or dies if some cₙ = 0), and the torsion summand becomes
//! the stable image of the composite over one period.

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::supernatural::SupernaturalNumber;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FgAbPresentation {
    pub free_rank: usize,
    /// Invariant factors d₁ | d₂ | ⋯ of the torsion subgroup, all > 1.
    #[serde(rename = "invariant_factors")]
    pub torsion: Vec<u64>,
    /// ℤ[1/S] for each free generator; S = 1 means a plain ℤ.
    #[serde(rename = "localizations")]
    pub localization: Vec<SupernaturalNumber>,
}

impl FgAbPresentation {
    /// ℤ^free_rank ⊕ ⊕ℤ/dᵢ with no localization. Orders of 1 are kept as
    /// trivial generators.
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Self {
        FgAbPresentation {
            free_rank,
            torsion,
            localization: vec![SupernaturalNumber::one(); free_rank],
        }
    }

    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|&d| d == 1)
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u128 {
        self.torsion.iter().map(|&d| d as u128).product()
    }
}

/// Maps φ₁, φ₂, … acting on column vectors of generator coordinates: φₙ is
/// `pre_period[n − 1]` for n ≤ len, then `period` repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapPattern {
    pub pre_period: Vec<IntMatrix>,
    pub period: Vec<IntMatrix>,
}

impl MapPattern {
    pub fn periodic(period: Vec<IntMatrix>) -> Self {
        MapPattern { pre_period: Vec::new(), period }
    }

    fn all(&self) -> impl Iterator<Item = &IntMatrix> {
        self.pre_period.iter().chain(&self.period)
    }
}

pub fn fgab_colimit(initial: &FgAbPresentation, maps: &MapPattern) -> Result<FgAbPresentation> {
    let f = initial.free_rank;
    let g = initial.generators();
    if initial.localization.len() != f {
        return Err(Error::Shape("one localization per free generator".into()));
    }
    if initial.torsion.contains(&0) {
        return Err(Error::UnsupportedColimit("torsion orders must be positive".into()));
    }
    if maps.period.is_empty() {
        return Err(Error::UnsupportedColimit("empty period".into()));
    }
    for m in maps.all() {
        check_map(m, f, g, &initial.torsion)?;
    }

    let mut free_rank = 0;
    let mut localization = Vec::new();
    for i in 0..f {
        let scale = |m: &IntMatrix| m[(i, i)].abs();
        if maps.all().any(|m| scale(m).is_zero()) {
            continue;
        }
        let mut s = initial.localization[i].clone();
        for m in &maps.pre_period {
            s = s * SupernaturalNumber::from_natural(to_u128(&scale(m))?);
        }
        for m in &maps.period {
            s = s * SupernaturalNumber::infinite_power_of(to_u128(&scale(m))?);
        }
        free_rank += 1;
        localization.push(s);
    }

    let torsion = stable_torsion(&initial.torsion, &maps.period, f)?;
    Ok(FgAbPresentation { free_rank, torsion, localization })
}

fn check_map(m: &IntMatrix, f: usize, g: usize, orders: &[u64]) -> Result<()> {
    if m.rows() != g || m.cols() != g {
        return Err(Error::Shape(format!("expected {g}×{g} maps, got {}×{}", m.rows(), m.cols())));
    }
    for i in 0..g {
        for j in 0..g {
            let x = &m[(i, j)];
            let off_free_diagonal = i < f && j < f && i != j;
            let mixes = (i < f) != (j < f);
            if (off_free_diagonal || mixes) && !x.is_zero() {
                return Err(Error::UnsupportedColimit(format!(
                    "entry ({i},{j}) = {x} mixes generators"
                )));
            }
            if i >= f && j >= f {
                // ℤ/d_j → ℤ/d_i needs d_i | d_j·x
                let (di, dj) = (orders[i - f], orders[j - f]);
                if !(BigInt::from(dj) * x).is_multiple_of(&BigInt::from(di)) {
                    return Err(Error::UnsupportedColimit(format!(
                        "entry ({i},{j}) is not well defined from Z/{dj} to Z/{di}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn to_u128(x: &BigInt) -> Result<u128> {
    x.to_u128()
        .ok_or_else(|| Error::UnsupportedColimit(format!("scaling {x} too large to factor")))
}

/// Invariant factors of the stable image of the period composite on
/// ⊕ℤ/dᵢ.
fn stable_torsion(orders: &[u64], period: &[IntMatrix], f: usize) -> Result<Vec<u64>> {
    let t = orders.len();
    if t == 0 {
        return Ok(Vec::new());
    }
    let d: Vec<BigInt> = orders.iter().map(|&x| BigInt::from(x)).collect();
    let block = |m: &IntMatrix| {
        let mut out = IntMatrix::zeros(t, t);
        for i in 0..t {
            for j in 0..t {
                out[(i, j)] = m[(f + i, f + j)].mod_floor(&d[i]);
            }
        }
        out
    };
    let reduce = |m: &mut IntMatrix| {
        for i in 0..t {
            for j in 0..t {
                let x = m[(i, j)].mod_floor(&d[i]);
                m[(i, j)] = x;
            }
        }
    };
    // φ_N ∘ ⋯ ∘ φ_1 over one period
    let mut phi = IntMatrix::identity(t);
    for m in period {
        phi = block(m).mul(&phi)?;
        reduce(&mut phi);
    }

    let mut power = IntMatrix::identity(t);
    let mut image = image_factors(&power, &d)?;
    loop {
        power = phi.mul(&power)?;
        reduce(&mut power);
        let next = image_factors(&power, &d)?;
        if order(&next) == order(&image) {
            break;
        }
        image = next;
    }
    image
        .into_iter()
        .filter(|x| !x.is_one())
        .map(|x| x.to_u64().ok_or_else(|| Error::UnsupportedColimit("order overflow".into())))
        .collect()
}

fn order(factors: &[BigInt]) -> BigInt {
    factors.iter().product()
}

/// Invariant factors of (Cℤᵗ + Dℤᵗ)/Dℤᵗ with D = diag(d).
fn image_factors(c: &IntMatrix, d: &[BigInt]) -> Result<Vec<BigInt>> {
    let dm = IntMatrix::diagonal(d);
    let snf = smith_normal_form(&c.hcat(&dm)?);
    let s = snf.invariant_factors();
    // lattice basis U·diag(s); D = U·diag(s)·K
    let mut k = snf.u_inv.mul(&dm)?;
    for (i, si) in s.iter().enumerate() {
        for j in 0..k.cols() {
            let (q, r) = k[(i, j)].div_rem(si);
            debug_assert!(r.is_zero());
            k[(i, j)] = q;
        }
    }
    Ok(smith_normal_form(&k)
        .invariant_factors()
        .into_iter()
        .map(|x| x.abs())
        .collect())
}

/// The stage maps (k, l) ↦ ((2r + 1)k, l) on ℤ ⊕ ℤ/2^m.
pub fn torsion_example_map(r: u64) -> IntMatrix {
    let c = (2 * r + 1).to_bigint().expect("fits");
    IntMatrix::from_rows(&[vec![c, BigInt::zero()], vec![BigInt::zero(), BigInt::one()]])
        .expect("2×2")
}
