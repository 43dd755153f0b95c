//! Slow, direct reference computations. Nothing here shares code with
//! `afrokhlin-core`; each function recomputes its answer from raw data by
//! the most literal method available.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Eigenvalue multiplicities of the Kronecker product of
/// diag(1^p₁, (−1)^q₁) ⊗ diag(1^p₂, (−1)^q₂) ⊗ ⋯, counted entry by entry.
pub fn kron_sign_counts(factors: &[(u64, u64)]) -> (u64, u64) {
    let mut signs: Vec<i8> = vec![1];
    for &(p, q) in factors {
        let diag: Vec<i8> = std::iter::repeat_n(1, p as usize).chain(std::iter::repeat_n(-1, q as usize)).collect();
        signs = signs.iter().flat_map(|&s| diag.iter().map(move |&d| s * d)).collect();
    }
    let plus = signs.iter().filter(|&&s| s == 1).count() as u64;
    (plus, signs.len() as u64 - plus)
}

/// Tail families the cone oracle understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeTail {
    /// (1, 0) forever: every later map is the identity.
    Identity,
    /// (1, 1) forever: the first tail map sends (a, b) to (a+b, a+b).
    Symmetric,
    /// (2, 1) forever: u triples, v is fixed, so v/u → 0.
    Gapped,
}

impl ConeTail {
    pub fn pair(self) -> (u64, u64) {
        match self {
            ConeTail::Identity => (1, 0),
            ConeTail::Symmetric => (1, 1),
            ConeTail::Gapped => (2, 1),
        }
    }
}

/// Whether (a, b) at `stage` has a pushforward with both coordinates ≥ 0,
/// by multiplying out every prefix matrix and then applying the tail's
/// limiting behaviour. Prefix pairs are (p, q) with p ≥ q.
pub fn cone_positive(prefix: &[(u64, u64)], tail: ConeTail, a: i64, b: i64, stage: u64) -> bool {
    let (mut a, mut b) = (a as i128, b as i128);
    let nonneg = |a: i128, b: i128| a >= 0 && b >= 0;
    for &(p, q) in prefix.iter().skip(stage as usize) {
        if nonneg(a, b) {
            return true;
        }
        let (p, q) = (p as i128, q as i128);
        (a, b) = (p * a + q * b, q * a + p * b);
    }
    if nonneg(a, b) {
        return true;
    }
    match tail {
        ConeTail::Identity => false,
        ConeTail::Symmetric => a + b >= 0,
        ConeTail::Gapped => a + b > 0,
    }
}

pub fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Invariant factors from determinantal divisors: Dₖ = gcd of all k×k
/// minors, dₖ = Dₖ / Dₖ₋₁ (0 once Dₖ vanishes).
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let big = to_big(m);
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| big[i][j].clone()).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            out.push(BigInt::zero());
            prev = BigInt::zero();
        } else if prev.is_zero() {
            out.push(BigInt::zero());
        } else {
            out.push(&g / &prev);
            prev = g;
        }
    }
    out
}

/// Rational bounds on ∏_{j≥1}(1 − 2^{−j}) from the first `terms` factors
/// and ∏_{j>J}(1 − xⱼ) ≥ 1 − Σ_{j>J} xⱼ = 1 − 2^{−J}.
pub fn dyadic_euler_product(terms: u32) -> (BigRational, BigRational) {
    let mut partial = BigRational::one();
    for j in 1..=terms {
        let x = BigRational::new(BigInt::one(), BigInt::from(2).pow(j));
        partial *= BigRational::one() - x;
    }
    let rest = BigRational::new(BigInt::one(), BigInt::from(2).pow(terms));
    (&partial * (BigRational::one() - rest), partial)
}

/// Expected (strict Rokhlin, tracial Rokhlin, outer) for a periodic tail
/// read straight off the repeating pairs.
pub fn periodic_expectations(pairs: &[(u64, u64)]) -> (bool, bool, bool) {
    let strict = pairs.iter().any(|&(p, q)| p == q);
    let outer = pairs.iter().any(|&(p, q)| p.min(q) > 0);
    // a recurring λ < 1 forces ∏λ = 0
    let tracial = strict || outer;
    (strict, tracial, outer)
}

/// Expected (strict, tracial, outer) for k = A·Bᵉ, p = αBᵉ + β,
/// q = γBᵉ + δ with B ≥ 2: λ tends to |α − γ|/A, and when that limit is 1
/// the deficit 1 − λ decays geometrically.
pub fn affine_expectations(scale: i64, alpha: i64, beta: i64, gamma: i64, delta: i64) -> (bool, bool, bool) {
    let strict = alpha == gamma && beta == delta;
    let tracial = (alpha - gamma).abs() < scale;
    let grows = |c: i64, o: i64| c > 0 || o > 0;
    let outer = grows(alpha, beta) && grows(gamma, delta);
    (strict, tracial, outer)
}

/// A finite group by multiplication table with 0 as identity.
pub type Table = Vec<Vec<usize>>;

pub fn cyclic(k: usize) -> Table {
    (0..k).map(|g| (0..k).map(|h| (g + h) % k).collect()).collect()
}

pub fn klein_four() -> Table {
    (0..4).map(|g| (0..4).map(|h| g ^ h).collect()).collect()
}

fn subgroups(table: &Table) -> Vec<Vec<usize>> {
    let k = table.len();
    (0u32..1 << k)
        .map(|mask| (0..k).filter(|&g| mask >> g & 1 == 1).collect::<Vec<_>>())
        .filter(|h| h.contains(&0) && h.iter().all(|&x| h.iter().all(|&y| h.contains(&table[x][y]))))
        .collect()
}

/// Action table of G on the cosets gH (G abelian, so left cosets suffice).
fn coset_action(table: &Table, h: &[usize]) -> Vec<Vec<usize>> {
    let k = table.len();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for row in table {
        let mut c: Vec<usize> = h.iter().map(|&x| row[x]).collect();
        c.sort_unstable();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    (0..k)
        .map(|g| {
            cosets
                .iter()
                .map(|c| {
                    let mut img: Vec<usize> = c.iter().map(|&x| table[g][x]).collect();
                    img.sort_unstable();
                    cosets.iter().position(|d| *d == img).expect("cosets permute")
                })
                .collect()
        })
        .collect()
}

/// Every action of an abelian group on 1..=max_points points up to
/// isomorphism, as disjoint unions of coset spaces G/H. Each entry is the
/// action table action[g][x] plus whether every stabilizer is trivial.
pub fn all_actions(table: &Table, max_points: usize) -> Vec<(Vec<Vec<usize>>, bool)> {
    let orbits: Vec<(Vec<Vec<usize>>, bool)> =
        subgroups(table).iter().map(|h| (coset_action(table, h), h.len() == 1)).collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; orbits.len()];
    fn rec(
        i: usize,
        size: usize,
        max: usize,
        orbits: &[(Vec<Vec<usize>>, bool)],
        counts: &mut Vec<usize>,
        out: &mut Vec<(Vec<Vec<usize>>, bool)>,
        k: usize,
    ) {
        if i == orbits.len() {
            if size == 0 {
                return;
            }
            let mut action = vec![Vec::new(); k];
            let mut free = true;
            for (o, &c) in orbits.iter().zip(counts.iter()) {
                for _ in 0..c {
                    let offset = action[0].len();
                    for (row, orbit_row) in action.iter_mut().zip(&o.0) {
                        row.extend(orbit_row.iter().map(|&x| x + offset));
                    }
                    free &= o.1;
                }
            }
            out.push((action, free));
            return;
        }
        let len = orbits[i].0[0].len();
        let mut c = 0;
        while size + c * len <= max {
            counts[i] = c;
            rec(i + 1, size + c * len, max, orbits, counts, out, k);
            c += 1;
        }
        counts[i] = 0;
    }
    rec(0, 0, max_points, &orbits, &mut counts, &mut out, table.len());
    out
}

/// Exhaustive search for a base N with g·N pairwise disjoint and
/// covering. Returns the first base found in subset order.
pub fn find_tower_base(action: &[Vec<usize>]) -> Option<Vec<usize>> {
    let k = action.len();
    let n = action[0].len();
    if !n.is_multiple_of(k) {
        return None;
    }
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != n / k {
            continue;
        }
        let base: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let mut hit = vec![false; n];
        let ok = (0..k).all(|g| base.iter().all(|&x| !std::mem::replace(&mut hit[action[g][x]], true)));
        if ok && hit.iter().all(|&h| h) {
            return Some(base);
        }
    }
    None
}


/// A spec described by raw numbers, independent of the core types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSpec {
    pub prefix: Vec<(u64, u64)>,
    pub tail: RawTail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawTail {
    Periodic(Vec<(u64, u64)>),
    /// (B, A, α, β, γ, δ, shift)
    Affine(u64, u64, i64, i64, i64, i64, u64),
}

fn pairs_json(pairs: &[(u64, u64)]) -> String {
    let items: Vec<String> = pairs.iter().map(|(p, q)| format!("[{p},{q}]")).collect();
    format!("[{}]", items.join(","))
}

impl RawSpec {
    /// The JSON spec document for this spec.
    pub fn to_json(&self, name: &str) -> String {
        let tail = match &self.tail {
            RawTail::Periodic(pairs) => format!(r#"{{"kind":"periodic","pairs":{}}}"#, pairs_json(pairs)),
            RawTail::Affine(b, a, al, be, ga, de, shift) => format!(
                r#"{{"kind":"affine_power","B":{b},"A":{a},"alpha":{al},"beta":{be},"gamma":{ga},"delta":{de},"shift":{shift}}}"#
            ),
        };
        format!(r#"{{"name":"{name}","prefix":{},"tail":{tail}}}"#, pairs_json(&self.prefix))
    }

    /// (strict Rokhlin, tracial Rokhlin, outer) from the tail alone.
    pub fn expectations(&self) -> (bool, bool, bool) {
        match &self.tail {
            RawTail::Periodic(pairs) => periodic_expectations(pairs),
            &RawTail::Affine(_, a, al, be, ga, de, _) => affine_expectations(a as i64, al, be, ga, de),
        }
    }
}

/// Random spec: up to 4 prefix factors, then a periodic tail of 1–3 pairs
/// or a valid affine-power tail.
pub fn random_spec<R: rand::Rng>(rng: &mut R) -> RawSpec {
    let pair = |rng: &mut R, max: u64| loop {
        let (p, q) = (rng.gen_range(0..=max), rng.gen_range(0..=max));
        if p + q > 0 {
            return (p, q);
        }
    };
    let prefix: Vec<(u64, u64)> = (0..rng.gen_range(0..=4)).map(|_| pair(rng, 6)).collect();
    let n0 = prefix.len() as u64;
    if rng.gen_bool(0.5) {
        let pairs = (0..rng.gen_range(1..=3)).map(|_| pair(rng, 6)).collect();
        return RawSpec { prefix, tail: RawTail::Periodic(pairs) };
    }
    loop {
        let b = rng.gen_range(2..=3u64);
        let a = rng.gen_range(1..=4u64);
        let alpha = rng.gen_range(0..=a as i64);
        let gamma = a as i64 - alpha;
        let beta = rng.gen_range(-4..=4i64);
        let shift = rng.gen_range(0..=n0 + 1);
        let e0 = (n0 + 1 - shift) as u32;
        let pw = (b as i64).pow(e0);
        if alpha * pw + beta >= 0 && gamma * pw - beta >= 0 {
            return RawSpec { prefix, tail: RawTail::Affine(b, a, alpha, beta, gamma, -beta, shift) };
        }
    }
}
