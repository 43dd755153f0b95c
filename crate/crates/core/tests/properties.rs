use afrokhlin_core::action::{parse_spec_json, RankPair, TailRule};
use afrokhlin_core::interval::{RatInterval, Rational};
use afrokhlin_core::ktheory::snf::smith_normal_form;
use afrokhlin_core::ktheory::{flip, is_zero, push_forward, transition, IntMatrix, K0Element};
use afrokhlin_core::lambda::{big_lambda, condense, lambda_of};
use afrokhlin_core::traces::t_matrix;
use afrokhlin_core::ActionSpec;
use afrokhlin_oracles as oracle;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

fn normalized_pair(max: u64) -> impl Strategy<Value = (u64, u64)> {
    (0..=max, 0..=max)
        .prop_filter("nonzero", |(p, q)| p + q > 0)
        .prop_map(|(p, q)| (p.max(q), p.min(q)))
}

fn spec_from_pairs(pairs: &[(u64, u64)]) -> ActionSpec {
    let prefix = pairs.iter().map(|&(p, q)| RankPair::new(p, q)).collect();
    ActionSpec::new("prefix", prefix, TailRule::Periodic(vec![RankPair::new(1u32, 0u32)])).unwrap()
}

fn random_spec(seed: u64) -> ActionSpec {
    let raw = oracle::random_spec(&mut ChaCha8Rng::seed_from_u64(seed));
    parse_spec_json(&raw.to_json("random")).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (1i64..=1000).prop_flat_map(|d| (0..=d, Just(d))).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn condense_matches_eigenvalue_count(
        factors in prop::collection::vec(normalized_pair(8), 1..=6)
            .prop_filter("dimension ≤ 2^14", |f| f.iter().map(|(p, q)| p + q).product::<u64>() <= 1 << 14),
        start in 0usize..3,
    ) {
        let start = start.min(factors.len() - 1);
        let spec = spec_from_pairs(&factors);
        let n = factors.len() as u64;
        let (plus, minus) = oracle::kron_sign_counts(&factors[start..]);
        let c = condense(&spec, start as u64, n).unwrap();
        prop_assert_eq!((c.p.clone(), c.q.clone()), (plus.into(), minus.into()));
        prop_assert_eq!(lambda_of(&c), big_lambda(&spec, start as u64, n).unwrap());
    }

    #[test]
    fn t_matrix_multiplicative(l in rational(), m in rational()) {
        let tl = t_matrix(RatInterval::point(l.clone())).unwrap();
        let tm = t_matrix(RatInterval::point(m.clone())).unwrap();
        let tlm = t_matrix(RatInterval::point(&l * &m)).unwrap();
        prop_assert_eq!(tl.compose(&tm), tlm.entries());
    }

    #[test]
    fn transition_diagonalizes(pair in normalized_pair(50), a in -1000i64..1000, b in -1000i64..1000) {
        let spec = spec_from_pairs(&[pair]);
        let x = K0Element::new(a, b, 0);
        let y = push_forward(&spec, &x, 1).unwrap();
        let (p, q) = (pair.0 as i64, pair.1 as i64);
        prop_assert_eq!(y.u(), x.u() * (p + q));
        prop_assert_eq!(y.v(), x.v() * (p - q));
        prop_assert_eq!(transition(&spec, 1).unwrap().to_matrix(), IntMatrix::from_rows(&[vec![p, q], vec![q, p]]).unwrap());
    }

    #[test]
    fn push_forward_composes(seed in any::<u64>(), a in -50i64..50, b in -50i64..50, s in 0u64..4, d1 in 0u64..4, d2 in 0u64..4) {
        let spec = random_spec(seed);
        let x = K0Element::new(a, b, s);
        let direct = push_forward(&spec, &x, s + d1 + d2).unwrap();
        let mid = push_forward(&spec, &x, s + d1).unwrap();
        prop_assert_eq!(push_forward(&spec, &mid, s + d1 + d2).unwrap(), direct);
    }

    #[test]
    fn flip_is_an_involution_commuting_with_push_forward(seed in any::<u64>(), a in -50i64..50, b in -50i64..50, s in 0u64..4, d in 0u64..5) {
        let spec = random_spec(seed);
        let x = K0Element::new(a, b, s);
        prop_assert_eq!(flip(&flip(&x)), x.clone());
        prop_assert_eq!(
            push_forward(&spec, &flip(&x), s + d).unwrap(),
            flip(&push_forward(&spec, &x, s + d).unwrap())
        );
    }

    #[test]
    fn colimit_is_torsion_free(seed in any::<u64>(), a in -20i64..20, b in -20i64..20, s in 0u64..4, c in 2i64..6) {
        let spec = random_spec(seed);
        let x = K0Element::new(a, b, s);
        if is_zero(&spec, &x.scale(&BigInt::from(c))).unwrap() {
            prop_assert!(is_zero(&spec, &x).unwrap());
        }
    }

    #[test]
    fn smith_normal_form_is_valid(
        m in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
    ) {
        let mat = IntMatrix::from_rows(&m).unwrap();
        let snf = smith_normal_form(&mat);
        let big = |x: &IntMatrix| x.to_rows();
        let product = oracle::matmul(&oracle::matmul(&big(&snf.u), &big(&snf.s)), &big(&snf.v));
        prop_assert_eq!(product, oracle::to_big(&m));
        prop_assert_eq!(oracle::det(&big(&snf.u)).abs(), BigInt::from(1));
        prop_assert_eq!(oracle::det(&big(&snf.v)).abs(), BigInt::from(1));
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    prop_assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        let d = snf.invariant_factors();
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert_eq!(d, oracle::invariant_factors_by_minors(&m));
    }
}
