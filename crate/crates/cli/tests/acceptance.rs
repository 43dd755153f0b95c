//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion over all of them so every criterion is reported even when an
//! earlier one fails.

use std::path::PathBuf;
use std::process::Command;

use afrokhlin_core::action::{fixtures, parse_spec_json, RankPair, TailRule};
use afrokhlin_core::cantor::{default_cover, greedy_tower, is_free, verify_tower, FiniteGSet, GroupTable};
use afrokhlin_core::classify::{classify, TraceCount};
use afrokhlin_core::interval::{rat, RatInterval, Rational};
use afrokhlin_core::ktheory::colimit::torsion_example_map;
use afrokhlin_core::ktheory::snf::smith_normal_form;
use afrokhlin_core::ktheory::{
    fgab_colimit, flip, is_equal, is_positive, is_totally_ordered, is_zero, push_forward, FgAbPresentation,
    IntMatrix, K0Element, MapPattern,
};
use afrokhlin_core::lambda::{condense, lambda, ZeroCertificate, TailProductResult};
use afrokhlin_core::traces::{extreme_trace_vector, t_matrix, Extreme};
use afrokhlin_core::{ActionSpec, Decision, Witness};
use afrokhlin_oracles as oracle;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_afrokhlin"));
    c.env_remove("AFROKHLIN_CUTOFF");
    c
}

fn run_json(args: &[&str]) -> Result<(Option<i32>, serde_json::Value), String> {
    let out = bin().args(args).arg("--json").output().map_err(|e| e.to_string())?;
    let v = serde_json::from_slice(&out.stdout).map_err(|e| format!("{args:?}: {e}"))?;
    Ok((out.status.code(), v))
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn criterion_1() -> Check {
    let car1 = classify(&fixtures::car1(), 64).map_err(err)?;
    ensure!(car1.strict_rokhlin.decision == Decision::Yes, "car1 strict");
    ensure!(car1.crossed_product_uhf.decision == Decision::Yes, "car1 UHF");
    let sn = serde_json::to_value(&car1.crossed_product_supernatural).map_err(err)?;
    ensure!(sn == serde_json::json!({"2": "inf"}), "car1 supernatural {sn}");

    let car2 = classify(&fixtures::car2(), 64).map_err(err)?;
    ensure!(car2.tracial_rokhlin.decision == Decision::Yes, "car2 tracial");
    ensure!(car2.strict_rokhlin.decision == Decision::No, "car2 strict");
    ensure!(car2.crossed_product_simple.decision == Decision::Yes, "car2 simple");
    ensure!(car2.crossed_product_uhf.decision == Decision::No, "car2 UHF");
    ensure!(car2.extreme_trace_count == TraceCount::One, "car2 trace count");

    let car3 = classify(&fixtures::car3(), 64).map_err(err)?;
    ensure!(car3.outer.decision == Decision::Yes, "car3 outer");
    ensure!(car3.tracial_rokhlin.decision == Decision::No, "car3 tracial");
    ensure!(car3.extreme_trace_count == TraceCount::Two, "car3 trace count");

    let notcar = fixtures::notcar();
    let report = classify(&notcar, 64).map_err(err)?;
    ensure!(report.tracial_rokhlin.decision == Decision::Yes, "notcar tracial");
    let Witness::TailProduct { result: TailProductResult::Zero { certificate }, .. } = &report.tracial_rokhlin.witness
    else {
        return Err("notcar witness is not a zero tail product".into());
    };
    let ZeroCertificate::PeriodicGap { tail_lambda_max, .. } = certificate else {
        return Err(format!("notcar certificate {certificate:?}"));
    };
    ensure!(*tail_lambda_max <= rat(1, 3), "notcar tail λ max {tail_lambda_max}");
    for n in 2..=40 {
        ensure!(lambda(&notcar, n).map_err(err)? <= rat(1, 3), "notcar λ_{n}");
    }
    Ok("car1/car2/car3/notcar verdicts exact".into())
}

fn criterion_2() -> Check {
    let car3 = fixtures::car3();
    let eta = K0Element::new(1, -1, 1);
    let zero = K0Element::new(0, 0, 1);
    ensure!(!is_equal(&car3, &eta, &zero).map_err(err)?, "car3 η is zero");
    ensure!(is_equal(&car3, &flip(&eta), &eta.neg()).map_err(err)?, "car3 flip(η) ≠ −η");
    ensure!(!is_equal(&car3, &flip(&eta), &eta).map_err(err)?, "car3 flip(η) = η");
    for x in [&eta, &eta.neg()] {
        let v = is_positive(&car3, x, 64).map_err(err)?;
        ensure!(v.decision == Decision::No, "car3 {x} positive: {:?}", v.decision);
    }
    ensure!(is_zero(&fixtures::car1(), &eta).map_err(err)?, "car1 η nonzero");

    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    let tails = [oracle::ConeTail::Identity, oracle::ConeTail::Symmetric, oracle::ConeTail::Gapped];
    let cases = 600;
    for i in 0..cases {
        let prefix: Vec<(u64, u64)> = (0..8)
            .map(|_| loop {
                let (p, q) = (rng.gen_range(0..=9u64), rng.gen_range(0..=9u64));
                if p + q > 0 {
                    return (p.max(q), p.min(q));
                }
            })
            .collect();
        let tail = tails[i % 3];
        let (tp, tq) = tail.pair();
        let spec = ActionSpec::new(
            "truncated",
            prefix.iter().map(|&(p, q)| RankPair::new(p, q)).collect(),
            TailRule::Periodic(vec![RankPair::new(tp, tq)]),
        )
        .map_err(err)?;
        let (a, b, s) = (rng.gen_range(-40..=40i64), rng.gen_range(-40..=40i64), rng.gen_range(0..=8u64));
        let lazy = is_positive(&spec, &K0Element::new(a, b, s), 64).map_err(err)?.decision;
        let brute = oracle::cone_positive(&prefix, tail, a, b, s);
        ensure!(lazy == Decision::from_bool(brute), "case {i}: ({a},{b})@{s} on {prefix:?} + {tail:?}: lazy {lazy}, oracle {brute}");
    }
    Ok(format!("car3/car1 class facts; lazy = brute force on {cases} random elements"))
}

fn criterion_3() -> Check {
    for m in 1..=4u32 {
        let init = FgAbPresentation::new(1, vec![1 << m]);
        let maps = MapPattern::periodic((1..=4).map(torsion_example_map).collect());
        let k0 = fgab_colimit(&init, &maps).map_err(err)?;
        ensure!(k0.torsion == vec![1u64 << m], "m={m}: engine torsion {:?}", k0.torsion);
        let (code, v) = run_json(&["torsion", "--m", &m.to_string(), "--r", "1,2,3,4"])?;
        ensure!(code == Some(0), "m={m}: exit {code:?}");
        ensure!(v["k0_torsion_subgroup"] == serde_json::json!([1u64 << m]), "m={m}: {}", v["k0_torsion_subgroup"]);
        ensure!(v["k1"]["free_rank"] == 0 && v["k1"]["invariant_factors"] == serde_json::json!([]), "m={m}: K1 {}", v["k1"]);
    }
    let (code, v) = run_json(&["torsion", "--notor"])?;
    ensure!(code == Some(0), "notor exit {code:?}");
    ensure!(v["k1"]["free_rank"] == 1 && v["k1"]["localizations"][0] == serde_json::json!({}), "notor K1 {}", v["k1"]);
    ensure!(v["k0_torsion_free"] == true, "notor K0");
    Ok("torsion Z/2^m for m = 1..4 with K1 = 0; notor K1 = Z, K0 torsion-free".into())
}

fn criterion_4() -> Check {
    let car3 = fixtures::car3();
    let tol = rat(1, 1_000_000_000);
    let vec_at = |n, e| extreme_trace_vector(&car3, e, n, 40).map_err(err);
    let mut prev = vec_at(0, Extreme::One)?;
    for n in 1..=20 {
        let cur = vec_at(n, Extreme::One)?;
        ensure!(cur.r.width() <= tol, "stage {n}: width {}", cur.r.width());
        let t = t_matrix(RatInterval::point(lambda(&car3, n).map_err(err)?)).map_err(err)?;
        let (r, s) = t.apply(&cur.r, &cur.s);
        ensure!(r.within(&prev.r, &tol) && s.within(&prev.s, &tol), "compatibility fails at stage {n}");
        ensure!(vec_at(n, Extreme::Zero)? == cur.swapped(), "extremes not exchanged at stage {n}");
        prev = cur;
    }
    let r1 = vec_at(1, Extreme::One)?.r;
    let (lo, hi) = oracle::dyadic_euler_product(80);
    let half = |x: Rational| (Rational::one() + x) / Rational::from_integer(2.into());
    let (lo, hi) = (half(lo), half(hi));
    ensure!(r1.lo() <= &lo && &hi <= r1.hi(), "r1 = {r1} does not bracket [{lo}, {hi}]");
    Ok(format!("compatibility at stages 1..20 within 1e-9; r1 = {r1}"))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cases = 1000;
    let rand_pair =|rng: &mut ChaCha8Rng, max: u64| loop {
        let (p, q) = (rng.gen_range(0..=max), rng.gen_range(0..=max));
        if p + q > 0 {
            return (p.max(q), p.min(q));
        }
    };
    // condensation vs eigenvalue counting
    let mut done = 0;
    while done < cases {
        let pairs: Vec<(u64, u64)> = (0..rng.gen_range(1..=6)).map(|_| rand_pair(&mut rng, 8)).collect();
        if pairs.iter().map(|(p, q)| p + q).product::<u64>() > 1 << 14 {
            continue;
        }
        let spec = ActionSpec::new(
            "c",
            pairs.iter().map(|&(p, q)| RankPair::new(p, q)).collect(),
            TailRule::Periodic(vec![RankPair::new(1u32, 0u32)]),
        )
        .map_err(err)?;
        let c = condense(&spec, 0, pairs.len() as u64).map_err(err)?;
        let (plus, minus) = oracle::kron_sign_counts(&pairs);
        ensure!(c == RankPair::new(plus, minus), "condense {pairs:?}: {c:?} vs ({plus}, {minus})");
        done += 1;
    }
    // T(λμ) = T(λ)T(μ)
    for _ in 0..cases {
        let mut r = || {
            let d = rng.gen_range(1..=500i64);
            rat(rng.gen_range(0..=d), d)
        };
        let (l, m) = (r(), r());
        let prod = t_matrix(RatInterval::point(l.clone())).map_err(err)?.compose(&t_matrix(RatInterval::point(m.clone())).map_err(err)?);
        ensure!(prod == t_matrix(RatInterval::point(&l * &m)).map_err(err)?.entries(), "T({l})T({m})");
    }
    // push_forward composition, flip involution and commutation
    for _ in 0..cases {
        let raw = oracle::random_spec(&mut rng);
        let spec = parse_spec_json(&raw.to_json("r")).map_err(err)?;
        let x = K0Element::new(rng.gen_range(-50..50i64), rng.gen_range(-50..50i64), rng.gen_range(0..4u64));
        let (d1, d2) = (rng.gen_range(0..4u64), rng.gen_range(0..4u64));
        let direct = push_forward(&spec, &x, x.stage + d1 + d2).map_err(err)?;
        let mid = push_forward(&spec, &x, x.stage + d1).map_err(err)?;
        ensure!(push_forward(&spec, &mid, x.stage + d1 + d2).map_err(err)? == direct, "composition {raw:?}");
        ensure!(flip(&flip(&x)) == x, "flip involution");
        ensure!(push_forward(&spec, &flip(&x), x.stage + d1).map_err(err)? == flip(&mid), "flip commutation {raw:?}");
    }
    // Smith normal form
    for _ in 0..cases {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&m).map_err(err)?);
        let product = oracle::matmul(&oracle::matmul(&snf.u.to_rows(), &snf.s.to_rows()), &snf.v.to_rows());
        ensure!(product == oracle::to_big(&m), "USV ≠ M for {m:?}");
        ensure!(oracle::det(&snf.u.to_rows()).magnitude().is_one(), "U not unimodular");
        ensure!(oracle::det(&snf.v.to_rows()).magnitude().is_one(), "V not unimodular");
        ensure!(snf.invariant_factors() == oracle::invariant_factors_by_minors(&m), "factors of {m:?}");
    }
    // towers, exhaustively
    let mut actions = 0;
    for table in [oracle::cyclic(2), oracle::cyclic(3), oracle::klein_four()] {
        for (action, free) in oracle::all_actions(&table, 12) {
            let n = action[0].len();
            let group = GroupTable { order: table.len(), table: table.clone() };
            let gs = FiniteGSet::new((0..n).map(|i| i.to_string()).collect(), group, action.clone()).map_err(err)?;
            ensure!(is_free(&gs).free == free, "freeness of {action:?}");
            ensure!(oracle::find_tower_base(&action).is_some() == free, "tower existence {action:?}");
            if free {
                let tower = greedy_tower(&gs, &default_cover(&gs).map_err(err)?).map_err(err)?;
                ensure!(verify_tower(&gs, &tower), "greedy tower invalid for {action:?}");
                ensure!(tower.base.len() * table.len() == n, "base size for {action:?}");
            }
            actions += 1;
        }
    }
    Ok(format!("{cases} cases per property; {actions} G-sets exhaustively"))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let specs = 1000;
    for i in 0..specs {
        let raw = oracle::random_spec(&mut rng);
        let spec = parse_spec_json(&raw.to_json("r")).map_err(err)?;
        let report = classify(&spec, 64).map_err(err)?;
        ensure!(!report.has_unknown(), "spec {i} undecided: {raw:?}");
        if let Some(rel) = report.lattice_violation() {
            return Err(format!("spec {i} violates {rel}: {raw:?}"));
        }
        let ordered = is_totally_ordered(&spec).map_err(err)?.decision;
        ensure!(ordered == report.strict_rokhlin.decision, "spec {i}: total order ≠ strict");
        let (strict, tracial, outer) = raw.expectations();
        ensure!(report.strict_rokhlin.decision == Decision::from_bool(strict), "spec {i} strict: {raw:?}");
        ensure!(report.tracial_rokhlin.decision == Decision::from_bool(tracial), "spec {i} tracial: {raw:?}");
        ensure!(report.outer.decision == Decision::from_bool(outer), "spec {i} outer: {raw:?}");
    }
    Ok(format!("lattice holds on {specs} random specs"))
}

fn strip_version(s: &str) -> String {
    s.lines().filter(|l| !l.trim_start().starts_with("\"tool_version\"")).collect::<Vec<_>>().join("\n")
}

fn criterion_7() -> Check {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests");
    for name in fixtures::NAMES {
        let golden = std::fs::read_to_string(root.join(format!("golden/{name}.json"))).map_err(err)?;
        for _ in 0..2 {
            let out = bin().args(["classify", name, "--json"]).output().map_err(err)?;
            ensure!(out.status.code() == Some(0), "{name}: exit {:?}", out.status.code());
            let text = String::from_utf8(out.stdout).map_err(err)?;
            ensure!(strip_version(&text) == strip_version(&golden), "{name}: report differs from golden file");
        }
    }
    let data = |f: &str| root.join("data").join(f).to_string_lossy().into_owned();
    let expectations: [(Vec<String>, i32); 5] = [
        (vec!["classify".into(), "car2".into()], 0),
        (vec!["classify".into(), data("malformed.json")], 2),
        (vec!["ktheory".into(), "car1".into(), "--element".into(), "oops".into(), "--query".into(), "flip".into()], 2),
        (vec!["classify".into(), "car3".into(), "--cutoff".into(), "0".into()], 3),
        (vec!["cantor".into(), data("fixed_point.json")], 4),
    ];
    for (args, code) in expectations {
        let got = bin().args(&args).output().map_err(err)?.status.code();
        ensure!(got == Some(code), "{args:?}: exit {got:?}, expected {code}");
    }
    Ok("golden reports byte-stable; exit codes 0/2/3/4".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("1 fixture verdicts", criterion_1),
        ("2 K-theory element facts", criterion_2),
        ("3 torsion fixture", criterion_3),
        ("4 trace parametrization", criterion_4),
        ("5 property suites", criterion_5),
        ("6 implication lattice", criterion_6),
        ("7 golden CLI reports", criterion_7),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
