use std::fs;
use std::path::Path;

use serde::Serialize;

use afrokhlin_core::action::{fixtures, parse_spec_json};
use afrokhlin_core::cantor::{self, FiniteGSet, Freeness};
use afrokhlin_core::citations::{self, Citation};
use afrokhlin_core::classify::{classify, ClassificationReport};
use afrokhlin_core::ktheory::colimit::torsion_example_map;
use afrokhlin_core::ktheory::{
    fgab_colimit, flip, is_equal, is_positive, is_totally_ordered, is_zero, FgAbPresentation,
    IntMatrix, K0Element, MapPattern,
};
use afrokhlin_core::lambda::{big_lambda, condense, lambda_of};
use afrokhlin_core::traces::{
    extreme_trace_vector, invariant_trace_vector, trace_of_element, Extreme, TraceVector,
};
use afrokhlin_core::{ActionSpec, Decision, Error, RankPair, RatInterval, Verdict};

use crate::render;
use crate::{bratteli, exit, Cli, Command, ExtremeArg, Query};

pub const SCHEMA_VERSION: u32 = 1;

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
    /// Report printed before failing, e.g. the witness of a non-free action.
    pub stdout: Option<String>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { message: message.into(), code: exit::INPUT_ERROR, stdout: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotFree { .. } => exit::NOT_FREE,
            Error::Undecided(_) => exit::UNKNOWN,
            _ => exit::INPUT_ERROR,
        };
        Failure { message: e.to_string(), code, stdout: None }
    }
}

type CmdResult = Result<Outcome, Failure>;

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema_version: u32,
    tool_version: &'static str,
    command: &'static str,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(command: &'static str, body: T) -> String {
    let env = Envelope { schema_version: SCHEMA_VERSION, tool_version: env!("CARGO_PKG_VERSION"), command, body };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

fn emit<T: Serialize>(cli: &Cli, command: &'static str, body: T, text: impl FnOnce(&T) -> String, code: u8) -> Outcome {
    let text = if cli.json { to_json(command, body) } else { text(&body) };
    Outcome { text, code }
}

pub fn load_spec(arg: &str) -> Result<ActionSpec, Failure> {
    if fixtures::NAMES.contains(&arg) {
        return Ok(fixtures::by_name(arg)?);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(Failure::input(format!(
            "`{arg}` is neither a fixture ({}) nor a readable file",
            fixtures::NAMES.join(", ")
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{arg}: {e}")))?;
    parse_spec_json(&text).map_err(|e| Failure::input(format!("{arg}: {e}")))
}

fn parse_element(s: &str) -> Result<K0Element, Failure> {
    Ok(s.parse::<K0Element>()?)
}

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Classify { spec } => run_classify(cli, &load_spec(spec)?),
        Command::Ktheory { spec, element, query } => {
            run_ktheory(cli, &load_spec(spec)?, parse_element(element)?, *query)
        }
        Command::Traces { spec, stage, extreme, element } => {
            let element = element.as_deref().map(parse_element).transpose()?;
            run_traces(cli, &load_spec(spec)?, *stage, *extreme, element)
        }
        Command::Condense { spec, range } => run_condense(cli, &load_spec(spec)?, range),
        Command::Bratteli { spec, stages, .. } => run_bratteli(cli, &load_spec(spec)?, *stages),
        Command::Torsion { m, r, notor } => {
            if *notor {
                run_notor(cli)
            } else {
                run_torsion(cli, *m, r)
            }
        }
        Command::Cantor { gset, cover } => run_cantor(cli, gset, cover.as_deref()),
    }
}

#[derive(Serialize)]
struct ClassifyBody {
    spec: ActionSpec,
    classification: ClassificationReport,
}

fn run_classify(cli: &Cli, spec: &ActionSpec) -> CmdResult {
    let classification = classify(spec, cli.cutoff)?;
    let code = if classification.has_unknown() { exit::UNKNOWN } else { exit::DECIDED };
    let body = ClassifyBody { spec: spec.clone(), classification };
    Ok(emit(cli, "classify", body, |b| render::classification(&b.spec, &b.classification), code))
}

#[derive(Serialize)]
#[serde(untagged)]
enum QueryResult {
    Positive { element_positive: Box<Verdict>, negation_positive: Box<Verdict> },
    EqualZero { equal_zero: Decision, citations: Vec<Citation> },
    Flip { flip: K0Element, equal_to_input: Decision, citations: Vec<Citation> },
}

#[derive(Serialize)]
struct KtheoryBody {
    spec: ActionSpec,
    element: K0Element,
    query: &'static str,
    result: QueryResult,
    totally_ordered: Verdict,
    cutoff: u64,
}

fn run_ktheory(cli: &Cli, spec: &ActionSpec, el: K0Element, query: Query) -> CmdResult {
    spec.factor_at(el.stage.max(1))?;
    let totally_ordered = is_totally_ordered(spec)?;
    let mut unknown = false;
    let (name, result) = match query {
        Query::Positive => {
            let pos = is_positive(spec, &el, cli.cutoff)?;
            let neg = is_positive(spec, &el.neg(), cli.cutoff)?;
            unknown = !pos.decision.is_decided() || !neg.decision.is_decided();
            ("positive", QueryResult::Positive { element_positive: Box::new(pos), negation_positive: Box::new(neg) })
        }
        Query::EqualZero => (
            "equal-zero",
            QueryResult::EqualZero {
                equal_zero: Decision::from_bool(is_zero(spec, &el)?),
                citations: vec![citations::K0_COLIMIT],
            },
        ),
        Query::Flip => {
            let flipped = flip(&el);
            let same = is_equal(spec, &flipped, &el)?;
            (
                "flip",
                QueryResult::Flip {
                    flip: flipped,
                    equal_to_input: Decision::from_bool(same),
                    citations: vec![citations::DUAL_FLIP],
                },
            )
        }
    };
    let body = KtheoryBody {
        spec: spec.clone(),
        element: el,
        query: name,
        result,
        totally_ordered,
        cutoff: cli.cutoff,
    };
    let code = if unknown { exit::UNKNOWN } else { exit::DECIDED };
    Ok(emit(cli, "ktheory", body, render_ktheory, code))
}

fn render_ktheory(b: &KtheoryBody) -> String {
    let mut out = format!("{}: K0 class {}\n", b.spec.name(), b.element);
    match &b.result {
        QueryResult::Positive { element_positive, negation_positive } => {
            out += &render::verdict_line("positive", element_positive);
            out += &render::verdict_line("negation positive", negation_positive);
        }
        QueryResult::EqualZero { equal_zero, .. } => {
            out += &format!("  - equal to zero: {equal_zero}\n");
        }
        QueryResult::Flip { flip, equal_to_input, .. } => {
            out += &format!("  - flip: {flip}\n  - flip equals input: {equal_to_input}\n");
        }
    }
    out += &render::verdict_line("K0 totally ordered", &b.totally_ordered);
    out
}

#[derive(Serialize)]
struct TracesBody {
    spec: ActionSpec,
    trace: &'static str,
    vector: TraceVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    element: Option<K0Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<RatInterval>,
    citations: Vec<Citation>,
    cutoff: u64,
}

fn run_traces(
    cli: &Cli,
    spec: &ActionSpec,
    stage: u64,
    extreme: ExtremeArg,
    element: Option<K0Element>,
) -> CmdResult {
    let (trace, vector, cites) = match extreme {
        ExtremeArg::Invariant => (
            "invariant",
            invariant_trace_vector(spec, stage)?,
            vec![citations::INVARIANT_TRACE],
        ),
        ExtremeArg::Zero | ExtremeArg::One => {
            let which = if extreme == ExtremeArg::One { Extreme::One } else { Extreme::Zero };
            let name = if which == Extreme::One { "extreme_1" } else { "extreme_0" };
            (
                name,
                extreme_trace_vector(spec, which, stage, cli.cutoff)?,
                vec![citations::TWO_EXTREME_TRACES, citations::TRACE_PARAMETRIZATION],
            )
        }
    };
    let value = element.as_ref().map(|el| trace_of_element(spec, el, &vector)).transpose()?;
    let body = TracesBody { spec: spec.clone(), trace, vector, element, value, citations: cites, cutoff: cli.cutoff };
    Ok(emit(cli, "traces", body, render_traces, exit::DECIDED))
}

fn render_traces(b: &TracesBody) -> String {
    let mut out = format!("{}: {} trace at stage {}\n", b.spec.name(), b.trace.replace('_', " "), b.vector.stage);
    out += &format!("  - r = {}\n  - s = {}\n", b.vector.r, b.vector.s);
    if let (Some(el), Some(v)) = (&b.element, &b.value) {
        out += &format!("  - trace of {el} = {v}\n");
    }
    out
}

#[derive(Serialize)]
struct CondenseBody {
    spec: ActionSpec,
    m: u64,
    n: u64,
    factor: RankPair,
    #[serde(serialize_with = "afrokhlin_core::interval::serialize_rational")]
    lambda: afrokhlin_core::Rational,
    #[serde(serialize_with = "afrokhlin_core::interval::serialize_rational")]
    big_lambda: afrokhlin_core::Rational,
    citations: Vec<Citation>,
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::input(format!("malformed range {s:?}: expected m..n"));
    let (m, n) = s.split_once("..").ok_or_else(bad)?;
    Ok((m.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

fn run_condense(cli: &Cli, spec: &ActionSpec, range: &str) -> CmdResult {
    let (m, n) = parse_range(range)?;
    let factor = condense(spec, m, n)?;
    let body = CondenseBody {
        spec: spec.clone(),
        m,
        n,
        lambda: lambda_of(&factor),
        big_lambda: big_lambda(spec, m, n)?,
        factor,
        citations: vec![citations::CONDENSE],
    };
    Ok(emit(
        cli,
        "condense",
        body,
        |b| {
            format!(
                "{}: factors {}..{} condense to ({}, {})\n  - λ = {}\n",
                b.spec.name(),
                b.m + 1,
                b.n,
                b.factor.p,
                b.factor.q,
                b.lambda
            )
        },
        exit::DECIDED,
    ))
}

#[derive(Serialize)]
struct BratteliBody {
    spec: ActionSpec,
    stages: u64,
    dot: String,
}

fn run_bratteli(cli: &Cli, spec: &ActionSpec, stages: u64) -> CmdResult {
    if stages == 0 {
        return Err(Failure::input("--stages must be at least 1"));
    }
    let dot = bratteli::to_dot(spec, stages)?;
    let body = BratteliBody { spec: spec.clone(), stages, dot };
    Ok(emit(cli, "bratteli", body, |b| b.dot.clone(), exit::DECIDED))
}

#[derive(Serialize)]
struct TorsionBody {
    example: &'static str,
    m: u32,
    r: Vec<u64>,
    k0: FgAbPresentation,
    k0_torsion_subgroup: Vec<u64>,
    k1: FgAbPresentation,
    citations: Vec<Citation>,
}

fn run_torsion(cli: &Cli, m: u32, r: &[u64]) -> CmdResult {
    if !(1..=62).contains(&m) {
        return Err(Failure::input("--m must lie in 1..=62"));
    }
    if r.is_empty() || r.contains(&0) {
        return Err(Failure::input("every r(n) must be at least 1"));
    }
    let initial = FgAbPresentation::new(1, vec![1u64 << m]);
    let k0 = fgab_colimit(&initial, &MapPattern::periodic(r.iter().map(|&x| torsion_example_map(x)).collect()))?;
    let body = TorsionBody {
        example: "torsion",
        m,
        r: r.to_vec(),
        k0_torsion_subgroup: k0.torsion.clone(),
        k0,
        k1: FgAbPresentation::new(0, vec![]),
        citations: vec![citations::TORSION_K0, citations::TORSION_K1, citations::R_POSITIVE],
    };
    Ok(emit(cli, "torsion", body, render_torsion, exit::DECIDED))
}

fn render_torsion(b: &TorsionBody) -> String {
    let torsion: Vec<String> = b.k0_torsion_subgroup.iter().map(|d| format!("Z/{d}")).collect();
    let loc: Vec<String> = b.k0.localization.iter().map(|s| format!("Z[1/({s})]")).collect();
    format!(
        "torsion example, m = {}, r = {:?} (repeated)\n  - K0 = {}\n  - K0 torsion subgroup: {}\n  - K1 = 0\n",
        b.m,
        b.r,
        loc.iter().chain(&torsion).cloned().collect::<Vec<_>>().join(" ⊕ "),
        if torsion.is_empty() { "0".to_string() } else { torsion.join(" ⊕ ") },
    )
}

#[derive(Serialize)]
struct NotorBody {
    example: &'static str,
    k0_torsion_free: bool,
    k1: FgAbPresentation,
    citations: Vec<Citation>,
}

fn run_notor(cli: &Cli) -> CmdResult {
    let k1 = fgab_colimit(
        &FgAbPresentation::new(1, vec![]),
        &MapPattern::periodic(vec![IntMatrix::identity(1)]),
    )?;
    let body = NotorBody {
        example: "notor",
        k0_torsion_free: true,
        k1,
        citations: vec![citations::NOTOR_K0, citations::NOTOR_K1],
    };
    Ok(emit(
        cli,
        "torsion",
        body,
        |_| "no-torsion example\n  - K0 torsion-free\n  - K1 = Z\n".to_string(),
        exit::DECIDED,
    ))
}

#[derive(Serialize)]
struct TowerReport {
    base: Vec<String>,
    translates: Vec<Vec<String>>,
    verified: bool,
}

#[derive(Serialize)]
struct CantorBody {
    points: usize,
    group_order: usize,
    freeness: Freeness,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixed_point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tower: Option<TowerReport>,
    citations: Vec<Citation>,
}

fn run_cantor(cli: &Cli, gset: &Path, cover: Option<&Path>) -> CmdResult {
    let read = |p: &Path| fs::read_to_string(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())));
    let gs = FiniteGSet::from_json(&read(gset)?).map_err(|e| Failure::input(format!("{}: {e}", gset.display())))?;
    let freeness = cantor::is_free(&gs);
    let names = |set: &std::collections::BTreeSet<usize>| set.iter().map(|&x| gs.elements()[x].clone()).collect();
    let mut body = CantorBody {
        points: gs.len(),
        group_order: gs.group_order(),
        fixed_point: freeness.witness.map(|w| gs.elements()[w.point].clone()),
        freeness,
        tower: None,
        citations: vec![citations::CANTOR_FREE, citations::CANTOR_TOWER, citations::ROKHLIN_PARTITION],
    };
    if !body.freeness.free {
        let w = body.freeness.witness.expect("non-free actions carry a witness");
        let report = if cli.json { to_json("cantor", &body) } else { render_cantor(&body) };
        return Err(Failure {
            message: Error::NotFree { group: w.group_element, point: w.point }.to_string(),
            code: exit::NOT_FREE,
            stdout: Some(report),
        });
    }
    let cover = match cover {
        Some(p) => cantor::parse_cover(&gs, &read(p)?)?,
        None => cantor::default_cover(&gs)?,
    };
    let tower = cantor::greedy_tower(&gs, &cover)?;
    body.tower = Some(TowerReport {
        base: names(&tower.base),
        translates: tower.translates.iter().map(names).collect(),
        verified: cantor::verify_tower(&gs, &tower),
    });
    Ok(emit(cli, "cantor", body, render_cantor, exit::DECIDED))
}

fn render_cantor(b: &CantorBody) -> String {
    let mut out = format!("G-set with {} points, |G| = {}\n", b.points, b.group_order);
    match (&b.freeness.witness, &b.fixed_point) {
        (Some(w), Some(x)) => out += &format!("  - free: No (group element {} fixes {x})\n", w.group_element),
        _ => out += "  - free: Yes\n",
    }
    if let Some(t) = &b.tower {
        out += &format!("  - tower base: {{{}}}\n", t.base.join(", "));
        for (g, tr) in t.translates.iter().enumerate() {
            out += &format!("  - g{g}·N = {{{}}}\n", tr.join(", "));
        }
        out += &format!("  - partition verified: {}\n", if t.verified { "Yes" } else { "No" });
    }
    out
}
