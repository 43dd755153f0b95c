//! Text summaries: one bullet per claim, each with its evidence.

use afrokhlin_core::classify::{ClassificationReport, TraceCount};
use afrokhlin_core::{ActionSpec, Verdict};

fn witness(v: &Verdict) -> String {
    serde_json::to_string(&v.witness).expect("witnesses serialize")
}

pub fn verdict_line(label: &str, v: &Verdict) -> String {
    let keys: Vec<&str> = v.citations.iter().map(|c| c.key()).collect();
    format!("  - {label}: {}\n      witness {}\n      cites {}\n", v.decision, witness(v), keys.join(", "))
}

pub fn classification(spec: &ActionSpec, r: &ClassificationReport) -> String {
    let mut out = format!("{}: product-type Z/2 action (cutoff {})\n", spec.name(), r.cutoff);
    out += &verdict_line("strict Rokhlin property", &r.strict_rokhlin);
    out += &verdict_line("tracial Rokhlin property", &r.tracial_rokhlin);
    out += &verdict_line("outer", &r.outer);
    out += &verdict_line("crossed product simple", &r.crossed_product_simple);
    out += &verdict_line("crossed product UHF", &r.crossed_product_uhf);
    if let Some(sn) = &r.crossed_product_supernatural {
        out += &format!("  - crossed product supernatural number: {sn}\n");
    }
    out += &format!("  - algebra supernatural number: {}\n", r.algebra_supernatural);
    let count = match r.extreme_trace_count {
        TraceCount::One => "1".to_string(),
        TraceCount::Two => "2".to_string(),
        TraceCount::Unknown => "unknown".to_string(),
    };
    out += &format!("  - extreme tracial states: {count}\n");
    out += "  always:\n";
    out += "  - action strictly approximately representable: Yes\n";
    out += "  - dual action has the strict Rokhlin property: Yes\n";
    out += "  - crossed product AF: Yes\n";
    out += "  derived:\n";
    for d in &r.derived {
        out += &format!("  - {}: {} (from {})\n", d.statement, d.decision, d.from);
    }
    out
}
