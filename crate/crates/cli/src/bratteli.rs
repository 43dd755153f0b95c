//! DOT export of the crossed product's Bratteli diagram. Stage n has nodes
//! L{n} and R{n} for the two M_t(n) summands; between stages n − 1 and n
//! the straight edges carry multiplicity pₙ and the crossed edges qₙ.

use std::fmt::Write;

use afrokhlin_core::{ActionSpec, Result};

pub fn to_dot(spec: &ActionSpec, stages: u64) -> Result<String> {
    let mut out = String::new();
    let name = spec.name().replace('"', "'");
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    let mut t = num_bigint::BigUint::from(1u32);
    for n in 1..=stages {
        t *= spec.factor_at(n)?.size();
        writeln!(out, "  L{n} [label=\"{t}\"];").unwrap();
        writeln!(out, "  R{n} [label=\"{t}\"];").unwrap();
    }
    for n in 2..=stages {
        let f = spec.factor_at(n)?;
        let m = n - 1;
        writeln!(out, "  L{m} -> L{n} [label=\"{}\"];", f.p).unwrap();
        writeln!(out, "  R{m} -> R{n} [label=\"{}\"];", f.p).unwrap();
        writeln!(out, "  L{m} -> R{n} [label=\"{}\", style=dashed];", f.q).unwrap();
        writeln!(out, "  R{m} -> L{n} [label=\"{}\", style=dashed];", f.q).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
