//! Canonical printers for the file formats. Everything routes through the
//! `Display` impls of the core types, so output is deterministic.

use std::fmt::Write;

use crate::gb::{Basis, Certificate};

/// Ideal file form of a basis.
pub fn print_ideal(basis: &Basis) -> String {
    let mut out = String::new();
    writeln!(out, "domain {}", basis.domain()).unwrap();
    for g in basis.gens() {
        writeln!(out, "gen {g}").unwrap();
    }
    out
}

/// Basis output: the ideal file plus one comment line per completion pass.
pub fn print_basis(basis: &Basis, pass_log: &[(u64, u64)]) -> String {
    let mut out = print_ideal(basis);
    for (pass, added) in pass_log {
        writeln!(out, "# pass {pass} added {added}").unwrap();
    }
    out
}

/// Certificate file: one line per division step and a final remainder.
pub fn print_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    for step in &cert.steps {
        let map = step
            .renaming
            .iter()
            .map(|(k, v)| format!("{k}->{v}"))
            .collect::<Vec<_>>()
            .join(",");
        writeln!(
            out,
            "step g={} r={} h={} map={} head={}",
            step.gen_index, step.r, step.h, map, step.head
        )
        .unwrap();
    }
    writeln!(out, "remainder {}", cert.remainder).unwrap();
    out
}

/// One output line of `emb-pairs`.
pub fn print_pair_line(left: &crate::emb::LocalEmbedding, right: &crate::emb::LocalEmbedding) -> String {
    format!("pair left={left} right={right}")
}
