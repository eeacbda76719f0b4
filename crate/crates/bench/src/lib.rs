//! Fixtures shared by the benchmarks.

use systole_core::{presets, IdealHNF, NumberField};

/// `(label, field, ideal)` triples used across the benchmark groups.
pub fn standard_ideals() -> Vec<(String, NumberField, IdealHNF)> {
    let mut out = Vec::new();
    for (field, m) in [(presets::q_sqrt5(), 7u64), (presets::q_sqrt5(), 11), (presets::q_sqrt2(), 9), (presets::cubic7(), 4)] {
        let ideal = IdealHNF::integer(&field, m).expect("positive modulus");
        out.push((format!("{}/({m})", field.label()), field, ideal));
    }
    out
}
