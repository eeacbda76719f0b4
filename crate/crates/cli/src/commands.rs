use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use systole_core::modular_group::{brute_force_image_order, order_sl2_quotient};
use systole_core::systole::{search_shortest, verify_suite, SearchOptions};
use systole_core::{Error, SystoleReport};

use crate::config::{Command, Resolved};
use crate::error::{CliError, Status};
use crate::render::{num, Table};

pub struct Outcome {
    pub results: Vec<Value>,
    pub table: Table,
    pub status: Status,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

pub fn run(r: &Resolved) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let out = match r.config.command {
        Command::Bounds => bounds(r, false),
        Command::Search => bounds(r, true),
        Command::Verify => verify(r),
        Command::Order => order(r),
    }?;
    eprintln!("{} finished in {:.3} s", r.config.command.name(), start.elapsed().as_secs_f64());
    Ok(out)
}

const REPORT_COLUMNS: [&str; 10] =
    ["field_label", "ideal", "norm", "order", "lower", "theorem", "upper_witness", "upper_closed", "empirical", "exhaustive"];

fn bounds(r: &Resolved, search: bool) -> Result<Outcome, CliError> {
    let mut out = Outcome { results: Vec::new(), table: Table::new(&REPORT_COLUMNS), status: Status::Ok };
    for (desc, ideal) in &r.ideals {
        let mut rep = SystoleReport::build(ideal, desc.to_value())?;
        if search {
            let t = Instant::now();
            let result = match search_shortest(ideal, r.config.height, SearchOptions { cap: r.config.cap }) {
                Ok(res) => res,
                Err(Error::BudgetExceeded { cap, partial }) => {
                    eprintln!("{desc}: budget of {cap} tuples exhausted, result is partial");
                    out.status = out.status.combine(Status::Budget);
                    *partial
                }
                Err(e) => return Err(e.into()),
            };
            eprintln!(
                "{desc}: {} tuples, {} group elements, {} totally hyperbolic in {:.3} s",
                result.stats.tuples_examined,
                result.stats.group_elements,
                result.stats.totally_hyperbolic,
                t.elapsed().as_secs_f64()
            );
            rep = rep.with_search(result);
        }
        if !rep.invariants_hold() {
            for f in &rep.invariant_failures {
                eprintln!("{desc}: invariant failed: {f}");
            }
            out.status = out.status.combine(Status::Failure);
        }
        let empirical = rep.empirical_shortest.as_ref();
        out.table.push(vec![
            rep.field_label.clone(),
            desc.to_string(),
            rep.ideal_norm.to_string(),
            rep.index_bounds.upper.to_string(),
            num(rep.lower_bound_norm_form.value),
            num(rep.theorem_bound),
            rep.upper_bound_witness_length.map(num).unwrap_or_default(),
            num(rep.upper_bound_closed_form.norm_form),
            empirical.and_then(|e| e.length).map(num).unwrap_or_default(),
            empirical.map(|e| e.exhaustive.to_string()).unwrap_or_default(),
        ]);
        out.results.push(to_value(&rep));
    }
    Ok(out)
}

fn verify(r: &Resolved) -> Result<Outcome, CliError> {
    let columns = [
        "field_label",
        "ideal",
        "samples",
        "seed",
        "zero_y0",
        "lemma1_failures",
        "lemma2_failures",
        "trace_inequality_failures",
        "proposition_pairs",
        "proposition_failures",
        "min_displacement",
    ];
    let mut out = Outcome { results: Vec::new(), table: Table::new(&columns), status: Status::Ok };
    for (desc, ideal) in &r.ideals {
        let suite = verify_suite(ideal, r.config.samples, r.config.seed)?;
        for c in &suite.counterexamples {
            eprintln!("{desc}: {} failed on sample {}: {} ({})", c.check, c.sample, c.matrix, c.detail);
        }
        if !suite.all_passed() {
            out.status = out.status.combine(Status::Failure);
        }
        out.table.push(vec![
            r.field.label().to_string(),
            desc.to_string(),
            suite.samples.to_string(),
            suite.seed.to_string(),
            suite.zero_y0.to_string(),
            suite.lemma1_failures.to_string(),
            suite.lemma2_failures.to_string(),
            suite.trace_inequality_failures.to_string(),
            suite.proposition_pairs.to_string(),
            suite.proposition_failures.to_string(),
            suite.min_displacement.map(num).unwrap_or_default(),
        ]);
        out.results.push(json!({
            "field_label": r.field.label(),
            "ideal": desc.to_value(),
            "ideal_norm": ideal.norm().to_string(),
            "suite": to_value(&suite),
        }));
    }
    Ok(out)
}

fn order(r: &Resolved) -> Result<Outcome, CliError> {
    let columns = ["field_label", "ideal", "norm", "formula", "brute", "equal", "index_lower"];
    let mut out = Outcome { results: Vec::new(), table: Table::new(&columns), status: Status::Ok };
    for (desc, ideal) in &r.ideals {
        let formula = order_sl2_quotient(ideal)?;
        let brute = match brute_force_image_order(ideal, r.config.cap) {
            Ok(v) => Some(v),
            Err(Error::CapExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let equal = brute.map(|b| formula == b.into());
        match equal {
            Some(false) => {
                eprintln!("{desc}: formula {formula} differs from closure {}", brute.unwrap());
                out.status = out.status.combine(Status::Failure);
            }
            None => eprintln!("{desc}: closure skipped, order {formula} exceeds cap {}", r.config.cap),
            Some(true) => {}
        }
        let lower = ideal.min_rational_integer().to_string();
        out.table.push(vec![
            r.field.label().to_string(),
            desc.to_string(),
            ideal.norm().to_string(),
            formula.to_string(),
            brute.map(|b| b.to_string()).unwrap_or_else(|| "skipped".into()),
            equal.map(|e| e.to_string()).unwrap_or_default(),
            lower.clone(),
        ]);
        out.results.push(json!({
            "field_label": r.field.label(),
            "ideal": desc.to_value(),
            "ideal_norm": ideal.norm().to_string(),
            "formula": formula.to_string(),
            "brute": brute.map(|b| b.to_string()),
            "brute_status": if brute.is_some() { "computed" } else { "skipped: over cap" },
            "equal": equal,
            "index_lower": lower,
        }));
    }
    Ok(out)
}
