use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use super::{
    free_action_check, index_form_upper_bound, ln_big, systole_lower_bound, theorem_bound, upper_bound_witness,
    LowerBound, SearchResult, CHAIN_SLACK,
};
use crate::error::{Error, Result};
use crate::ideal::IdealHNF;
use crate::modular_group::{index_bounds, IndexBounds, MatrixSL2};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedForms {
    /// `4√n·log N(I)`
    pub norm_form: f64,
    /// `4n^{3/2}·log|SL₂(O/I)|`
    pub index_form: f64,
}

/// Every bound for one `(K, I)` pair, plus the invariant checks that tie
/// them together.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystoleReport {
    pub field_label: String,
    pub ideal: Value,
    #[serde(serialize_with = "crate::serde_big::big")]
    pub ideal_norm: BigInt,
    pub free_action_certified: bool,
    pub lower_bound_norm_form: LowerBound,
    pub theorem_bound: f64,
    pub upper_bound_witness_length: Option<f64>,
    pub upper_bound_witness: Option<MatrixSL2>,
    pub upper_bound_closed_form: ClosedForms,
    pub index_bounds: IndexBounds,
    pub empirical_shortest: Option<SearchResult>,
    /// Failed bound-chain invariants, empty when everything holds.
    pub invariant_failures: Vec<String>,
}

impl SystoleReport {
    /// `ideal` is the descriptor echoed into the report.
    pub fn build(ideal: &IdealHNF, descriptor: Value) -> Result<Self> {
        let n = ideal.degree() as f64;
        let norm = ideal.norm().clone();
        let witness = match upper_bound_witness(ideal) {
            Ok(w) => Some(w),
            Err(Error::NormTooSmall(_)) => None,
            Err(e) => return Err(e),
        };
        let mut rep = SystoleReport {
            field_label: ideal.field().label().to_string(),
            ideal: descriptor,
            free_action_certified: free_action_check(ideal),
            lower_bound_norm_form: systole_lower_bound(ideal),
            theorem_bound: theorem_bound(ideal)?,
            upper_bound_witness_length: witness.as_ref().map(|w| w.length),
            upper_bound_witness: witness.map(|w| w.matrix),
            upper_bound_closed_form: ClosedForms {
                norm_form: 4.0 * n.sqrt() * ln_big(&norm),
                index_form: index_form_upper_bound(ideal)?,
            },
            index_bounds: index_bounds(ideal)?,
            ideal_norm: norm,
            empirical_shortest: None,
            invariant_failures: Vec::new(),
        };
        rep.check_invariants();
        Ok(rep)
    }

    pub fn with_search(mut self, result: SearchResult) -> Self {
        self.empirical_shortest = Some(result);
        self.check_invariants();
        self
    }

    pub fn invariants_hold(&self) -> bool {
        self.invariant_failures.is_empty()
    }

    fn check_invariants(&mut self) {
        let mut bad = Vec::new();
        let mut le = |what: &str, x: f64, y: f64| {
            if x > y + CHAIN_SLACK {
                bad.push(format!("{what}: {x} > {y}"));
            }
        };
        let lower = self.lower_bound_norm_form;
        let closed = &self.upper_bound_closed_form;
        le("theorem_bound <= lower_bound", self.theorem_bound, lower.value);
        if let Some(w) = self.upper_bound_witness_length {
            le("witness_length <= 4 sqrt(n) log N", w, closed.norm_form);
            if lower.valid {
                le("lower_bound <= witness_length", lower.value, w);
            }
        }
        // log N ≤ n·log r ≤ n·log|SL₂(O/I)|
        le("4 sqrt(n) log N <= 4 n^1.5 log order", closed.norm_form, closed.index_form);
        if let Some(s) = &self.empirical_shortest {
            if let Some(len) = s.length {
                if lower.valid {
                    le("lower_bound <= empirical", lower.value, len);
                }
                if let Some(w) = self.upper_bound_witness_length {
                    le("empirical <= witness_length", len, w);
                }
            }
            if s.stats.lower_bound_violations > 0 {
                bad.push(format!("{} search candidates below the lower bound", s.stats.lower_bound_violations));
            }
        }
        let n3 = self.ideal_norm.pow(3);
        if self.index_bounds.upper >= n3 && self.ideal_norm > BigInt::from(1) {
            bad.push(format!("|SL2(O/I)| = {} is not below N(I)^3 = {n3}", self.index_bounds.upper));
        }
        self.invariant_failures = bad;
    }
}
