//! The systole bounds for `M_I`: the norm-form lower bound, its index form,
//! the explicit upper-bound witness, and the empirical search and
//! verification drivers.

mod report;
mod search;
mod verify;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperbolic::arccosh;
use crate::ideal::IdealHNF;
use crate::modular_group::{in_gamma, order_sl2_quotient, MatrixSL2};

pub use report::{ClosedForms, SystoleReport};
pub use search::{search_shortest, SearchOptions, SearchResult, SearchStats, DEFAULT_SEARCH_CAP};
pub use verify::{verify_suite, Counterexample, SuiteReport, PROPOSITION_POINTS};

/// Slack used when comparing the chained floating-point bounds.
pub const CHAIN_SLACK: f64 = 1e-9;

/// Natural logarithm of a positive big integer, exact to double precision
/// even beyond the `f64` range.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "logarithm of a non-positive integer");
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `N(I) ≥ 4ⁿ`, under which `Γ(I)` acts freely and `M_I` is a manifold.
pub fn free_action_check(ideal: &IdealHNF) -> bool {
    *ideal.norm() >= BigInt::from(4).pow(ideal.degree() as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBound {
    pub value: f64,
    /// `N(I) ≥ 40^{n/2}`, the hypothesis under which the value is proved.
    pub valid: bool,
}

/// `(4/√n)·log N(I) − 2√n·log 40`.
pub fn systole_lower_bound(ideal: &IdealHNF) -> LowerBound {
    let n = ideal.degree() as u32;
    let rn = (n as f64).sqrt();
    let value = 4.0 / rn * ln_big(ideal.norm()) - 2.0 * rn * 40f64.ln();
    // N ≥ 40^{n/2}  ⇔  N² ≥ 40ⁿ
    let valid = ideal.norm() * ideal.norm() >= BigInt::from(40).pow(n);
    LowerBound { value, valid }
}

/// `(4/(3√n))·log|SL₂(O/I)| − 2√n·log 40`.
pub fn theorem_bound(ideal: &IdealHNF) -> Result<f64> {
    let rn = (ideal.degree() as f64).sqrt();
    let order = order_sl2_quotient(ideal)?;
    Ok(4.0 / (3.0 * rn) * ln_big(&order) - 2.0 * rn * 40f64.ln())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpperBoundWitness {
    pub matrix: MatrixSL2,
    /// `tr B = 2 − N(I)²`
    #[serde(serialize_with = "crate::serde_big::big")]
    pub trace: BigInt,
    /// `√n · 2 arccosh((N(I)² − 2)/2)`
    pub length: f64,
    /// `4√n·log N(I)`
    pub closed_form: f64,
}

/// The element `B = [[1 − N², N], [−N, 1]]` of `Γ(I)`, whose trace is the
/// same rational integer at every embedding.
pub fn upper_bound_witness(ideal: &IdealHNF) -> Result<UpperBoundWitness> {
    let norm = ideal.norm();
    if *norm <= BigInt::from(2) {
        return Err(Error::NormTooSmall(norm.to_string()));
    }
    let k = ideal.field();
    let n2 = norm * norm;
    let matrix = MatrixSL2::new(
        k.integer(BigInt::from(1) - &n2),
        k.integer(norm.clone()),
        k.integer(-norm),
        k.one(),
    )?;
    if !in_gamma(&matrix, ideal) {
        return Err(Error::Invariant("witness is not in the congruence subgroup".into()));
    }
    let trace = matrix.trace().as_integer().cloned().expect("rational integer entries");
    if trace.abs() != &n2 - 2 {
        return Err(Error::Invariant(format!("witness trace {trace} is not N(I)^2 - 2")));
    }
    let rn = (ideal.degree() as f64).sqrt();
    let half = (trace.abs().to_f64().unwrap_or(f64::INFINITY)) / 2.0;
    let length = rn * 2.0 * arccosh(half);
    let closed_form = 4.0 * rn * ln_big(norm);
    if length > closed_form + CHAIN_SLACK {
        return Err(Error::Invariant(format!("witness length {length} exceeds 4 sqrt(n) log N(I) = {closed_form}")));
    }
    Ok(UpperBoundWitness { matrix, trace, length, closed_form })
}

/// `4n^{3/2}·log|SL₂(O/I)|`, the index form of the upper bound.
pub fn index_form_upper_bound(ideal: &IdealHNF) -> Result<f64> {
    let n = ideal.degree() as f64;
    Ok(4.0 * n.powf(1.5) * ln_big(&order_sl2_quotient(ideal)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::presets::*;
    use approx::assert_abs_diff_eq;

    fn int(k: &crate::number_field::NumberField, m: u64) -> IdealHNF {
        IdealHNF::integer(k, m).unwrap()
    }

    #[test]
    fn free_action_examples() {
        let k = q_sqrt5();
        assert!(!free_action_check(&int(&k, 2)));
        assert!(free_action_check(&int(&k, 7)));
        assert!(free_action_check(&int(&rationals(), 5)));
    }

    #[test]
    fn lower_bound_values() {
        let k = q_sqrt5();
        let b = systole_lower_bound(&int(&k, 7));
        assert!(b.valid);
        assert_abs_diff_eq!(b.value, 0.574003387879122, epsilon = 1e-12);
        assert!(!systole_lower_bound(&int(&k, 2)).valid);
        let b = systole_lower_bound(&int(&rationals(), 41));
        assert!(b.valid);
        assert_abs_diff_eq!(b.value, 7.476529358589359, epsilon = 1e-12);
        // 40^{1/2} ≈ 6.32
        assert!(!systole_lower_bound(&int(&rationals(), 6)).valid);
        assert!(systole_lower_bound(&int(&rationals(), 7)).valid);
    }

    #[test]
    fn theorem_bound_values() {
        let k = q_sqrt5();
        assert_abs_diff_eq!(theorem_bound(&int(&k, 7)).unwrap(), 0.5736106325967985, epsilon = 1e-12);
        assert_abs_diff_eq!(theorem_bound(&int(&k, 11)).unwrap(), 3.115168983176371, epsilon = 1e-12);
        let t13 = theorem_bound(&int(&k, 13)).unwrap();
        assert!(t13 > theorem_bound(&int(&k, 11)).unwrap());
    }

    #[test]
    fn witness_values() {
        let k = q_sqrt5();
        let w = upper_bound_witness(&int(&k, 7)).unwrap();
        assert_eq!(w.trace, BigInt::from(-2399));
        assert_abs_diff_eq!(w.length, 22.01310267743148, epsilon = 1e-9);
        assert_abs_diff_eq!(w.closed_form, 22.0154601916278, epsilon = 1e-9);
        let w = upper_bound_witness(&int(&k, 2)).unwrap();
        assert_eq!(w.trace, BigInt::from(-14));
        assert_abs_diff_eq!(w.length, 7.449838875621698, epsilon = 1e-12);
        assert!(matches!(upper_bound_witness(&int(&rationals(), 2)), Err(Error::NormTooSmall(_))));
    }

    #[test]
    fn big_logarithm() {
        let x = BigInt::from(10).pow(400);
        assert_abs_diff_eq!(ln_big(&x), 400.0 * 10f64.ln(), epsilon = 1e-9);
        assert_abs_diff_eq!(ln_big(&BigInt::from(49)), 49f64.ln(), epsilon = 1e-15);
    }
}
