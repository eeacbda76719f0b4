//! Bounded search for short closed geodesics in `M_I`.
//!
//! `b` and `c` run over the elements of `I` in the coordinate box
//! `[−h·r, h·r]ⁿ`, `a` over `1 + I` in the same box, and `d` is recovered as
//! `(1 + bc)/a` when that division is exact in `O`. The result is an upper
//! estimate of the systole, never a certificate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{systole_lower_bound, upper_bound_witness, CHAIN_SLACK};
use crate::error::{Error, Result};
use crate::hyperbolic::arccosh;
use crate::ideal::IdealHNF;
use crate::modular_group::MatrixSL2;
use crate::number_field::AlgebraicInteger;

pub const DEFAULT_SEARCH_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of `(a, b, c)` tuples to examine.
    pub cap: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cap: DEFAULT_SEARCH_CAP }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub tuples_examined: u64,
    /// Tuples for which `d` exists in `O` with `d ≡ 1 (mod I)`.
    pub group_elements: u64,
    pub totally_hyperbolic: u64,
    /// Exact trace `±2`.
    pub skipped_parabolic: u64,
    /// Some embedding elliptic.
    pub skipped_not_totally_hyperbolic: u64,
    /// Candidates shorter than a valid lower bound; nonzero would refute it.
    pub lower_bound_violations: u64,
}

impl SearchStats {
    fn merge(mut self, o: &SearchStats) -> Self {
        self.tuples_examined += o.tuples_examined;
        self.group_elements += o.group_elements;
        self.totally_hyperbolic += o.totally_hyperbolic;
        self.skipped_parabolic += o.skipped_parabolic;
        self.skipped_not_totally_hyperbolic += o.skipped_not_totally_hyperbolic;
        self.lower_bound_violations += o.lower_bound_violations;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    /// Shortest closed-geodesic length found; `None` if the box held no
    /// totally hyperbolic element and no witness applies.
    pub length: Option<f64>,
    pub matrix: Option<MatrixSL2>,
    pub search_height: u64,
    pub exhaustive: bool,
    /// The minimiser is the injected witness rather than a box element.
    pub witness_is_minimum: bool,
    pub stats: SearchStats,
}

struct Best {
    length: f64,
    key: Vec<BigInt>,
    matrix: MatrixSL2,
}

fn better(x: &Best, y: &Best) -> bool {
    match x.length.total_cmp(&y.length) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => x.key < y.key,
    }
}

fn pick(x: Option<Best>, y: Option<Best>) -> Option<Best> {
    match (x, y) {
        (Some(x), Some(y)) => Some(if better(&y, &x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

enum Kind {
    Parabolic,
    NotTotallyHyperbolic,
    Length(f64),
}

/// `sqrt(Σ (2 arccosh(|σᵢ(t)|/2))²)` when every embedding is hyperbolic.
/// Parabolicity is decided on the exact trace.
fn classify_trace(trace: &AlgebraicInteger) -> Kind {
    if trace.as_integer().is_some_and(|t| t.magnitude() == &2u32.into()) {
        return Kind::Parabolic;
    }
    let mut sum = 0.0;
    for t in trace.embed() {
        let t = t.abs();
        if t <= 2.0 {
            return Kind::NotTotallyHyperbolic;
        }
        sum += (2.0 * arccosh(t / 2.0)).powi(2);
    }
    Kind::Length(sum.sqrt())
}

struct Prepared {
    a: AlgebraicInteger,
    cofactor: AlgebraicInteger,
    norm: BigInt,
}

pub fn search_shortest(ideal: &IdealHNF, height: u64, options: SearchOptions) -> Result<SearchResult> {
    if height == 0 {
        return Err(Error::InvalidArgument("search height must be at least 1".into()));
    }
    let field = ideal.field();
    let bound = BigInt::from(height) * ideal.min_rational_integer();
    let one = field.one();
    let bc_range = ideal.elements_in_box(&bound);
    let a_range: Vec<Prepared> = ideal
        .elements_in_box(&(&bound + 1))
        .into_iter()
        .map(|x| &x + &one)
        .filter(|a| !a.is_zero() && a.coords().iter().all(|c| c.magnitude() <= bound.magnitude()))
        .map(|a| Prepared { cofactor: a.norm_cofactor(), norm: a.norm(), a })
        .collect();

    let lower = systole_lower_bound(ideal);
    let per_pair = a_range.len().max(1) as u128;
    let total_pairs = bc_range.len() * bc_range.len();
    let allowed_pairs = (options.cap as u128 / per_pair).min(total_pairs as u128) as usize;
    let exhaustive = allowed_pairs == total_pairs;

    let (best, stats) = (0..allowed_pairs)
        .into_par_iter()
        .map(|idx| {
            let b = &bc_range[idx / bc_range.len()];
            let c = &bc_range[idx % bc_range.len()];
            let numerator = &one + &(b * c);
            let mut stats = SearchStats::default();
            let mut best: Option<Best> = None;
            for p in &a_range {
                stats.tuples_examined += 1;
                let Some(d) = (&numerator * &p.cofactor).div_integer(&p.norm) else {
                    continue;
                };
                if !ideal.contains(&(&d - &one)) {
                    continue;
                }
                stats.group_elements += 1;
                match classify_trace(&(&p.a + &d)) {
                    Kind::Parabolic => stats.skipped_parabolic += 1,
                    Kind::NotTotallyHyperbolic => stats.skipped_not_totally_hyperbolic += 1,
                    Kind::Length(len) => {
                        stats.totally_hyperbolic += 1;
                        if lower.valid && len < lower.value - CHAIN_SLACK {
                            stats.lower_bound_violations += 1;
                        }
                        if best.as_ref().is_none_or(|cur| len <= cur.length) {
                            let m = MatrixSL2::new(p.a.clone(), b.clone(), c.clone(), d).expect("ad - bc = 1 by construction");
                            let cand = Best { length: len, key: m.sort_key(), matrix: m };
                            best = pick(best, Some(cand));
                        }
                    }
                }
            }
            (best, stats)
        })
        .reduce(|| (None, SearchStats::default()), |(b1, s1), (b2, s2)| (pick(b1, b2), s1.merge(&s2)));

    let mut best = best;
    let mut witness_is_minimum = false;
    if let Ok(w) = upper_bound_witness(ideal) {
        let cand = Best { length: w.length, key: w.matrix.sort_key(), matrix: w.matrix };
        witness_is_minimum = best.as_ref().is_none_or(|b| better(&cand, b));
        best = pick(best, Some(cand));
    }
    let result = SearchResult {
        length: best.as_ref().map(|b| b.length),
        matrix: best.map(|b| b.matrix),
        search_height: height,
        exhaustive,
        witness_is_minimum,
        stats,
    };
    if exhaustive {
        Ok(result)
    } else {
        Err(Error::BudgetExceeded { cap: options.cap, partial: Box::new(result) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_group::in_gamma;
    use crate::number_field::presets::*;

    #[test]
    fn finds_something_shorter_than_the_witness_for_seven() {
        let k = q_sqrt5();
        let i = IdealHNF::integer(&k, 7).unwrap();
        let r = search_shortest(&i, 2, SearchOptions::default()).unwrap();
        let len = r.length.unwrap();
        let lower = systole_lower_bound(&i).value;
        let w = upper_bound_witness(&i).unwrap();
        assert!(r.exhaustive);
        assert!(lower - 1e-9 <= len && len <= w.length + 1e-6, "{len}");
        assert_eq!(r.stats.lower_bound_violations, 0);
        assert!(in_gamma(r.matrix.as_ref().unwrap(), &i));
        let again = search_shortest(&i, 2, SearchOptions::default()).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn witness_survives_a_trivial_box() {
        // in Q the box for (41) at height 1 only holds a ∈ {1, −40, 42}∩box
        let q = rationals();
        let i = IdealHNF::integer(&q, 41).unwrap();
        let r = search_shortest(&i, 1, SearchOptions::default()).unwrap();
        assert!(r.exhaustive);
        assert!(r.length.unwrap() <= upper_bound_witness(&i).unwrap().length);
    }

    #[test]
    fn budget_is_enforced() {
        let k = q_sqrt5();
        let i = IdealHNF::integer(&k, 7).unwrap();
        match search_shortest(&i, 2, SearchOptions { cap: 1000 }) {
            Err(Error::BudgetExceeded { partial, .. }) => {
                assert!(!partial.exhaustive);
                assert!(partial.stats.tuples_examined <= 1000);
                assert!(partial.length.is_some());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_zero_height() {
        let k = q_sqrt5();
        assert!(search_shortest(&IdealHNF::integer(&k, 7).unwrap(), 0, SearchOptions::default()).is_err());
    }
}
