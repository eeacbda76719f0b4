//! Randomised verification of the trace lemmas, the per-embedding trace
//! inequality, and the pointwise displacement bound on samples from `Γ(I)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::systole_lower_bound;
use crate::error::Result;
use crate::hyperbolic::{displacement_at, ProductPoint, UpperHalfPoint};
use crate::ideal::IdealHNF;
use crate::modular_group::{lemma1_check, lemma2_check, random_gamma_element, MatrixSL2, TraceDecomposition};

/// Points `z` drawn per sample for the displacement check.
pub const PROPOSITION_POINTS: usize = 10;

const MAX_WORD: usize = 4;
const EQ_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: &'static str,
    pub sample: usize,
    pub matrix: MatrixSL2,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SuiteReport {
    pub samples: usize,
    pub seed: u64,
    /// Samples with `y₀ = 0`; the lemmas say nothing about them.
    pub zero_y0: usize,
    pub lemma1_checked: usize,
    pub lemma1_failures: usize,
    pub lemma2_checked: usize,
    pub lemma2_failures: usize,
    pub trace_inequality_checked: usize,
    pub trace_inequality_failures: usize,
    /// Whether `N(I) ≥ 40^{n/2}`, so the displacement bound applies.
    pub proposition_applicable: bool,
    pub proposition_bound: f64,
    pub proposition_pairs: usize,
    pub proposition_failures: usize,
    /// Smallest displacement seen over all checked pairs.
    pub min_displacement: Option<f64>,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.lemma1_failures + self.lemma2_failures + self.trace_inequality_failures + self.proposition_failures
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> ProductPoint {
    ProductPoint(
        (0..n)
            .map(|_| {
                let x = rng.random_range(-3.0..3.0);
                let y = rng.random_range(-2.0f64..2.0).exp();
                UpperHalfPoint { x, y }
            })
            .collect(),
    )
}

/// Draws `samples` elements of `Γ(I)` as elementary words of length 1 to 4
/// and checks every statement on each. Failures are data, not errors.
pub fn verify_suite(ideal: &IdealHNF, samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ideal.degree();
    let lower = systole_lower_bound(ideal);
    let mut rep = SuiteReport {
        samples,
        seed,
        proposition_applicable: lower.valid,
        proposition_bound: lower.value,
        ..SuiteReport::default()
    };
    for s in 0..samples {
        let len = rng.random_range(1..=MAX_WORD);
        let word_seed: u64 = rng.random();
        let a = random_gamma_element(ideal, len, word_seed)?;
        let mut fail = |check: &'static str, detail: String| {
            rep.counterexamples.push(Counterexample { check, sample: s, matrix: a.clone(), detail });
        };
        let t = TraceDecomposition::of(&a);

        let l1 = lemma1_check(&a, ideal)?;
        rep.lemma1_checked += 1;
        if !l1.passed() {
            rep.lemma1_failures += 1;
            fail("lemma1", format!("{l1:?}"));
        }

        let traces = t.dx0.embed();
        let doubled_y0 = t.dy0.embed();
        for (i, (tr, y)) in traces.iter().zip(&doubled_y0).enumerate() {
            rep.trace_inequality_checked += 1;
            let (tr, y) = (tr.abs(), y.abs());
            let slack = EQ_SLACK * tr.max(y).max(1.0);
            if y - 2.0 > tr + slack || tr > 2.0 + y + slack {
                rep.trace_inequality_failures += 1;
                fail("trace_inequality", format!("embedding {}: |tr| = {tr}, |2y0| = {y}", i + 1));
            }
        }

        if t.dy0.is_zero() {
            rep.zero_y0 += 1;
            continue;
        }
        rep.lemma2_checked += 1;
        if !lemma2_check(&a, ideal)? {
            rep.lemma2_failures += 1;
            fail("lemma2", format!("traces {traces:?}"));
        }

        if lower.valid {
            for _ in 0..PROPOSITION_POINTS {
                let z = random_point(&mut rng, n);
                let disp = displacement_at(&z, &a)?;
                rep.proposition_pairs += 1;
                rep.min_displacement = Some(rep.min_displacement.map_or(disp, |m: f64| m.min(disp)));
                if disp < lower.value - EQ_SLACK {
                    rep.proposition_failures += 1;
                    rep.counterexamples.push(Counterexample {
                        check: "proposition",
                        sample: s,
                        matrix: a.clone(),
                        detail: format!("displacement {disp} at {z:?}"),
                    });
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::moebius_apply;
    use crate::number_field::presets::*;

    #[test]
    fn suite_passes_for_seven() {
        let k = q_sqrt5();
        let i = IdealHNF::integer(&k, 7).unwrap();
        let rep = verify_suite(&i, 60, 1).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.counterexamples);
        assert!(rep.proposition_applicable);
        assert!(rep.proposition_pairs > 0);
        assert_eq!(rep, verify_suite(&i, 60, 1).unwrap());
    }

    #[test]
    fn small_ideals_skip_the_proposition() {
        let k = q_sqrt5();
        let rep = verify_suite(&IdealHNF::integer(&k, 2).unwrap(), 40, 3).unwrap();
        assert!(rep.all_passed());
        assert!(!rep.proposition_applicable);
        assert_eq!(rep.proposition_pairs, 0);
    }

    #[test]
    fn trace_inequality_example() {
        let k = q_sqrt5();
        let a = MatrixSL2::from_integers(&k, [[-3, 2], [-2, 1]]).unwrap();
        let t = TraceDecomposition::of(&a);
        for (tr, y) in t.dx0.embed().iter().zip(t.dy0.embed()) {
            assert_eq!(y.abs(), 4.0);
            assert_eq!(tr.abs(), 2.0);
            assert!(y.abs() - 2.0 <= tr.abs() && tr.abs() <= 2.0 + y.abs());
        }
        // parabolic: fixes the cusp at 1
        let m = a.embed()[0];
        let z = moebius_apply(&m, &UpperHalfPoint::i()).unwrap();
        assert!(z.y > 0.0);
    }
}
