//! Certified checks for the two trace lemmas on `Γ(I)`.
//!
//! Half-integral quantities are handled doubled: with `dy0 = 2y₀`,
//! `y₀ ∈ I²/8` becomes `4·dy0 ∈ I²`, and `|N(y₀)| ≥ N(I)²/8ⁿ` becomes
//! `4ⁿ·|N(dy0)| ≥ N(I)²` since `N(dy0) = 2ⁿ N(y₀)`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{in_gamma, MatrixSL2, TraceDecomposition};
use crate::error::{Error, Result};
use crate::ideal::IdealHNF;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Outcome {
    /// `4·dy0 ∈ I²`
    pub membership_ok: bool,
    /// `4ⁿ·|N(dy0)| ≥ N(I)²`; `None` when `dy0 = 0`.
    pub norm_ok: Option<bool>,
    /// `|N(dy0)| = 2ⁿ·|N(y₀)|`
    #[serde(serialize_with = "crate::serde_big::big")]
    pub norm_y0_times_2n: BigInt,
}

impl Lemma1Outcome {
    pub fn passed(&self) -> bool {
        self.membership_ok && self.norm_ok != Some(false)
    }
}

pub fn lemma1_check(m: &MatrixSL2, ideal: &IdealHNF) -> Result<Lemma1Outcome> {
    if !in_gamma(m, ideal) {
        return Err(Error::NotInGamma);
    }
    let t = TraceDecomposition::of(m);
    let ideal_sq = ideal.pow(2);
    let membership_ok = ideal_sq.contains(&t.dy0.scale(&BigInt::from(4)));
    let norm_abs = t.dy0.norm().abs();
    let norm_ok = if t.dy0.is_zero() {
        None
    } else {
        let n = ideal.degree() as u32;
        Some(BigInt::from(4).pow(n) * &norm_abs >= ideal.norm() * ideal.norm())
    };
    Ok(Lemma1Outcome { membership_ok, norm_ok, norm_y0_times_2n: norm_abs })
}

/// `N(I)^{2/n}/4 − 2`: some embedding of the trace reaches this when `y₀ ≠ 0`.
pub fn lemma2_bound(ideal: &IdealHNF) -> f64 {
    let n = ideal.degree() as f64;
    let norm = ideal.norm().to_f64().unwrap_or(f64::INFINITY);
    norm.powf(2.0 / n) / 4.0 - 2.0
}

/// Relative slack for comparing float embeddings against exact bounds.
pub const FLOAT_SLACK: f64 = 1e-9;

pub fn lemma2_check(m: &MatrixSL2, ideal: &IdealHNF) -> Result<bool> {
    if !in_gamma(m, ideal) {
        return Err(Error::NotInGamma);
    }
    let t = TraceDecomposition::of(m);
    if t.dy0.is_zero() {
        return Err(Error::ZeroY0);
    }
    let bound = lemma2_bound(ideal);
    let best = t.dx0.embed().into_iter().map(f64::abs).fold(0.0, f64::max);
    Ok(best >= bound - FLOAT_SLACK * bound.abs().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_group::random_gamma_element;
    use crate::number_field::presets::*;

    #[test]
    fn lemma1_examples() {
        let k = q_sqrt5();
        let two = IdealHNF::integer(&k, 2).unwrap();
        let a = MatrixSL2::from_integers(&k, [[-3, 2], [-2, 1]]).unwrap();
        let out = lemma1_check(&a, &two).unwrap();
        assert!(out.membership_ok);
        assert_eq!(out.norm_ok, Some(true));
        assert_eq!(out.norm_y0_times_2n, BigInt::from(16));

        let id = lemma1_check(&MatrixSL2::identity(&k), &two).unwrap();
        assert!(id.membership_ok);
        assert_eq!(id.norm_ok, None);

        let seven = IdealHNF::integer(&k, 7).unwrap();
        let e = &MatrixSL2::upper(k.integer(7)) * &MatrixSL2::lower(k.integer(7));
        let out = lemma1_check(&e, &seven).unwrap();
        assert!(out.passed());
        assert_eq!(out.norm_ok, Some(true));

        let bad = MatrixSL2::from_integers(&k, [[1, 1], [0, 1]]).unwrap();
        assert!(matches!(lemma1_check(&bad, &two), Err(Error::NotInGamma)));
    }

    #[test]
    fn lemma2_bounds() {
        let k = q_sqrt5();
        assert!((lemma2_bound(&IdealHNF::integer(&k, 7).unwrap()) - 10.25).abs() < 1e-12);
        let q = rationals();
        assert!((lemma2_bound(&IdealHNF::integer(&q, 6).unwrap()) - 7.0).abs() < 1e-12);
        let id = MatrixSL2::identity(&k);
        assert!(matches!(lemma2_check(&id, &IdealHNF::integer(&k, 7).unwrap()), Err(Error::ZeroY0)));
    }

    #[test]
    fn lemmas_hold_on_samples() {
        for k in all() {
            for m in [2u64, 3, 5, 7] {
                let i = IdealHNF::integer(&k, m).unwrap();
                for seed in 0..25 {
                    let a = random_gamma_element(&i, 1 + (seed % 5) as usize, seed).unwrap();
                    assert!(lemma1_check(&a, &i).unwrap().passed(), "{} m={m} {a}", k.label());
                    if !TraceDecomposition::of(&a).dy0.is_zero() {
                        assert!(lemma2_check(&a, &i).unwrap(), "{} m={m} {a}", k.label());
                    }
                }
            }
        }
    }
}
