//! Prime splitting and ideal factorization.
//!
//! With `O = Z[θ]`, a rational prime `p` factors as `∏ (p, g_i(θ))^{e_i}` where
//! `f ≡ ∏ g_i^{e_i} (mod p)` is the factorization of the defining polynomial
//! (Dedekind–Kummer). The residue degree of `(p, g_i(θ))` is `deg g_i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::fp_poly::Fp;
use super::IdealHNF;
use crate::error::{Error, Result};
use crate::number_field::NumberField;

/// Norms above this are not factored (trial division).
pub const MAX_FACTORABLE_NORM: u64 = 1_000_000_000_000;

/// Seed for the equal-degree splitting; factor order is sorted afterwards, so
/// the seed only affects running time.
const SPLIT_SEED: u64 = 0x5eed_0fc2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub ideal: IdealHNF,
    /// Residue characteristic.
    pub p: u64,
    /// Residue degree; `N(P) = p^f`.
    pub residue_degree: u32,
    /// Ramification index.
    pub ramification: u32,
    /// Monic factor of the defining polynomial mod p, ascending coefficients.
    pub local_factor: Vec<u64>,
}

impl PrimeIdeal {
    pub fn norm(&self) -> &BigInt {
        self.ideal.norm()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn trial_factor(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            primes.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// Prime ideals above `p`, ordered by (residue degree, local factor
/// coefficients). Each comes with its ramification index.
pub fn factor_rational_prime(field: &NumberField, p: u64) -> Result<Vec<PrimeIdeal>> {
    if !is_prime(p) || p >= 1 << 62 {
        return Err(Error::NotPrime(p));
    }
    let fp = Fp::new(p);
    let pm = BigInt::from(p);
    let coeffs: Vec<i128> = field
        .min_poly()
        .iter()
        .map(|c| c.mod_floor(&pm).to_i128().expect("reduced below p"))
        .collect();
    let local = fp.factor(&fp.from_signed(&coeffs), SPLIT_SEED ^ p);
    let mut out = Vec::with_capacity(local.len());
    for (g, e) in local {
        let mut gen_coords = vec![BigInt::zero(); field.degree()];
        let gen = if g.len() - 1 == field.degree() {
            // inert: g(θ) ≡ 0 already
            field.zero()
        } else {
            for (i, c) in g.iter().enumerate() {
                gen_coords[i] = BigInt::from(*c);
            }
            field.element(gen_coords)?
        };
        let ideal = if gen.is_zero() {
            IdealHNF::integer(field, p)?
        } else {
            IdealHNF::from_ideal_generators(&[gen], &pm)?
        };
        out.push(PrimeIdeal {
            ideal,
            p,
            residue_degree: (g.len() - 1) as u32,
            ramification: e,
            local_factor: g,
        });
    }
    Ok(out)
}

/// Factorization of `I` into prime ideal powers, ordered by residue
/// characteristic and then by the order of [`factor_rational_prime`].
pub fn factor_ideal(ideal: &IdealHNF) -> Result<Vec<(PrimeIdeal, u32)>> {
    let norm = ideal
        .norm()
        .to_u64()
        .filter(|&n| n <= MAX_FACTORABLE_NORM)
        .ok_or_else(|| Error::NormTooLargeToFactor(ideal.norm().to_string()))?;
    let mut out = Vec::new();
    for p in trial_factor(norm) {
        for prime in factor_rational_prime(ideal.field(), p)? {
            let mut k = 0u32;
            let mut power = prime.ideal.clone();
            while power.norm() <= ideal.norm() && ideal.is_subset_of(&power) {
                k += 1;
                power = power.mul(&prime.ideal)?;
            }
            if k > 0 {
                out.push((prime, k));
            }
        }
    }
    let mut product = IdealHNF::whole(ideal.field());
    for (prime, k) in &out {
        product = product.mul(&prime.ideal.pow(*k))?;
    }
    if &product != ideal {
        return Err(Error::Invariant(format!("factorization of ideal with norm {norm} does not multiply back")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::presets::*;
    use num_traits::One;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
    }

    #[test]
    fn golden_splitting() {
        let k = q_sqrt5();
        let split = factor_rational_prime(&k, 11).unwrap();
        assert_eq!(split.len(), 2);
        for p in &split {
            assert_eq!(p.norm(), &BigInt::from(11));
            assert_eq!((p.residue_degree, p.ramification), (1, 1));
            assert_eq!(p.ideal.min_rational_integer(), &BigInt::from(11));
        }
        let product = split[0].ideal.mul(&split[1].ideal).unwrap();
        assert_eq!(product, IdealHNF::integer(&k, 11).unwrap());

        let inert = factor_rational_prime(&k, 2).unwrap();
        assert_eq!(inert.len(), 1);
        assert_eq!(inert[0].norm(), &BigInt::from(4));
        assert_eq!(inert[0].ideal, IdealHNF::integer(&k, 2).unwrap());

        let ramified = factor_rational_prime(&k, 5).unwrap();
        assert_eq!(ramified.len(), 1);
        assert_eq!(ramified[0].norm(), &BigInt::from(5));
        assert_eq!(ramified[0].ramification, 2);
        assert_eq!(ramified[0].ideal, IdealHNF::principal(&k.from_ints(&[-1, 2])).unwrap());
        assert!(matches!(factor_rational_prime(&k, 9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn degrees_sum_to_field_degree() {
        for k in all() {
            for p in [2u64, 3, 5, 7, 11, 13, 29, 97] {
                let primes = factor_rational_prime(&k, p).unwrap();
                let total: u32 = primes.iter().map(|q| q.residue_degree * q.ramification).sum();
                assert_eq!(total as usize, k.degree(), "{} p={p}", k.label());
                let mut product = IdealHNF::whole(&k);
                for q in &primes {
                    assert!(q.ideal.contains(&k.integer(p)));
                    assert_eq!(q.norm(), &BigInt::from(p).pow(q.residue_degree));
                    product = product.mul(&q.ideal.pow(q.ramification)).unwrap();
                }
                assert_eq!(product, IdealHNF::integer(&k, p).unwrap());
            }
        }
    }

    #[test]
    fn factor_ideal_examples() {
        let k = q_sqrt5();
        let f = factor_ideal(&IdealHNF::integer(&k, 11).unwrap()).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(_, e)| *e == 1));
        let f = factor_ideal(&IdealHNF::integer(&k, 4).unwrap()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0.norm(), &BigInt::from(4));
        assert_eq!(f[0].1, 2);
        assert!(factor_ideal(&IdealHNF::whole(&k)).unwrap().is_empty());
        // 60 = 2^2 * 3 * 5 in the cubic field
        let c = cubic7();
        let f = factor_ideal(&IdealHNF::integer(&c, 60).unwrap()).unwrap();
        let n: BigInt = f.iter().map(|(p, e)| p.norm().pow(*e)).product();
        assert_eq!(n, BigInt::from(60).pow(3));
    }

    #[test]
    fn refuses_huge_norm() {
        let k = q_sqrt5();
        let big = IdealHNF::integer(&k, 10_000_019u64).unwrap();
        assert!(matches!(factor_ideal(&big), Err(Error::NormTooLargeToFactor(_))));
        assert!(BigInt::one() < *big.norm());
    }
}
