use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::ideal::{factor_ideal, IdealHNF, PrimeIdeal};

/// `|SL₂(O/pᵗ)| = N(p)^{3t} − N(p)^{3t−2}`.
pub fn order_sl2_prime_power(p: &PrimeIdeal, t: u32) -> BigInt {
    order_for_norm(p.norm(), t)
}

pub(crate) fn order_for_norm(q: &BigInt, t: u32) -> BigInt {
    assert!(t >= 1, "exponent must be positive");
    q.pow(3 * t) - q.pow(3 * t - 2)
}

/// `|SL₂(O/I)|` as the product of the prime-power orders.
pub fn order_sl2_quotient(ideal: &IdealHNF) -> Result<BigInt> {
    let mut order = BigInt::from(1);
    for (p, t) in factor_ideal(ideal)? {
        order *= order_sl2_prime_power(&p, t);
    }
    Ok(order)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexBounds {
    /// `|SL₂(O/I)|`, an upper bound for `[Γ : Γ(I)]`.
    #[serde(serialize_with = "crate::serde_big::big")]
    pub upper: BigInt,
    /// `r = min(I ∩ Z)`; the powers of `E₁₂(1)` are distinct mod `I` up to `r`.
    #[serde(serialize_with = "crate::serde_big::big")]
    pub lower: BigInt,
}

pub fn index_bounds(ideal: &IdealHNF) -> Result<IndexBounds> {
    Ok(IndexBounds { upper: order_sl2_quotient(ideal)?, lower: ideal.min_rational_integer().clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::presets::*;

    #[test]
    fn prime_power_orders() {
        assert_eq!(order_for_norm(&BigInt::from(2), 1), BigInt::from(6));
        assert_eq!(order_for_norm(&BigInt::from(4), 1), BigInt::from(60));
        assert_eq!(order_for_norm(&BigInt::from(4), 2), BigInt::from(3840));
    }

    #[test]
    fn quotient_orders() {
        let k = q_sqrt5();
        let ord = |i: IdealHNF| order_sl2_quotient(&i).unwrap();
        assert_eq!(ord(IdealHNF::integer(&k, 2).unwrap()), BigInt::from(60));
        assert_eq!(ord(IdealHNF::integer(&k, 7).unwrap()), BigInt::from(117_600));
        assert_eq!(ord(IdealHNF::integer(&k, 11).unwrap()), BigInt::from(1_742_400));
        assert_eq!(ord(IdealHNF::whole(&k)), BigInt::from(1));
        for m in 2..40u64 {
            let i = IdealHNF::integer(&k, m).unwrap();
            assert!(ord(i.clone()) < i.norm().pow(3));
        }
    }

    #[test]
    fn index_bound_examples() {
        let k = q_sqrt5();
        let b = index_bounds(&IdealHNF::integer(&k, 2).unwrap()).unwrap();
        assert_eq!((b.upper, b.lower), (BigInt::from(60), BigInt::from(2)));
        let b = index_bounds(&IdealHNF::principal(&k.from_ints(&[-1, 2])).unwrap()).unwrap();
        assert_eq!((b.upper, b.lower), (BigInt::from(120), BigInt::from(5)));
        let b = index_bounds(&IdealHNF::integer(&rationals(), 3).unwrap()).unwrap();
        assert_eq!((b.upper, b.lower), (BigInt::from(24), BigInt::from(3)));
    }
}
