//! Arithmetic in `O/I` and `SL₂(O/I)`.
//!
//! Residues are coordinate vectors reduced against the HNF basis of `I`, so
//! equal cosets have bit-identical representatives. Products are formed in
//! `i128` after reducing modulo `r = min(I ∩ Z)`, which is valid because
//! `rO ⊆ I`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{order_sl2_quotient, MatrixSL2};
use crate::error::{Error, Result};
use crate::ideal::IdealHNF;
use crate::number_field::AlgebraicInteger;

/// Default closure cap for [`brute_force_image_order`].
pub const DEFAULT_BFS_CAP: u64 = 100_000;

/// Largest `r` for which residue products fit comfortably in `i128`.
const MAX_MODULUS: i128 = 1 << 40;

pub struct QuotientRing {
    ideal: IdealHNF,
    n: usize,
    r: i128,
    /// HNF rows, row `j` has pivot `pivots[j]` at column `j`.
    rows: Vec<Vec<i128>>,
    pivots: Vec<i128>,
    /// Defining polynomial without the leading 1, reduced mod `r`.
    poly: Vec<i128>,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O/{:?}", self.ideal)
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
    }
}

impl Eq for QuotientRing {}

fn small(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .filter(|v| v.abs() < MAX_MODULUS)
        .ok_or_else(|| Error::InvalidArgument(format!("ideal data {x} too large for residue arithmetic")))
}

impl QuotientRing {
    pub fn new(ideal: &IdealHNF) -> Result<Self> {
        let n = ideal.degree();
        let r = small(ideal.min_rational_integer())?;
        let rows = ideal
            .basis()
            .iter()
            .map(|row| row.iter().map(small).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let pivots = (0..n).map(|j| rows[j][j]).collect();
        let poly = ideal.field().min_poly()[..n]
            .iter()
            .map(|c| small(c).map(|v| v.rem_euclid(r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientRing { ideal: ideal.clone(), n, r, rows, pivots, poly })
    }

    pub fn ideal(&self) -> &IdealHNF {
        &self.ideal
    }

    /// `|O/I| = N(I)`.
    pub fn size(&self) -> u128 {
        self.pivots.iter().map(|&p| p as u128).product()
    }

    pub fn canonical(&self, mut x: Vec<i128>) -> Vec<i128> {
        for j in (0..self.n).rev() {
            let q = x[j].div_euclid(self.pivots[j]);
            if q != 0 {
                for (k, v) in self.rows[j].iter().enumerate().take(j + 1) {
                    x[k] -= q * v;
                }
            }
        }
        x
    }

    pub fn from_element(&self, a: &AlgebraicInteger) -> Vec<i128> {
        let rb = BigInt::from(self.r);
        let x = a
            .coords()
            .iter()
            .map(|c| {
                let m = ((c % &rb) + &rb) % &rb;
                m.to_i128().expect("reduced below r")
            })
            .collect();
        self.canonical(x)
    }

    pub fn zero(&self) -> Vec<i128> {
        vec![0; self.n]
    }

    pub fn one(&self) -> Vec<i128> {
        let mut x = self.zero();
        x[0] = 1;
        self.canonical(x)
    }

    pub fn add(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        self.canonical(a.iter().zip(b).map(|(x, y)| (x + y).rem_euclid(self.r)).collect())
    }

    pub fn sub(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        self.canonical(a.iter().zip(b).map(|(x, y)| (x - y).rem_euclid(self.r)).collect())
    }

    pub fn mul(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        let (n, r) = (self.n, self.r);
        let mut prod = vec![0i128; 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % r;
            }
        }
        // θⁿ = −(f_0 + … + f_{n−1}θ^{n−1})
        for k in (n..2 * n - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, f) in self.poly.iter().enumerate() {
                prod[k - n + i] = (prod[k - n + i] - t * f) % r;
            }
        }
        prod.truncate(n);
        for v in prod.iter_mut() {
            *v = v.rem_euclid(r);
        }
        self.canonical(prod)
    }

    /// Mixed-radix index of a canonical residue, in `0..size()`.
    pub fn encode(&self, x: &[i128]) -> u128 {
        let mut code = 0u128;
        for j in (0..self.n).rev() {
            code = code * self.pivots[j] as u128 + x[j] as u128;
        }
        code
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ResidueMatrix {
    ring: Arc<QuotientRing>,
    entries: [Vec<i128>; 4],
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[[{a:?}, {b:?}], [{c:?}, {d:?}]] mod {:?}", self.ring.ideal)
    }
}

impl ResidueMatrix {
    pub fn identity(ring: &Arc<QuotientRing>) -> Self {
        let (o, z) = (ring.one(), ring.zero());
        ResidueMatrix { ring: ring.clone(), entries: [o.clone(), z.clone(), z, o] }
    }

    pub fn from_matrix(ring: &Arc<QuotientRing>, m: &MatrixSL2) -> Self {
        let e = m.entries().map(|x| ring.from_element(x));
        ResidueMatrix { ring: ring.clone(), entries: e }
    }

    pub fn ideal(&self) -> &IdealHNF {
        &self.ring.ideal
    }

    /// Canonical coordinates of `(a, b, c, d)`.
    pub fn entries(&self) -> &[Vec<i128>; 4] {
        &self.entries
    }

    pub fn mul(&self, o: &ResidueMatrix) -> Result<ResidueMatrix> {
        if self.ring != o.ring {
            return Err(Error::FieldMismatch);
        }
        let q = &self.ring;
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &o.entries;
        let entries = [
            q.add(&q.mul(a, e), &q.mul(b, g)),
            q.add(&q.mul(a, f), &q.mul(b, h)),
            q.add(&q.mul(c, e), &q.mul(d, g)),
            q.add(&q.mul(c, f), &q.mul(d, h)),
        ];
        Ok(ResidueMatrix { ring: q.clone(), entries })
    }

    pub fn is_identity(&self) -> bool {
        let (o, z) = (self.ring.one(), self.ring.zero());
        self.entries[0] == o && self.entries[1] == z && self.entries[2] == z && self.entries[3] == o
    }

    fn key(&self) -> u128 {
        let s = self.ring.size();
        self.entries.iter().fold(0u128, |acc, e| acc * s + self.ring.encode(e))
    }
}

pub fn reduce_mod(m: &MatrixSL2, ideal: &IdealHNF) -> Result<ResidueMatrix> {
    let ring = Arc::new(QuotientRing::new(ideal)?);
    Ok(ResidueMatrix::from_matrix(&ring, m))
}

/// Order of the image of `SL₂(O)` in `SL₂(O/I)`, by breadth-first closure
/// under `E₁₂(θʲ)` and `E₂₁(θʲ)`. The formula value is checked against `cap`
/// first; the closure also aborts if it overruns.
pub fn brute_force_image_order(ideal: &IdealHNF, cap: u64) -> Result<u64> {
    let expected = order_sl2_quotient(ideal)?;
    if expected > BigInt::from(cap) {
        return Err(Error::CapExceeded { what: "SL2(O/I) order", cap });
    }
    let ring = Arc::new(QuotientRing::new(ideal)?);
    let field = ideal.field();
    let gens: Vec<ResidueMatrix> = (0..field.degree())
        .flat_map(|j| {
            let beta = field.basis_element(j);
            [MatrixSL2::upper(beta.clone()), MatrixSL2::lower(beta)]
        })
        .map(|g| ResidueMatrix::from_matrix(&ring, &g))
        .collect();
    let start = ResidueMatrix::identity(&ring);
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(start.key());
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.mul(g)?;
            if seen.insert(y.key()) {
                if seen.len() as u64 > cap {
                    return Err(Error::CapExceeded { what: "SL2(O/I) closure", cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len() as u64)
}

impl ResidueMatrix {
    /// Determinant as a canonical residue; always the residue of 1 for
    /// reductions of `SL₂(O)`.
    pub fn determinant(&self) -> Vec<i128> {
        let q = &self.ring;
        let [a, b, c, d] = &self.entries;
        q.sub(&q.mul(a, d), &q.mul(b, c))
    }

    pub fn is_zero_entry(&self, k: usize) -> bool {
        self.entries[k].iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_group::{in_gamma, random_gamma_element};
    use crate::number_field::presets::*;

    #[test]
    fn residue_of_elementary_matrix() {
        let k = q_sqrt5();
        let two = IdealHNF::integer(&k, 2).unwrap();
        let m = MatrixSL2::upper(k.theta());
        let r = reduce_mod(&m, &two).unwrap();
        assert_eq!(r.entries()[0], vec![1, 0]);
        assert_eq!(r.entries()[1], vec![0, 1]);
        assert!(r.is_zero_entry(2));
        let shifted = MatrixSL2::upper(&k.theta() + &k.from_ints(&[4, -6]));
        assert_eq!(reduce_mod(&shifted, &two).unwrap(), r);
    }

    #[test]
    fn kernel_and_homomorphism() {
        for k in all() {
            for m in [2u64, 3, 6] {
                let i = IdealHNF::integer(&k, m).unwrap();
                let ring = Arc::new(QuotientRing::new(&i).unwrap());
                for seed in 0..20 {
                    let g = random_gamma_element(&i, 3, seed).unwrap();
                    assert!(ResidueMatrix::from_matrix(&ring, &g).is_identity());
                    let a = &MatrixSL2::upper(k.from_ints(&vec![1; k.degree()])) * &MatrixSL2::lower(k.theta().pow(seed as u32 % 3));
                    let b = &MatrixSL2::lower(k.integer(seed as i64)) * &a;
                    let ra = ResidueMatrix::from_matrix(&ring, &a);
                    let rb = ResidueMatrix::from_matrix(&ring, &b);
                    assert_eq!(ResidueMatrix::from_matrix(&ring, &(&a * &b)), ra.mul(&rb).unwrap());
                    assert_eq!(ra.determinant(), ring.one());
                    assert_eq!(in_gamma(&a, &i), ra.is_identity());
                }
            }
        }
    }

    #[test]
    fn closure_matches_formula() {
        let k = q_sqrt5();
        assert_eq!(brute_force_image_order(&IdealHNF::integer(&k, 2).unwrap(), DEFAULT_BFS_CAP).unwrap(), 60);
        assert_eq!(brute_force_image_order(&IdealHNF::whole(&k), DEFAULT_BFS_CAP).unwrap(), 1);
        let q = rationals();
        assert_eq!(brute_force_image_order(&IdealHNF::integer(&q, 4).unwrap(), DEFAULT_BFS_CAP).unwrap(), 48);
        assert_eq!(brute_force_image_order(&IdealHNF::integer(&q, 2).unwrap(), DEFAULT_BFS_CAP).unwrap(), 6);
        let c = cubic7();
        assert_eq!(brute_force_image_order(&IdealHNF::integer(&c, 2).unwrap(), DEFAULT_BFS_CAP).unwrap(), 8 * 8 * 8 * 63 / 64);
        assert!(matches!(
            brute_force_image_order(&IdealHNF::integer(&k, 11).unwrap(), DEFAULT_BFS_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn enumerating_sl2_z2() {
        // all 16 matrices over Z/2, count det = 1
        let count = (0..16u32)
            .filter(|m| {
                let [a, b, c, d] = [m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1];
                (a * d + b * c) % 2 == 1
            })
            .count();
        assert_eq!(count, 6);
    }
}
