//! Nonzero ideals of `O = Z[θ]` stored as Hermite normal form Z-bases.
//!
//! The basis matrix is lower triangular with rows as basis vectors in
//! power-basis coordinates: row `i` has its pivot in column `i`, pivots are
//! positive and every entry to the left of a pivot in its column is reduced
//! into `[0, pivot)`. Row 0 is therefore `(r, 0, …, 0)` where `r` is the least
//! positive rational integer in the ideal.

mod descriptor;
mod factor;
mod fp_poly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::number_field::{AlgebraicInteger, NumberField};

pub use descriptor::IdealDescriptor;
pub use factor::{factor_ideal, factor_rational_prime, is_prime, PrimeIdeal, MAX_FACTORABLE_NORM};

#[derive(Clone, PartialEq, Eq)]
pub struct IdealHNF {
    field: NumberField,
    basis: Vec<Vec<BigInt>>,
    norm: BigInt,
}

impl fmt::Debug for IdealHNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealHNF(N={}, basis={:?})", self.norm, self.basis_strings())
    }
}

impl IdealHNF {
    /// The ideal generated by `gens` as a Z-module together with `modulus·O`.
    /// `modulus` must be a nonzero rational integer lying in the ideal; it
    /// keeps all intermediate entries below `|modulus|`.
    pub fn from_module_generators(field: &NumberField, gens: &[Vec<BigInt>], modulus: &BigInt) -> Self {
        let n = field.degree();
        let m = modulus.abs();
        assert!(!m.is_zero(), "modulus must be nonzero");
        let basis = hnf_lower(gens.to_vec(), n, &m);
        let norm = (0..n).map(|i| basis[i][i].clone()).product();
        IdealHNF { field: field.clone(), basis, norm }
    }

    /// The ideal generated by the elements `gens`; `modulus` as in
    /// [`Self::from_module_generators`].
    pub fn from_ideal_generators(gens: &[AlgebraicInteger], modulus: &BigInt) -> Result<Self> {
        let field = gens.first().ok_or(Error::ZeroElement)?.field().clone();
        let mut rows = Vec::new();
        for g in gens {
            if g.field() != &field {
                return Err(Error::FieldMismatch);
            }
            let mut x = g.clone();
            for _ in 0..field.degree() {
                rows.push(x.coords().to_vec());
                x.mul_theta_in_place();
            }
        }
        Ok(Self::from_module_generators(&field, &rows, modulus))
    }

    pub fn principal(a: &AlgebraicInteger) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let norm = a.norm();
        Self::from_ideal_generators(std::slice::from_ref(a), &norm)
    }

    /// The ideal `mO` for a positive rational integer `m`.
    pub fn integer(field: &NumberField, m: impl Into<BigInt>) -> Result<Self> {
        let m: BigInt = m.into();
        if !m.is_positive() {
            return Err(Error::ZeroElement);
        }
        Ok(Self::from_module_generators(field, &[], &m))
    }

    pub fn whole(field: &NumberField) -> Self {
        Self::from_module_generators(field, &[], &BigInt::one())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<AlgebraicInteger> {
        self.basis.iter().map(|r| self.field.element(r.clone()).unwrap()).collect()
    }

    fn basis_strings(&self) -> Vec<Vec<String>> {
        self.basis.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
    }

    /// `N(I) = [O : I]`, the product of the pivots.
    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    pub fn is_whole(&self) -> bool {
        self.norm.is_one()
    }

    /// Least positive rational integer in the ideal.
    pub fn min_rational_integer(&self) -> &BigInt {
        &self.basis[0][0]
    }

    /// Canonical representative of `coords` modulo the ideal: every coordinate
    /// `j` ends up in `[0, pivot_j)`.
    pub fn reduce_coords(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut x = coords.to_vec();
        for j in (0..self.basis.len()).rev() {
            let q = x[j].div_floor(&self.basis[j][j]);
            if !q.is_zero() {
                for (xi, hi) in x[..=j].iter_mut().zip(&self.basis[j][..=j]) {
                    *xi -= &q * hi;
                }
            }
        }
        x
    }

    pub fn reduce(&self, a: &AlgebraicInteger) -> AlgebraicInteger {
        self.field.element(self.reduce_coords(a.coords())).unwrap()
    }

    pub fn contains_coords(&self, coords: &[BigInt]) -> bool {
        self.reduce_coords(coords).iter().all(|c| c.is_zero())
    }

    /// Membership test. Elements of another field are never members.
    pub fn contains(&self, a: &AlgebraicInteger) -> bool {
        a.field() == &self.field && self.contains_coords(a.coords())
    }

    /// `self ⊆ other`, i.e. `other` divides `self`.
    pub fn is_subset_of(&self, other: &IdealHNF) -> bool {
        self.field == other.field && self.basis.iter().all(|r| other.contains_coords(r))
    }

    /// Checks closure under multiplication by θ.
    pub fn is_theta_closed(&self) -> bool {
        self.basis_elements().into_iter().all(|mut x| {
            x.mul_theta_in_place();
            self.contains(&x)
        })
    }

    pub fn mul(&self, other: &IdealHNF) -> Result<IdealHNF> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let a = self.basis_elements();
        let b = other.basis_elements();
        let rows: Vec<Vec<BigInt>> =
            a.iter().flat_map(|x| b.iter().map(move |y| (x * y).into_coords())).collect();
        let modulus = self.min_rational_integer() * other.min_rational_integer();
        Ok(Self::from_module_generators(&self.field, &rows, &modulus))
    }

    /// `self^t`; `t = 0` gives the whole ring.
    pub fn pow(&self, t: u32) -> IdealHNF {
        let mut acc = IdealHNF::whole(&self.field);
        let mut base = self.clone();
        let mut e = t;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// Lattice points of the ideal whose power-basis coordinates all lie in
    /// `[-bound, bound]`, in a deterministic order.
    pub fn elements_in_box(&self, bound: &BigInt) -> Vec<AlgebraicInteger> {
        let n = self.degree();
        let mut out = Vec::new();
        let mut acc = vec![BigInt::zero(); n];
        self.box_rec(n, bound, &mut acc, &mut out);
        out
    }

    fn box_rec(&self, level: usize, bound: &BigInt, acc: &mut Vec<BigInt>, out: &mut Vec<AlgebraicInteger>) {
        if level == 0 {
            out.push(self.field.element(acc.clone()).unwrap());
            return;
        }
        let j = level - 1;
        // coordinate j of the final vector is acc[j] + k * pivot_j; rows < j do not touch it
        let pivot = &self.basis[j][j];
        let lo = (-bound - &acc[j]).div_ceil(pivot);
        let hi = (bound - &acc[j]).div_floor(pivot);
        let mut k = lo;
        while k <= hi {
            let saved: Vec<BigInt> = acc[..=j].to_vec();
            for (a, h) in acc[..=j].iter_mut().zip(&self.basis[j][..=j]) {
                *a += &k * h;
            }
            self.box_rec(j, bound, acc, out);
            acc[..=j].clone_from_slice(&saved);
            k += 1;
        }
    }
}

/// Lower-triangular HNF of the lattice spanned by `rows` and `m·Z^n`.
fn hnf_lower(mut pool: Vec<Vec<BigInt>>, n: usize, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut pivots: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    for j in (0..n).rev() {
        // columns > j are already zero in every pool row
        for row in pool.iter_mut() {
            for x in row[..=j].iter_mut() {
                *x = x.mod_floor(m);
            }
        }
        pool.retain(|r| r.iter().any(|x| !x.is_zero()));
        let mut unit = vec![BigInt::zero(); n];
        unit[j] = m.clone();
        pool.push(unit);
        loop {
            let nz: Vec<usize> = (0..pool.len()).filter(|&i| !pool[i][j].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let k = *nz.iter().min_by_key(|&&i| pool[i][j].abs()).unwrap();
            let pivot_row = pool[k].clone();
            for &i in &nz {
                if i == k {
                    continue;
                }
                let q = pool[i][j].div_floor(&pivot_row[j]);
                for (x, p) in pool[i][..=j].iter_mut().zip(&pivot_row[..=j]) {
                    *x -= &q * p;
                }
            }
        }
        let k = (0..pool.len()).find(|&i| !pool[i][j].is_zero()).expect("m e_j keeps the lattice full rank");
        let mut row = pool.swap_remove(k);
        if row[j].is_negative() {
            row.iter_mut().for_each(|x| *x = -&*x);
        }
        pivots[j] = row;
    }
    // reduce entries left of each pivot
    for i in 0..n {
        for j in (0..i).rev() {
            let q = pivots[i][j].div_floor(&pivots[j][j]);
            if !q.is_zero() {
                let pj = pivots[j].clone();
                for (x, p) in pivots[i][..=j].iter_mut().zip(&pj[..=j]) {
                    *x -= &q * p;
                }
            }
        }
    }
    pivots
}
