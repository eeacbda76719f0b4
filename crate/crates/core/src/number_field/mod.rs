//! Totally real monogenic number fields `K = Q(θ)` and exact arithmetic in
//! their rings of integers `O = Z[θ]`.
//!
//! Elements are integer coordinate vectors in the power basis `1, θ, …, θ^{n-1}`.
//! Only fields whose ring of integers is generated by a root of the defining
//! polynomial are supported; [`presets`] lists some that are known to be.

mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

pub use roots::ROOT_WIDTH_LOG2;

/// Largest supported field degree.
pub const MAX_DEGREE: usize = 8;

/// On-disk field description: `{"label": ..., "min_poly": [c0, c1, ..., 1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDescriptor {
    pub label: String,
    pub min_poly: Vec<i64>,
}

impl FieldDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        let desc: FieldDescriptor = serde_json::from_str(text).map_err(|e| {
            Error::descriptor(format!("field descriptor line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        if desc.min_poly.last() != Some(&1) {
            return Err(Error::descriptor("field descriptor.min_poly", "last coefficient must be exactly 1"));
        }
        Ok(desc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::descriptor(path.display().to_string(), e.to_string()))?;
        Self::from_json(&text)
    }

    pub fn build(&self) -> Result<NumberField> {
        NumberField::from_i64(&self.label, &self.min_poly)
    }
}

struct FieldData {
    label: String,
    min_poly: Vec<BigInt>,
    roots: Vec<f64>,
    root_error: f64,
}

/// A totally real number field together with its real embeddings.
///
/// Cloning is cheap: the data lives behind an `Arc`.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("label", &self.0.label)
            .field("min_poly", &self.0.min_poly)
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.min_poly == other.0.min_poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Builds the field defined by a monic integer polynomial, given with
    /// ascending coefficients.
    pub fn new(label: impl Into<String>, min_poly: Vec<BigInt>) -> Result<Self> {
        let mut min_poly = min_poly;
        while min_poly.len() > 1 && min_poly.last().is_some_and(|c| c.is_zero()) {
            min_poly.pop();
        }
        if min_poly.len() < 2 {
            return Err(Error::ZeroDegree);
        }
        if !min_poly.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        let degree = min_poly.len() - 1;
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        let analysis = roots::analyse(&min_poly);
        if !analysis.squarefree {
            return Err(Error::NotSquarefree);
        }
        if analysis.roots.len() != degree {
            return Err(Error::NotTotallyReal { real: analysis.roots.len(), degree });
        }
        let root_values: Vec<f64> = analysis.roots.iter().map(|r| r.value).collect();
        if let Some(factor) = find_monic_factor(&min_poly, &root_values) {
            return Err(Error::Reducible { factor });
        }
        let root_error = analysis.roots.iter().map(|r| r.error).fold(0.0, f64::max);
        Ok(NumberField(Arc::new(FieldData {
            label: label.into(),
            min_poly,
            roots: root_values,
            root_error,
        })))
    }

    pub fn from_i64(label: impl Into<String>, min_poly: &[i64]) -> Result<Self> {
        Self::new(label, min_poly.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.len() - 1
    }

    /// Ascending coefficients, last entry 1.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.0.min_poly
    }

    /// The real roots `θ_1 < … < θ_n`; embedding `σ_i` sends θ to `roots()[i]`.
    pub fn roots(&self) -> &[f64] {
        &self.0.roots
    }

    /// Upper bound on the absolute error of every stored root.
    pub fn root_error(&self) -> f64 {
        self.0.root_error
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            label: self.0.label.clone(),
            min_poly: self.0.min_poly.iter().map(|c| c.to_i64().unwrap_or(i64::MAX)).collect(),
        }
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<AlgebraicInteger> {
        if coords.len() != self.degree() {
            return Err(Error::WrongLength { got: coords.len(), expected: self.degree() });
        }
        Ok(AlgebraicInteger { field: self.clone(), coords })
    }

    /// Element from small coordinates. Missing trailing coordinates are zero.
    pub fn from_ints(&self, coords: &[i64]) -> AlgebraicInteger {
        assert!(coords.len() <= self.degree(), "too many coordinates");
        let mut c: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
        c.resize(self.degree(), BigInt::zero());
        AlgebraicInteger { field: self.clone(), coords: c }
    }

    pub fn integer(&self, k: impl Into<BigInt>) -> AlgebraicInteger {
        let mut c = vec![BigInt::zero(); self.degree()];
        c[0] = k.into();
        AlgebraicInteger { field: self.clone(), coords: c }
    }

    pub fn zero(&self) -> AlgebraicInteger {
        self.integer(0)
    }

    pub fn one(&self) -> AlgebraicInteger {
        self.integer(1)
    }

    /// `θ^j` for `j < n`, the power basis.
    pub fn basis_element(&self, j: usize) -> AlgebraicInteger {
        let mut c = vec![BigInt::zero(); self.degree()];
        c[j] = BigInt::one();
        AlgebraicInteger { field: self.clone(), coords: c }
    }

    /// θ in power-basis coordinates. In degree 1 this is the rational root of `min_poly`.
    pub fn theta(&self) -> AlgebraicInteger {
        let mut x = self.one();
        x.mul_theta_in_place();
        x
    }

    fn reduce_product(&self, mut prod: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.degree();
        let f = &self.0.min_poly;
        while prod.len() > n {
            let k = prod.len() - 1;
            let top = prod.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            for i in 0..n {
                if !f[i].is_zero() {
                    prod[k - n + i] -= &top * &f[i];
                }
            }
        }
        prod.resize(n, BigInt::zero());
        prod
    }
}

/// Reducibility test: every monic integer factor of a totally real polynomial
/// has its roots among the roots of the polynomial, so each candidate factor
/// is determined by a subset of roots. The rounded candidate is then checked by
/// exact division.
fn find_monic_factor(poly: &[BigInt], roots: &[f64]) -> Option<Vec<i64>> {
    let n = roots.len();
    for mask in 1u32..(1u32 << n) {
        let d = mask.count_ones() as usize;
        if d > n / 2 {
            continue;
        }
        let mut coeffs = vec![1.0f64];
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let mut next = vec![0.0; coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * r;
                }
                coeffs = next;
            }
        }
        let cand: Vec<BigInt> = coeffs.iter().map(|c| BigInt::from(c.round() as i64)).collect();
        if divides_monic(poly, &cand) {
            return Some(cand.iter().map(|c| c.to_i64().unwrap()).collect());
        }
    }
    None
}

fn divides_monic(poly: &[BigInt], divisor: &[BigInt]) -> bool {
    let mut r = poly.to_vec();
    let d = divisor.len() - 1;
    while r.len() > d {
        let k = r.len() - 1;
        let top = r.pop().unwrap();
        for i in 0..d {
            r[k - d + i] -= &top * &divisor[i];
        }
    }
    r.iter().all(|c| c.is_zero())
}

/// Preset fields whose ring of integers is `Z[θ]`.
pub mod presets {
    use super::NumberField;

    /// The rationals, as the degree-1 field defined by `x`.
    pub fn rationals() -> NumberField {
        NumberField::from_i64("Q", &[0, 1]).unwrap()
    }

    pub fn q_sqrt2() -> NumberField {
        NumberField::from_i64("Q(sqrt2)", &[-2, 0, 1]).unwrap()
    }

    pub fn q_sqrt3() -> NumberField {
        NumberField::from_i64("Q(sqrt3)", &[-3, 0, 1]).unwrap()
    }

    /// `Q(√5)` with θ the golden ratio, a root of `x² − x − 1`.
    pub fn q_sqrt5() -> NumberField {
        NumberField::from_i64("Q(sqrt5)", &[-1, -1, 1]).unwrap()
    }

    /// The cubic field defined by `x³ + x² − 2x − 1`, the maximal real
    /// subfield of the 7th cyclotomic field.
    pub fn cubic7() -> NumberField {
        NumberField::from_i64("Q(zeta7)+", &[-1, -2, 1, 1]).unwrap()
    }

    pub fn all() -> Vec<NumberField> {
        vec![rationals(), q_sqrt2(), q_sqrt3(), q_sqrt5(), cubic7()]
    }
}

/// An element of `O = Z[θ]`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicInteger {
    field: NumberField,
    coords: Vec<BigInt>,
}

impl fmt::Debug for AlgebraicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Real embeddings of an element with an a-priori error bound.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub values: Vec<f64>,
    /// Bound on the absolute error of every entry of `values`.
    pub error_bound: f64,
}

impl AlgebraicInteger {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// `Some(k)` if the element is the rational integer `k`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| &self.coords[0])
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(AlgebraicInteger { field: self.field.clone(), coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(AlgebraicInteger { field: self.field.clone(), coords })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let n = self.coords.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let coords = self.field.reduce_product(prod);
        Ok(AlgebraicInteger { field: self.field.clone(), coords })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        AlgebraicInteger { field: self.field.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub(crate) fn mul_theta_in_place(&mut self) {
        let n = self.coords.len();
        let top = self.coords.pop().unwrap();
        self.coords.insert(0, BigInt::zero());
        if !top.is_zero() {
            let f = self.field.min_poly();
            for i in 0..n {
                self.coords[i] -= &top * &f[i];
            }
        }
    }

    /// Matrix of multiplication by `self` in the power basis; column `j`
    /// holds the coordinates of `self·θ^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.coords.len();
        let mut cols = Vec::with_capacity(n);
        let mut x = self.clone();
        for _ in 0..n {
            cols.push(x.coords.clone());
            x.mul_theta_in_place();
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Exact norm `∏ σ_i(a)`, the determinant of the multiplication matrix.
    pub fn norm(&self) -> BigInt {
        linalg::bareiss_det(&self.multiplication_matrix())
    }

    /// Exact trace `Σ σ_i(a)`.
    pub fn trace(&self) -> BigInt {
        let m = self.multiplication_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    /// `N(a)/a`, an algebraic integer: the first adjugate column of the
    /// multiplication matrix.
    pub fn norm_cofactor(&self) -> Self {
        let coords = linalg::adjugate_column(&self.multiplication_matrix(), 0);
        AlgebraicInteger { field: self.field.clone(), coords }
    }

    /// `self / divisor` if the quotient lies in `O`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Ok(None);
        }
        let norm = divisor.norm();
        let num = self.try_mul(&divisor.norm_cofactor())?;
        Ok(num.div_integer(&norm))
    }

    /// `self / k` if every coordinate is divisible by the rational integer `k`.
    pub fn div_integer(&self, k: &BigInt) -> Option<Self> {
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            coords.push(q);
        }
        Some(AlgebraicInteger { field: self.field.clone(), coords })
    }

    /// Real embeddings `(σ_1(a), …, σ_n(a))` by Horner evaluation.
    pub fn embed(&self) -> Vec<f64> {
        let coeffs: Vec<f64> = self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        self.field
            .roots()
            .iter()
            .map(|&t| coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c))
            .collect()
    }

    /// Embeddings with an error bound: root error propagated through
    /// `Σ c_j θ^j` plus a Horner rounding term.
    pub fn embed_with_error(&self) -> Embedding {
        let n = self.coords.len();
        let values = self.embed();
        let m = self.field.roots().iter().fold(1.0f64, |acc, t| acc.max(t.abs()));
        let cmax = self.coords.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
        let root_part = cmax * self.field.root_error() * n as f64 * m.powi(n as i32 - 1);
        let rounding = 2.0 * (n as f64 + 1.0) * f64::EPSILON * cmax * (n as f64) * m.powi(n as i32 - 1);
        Embedding { values, error_bound: root_part + rounding }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&AlgebraicInteger> for &AlgebraicInteger {
            type Output = AlgebraicInteger;
            /// Panics if the operands live in different fields; use the
            /// `try_` form to get an error instead.
            fn $method(self, rhs: &AlgebraicInteger) -> AlgebraicInteger {
                self.$try(rhs).expect("operands belong to different number fields")
            }
        }
        impl $tr<AlgebraicInteger> for AlgebraicInteger {
            type Output = AlgebraicInteger;
            fn $method(self, rhs: AlgebraicInteger) -> AlgebraicInteger {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &AlgebraicInteger {
    type Output = AlgebraicInteger;
    fn neg(self) -> AlgebraicInteger {
        AlgebraicInteger { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for AlgebraicInteger {
    type Output = AlgebraicInteger;
    fn neg(self) -> AlgebraicInteger {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    #[test]
    fn golden_field_roots() {
        let k = q_sqrt5();
        assert_eq!(k.degree(), 2);
        let s5 = 5f64.sqrt();
        assert!((k.roots()[0] - (1.0 - s5) / 2.0).abs() < 1e-14);
        assert!((k.roots()[1] - (1.0 + s5) / 2.0).abs() < 1e-14);
        assert!(k.root_error() <= 1e-14);
    }

    #[test]
    fn rationals_have_root_zero() {
        let q = rationals();
        assert_eq!(q.degree(), 1);
        assert_eq!(q.roots(), &[0.0]);
        assert!(q.theta().is_zero());
    }

    #[test]
    fn cubic_roots_bracketed_by_sign_changes() {
        let k = cubic7();
        let r = k.roots();
        assert_eq!(r.len(), 3);
        let p = |x: f64| x * x * x + x * x - 2.0 * x - 1.0;
        // p(-2) < 0 < p(-1), p(-1) > 0 > p(0), p(0) < 0 < p(2)
        assert!(p(-2.0) < 0.0 && p(-1.0) > 0.0 && p(0.0) < 0.0 && p(2.0) > 0.0);
        assert!(-2.0 < r[0] && r[0] < -1.0);
        assert!(-1.0 < r[1] && r[1] < 0.0);
        assert!(0.0 < r[2] && r[2] < 2.0);
        for &t in r {
            assert!(p(t).abs() < 1e-13);
        }
        assert!(r.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(NumberField::from_i64("x", &[1, 2]), Err(Error::NotMonic)));
        assert!(matches!(NumberField::from_i64("x", &[1]), Err(Error::ZeroDegree)));
        assert!(matches!(NumberField::from_i64("x", &[1, -2, 1]), Err(Error::NotSquarefree)));
        assert!(matches!(NumberField::from_i64("x", &[1, 0, 1]), Err(Error::NotTotallyReal { real: 0, degree: 2 })));
        assert!(matches!(NumberField::from_i64("x", &[-2, 0, 0, 1]), Err(Error::NotTotallyReal { real: 1, degree: 3 })));
        // (x^2 - 2)(x^2 - 3)
        match NumberField::from_i64("x", &[6, 0, -5, 0, 1]) {
            Err(Error::Reducible { factor }) => assert!(factor == vec![-2, 0, 1] || factor == vec![-3, 0, 1]),
            other => panic!("expected Reducible, got {other:?}"),
        }
        // (x - 1)(x^2 - x - 1)
        assert!(matches!(NumberField::from_i64("x", &[1, 0, -2, 1]), Err(Error::Reducible { .. })));
        assert!(matches!(
            NumberField::from_i64("x", &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
            Err(Error::DegreeTooLarge(9))
        ));
    }

    #[test]
    fn golden_ring_identities() {
        let k = q_sqrt5();
        let t = k.theta();
        assert_eq!(&t * &t, k.from_ints(&[1, 1]));
        let s = k.from_ints(&[-1, 2]);
        assert_eq!(&s * &s, k.from_ints(&[5, 0]));
        assert_eq!(&s * &k.one(), s);
    }

    #[test]
    fn golden_norms_and_traces() {
        let k = q_sqrt5();
        assert_eq!(k.theta().norm(), BigInt::from(-1));
        assert_eq!(k.theta().trace(), BigInt::from(1));
        assert_eq!(k.from_ints(&[2, 1]).norm(), BigInt::from(5));
        assert_eq!(k.from_ints(&[-1, 2]).norm(), BigInt::from(-5));
    }

    #[test]
    fn golden_embeddings() {
        let k = q_sqrt5();
        assert_eq!(k.one().embed(), vec![1.0, 1.0]);
        let e = k.from_ints(&[-1, 2]).embed();
        assert!((e[0] + 5f64.sqrt()).abs() < 1e-13);
        assert!((e[1] - 5f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = q_sqrt5().one();
        let b = q_sqrt2().one();
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch)));
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch)));
    }

    #[test]
    fn exact_division() {
        let k = q_sqrt5();
        let a = k.from_ints(&[3, -2]);
        let b = k.from_ints(&[7, 5]);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a).unwrap(), Some(b.clone()));
        assert_eq!(k.from_ints(&[1, 0]).div_exact(&k.integer(2)).unwrap(), None);
        // units divide everything
        assert_eq!(k.one().div_exact(&k.theta()).unwrap(), Some(k.from_ints(&[-1, 1])));
    }

    #[test]
    fn descriptor_parsing() {
        let d = FieldDescriptor::from_json(r#"{"label":"Q(sqrt5)","min_poly":[-1,-1,1]}"#).unwrap();
        assert_eq!(d.build().unwrap(), q_sqrt5());
        assert!(FieldDescriptor::from_json(r#"{"label":"bad","min_poly":[-1,-1,2]}"#).is_err());
        assert!(FieldDescriptor::from_json(r#"{"label":"bad"}"#).is_err());
    }
}
