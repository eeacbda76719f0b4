//! `SL₂(O)`, principal congruence subgroups `Γ(I)`, and the arithmetic
//! around them: the doubled trace decomposition, the certified lemma checks,
//! reduction modulo `I`, and the order of `SL₂(O/I)`.

mod lemmas;
mod order;
mod residue;
mod sampling;

use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hyperbolic::RealMatrix;
use crate::ideal::IdealHNF;
use crate::number_field::{AlgebraicInteger, NumberField};

pub use lemmas::{lemma1_check, lemma2_bound, lemma2_check, Lemma1Outcome};
pub use order::{index_bounds, order_sl2_prime_power, order_sl2_quotient, IndexBounds};
pub use residue::{brute_force_image_order, reduce_mod, QuotientRing, ResidueMatrix, DEFAULT_BFS_CAP};
pub use sampling::{random_gamma_element, BETA_BOX};

/// `[[a, b], [c, d]]` with entries in `O` and `ad − bc = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixSL2 {
    a: AlgebraicInteger,
    b: AlgebraicInteger,
    c: AlgebraicInteger,
    d: AlgebraicInteger,
}

impl fmt::Debug for MatrixSL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MatrixSL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

fn coord_strings(x: &AlgebraicInteger) -> Vec<String> {
    x.coords().iter().map(|c| c.to_string()).collect()
}

impl Serialize for MatrixSL2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MatrixSL2", 4)?;
        st.serialize_field("a", &coord_strings(&self.a))?;
        st.serialize_field("b", &coord_strings(&self.b))?;
        st.serialize_field("c", &coord_strings(&self.c))?;
        st.serialize_field("d", &coord_strings(&self.d))?;
        st.end()
    }
}

impl MatrixSL2 {
    pub fn new(a: AlgebraicInteger, b: AlgebraicInteger, c: AlgebraicInteger, d: AlgebraicInteger) -> Result<Self> {
        let det = a.try_mul(&d)?.try_sub(&b.try_mul(&c)?)?;
        if det != det.field().one() {
            return Err(Error::NotUnimodular);
        }
        Ok(MatrixSL2 { a, b, c, d })
    }

    /// Matrix with rational integer entries.
    pub fn from_integers(field: &NumberField, entries: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(
            field.integer(entries[0][0]),
            field.integer(entries[0][1]),
            field.integer(entries[1][0]),
            field.integer(entries[1][1]),
        )
    }

    pub fn identity(field: &NumberField) -> Self {
        MatrixSL2 { a: field.one(), b: field.zero(), c: field.zero(), d: field.one() }
    }

    /// `E₁₂(β) = [[1, β], [0, 1]]`.
    pub fn upper(beta: AlgebraicInteger) -> Self {
        let k = beta.field().clone();
        MatrixSL2 { a: k.one(), b: beta, c: k.zero(), d: k.one() }
    }

    /// `E₂₁(β) = [[1, 0], [β, 1]]`.
    pub fn lower(beta: AlgebraicInteger) -> Self {
        let k = beta.field().clone();
        MatrixSL2 { a: k.one(), b: k.zero(), c: beta, d: k.one() }
    }

    pub fn field(&self) -> &NumberField {
        self.a.field()
    }

    pub fn a(&self) -> &AlgebraicInteger {
        &self.a
    }
    pub fn b(&self) -> &AlgebraicInteger {
        &self.b
    }
    pub fn c(&self) -> &AlgebraicInteger {
        &self.c
    }
    pub fn d(&self) -> &AlgebraicInteger {
        &self.d
    }

    pub fn entries(&self) -> [&AlgebraicInteger; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn try_mul(&self, o: &MatrixSL2) -> Result<MatrixSL2> {
        let a = self.a.try_mul(&o.a)?.try_add(&self.b.try_mul(&o.c)?)?;
        let b = self.a.try_mul(&o.b)?.try_add(&self.b.try_mul(&o.d)?)?;
        let c = self.c.try_mul(&o.a)?.try_add(&self.d.try_mul(&o.c)?)?;
        let d = self.c.try_mul(&o.b)?.try_add(&self.d.try_mul(&o.d)?)?;
        // product of determinant-1 matrices, no recheck needed
        Ok(MatrixSL2 { a, b, c, d })
    }

    pub fn inverse(&self) -> MatrixSL2 {
        MatrixSL2 { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn trace(&self) -> AlgebraicInteger {
        &self.a + &self.d
    }

    pub fn determinant(&self) -> AlgebraicInteger {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// `(σ_1(A), …, σ_n(A))` as real matrices.
    pub fn embed(&self) -> Vec<RealMatrix> {
        let [a, b, c, d] = [self.a.embed(), self.b.embed(), self.c.embed(), self.d.embed()];
        (0..a.len()).map(|i| [[a[i], b[i]], [c[i], d[i]]]).collect()
    }

    /// Flattened coordinates of `(a, b, c, d)`, the tie-break key for searches.
    pub fn sort_key(&self) -> Vec<BigInt> {
        self.entries().iter().flat_map(|e| e.coords().iter().cloned()).collect()
    }
}

impl std::ops::Mul<&MatrixSL2> for &MatrixSL2 {
    type Output = MatrixSL2;
    fn mul(self, rhs: &MatrixSL2) -> MatrixSL2 {
        self.try_mul(rhs).expect("matrices over different fields")
    }
}

/// `A ∈ Γ(I)`: `a − 1, b, c, d − 1 ∈ I`.
pub fn in_gamma(m: &MatrixSL2, ideal: &IdealHNF) -> bool {
    let one = m.field().one();
    ideal.contains(&(&m.a - &one)) && ideal.contains(&m.b) && ideal.contains(&m.c) && ideal.contains(&(&m.d - &one))
}

/// The decomposition `a = x₀ + x₁, d = x₀ − x₁, b = x₂ + x₃, c = x₂ − x₃`,
/// `y₀ = x₀ − 1`, with every quantity stored doubled so it stays in `O`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceDecomposition {
    /// `2x₀ = a + d`
    pub dx0: AlgebraicInteger,
    /// `2x₁ = a − d`
    pub dx1: AlgebraicInteger,
    /// `2x₂ = b + c`
    pub dx2: AlgebraicInteger,
    /// `2x₃ = b − c`
    pub dx3: AlgebraicInteger,
    /// `2y₀ = a + d − 2`
    pub dy0: AlgebraicInteger,
}

impl TraceDecomposition {
    pub fn of(m: &MatrixSL2) -> Self {
        let dx0 = &m.a + &m.d;
        let dy0 = &dx0 - &m.field().integer(2);
        TraceDecomposition { dx1: &m.a - &m.d, dx2: &m.b + &m.c, dx3: &m.b - &m.c, dx0, dy0 }
    }

    /// `(2x₀)² − (2x₁)² − (2x₂)² + (2x₃)²`, which equals 4 for every matrix in `SL₂(O)`.
    pub fn quadric(&self) -> AlgebraicInteger {
        let sq = |x: &AlgebraicInteger| x * x;
        &(&(&sq(&self.dx0) - &sq(&self.dx1)) - &sq(&self.dx2)) + &sq(&self.dx3)
    }
}
