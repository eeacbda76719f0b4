//! Systole bounds for principal congruence covers of Hilbert modular
//! varieties.
//!
//! For a totally real field `K` with monogenic ring of integers `O = Z[θ]`
//! and an ideal `I ⊆ O`, the cover `M_I = (H²)ⁿ/Γ(I)` has systole at least
//! `(4/√n)·log N(I) − 2√n·log 40` once `N(I) ≥ 40^{n/2}`, and at most
//! `4√n·log N(I)`. This crate computes both sides exactly where possible,
//! checks the supporting lemmas on random group elements, and searches
//! bounded boxes of `Γ(I)` for short closed geodesics.

pub mod error;
pub mod hyperbolic;
pub mod ideal;
pub mod linalg;
pub mod modular_group;
pub mod number_field;
pub mod systole;

pub(crate) mod serde_big {
    use num_bigint::BigInt;
    use serde::Serializer;

    /// Exact integers go out as decimal strings.
    pub fn big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }
}

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use hyperbolic::{IsometryClass, IsometryKind, ProductPoint, UpperHalfPoint};
pub use ideal::{IdealDescriptor, IdealHNF, PrimeIdeal};
pub use modular_group::{MatrixSL2, ResidueMatrix, TraceDecomposition};
pub use number_field::{presets, AlgebraicInteger, FieldDescriptor, NumberField};
pub use systole::{SearchOptions, SearchResult, SuiteReport, SystoleReport};
