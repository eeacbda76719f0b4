use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MatrixSL2;
use crate::error::{Error, Result};
use crate::ideal::IdealHNF;

/// Each `β` is `Σ kᵢ·(HNF row i)` with `kᵢ ∈ [−BETA_BOX, BETA_BOX]`.
pub const BETA_BOX: i64 = 2;

/// A word `E₁₂(β₁)·E₂₁(β₂)·E₁₂(β₃)⋯` of the given length with every `βᵢ ∈ I`.
pub fn random_gamma_element(ideal: &IdealHNF, word_length: usize, seed: u64) -> Result<MatrixSL2> {
    if word_length == 0 {
        return Err(Error::InvalidArgument("word length must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = ideal.field();
    let basis = ideal.basis_elements();
    let mut acc = MatrixSL2::identity(field);
    for step in 0..word_length {
        let mut beta = field.zero();
        for row in &basis {
            let k = rng.random_range(-BETA_BOX..=BETA_BOX);
            beta = &beta + &row.scale(&BigInt::from(k));
        }
        let e = if step % 2 == 0 { MatrixSL2::upper(beta) } else { MatrixSL2::lower(beta) };
        acc = &acc * &e;
    }
    Ok(acc)
}
