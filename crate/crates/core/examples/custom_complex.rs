//! Building a double complex with a real structure by hand, checking the
//! axioms and writing it out in the canonical JSON format.
//!
//! ```bash
//! cargo run --example custom_complex
//! ```

use hodge::complex::json::to_canonical_string;
use hodge::{DoubleComplex, Matrix, Scalar};

fn main() -> Result<(), hodge::ComplexError> {
    // (0,0) → (1,0) by ∂₁ and (0,0) → (0,1) by ∂₂, σ swapping the arms
    let one = Matrix::identity(1);
    let mut k = DoubleComplex::new([((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
    k.set_d1(0, 0, one.clone())?;
    k.set_d2(0, 0, one.clone())?;
    for (p, q) in [(0, 0), (1, 0), (0, 1)] {
        k.set_sigma(p, q, one.clone())?;
    }
    println!("axioms: {}", k.validate()?);
    println!("ddbar-lemma: {}", k.check_ddbar()?);
    print!("{}", to_canonical_string(&k));

    // twisting one arm by i breaks σ∂₁σ = ∂₂
    k.set_d2(0, 0, Matrix::from_vec(1, 1, vec![Scalar::i()]))?;
    println!("after twisting ∂₂ by i: {}", k.validate()?);
    Ok(())
}
