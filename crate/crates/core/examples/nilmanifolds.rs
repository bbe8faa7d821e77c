//! Dolbeault, Bott-Chern, Aeppli and de Rham cohomology of invariant forms
//! on the Iwasawa manifold, the Kodaira-Thurston surface and a nilmanifold
//! built from its structure equations.
//!
//! ```bash
//! cargo run --example nilmanifolds
//! ```

use hodge::fixtures::{iwasawa, kodaira_thurston, nilmanifold_complex};
use hodge::{DoubleComplex, Scalar};

fn report(name: &str, k: &DoubleComplex) -> Result<(), hodge::ComplexError> {
    println!("== {name} (total dimension {})", k.total_dim());
    print!("{}", k.validate()?);
    println!();
    for table in k.all_cohomology()? {
        print!("{table}");
    }
    println!("ddbar-lemma: {}\n", k.check_ddbar()?);
    Ok(())
}

fn main() -> Result<(), hodge::ComplexError> {
    report("Kodaira-Thurston", &kodaira_thurston())?;
    report("Iwasawa", &iwasawa())?;

    // dω₃ = ω₁∧ω̄₁ on three generators; generator 3 is ω̄₁
    let k = nilmanifold_complex(3, &[vec![], vec![], vec![(Scalar::from_int(1), 0, 3)]]);
    report("dω₃ = ω₁∧ω̄₁", &k)?;
    Ok(())
}
