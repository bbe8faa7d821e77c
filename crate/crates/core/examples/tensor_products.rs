//! Tensor products of double complexes and the Künneth formula, at the
//! complex level and at the level of Hodge diamonds.
//!
//! ```bash
//! cargo run --example tensor_products
//! ```

use hodge::constructions::tensor;
use hodge::fixtures::{curve, hopf, kodaira_thurston, projective_space_model, torus};
use hodge::hodge::kunneth;
use hodge::Theory;

fn main() -> Result<(), hodge::ComplexError> {
    let k = kodaira_thurston();
    let l = projective_space_model(1);
    let product = tensor(&k, &l);
    println!(
        "KT x P(1): total dimension {}, {}",
        product.total_dim(),
        product.validate()?
    );

    let dk = k.cohomology(Theory::Dolbeault)?;
    let dl = l.cohomology(Theory::Dolbeault)?;
    let direct = product.cohomology(Theory::Dolbeault)?;
    println!(
        "Dolbeault of the product equals the convolution: {}",
        direct == dk.convolve(&dl)
    );
    print!("{direct}");
    println!("ddbar-lemma on the product: {}\n", product.check_ddbar()?);

    for (a, b) in [(curve(2), torus(1)), (hopf(), curve(1))] {
        let p = kunneth(&a, &b);
        println!("{}: {p}  (ddbar {})", p.name(), p.ddbar());
    }
    Ok(())
}
