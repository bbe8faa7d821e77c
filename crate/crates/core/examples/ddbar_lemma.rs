//! Deciding the ∂∂̄-lemma through the natural map from Bott-Chern to
//! Dolbeault cohomology.
//!
//! ```bash
//! cargo run --example ddbar_lemma
//! ```

use hodge::constructions::direct_sum;
use hodge::fixtures::{dot, projective_space_model, square, zigzag_l};
use hodge::Theory;

fn main() -> Result<(), hodge::ComplexError> {
    let cases = [
        (
            "three dots on the diagonal",
            direct_sum(&[dot(0, 0), dot(1, 1), dot(2, 2)]),
        ),
        ("model of P(3)", projective_space_model(3)),
        (
            "a square plus a dot",
            direct_sum(&[square(0, 0), dot(1, 1)]),
        ),
        ("a length-two zigzag", zigzag_l(0, 0)),
    ];
    for (name, k) in cases {
        let decision = k.check_ddbar()?;
        println!("{name}: {decision}");
        if let Some(w) = decision.witness {
            let (p, q) = w.bidegree;
            let bc = k.cohomology(Theory::BottChern)?.get(p, q);
            let dol = k.cohomology(Theory::Dolbeault)?.get(p, q);
            println!("    at ({p},{q}): Bott-Chern {bc}, Dolbeault {dol}");
            println!(
                "    natural map: {:?}",
                k.natural_map_bc_to_dolbeault(p, q)?
            );
        }
    }
    Ok(())
}
