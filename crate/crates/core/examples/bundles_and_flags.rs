//! Projective bundles, flag bundles and the Gaussian multinomials behind
//! them.
//!
//! ```bash
//! cargo run --example bundles_and_flags
//! ```

use hodge::fixtures::{curve, point, torus};
use hodge::hodge::{flag_bundle, flag_dimension, gaussian_multinomial, projective_bundle};

fn main() -> Result<(), hodge::HodgeError> {
    // P(E) for a rank-3 bundle over a genus-2 curve
    let pe = projective_bundle(&curve(2), 3)?;
    println!("{}  =  {pe}", pe.name());
    print!("{}", pe.render_diamond());
    println!("betti: {:?}\n", pe.betti().unwrap());

    // the complete flag manifold of C^3 has Poincaré polynomial [3]!
    for parts in [vec![1, 1, 1], vec![1, 2], vec![2, 2], vec![1, 1, 2]] {
        let g = gaussian_multinomial(&parts)?;
        println!(
            "parts {parts:?}: dim {}, coefficients {g:?}",
            flag_dimension(&parts)
        );
    }
    println!();

    let full = flag_bundle(&point(), &[1, 1, 1])?;
    println!("{}: {full}", full.name());
    let rel = flag_bundle(&torus(1), &[1, 2])?;
    println!("{}: {rel}", rel.name());
    print!("{}", rel.render_diamond());
    Ok(())
}
