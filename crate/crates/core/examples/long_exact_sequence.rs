//! The long exact sequence in row cohomology of a short exact sequence of
//! double complexes, with explicit connecting maps.
//!
//! ```bash
//! cargo run --example long_exact_sequence
//! ```

use hodge::constructions::{ses_to_les, Direction, Morphism};
use hodge::fixtures::{dot, zigzag_l};
use hodge::{DoubleComplex, Matrix};

fn main() -> Result<(), hodge::MorphismError> {
    // B = the segment (0,0) → (0,1) by ∂₂, A = its top dot, C = its bottom dot
    let mut b = DoubleComplex::new([((0, 0), 1), ((0, 1), 1)]);
    b.set_d2(0, 0, Matrix::identity(1)).unwrap();
    let (a, c) = (dot(0, 1), dot(0, 0));

    let f = Morphism::new(a, b.clone(), [((0, 1), Matrix::identity(1))])?;
    let g = Morphism::new(b, c, [((0, 0), Matrix::identity(1))])?;
    let les = ses_to_les(&f, &g, 0, Direction::Row)?;
    print!("{les}");
    println!("exact: {}", les.is_exact());
    for (n, delta) in les.connecting_maps() {
        println!("delta^{n} = {delta:?}");
    }

    // a split sequence: the length-two zigzag sits inside zigzag ⊕ dot, all
    // connecting maps vanish
    let k = zigzag_l(0, 0);
    let parts = [k.clone(), dot(1, 1)];
    let incl = Morphism::inclusion(&parts, 0)?;
    let proj = Morphism::projection(&parts, 1)?;
    let split = ses_to_les(&incl, &proj, 1, Direction::Column)?;
    println!();
    print!("{split}");
    Ok(())
}
