//! Morphisms of double complexes: an E₁-isomorphism always induces an
//! isomorphism on Bott-Chern cohomology, while a map that is only a
//! de Rham isomorphism need not.
//!
//! ```bash
//! cargo run --example e1_isomorphism
//! ```

use hodge::constructions::Morphism;
use hodge::fixtures::{dot, iwasawa, square};
use hodge::{Matrix, Theory};

fn describe(name: &str, f: &Morphism) -> Result<(), hodge::MorphismError> {
    println!("{name}");
    println!("    E1-isomorphism: {}", f.is_e1_isomorphism());
    match f.first_non_iso(Theory::Dolbeault) {
        None => println!("    Dolbeault: iso everywhere"),
        Some(((p, q), why)) => println!("    Dolbeault: {why} fails at ({p},{q})"),
    }
    match f.induced_bc_dims_equal() {
        Ok(same) => println!("    Bott-Chern dimensions agree: {same}"),
        Err(e) => println!("    Bott-Chern comparison skipped: {e}"),
    }
    Ok(())
}

fn main() -> Result<(), hodge::MorphismError> {
    let k = iwasawa();
    let mut acyclic = square(1, 1);
    acyclic.clear_sigma();
    let parts = [k.clone(), acyclic];

    // adding an acyclic square changes nothing on E₁
    let include = Morphism::inclusion(&parts, 0)?;
    describe("Iwasawa → Iwasawa ⊕ square", &include)?;
    let project = Morphism::projection(&parts, 0)?;
    describe("Iwasawa ⊕ square → Iwasawa", &project)?;
    describe("round trip", &include.then(&project)?)?;

    // the zero map from an acyclic interval to a dot misses H^{0,0}
    let mut line = hodge::DoubleComplex::new([((0, 0), 1), ((1, 0), 1)]);
    line.set_d1(0, 0, Matrix::identity(1)).unwrap();
    let onto_dot = Morphism::zero(&line, &dot(0, 0))?;
    describe("interval → dot (zero map)", &onto_dot)?;
    Ok(())
}
