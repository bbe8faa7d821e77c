//! Hodge diamonds of blow-ups, and how the ∂∂̄ flag propagates.
//!
//! ```bash
//! cargo run --example blow_up
//! ```

use hodge::fixtures::{curve, hopf, point, projective_space};
use hodge::hodge::blow_up;
use hodge::HodgePolynomial;

fn show(label: &str, h: &HodgePolynomial) {
    println!("{label}  (n = {})", h.dim());
    print!("{}", h.render_diamond());
    println!("ddbar: {}\n", h.ddbar());
}

fn main() -> Result<(), hodge::HodgeError> {
    // a point in the plane: one extra (1,1) class
    show(
        "P(2) blown up at a point",
        &blow_up(&projective_space(2), &point(), 2)?,
    );

    // a line in P(3): the center contributes hz·xy
    show(
        "P(3) blown up along a line",
        &blow_up(&projective_space(3), &projective_space(1), 2)?,
    );

    // an elliptic curve in P(3): odd classes appear off the edges
    show(
        "P(3) blown up along an elliptic curve",
        &blow_up(&projective_space(3), &curve(1), 2)?,
    );

    // a point on a Hopf surface: no ∂∂̄-lemma before, none after
    show(
        "Hopf surface blown up at a point",
        &blow_up(&hopf(), &point(), 2)?,
    );

    // dimensions must add up
    match blow_up(&projective_space(3), &curve(1), 3) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
