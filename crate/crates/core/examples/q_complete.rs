//! A nonzero h^{r-1,r-1} obstructs strong q-completeness of a blow-up or a
//! projectivised bundle for every q up to r-1.
//!
//! ```bash
//! cargo run --example q_complete
//! ```

use hodge::fixtures::{curve, point, torus};
use hodge::hodge::{blow_up, projective_bundle, q_complete_obstruction};

fn main() -> Result<(), hodge::HodgeError> {
    let cases = [
        (
            "blowup of torus(3) along curve(1)",
            blow_up(&torus(3), &curve(1), 2)?,
            2,
        ),
        (
            "blowup of torus(3) at a point",
            blow_up(&torus(3), &point(), 3)?,
            3,
        ),
        (
            "P(E) of rank 4 over curve(3)",
            projective_bundle(&curve(3), 4)?,
            4,
        ),
    ];
    for (name, h, r) in cases {
        let report = q_complete_obstruction(&h, r)?;
        println!("{name}: {report}");
        println!("    excluded q: {:?}", report.excluded);
    }
    Ok(())
}
