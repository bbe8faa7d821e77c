//! The model complex of a fiber bundle whose fiber cohomology is spanned
//! by global classes, and the dimension identity it predicts.
//!
//! ```bash
//! cargo run --example leray_hirsch
//! ```

use hodge::constructions::{leray_hirsch_model, ConjugatePairing};
use hodge::fixtures::{curve, hopf, kodaira_thurston, projective_space, projective_space_model};
use hodge::hodge::{kunneth, lh_consistency};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // an elliptic fiber: classes 1, ω, ω̄, ω∧ω̄ with ω and ω̄ swapped by σ
    let degrees = [(1, 0), (0, 1), (0, 0), (1, 1)];
    let pairing = ConjugatePairing::standard(1, 4);

    for (name, base) in [
        ("P(2)", projective_space_model(2)),
        ("Kodaira-Thurston", kodaira_thurston()),
    ] {
        let model = leray_hirsch_model(&base, &degrees, &pairing)?;
        print!("elliptic bundle over {name}: {}", model.validate()?);
        println!(
            ", ddbar base {} / model {}",
            base.check_ddbar()?.holds,
            model.check_ddbar()?.holds
        );
    }

    // the Hopf surface is an elliptic bundle over P(1) but fails the identity
    let hopf_check = lh_consistency(&hopf(), &curve(1), &projective_space(1));
    println!("\nHopf surface = curve(1) x P(1) on diamonds? {hopf_check}");
    let product = kunneth(&curve(1), &projective_space(1));
    println!(
        "curve(1) x P(1) itself? {}",
        lh_consistency(&product, &curve(1), &projective_space(1))
    );
    println!("expected diamond: {product}");
    println!("Hopf diamond:     {}", hopf());
    Ok(())
}
