//! The construction language: parse, evaluate, print back, and report
//! errors with byte offsets.
//!
//! ```bash
//! cargo run --example expressions
//! ```

use hodge::hodge::parse_expr;

fn main() {
    let inputs = [
        "blowup(P(3), curve(1), 2)",
        "product(hopf, P(1))",
        "flagbundle(torus(2), [1, 1, 1])",
        "projbundle(diamond(1; 0,0,1; 1,0,2; 0,1,2; 1,1,1), 2)",
        "blowup(P(2), point, 3)",
        "product(P(1),",
        "product(P(1), K3)",
    ];
    for src in inputs {
        println!("> {src}");
        let expr = match parse_expr(src) {
            Ok(e) => e,
            Err(e) => {
                println!("  parse error: {e}\n");
                continue;
            }
        };
        println!("  canonical: {expr}");
        match expr.evaluate() {
            Ok(h) => {
                println!("  n = {}, ddbar {}", h.dim(), h.ddbar());
                println!("  {h}");
                if let Some(b) = h.betti() {
                    println!("  betti {b:?}");
                }
            }
            Err(e) => println!("  evaluation error: {e}"),
        }
        println!();
    }
}
