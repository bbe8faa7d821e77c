//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use common::{
    compositions, fixture_path, hull, inversion_polynomial, oracle_dim, random_expr, random_ses,
};
use hodge::complex::{MapFailure, Theory};
use hodge::constructions::{direct_sum, ses_to_les, tensor, Direction, Morphism};
use hodge::fixtures::{
    curve, dot, hopf, iwasawa, kodaira_thurston, point, projective_space as p,
    projective_space_model, square, torus, zigzag_l,
};
use hodge::hodge::{
    blow_up, gaussian_multinomial, kunneth, lh_consistency, parse_expr, projective_bundle,
    q_complete_obstruction,
};
use hodge::linalg::rank;
use hodge::{DoubleComplex, HodgePolynomial, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn coeff_map(h: &HodgePolynomial) -> BTreeMap<(u32, u32), u64> {
    h.coeffs().collect()
}

fn map(entries: &[((u32, u32), u64)]) -> BTreeMap<(u32, u32), u64> {
    entries.iter().copied().collect()
}

fn eval(src: &str) -> Result<HodgePolynomial, String> {
    parse_expr(src)
        .map_err(|e| e.to_string())?
        .evaluate()
        .map_err(|e| e.to_string())
}

fn c1_blow_up() -> Outcome {
    // hx + hz·Σ_{i=1}^{r-1}(xy)^i, expanded by hand
    let a = eval("blowup(P(2), point, 2)")?;
    ensure!(
        coeff_map(&a) == map(&[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]),
        "blowup(P(2), point, 2) = {a}"
    );
    let b = eval("blowup(P(3), curve(1), 2)")?;
    let expected = map(&[
        ((0, 0), 1),
        ((1, 1), 2),
        ((2, 1), 1),
        ((1, 2), 1),
        ((2, 2), 2),
        ((3, 3), 1),
    ]);
    ensure!(coeff_map(&b) == expected, "blowup(P(3), curve(1), 2) = {b}");
    Ok(format!("{a}; {b}"))
}

fn c2_projective_bundle_vs_product() -> Outcome {
    let a = projective_bundle(&p(1), 2).map_err(|e| e.to_string())?;
    let b = kunneth(&p(1), &p(1));
    ensure!(a == b, "{a} vs {b}");
    Ok(a.to_string())
}

fn c3_gaussian_oracle() -> Outcome {
    let mut count = 0;
    for n in 1..=6 {
        for parts in compositions(n) {
            let closed = gaussian_multinomial(&parts).map_err(|e| e.to_string())?;
            let brute = inversion_polynomial(&parts);
            ensure!(closed == brute, "{parts:?}: {closed:?} vs {brute:?}");
            count += 1;
        }
    }
    Ok(format!("{count} flag types"))
}

fn full_oracle_check(k: &DoubleComplex, name: &str) -> Result<(), String> {
    for t in Theory::ALL {
        let table = k.cohomology(t).map_err(|e| e.to_string())?;
        let points: Vec<(i32, i32)> = if t == Theory::DeRham {
            let (p0, p1, q0, q1) = k.bounding_box().unwrap();
            (p0 + q0..=p1 + q1).map(|d| (d, 0)).collect()
        } else {
            hull(k)
        };
        for (a, b) in points {
            let want = oracle_dim(k, t, a, b);
            ensure!(
                table.get(a, b) == want,
                "{name} {t} at ({a},{b}): {} vs oracle {want}",
                table.get(a, b)
            );
        }
    }
    Ok(())
}

fn c4_nilmanifold_tables() -> Outcome {
    let iw = iwasawa();
    let d = iw
        .cohomology(Theory::Dolbeault)
        .map_err(|e| e.to_string())?;
    for ((a, b), want) in [
        ((0, 0), 1),
        ((1, 0), 3),
        ((0, 1), 2),
        ((3, 0), 1),
        ((0, 3), 1),
    ] {
        ensure!(d.get(a, b) == want, "iwasawa h^({a},{b}) = {}", d.get(a, b));
    }
    ensure!(
        d.euler_characteristic() == 0,
        "iwasawa χ = {}",
        d.euler_characteristic()
    );
    let kt = kodaira_thurston();
    let e = kt
        .cohomology(Theory::Dolbeault)
        .map_err(|e| e.to_string())?;
    ensure!(
        e.get(1, 0) == 1 && e.get(0, 1) == 2,
        "KT h10 = {}, h01 = {}",
        e.get(1, 0),
        e.get(0, 1)
    );
    full_oracle_check(&iw, "iwasawa")?;
    full_oracle_check(&kt, "kodaira-thurston")?;
    Ok("all five theories agree with the mod-p oracle".into())
}

fn c5_ddbar() -> Outcome {
    for n in 0..=4 {
        let d = projective_space_model(n)
            .check_ddbar()
            .map_err(|e| e.to_string())?;
        ensure!(d.holds, "P({n}) model: {d}");
    }
    let mut lines = Vec::new();
    for (name, k) in [
        ("iwasawa", iwasawa()),
        ("kodaira-thurston", kodaira_thurston()),
        ("zigzag-l", zigzag_l(0, 0)),
    ] {
        let d = k.check_ddbar().map_err(|e| e.to_string())?;
        ensure!(!d.holds && d.witness.is_some(), "{name}: {d}");
        let w = d.witness.unwrap();
        let m = k
            .natural_map_bc_to_dolbeault(w.bidegree.0, w.bidegree.1)
            .unwrap();
        ensure!(
            MapFailure::classify(&m) == Some(w.failure),
            "{name}: witness does not fail"
        );
        lines.push(format!("{name} {d}"));
    }
    let z = zigzag_l(0, 0).check_ddbar().unwrap().witness.unwrap();
    ensure!(
        z.bidegree == (0, 0) && z.failure == MapFailure::Surjectivity,
        "zigzag witness {z:?}"
    );
    Ok(lines.join("; "))
}

fn e1_isomorphisms() -> Result<Vec<Morphism>, String> {
    let e = |r: Result<Morphism, _>| r.map_err(|x: hodge::MorphismError| x.to_string());
    let bases = [
        dot(0, 0),
        dot(1, 1),
        square(0, 0),
        zigzag_l(0, 0),
        projective_space_model(2),
        iwasawa(),
        kodaira_thurston(),
    ];
    let mut out = Vec::new();
    for k in &bases {
        out.push(e(Morphism::identity(k))?);
        out.push(e(Morphism::identity(k).and_then(|f| f.shifted(1, 1)))?);
        let incl = e(Morphism::inclusion(&[k.clone(), square(0, 0)], 0))?;
        let sum = direct_sum(&[k.clone(), square(0, 0)]);
        let incl2 = e(Morphism::inclusion(&[sum.clone(), square(1, 1)], 0))?;
        out.push(e(incl.then(&incl2))?);
        out.push(e(Morphism::projection(&[k.clone(), square(0, 0)], 0))?);
        out.push(incl);
    }
    Ok(out)
}

fn c6_e1_implies_bc() -> Outcome {
    let maps = e1_isomorphisms()?;
    for (i, f) in maps.iter().enumerate() {
        ensure!(f.is_e1_isomorphism(), "map {i} is not an E1-isomorphism");
        let ok = f.induced_bc_dims_equal().map_err(|e| e.to_string())?;
        ensure!(ok, "map {i}: Bott-Chern map not bijective");
    }
    ensure!(maps.len() >= 20, "only {} maps", maps.len());
    Ok(format!("{} E1-isomorphisms", maps.len()))
}

fn c7_kunneth_chain_level() -> Outcome {
    let kt = kodaira_thurston();
    let prod = tensor(&kt, &kt);
    ensure!(prod.total_dim() == 256, "dim {}", prod.total_dim());
    let report = prod.validate().map_err(|e| e.to_string())?;
    ensure!(report.is_valid(), "{report}");
    let h = kt.cohomology(Theory::Dolbeault).unwrap();
    let lhs = prod.cohomology(Theory::Dolbeault).unwrap();
    let rhs = h.convolve(&h);
    ensure!(lhs == rhs, "tensor:\n{lhs}convolution:\n{rhs}");
    Ok(format!("total Dolbeault dimension {}", lhs.total_dim()))
}

fn two_dot() -> (Morphism, Morphism) {
    let b = DoubleComplex::new([((0, 0), 1), ((0, 1), 1)])
        .with_d2(0, 0, Matrix::identity(1))
        .unwrap();
    let f = Morphism::new(dot(0, 1), b.clone(), [((0, 1), Matrix::identity(1))]).unwrap();
    let g = Morphism::new(b, dot(0, 0), [((0, 0), Matrix::identity(1))]).unwrap();
    (f, g)
}

fn c8_les() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut nonzero = 0;
    for i in 0..100 {
        let (f, g) = random_ses(&mut rng, 12);
        let Some((p0, p1, q0, q1)) = f.target().bounding_box() else {
            continue;
        };
        for (dir, lo, hi) in [(Direction::Row, p0, p1), (Direction::Column, q0, q1)] {
            for fixed in lo - 1..=hi + 1 {
                let les =
                    ses_to_les(&f, &g, fixed, dir).map_err(|e| format!("sequence {i}: {e}"))?;
                ensure!(les.is_exact(), "sequence {i} not exact");
                nonzero += les.connecting_maps().filter(|(_, m)| !m.is_zero()).count();
            }
        }
    }
    ensure!(nonzero > 0, "no sequence had a nonzero connecting map");
    let (f, g) = two_dot();
    let les = ses_to_les(&f, &g, 0, Direction::Row).map_err(|e| e.to_string())?;
    let (n, delta) = les.connecting_maps().next().ok_or("no connecting map")?;
    ensure!(
        n == 0 && delta.shape() == (1, 1) && rank(delta) == 1,
        "two-dot δ = {delta:?}"
    );
    Ok(format!("100 sequences, {nonzero} nonzero connecting maps"))
}

fn c9_hopf() -> Outcome {
    ensure!(hopf().coeff(1, 0) == 0, "hopf h10 = {}", hopf().coeff(1, 0));
    ensure!(
        curve(1).coeff(1, 0) == 1,
        "fiber h10 = {}",
        curve(1).coeff(1, 0)
    );
    let d = lh_consistency(&hopf(), &curve(1), &p(1));
    ensure!(!d.holds && d.witness == Some((1, 0)), "{d}");
    Ok(d.to_string())
}

fn c10_q_complete() -> Outcome {
    let mut count = 0;
    for r in 2..=4u32 {
        let mut spaces = Vec::new();
        for z in [point(), p(1), curve(1), curve(2), torus(2)] {
            let x = p(z.dim() + r);
            spaces.push(blow_up(&x, &z, r).map_err(|e| e.to_string())?);
        }
        for base in [point(), p(2), curve(3), hopf(), torus(1)] {
            spaces.push(projective_bundle(&base, r).map_err(|e| e.to_string())?);
        }
        for h in spaces {
            let rep = q_complete_obstruction(&h, r).map_err(|e| format!("{}: {e}", h.name()))?;
            ensure!(rep.coefficient >= 1, "{}", h.name());
            ensure!(
                rep.excluded == (1..r).collect::<Vec<_>>(),
                "{}: {:?}",
                h.name(),
                rep.excluded
            );
            count += 1;
        }
    }
    Ok(format!("{count} reports"))
}

fn c11_sigma_symmetry() -> Outcome {
    for (name, k) in [
        ("iwasawa", iwasawa()),
        ("kodaira-thurston", kodaira_thurston()),
    ] {
        let dol = k.cohomology(Theory::Dolbeault).unwrap();
        let cdol = k.cohomology(Theory::ConjugateDolbeault).unwrap();
        let bc = k.cohomology(Theory::BottChern).unwrap();
        let ae = k.cohomology(Theory::Aeppli).unwrap();
        for (a, b) in hull(&k) {
            ensure!(bc.get(a, b) == bc.get(b, a), "{name} BC at ({a},{b})");
            ensure!(ae.get(a, b) == ae.get(b, a), "{name} Aeppli at ({a},{b})");
            ensure!(
                dol.get(a, b) == cdol.get(b, a),
                "{name} Dolbeault at ({a},{b})"
            );
        }
    }
    Ok("iwasawa, kodaira-thurston".into())
}

fn hodge_bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hodge"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn c12_cli() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let e = random_expr(&mut rng, 3);
        let text = e.to_string();
        let back = parse_expr(&text).map_err(|err| format!("{text}: {err}"))?;
        ensure!(back == e, "round trip changed {text}");
    }
    let iw = fixture_path("iwasawa");
    let iw = iw.to_str().unwrap();
    for args in [
        vec![
            "--json",
            "eval",
            "flagbundle(blowup(P(3), curve(1), 2), [1,2])",
        ],
        vec!["--json", "cohomology", iw, "--theory", "all"],
        vec!["--json", "check-ddbar", iw],
    ] {
        let (c1, a, _) = hodge_bin(&args);
        let (c2, b, _) = hodge_bin(&args);
        ensure!(
            c1 == 0 && c2 == 0 && a == b && !a.is_empty(),
            "{args:?} unstable"
        );
        serde_json::from_str::<serde_json::Value>(&a).map_err(|e| e.to_string())?;
    }
    let (code, out, _) = hodge_bin(&["eval", "blowup(P(2), point, 2)"]);
    ensure!(
        code == 0 && out.contains("0 2 0") && out.contains("ddbar: true"),
        "eval: {code} {out}"
    );
    let (code, out, _) = hodge_bin(&["check-ddbar", iw]);
    ensure!(
        code == 0 && out.starts_with("false (witness"),
        "check-ddbar: {code} {out}"
    );
    let dot = fixture_path("dot");
    let (code, out, _) = hodge_bin(&["cohomology", dot.to_str().unwrap(), "--theory", "all"]);
    ensure!(
        code == 0 && out.matches(" 1").count() >= 5,
        "cohomology: {code} {out}"
    );
    let (code, _, err) = hodge_bin(&["eval", "product(P(1),"]);
    ensure!(code == 2 && !err.is_empty(), "syntax error exit {code}");
    let (code, _, _) = hodge_bin(&["eval", "blowup(P(2), point, 3)"]);
    ensure!(code == 1, "domain error exit {code}");
    let (code, _, _) = hodge_bin(&["validate"]);
    ensure!(code == 2, "usage error exit {code}");
    Ok("round trip, byte stability and exit codes".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("blow-up formula", c1_blow_up),
        (
            "projective bundle = product",
            c2_projective_bundle_vs_product,
        ),
        ("flag polynomial oracle", c3_gaussian_oracle),
        ("nilmanifold cohomology", c4_nilmanifold_tables),
        ("ddbar decisions", c5_ddbar),
        ("E1-iso implies BC-iso", c6_e1_implies_bc),
        ("Kunneth at chain level", c7_kunneth_chain_level),
        ("LES exactness", c8_les),
        ("Hopf counterexample", c9_hopf),
        ("q-completeness obstruction", c10_q_complete),
        ("sigma symmetry", c11_sigma_symmetry),
        ("CLI contract", c12_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} [{name}]: pass ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} [{name}]: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
