//! Boundary-case classification of a few plane ideals.

use hilbert_sally::pipeline::{analyze, Options};
use hilbert_sally::{Filtration, Ideal, PrimeField, Ring};

fn main() -> hilbert_sally::Result<()> {
    let r = Ring::new(&["x", "y"], PrimeField::default())?;
    for gens in [&["x^3", "y^3"][..], &["x^4", "x*y^3", "y^4"], &["x^5", "x^2*y^2", "y^5"]] {
        let i = Ideal::parse(&r, gens)?;
        for f in [Filtration::adic(&i), Filtration::normal_monomial(&i)?] {
            let rep = analyze(&f, &Options::default())?.report;
            println!(
                "({}) {}: e = {:?}, r = {}, delta = {}, case {}, depth {}",
                gens.join(", "),
                rep.kind,
                rep.e,
                rep.r,
                rep.delta,
                rep.case,
                rep.depth
            );
            for c in rep.checks.iter().filter(|c| c.failed()) {
                println!("  {c}");
            }
        }
    }
    Ok(())
}
