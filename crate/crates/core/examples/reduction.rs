//! A seeded minimal reduction, its reduction number and the intersection
//! conditions that decide Cohen–Macaulayness of the associated graded ring.

use hilbert_sally::pipeline::{reduce, Options};
use hilbert_sally::{Filtration, Ideal, PrimeField, Ring};

fn main() -> hilbert_sally::Result<()> {
    let r = Ring::new(&["x", "y"], PrimeField::default())?;
    let i = Ideal::parse(&r, &["x^4", "x*y^3", "y^4"])?;
    let f = Filtration::adic(&i);
    for seed in [1, 2] {
        let red = reduce(&f, &Options { seed, ..Options::default() })?;
        println!(
            "seed {seed}: J = ({})",
            red.j().generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
        );
        println!("  r = {}, l(I_(n+1)/J I_n) = {:?}", red.r, red.gaps);
        println!("  J ∩ I_2 = J I_1: {}, per level {:?}, CM: {}", red.itoh, red.vv, red.cm);
    }
    Ok(())
}
