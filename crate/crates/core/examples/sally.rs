//! Sally-module lengths and the C and L tables for a filtration with r = 3.

use hilbert_sally::pipeline::{analyze, Options};
use hilbert_sally::{Filtration, Ideal, PrimeField, Ring};

fn main() -> hilbert_sally::Result<()> {
    let r = Ring::new(&["x", "y"], PrimeField::default())?;
    let i = Ideal::parse(&r, &["x^4", "x*y^3", "y^4"])?;
    let a = analyze(&Filtration::adic(&i), &Options { levels: 3, ..Options::default() })?;
    let t = &a.sally;
    println!("r = {}, l(R/I) = {}, l2 = {}, delta = {}", a.reduction.r, t.colength, t.l2, t.delta);
    println!("S    {:?}", t.s);
    for level in 1..=t.level_max + 1 {
        println!("C({level}) {:?}", t.c[level - 1]);
    }
    for level in 1..=t.level_max {
        println!("L({level}) {:?}", t.l[level - 1]);
    }
    for c in &a.identities {
        println!("{c}");
    }
    Ok(())
}
