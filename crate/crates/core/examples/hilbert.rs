//! Hilbert function and coefficients of an adic and a normal filtration.

use hilbert_sally::hilbert::{hilbert_function, HilbertData};
use hilbert_sally::pipeline::{reduce, Options};
use hilbert_sally::{Filtration, Ideal, PrimeField, Ring};

fn main() -> hilbert_sally::Result<()> {
    let r = Ring::new(&["x", "y"], PrimeField::default())?;
    let i = Ideal::parse(&r, &["x^4", "x^3*y", "y^4"])?;
    for f in [Filtration::adic(&i), Filtration::normal_monomial(&i)?] {
        let red = reduce(&f, &Options::default())?;
        let h = HilbertData::new(hilbert_function(&f, 8)?, 2, red.r)?;
        println!("{}:", f.kind());
        println!("  l(R/I_(n+1)) = {:?}", h.lengths);
        println!("  e = {:?}, h-polynomial {:?}", h.e, h.numerator);
        println!("  polynomial agrees from n = {}", h.verify_window.0);
    }
    Ok(())
}
