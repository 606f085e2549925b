//! Colengths of sums, products and intersections of m-primary ideals.

use hilbert_sally::{quotient_length, Ideal, PrimeField, Ring};

fn main() -> hilbert_sally::Result<()> {
    let r = Ring::new(&["x", "y", "z"], PrimeField::new(101)?)?;
    let a = Ideal::parse(&r, &["x^2", "y^2", "z^2"])?;
    let b = Ideal::parse(&r, &["x + y + z", "x*y", "y*z", "x*z"])?;

    println!("l(R/A)       = {}", a.colength()?);
    println!("l(R/B)       = {}", b.colength()?);
    println!("l(R/(A+B))   = {}", a.sum(&b)?.colength()?);
    println!("l(R/AB)      = {}", a.product(&b)?.colength()?);
    let meet = a.intersection(&b)?;
    println!("l(R/(A∩B))   = {}", meet.colength()?);
    println!("l(A/A^2)     = {}", quotient_length(&a, &a.power(2)?)?);
    println!("A^2 ⊆ A∩B: {}", meet.contains(&a.power(2)?)?);
    Ok(())
}
