//! Exact arithmetic over Q and a lex Gröbner basis of a small system.

use hilbert_sally::{buchberger, MonomialOrder, Polynomial, Rationals, Ring};

fn main() -> hilbert_sally::Result<()> {
    let r = Ring::new(&["x", "y"], Rationals)?;
    let f = Polynomial::parse(&r, "x^2 + y^2 - 1")?;
    let g = Polynomial::parse(&r, "x - 1/2*y")?;
    println!("f·g = {}", f.mul(&g)?);
    println!("g^3 = {}", g.pow(3));

    let gb = buchberger(&[f.clone(), g], MonomialOrder::Lex, None)?;
    println!("lex basis:");
    for p in gb.elements() {
        println!("  {p}");
    }
    let standard: Vec<String> =
        gb.standard_monomials()?.into_iter().map(|m| Polynomial::monomial(&r, m).to_string()).collect();
    println!("standard monomials: {}", standard.join(", "));
    println!("dim_Q Q[x,y]/(f, g) = {}", gb.colength()?);
    println!("x^3 reduces to {}", gb.normal_form(&Polynomial::parse(&r, "x^3")?)?);
    Ok(())
}
