//! Integral closures of monomial ideals from their Newton polyhedra.

use hilbert_sally::closure::{integral_closure, normal_power, np_member, MonomialIdeal};

fn main() -> hilbert_sally::Result<()> {
    let i = MonomialIdeal::new(2, vec![vec![4, 0], vec![0, 4]])?;
    println!("I = {:?}, colength {}", i.generators(), i.colength()?);
    let c = integral_closure(&i);
    println!("closure of I = {:?}, colength {}", c.generators(), c.colength()?);

    for n in 1..=3 {
        let p = normal_power(&i, n)?;
        println!("closure of I^{n}: colength {} vs {} for I^{n}", p.colength()?, i.power(n).colength()?);
    }

    let v = vec![vec![5, 0], vec![1, 1], vec![0, 7]];
    for a in [[2, 1], [3, 0], [0, 4]] {
        println!("{a:?} in NP({v:?}): {}", np_member(&a, &v)?);
    }
    Ok(())
}
