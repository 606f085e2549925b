use std::cmp::Ordering;

use super::monomial::{Monomial, MAX_VARS};

/// Term orders. Variable 0 is the largest variable in every order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    Lex,
    /// Grevlex on variables `0..split`, ties broken by grevlex on the rest.
    /// Eliminates the first block.
    Block {
        split: usize,
    },
    /// Negative degree reverse lexicographic: lower degree is larger. Not a
    /// well-order on the polynomial ring, so it is only usable together with
    /// a degree bound, where it computes local standard bases at the origin.
    LocalGrevlex,
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: Monomial, b: Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| b.low_bits().cmp(&a.low_bits())),
            // Degree ascending, then the grevlex tiebreak: exactly the
            // reversed integer order of the packing.
            MonomialOrder::LocalGrevlex => b.0.cmp(&a.0),
            MonomialOrder::Lex => {
                for i in 0..MAX_VARS {
                    match a.exponent(i).cmp(&b.exponent(i)) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { split } => {
                grevlex_range(a, b, 0, split).then_with(|| grevlex_range(a, b, split, MAX_VARS))
            }
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex | MonomialOrder::LocalGrevlex)
    }

    pub fn is_local(&self) -> bool {
        matches!(self, MonomialOrder::LocalGrevlex)
    }

    /// First variable counted by degree truncation.
    pub fn truncation_start(&self) -> usize {
        match *self {
            MonomialOrder::Block { split } => split,
            _ => 0,
        }
    }
}

fn grevlex_range(a: Monomial, b: Monomial, lo: usize, hi: usize) -> Ordering {
    let da: u32 = (lo..hi).map(|i| a.exponent(i)).sum();
    let db: u32 = (lo..hi).map(|i| b.exponent(i)).sum();
    da.cmp(&db).then_with(|| {
        for i in (lo..hi).rev() {
            match a.exponent(i).cmp(&b.exponent(i)) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.compare(m(&[2, 1]), m(&[1, 2])), Ordering::Greater);
        assert_eq!(o.compare(m(&[3]), m(&[2, 2])), Ordering::Less);
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.compare(m(&[1, 0, 1]), m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_and_local_examples() {
        assert_eq!(MonomialOrder::Lex.compare(m(&[1]), m(&[0, 9])), Ordering::Greater);
        let l = MonomialOrder::LocalGrevlex;
        assert_eq!(l.compare(m(&[1]), m(&[2])), Ordering::Greater);
        assert_eq!(l.compare(m(&[2, 1]), m(&[1, 2])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_first_block() {
        let o = MonomialOrder::Block { split: 1 };
        assert_eq!(o.compare(m(&[1]), m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(o.compare(m(&[1, 2, 0]), m(&[1, 0, 2])), Ordering::Greater);
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::Block { split: 1 },
            MonomialOrder::Block { split: 2 },
            MonomialOrder::LocalGrevlex,
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(a in prop::collection::vec(0u32..6, 3),
                        b in prop::collection::vec(0u32..6, 3),
                        c in prop::collection::vec(0u32..6, 3)) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            for o in orders() {
                let ab = o.compare(a, b);
                prop_assert_eq!(ab, o.compare(b, a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(o.compare(a.mul(c), b.mul(c)), ab);
                if o.compare(a, b) != Ordering::Greater && o.compare(b, c) != Ordering::Greater {
                    prop_assert!(o.compare(a, c) != Ordering::Greater);
                }
                if !o.is_local() {
                    // global orders refine divisibility
                    prop_assert!(o.compare(a.mul(c), a) != Ordering::Less);
                }
            }
        }
    }
}
