//! Critical pairs with the Gebauer–Möller installation of Buchberger's
//! criteria.

use std::cmp::Ordering;

use crate::poly::{Monomial, MonomialOrder};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Pair {
    pub i: usize,
    pub j: usize,
    pub lcm: Monomial,
    /// Selection weight: sugar for global orders, lcm degree for the local one.
    pub weight: u32,
}

/// Pending pairs, kept sorted so that `pop` yields the next one to treat:
/// smallest weight first, ties by smallest lcm in the term order.
pub(crate) struct PairQueue {
    order: MonomialOrder,
    pairs: Vec<Pair>,
}

impl PairQueue {
    pub fn new(order: MonomialOrder) -> Self {
        PairQueue { order, pairs: Vec::new() }
    }

    pub fn pop(&mut self) -> Option<Pair> {
        self.pairs.pop()
    }

    fn cmp(order: MonomialOrder, a: &Pair, b: &Pair) -> Ordering {
        // descending, so the minimum sits at the end
        b.weight.cmp(&a.weight).then_with(|| order.compare(b.lcm, a.lcm)).then_with(|| (b.i, b.j).cmp(&(a.i, a.j)))
    }

    /// Install element `h`. `active` holds the indices whose leading
    /// monomials generate the current leading ideal; it is updated in place.
    /// `weight` computes the selection weight of a new pair, and `keep`
    /// filters pairs that are known to vanish (e.g. beyond a truncation).
    pub fn update(
        &mut self,
        leads: &[Monomial],
        active: &mut Vec<usize>,
        h: usize,
        product_criterion: bool,
        weight: impl Fn(usize, usize, Monomial) -> u32,
        keep: impl Fn(Monomial) -> bool,
    ) {
        let lh = leads[h];
        let cand: Vec<(usize, Monomial, bool)> =
            active.iter().map(|&g| (g, lh.lcm(leads[g]), lh.is_coprime(leads[g]))).collect();

        let mut kept: Vec<usize> = Vec::with_capacity(cand.len());
        for k in 0..cand.len() {
            let (_, l, coprime) = cand[k];
            let dominated = !coprime
                && (cand[k + 1..].iter().any(|q| q.1.divides(l)) || kept.iter().any(|&q| cand[q].1.divides(l)));
            if !dominated {
                kept.push(k);
            }
        }

        self.pairs.retain(|p| !(lh.divides(p.lcm) && lh.lcm(leads[p.i]) != p.lcm && lh.lcm(leads[p.j]) != p.lcm));

        let before = self.pairs.len();
        for k in kept {
            let (g, l, coprime) = cand[k];
            if (product_criterion && coprime) || !keep(l) {
                continue;
            }
            self.pairs.push(Pair { i: g, j: h, lcm: l, weight: weight(g, h, l) });
        }
        if self.pairs.len() > before {
            let order = self.order;
            self.pairs.sort_by(|a, b| Self::cmp(order, a, b));
        }

        active.retain(|&g| !lh.divides(leads[g]));
        active.push(h);
    }
}
