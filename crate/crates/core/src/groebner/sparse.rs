//! Buchberger over global term orders with sorted sparse rows.
//!
//! A degree bound `D` on variables `start..` is realised by adding every
//! monomial of that partial degree as an explicit element and discarding
//! terms at or above it, which is what reduction by those monomials does.

use std::cmp::Ordering;

use crate::field::Field;
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder};

use super::pairs::PairQueue;

pub(crate) type Terms<E> = Vec<(Monomial, E)>;

#[derive(Clone, Copy)]
pub(crate) struct Truncation {
    pub bound: u32,
    pub start: usize,
}

impl Truncation {
    #[inline]
    fn keeps(&self, m: Monomial) -> bool {
        m.partial_degree(self.start) < self.bound
    }
}

pub(crate) struct SparseEngine<'a, F: Field> {
    field: &'a F,
    order: MonomialOrder,
    trunc: Option<Truncation>,
    pub rows: Vec<Terms<F::Elem>>,
    pub leads: Vec<Monomial>,
    sugar: Vec<u32>,
    /// explicit monomials standing for `m^D`
    pub implicit: Vec<bool>,
    pub active: Vec<usize>,
    queue: PairQueue,
}

impl<'a, F: Field> SparseEngine<'a, F> {
    pub fn new(field: &'a F, order: MonomialOrder, nvars: usize, trunc: Option<Truncation>) -> Self {
        let mut e = SparseEngine {
            field,
            order,
            trunc,
            rows: Vec::new(),
            leads: Vec::new(),
            sugar: Vec::new(),
            implicit: Vec::new(),
            active: Vec::new(),
            queue: PairQueue::new(order),
        };
        if let Some(t) = trunc {
            let k = nvars - t.start;
            for m in monomials_of_degree(k, t.bound) {
                let shifted = Monomial((m.low_bits() << (16 * t.start)) | ((t.bound as u128) << 112));
                e.install(vec![(shifted, field.one())], true);
            }
        }
        e
    }

    fn sorted(&self, mut t: Terms<F::Elem>) -> Terms<F::Elem> {
        let o = self.order;
        t.sort_unstable_by(|a, b| o.compare(b.0, a.0));
        t
    }

    /// `a - c * m * b`, merged and truncated; both inputs sorted descending.
    fn sub_scaled(
        &self,
        a: &[(Monomial, F::Elem)],
        c: &F::Elem,
        m: Monomial,
        b: &[(Monomial, F::Elem)],
    ) -> Terms<F::Elem> {
        let f = self.field;
        let neg = f.neg(c);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let keep = |x: Monomial| self.trunc.is_none_or(|t| t.keeps(x));
        while i < a.len() || j < b.len() {
            let bm = (j < b.len()).then(|| b[j].0.mul(m));
            let ord = match (i < a.len(), bm) {
                (true, Some(bm)) => self.order.compare(a[i].0, bm),
                (true, None) => Ordering::Greater,
                (false, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let bm = bm.unwrap();
                    if keep(bm) {
                        out.push((bm, f.mul(&neg, &b[j].1)));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.mul_add(&a[i].1, &neg, &b[j].1);
                    if !f.is_zero(&v) {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    fn find_reducer(&self, m: Monomial) -> Option<usize> {
        self.active.iter().copied().find(|&g| self.leads[g].divides(m))
    }

    /// Full reduction; terms are scanned in descending order.
    pub fn reduce(&self, mut p: Terms<F::Elem>) -> Terms<F::Elem> {
        let mut pos = 0;
        while pos < p.len() {
            let m = p[pos].0;
            match self.find_reducer(m) {
                Some(g) => {
                    let u = self.leads[g].quotient_of(m);
                    let c = p[pos].1.clone();
                    let tail = self.sub_scaled(&p[pos + 1..], &c, u, &self.rows[g][1..]);
                    p.truncate(pos);
                    p.extend(tail);
                }
                None => pos += 1,
            }
        }
        p
    }

    fn install(&mut self, mut row: Terms<F::Elem>, implicit: bool) {
        let f = self.field;
        let inv = f.inv(&row[0].1).expect("nonzero lead");
        for t in row.iter_mut() {
            t.1 = f.mul(&t.1, &inv);
        }
        let id = self.rows.len();
        self.leads.push(row[0].0);
        self.sugar.push(row.iter().map(|t| t.0.degree()).max().unwrap_or(0));
        self.rows.push(row);
        self.implicit.push(implicit);
        let sugar = &self.sugar;
        let leads = &self.leads;
        self.queue.update(
            leads,
            &mut self.active,
            id,
            true,
            |i, j, l| {
                let si = sugar[i] + l.degree() - leads[i].degree();
                let sj = sugar[j] + l.degree() - leads[j].degree();
                si.max(sj)
            },
            |_| true,
        );
    }

    pub fn add_generators(&mut self, gens: Vec<Terms<F::Elem>>) {
        for g in gens {
            let g: Terms<F::Elem> = g.into_iter().filter(|t| self.trunc.is_none_or(|tr| tr.keeps(t.0))).collect();
            if g.is_empty() {
                continue;
            }
            let g = self.sorted(g);
            let r = self.reduce(g);
            if !r.is_empty() {
                self.install(r, false);
            }
        }
        self.complete();
    }

    fn complete(&mut self) {
        while let Some(p) = self.queue.pop() {
            // S-pairs of two monomials vanish
            if self.rows[p.i].len() == 1 && self.rows[p.j].len() == 1 {
                continue;
            }
            let ui = self.leads[p.i].quotient_of(p.lcm);
            let uj = self.leads[p.j].quotient_of(p.lcm);
            let one = self.field.one();
            let a: Terms<F::Elem> = self.sub_scaled(&[], &self.field.neg(&one), ui, &self.rows[p.i][1..]);
            let s = self.sub_scaled(&a, &one, uj, &self.rows[p.j][1..]);
            let r = self.reduce(s);
            if !r.is_empty() {
                self.install(r, false);
            }
        }
    }

    /// Minimal, tail-reduced basis without the explicit bound monomials,
    /// ascending by leading monomial.
    pub fn reduced_basis(&self) -> Vec<Terms<F::Elem>> {
        let mut ids: Vec<usize> = self.active.iter().copied().filter(|&g| !self.implicit[g]).collect();
        let o = self.order;
        ids.sort_by(|&a, &b| o.compare(self.leads[a], self.leads[b]));
        ids.into_iter()
            .map(|g| {
                let row = &self.rows[g];
                let mut out = vec![row[0].clone()];
                out.extend(self.reduce(row[1..].to_vec()));
                out
            })
            .collect()
    }
}
