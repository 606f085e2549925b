//! Local standard bases in `k[x]/m^B`.
//!
//! With the negative degree order every monomial of degree below `B` is a
//! column of a fixed, finite universe. Multiplying a polynomial never moves
//! a term to a smaller degree, so S-pairs against `m^B` vanish and the
//! truncation needs no explicit generators. Rows are sparse over column
//! indices; reduction runs on a dense accumulator scanned left to right.

use crate::field::Field;
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder};

use super::pairs::PairQueue;

const NONE: u32 = u32::MAX;

pub(crate) struct Universe {
    nvars: usize,
    bound: u32,
    monos: Vec<Monomial>,
    deg_start: Vec<usize>,
    /// `binom[a * stride + b] = C(a, b)` for `b <= nvars`
    binom: Vec<u64>,
    stride: usize,
}

impl Universe {
    pub fn new(nvars: usize, bound: u32) -> Self {
        let stride = nvars + 1;
        let rows = bound as usize + nvars + 2;
        let mut binom = vec![0u64; rows * stride];
        for a in 0..rows {
            binom[a * stride] = 1;
            for b in 1..stride.min(a + 1) {
                binom[a * stride + b] =
                    binom[(a - 1) * stride + b - 1] + if b < a { binom[(a - 1) * stride + b] } else { 0 };
            }
        }
        let mut monos = Vec::new();
        let mut deg_start = Vec::with_capacity(bound as usize + 1);
        for d in 0..bound {
            deg_start.push(monos.len());
            let mut layer = monomials_of_degree(nvars, d);
            layer.sort_unstable();
            monos.extend(layer);
        }
        deg_start.push(monos.len());
        Universe { nvars, bound, monos, deg_start, binom, stride }
    }

    #[inline]
    fn c(&self, a: u32, b: usize) -> u64 {
        self.binom[a as usize * self.stride + b]
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    /// Column of `m`, or `None` when its degree reaches the bound.
    #[inline]
    pub fn index_of(&self, m: Monomial) -> Option<u32> {
        let d = m.degree();
        if d >= self.bound {
            return None;
        }
        let mut rank = self.deg_start[d as usize] as u64;
        let mut r = d;
        for k in (1..self.nvars).rev() {
            let a = m.exponent(k);
            if a > 0 {
                rank += self.c(r + k as u32, k) - self.c(r - a + k as u32, k);
                r -= a;
            }
        }
        Some(rank as u32)
    }

    pub fn degree_start(&self, d: u32) -> usize {
        self.deg_start[d.min(self.bound) as usize]
    }
}

pub(crate) type Row<E> = Vec<(u32, E)>;

pub(crate) struct LocalEngine<'a, F: Field> {
    field: &'a F,
    u: Universe,
    rows: Vec<Row<F::Elem>>,
    leads: Vec<Monomial>,
    reducer: Vec<u32>,
    acc: Vec<F::Acc>,
    active: Vec<usize>,
    queue: PairQueue,
}

impl<'a, F: Field> LocalEngine<'a, F> {
    pub fn new(field: &'a F, nvars: usize, bound: u32) -> Self {
        let u = Universe::new(nvars, bound);
        let n = u.len();
        LocalEngine {
            field,
            u,
            rows: Vec::new(),
            leads: Vec::new(),
            reducer: vec![NONE; n],
            acc: vec![field.acc_zero(); n],
            active: Vec::new(),
            queue: PairQueue::new(MonomialOrder::LocalGrevlex),
        }
    }

    fn load(&mut self, terms: &[(Monomial, F::Elem)]) -> Option<usize> {
        let mut lo = usize::MAX;
        for (m, c) in terms {
            if let Some(i) = self.u.index_of(*m) {
                let i = i as usize;
                self.field.acc_add(&mut self.acc[i], c);
                lo = lo.min(i);
            }
        }
        (lo != usize::MAX).then_some(lo)
    }

    /// `acc -= c * mono * row[skip..]`; returns the largest column touched.
    #[inline]
    fn sub_multiple(&mut self, row_id: usize, mono: Monomial, c: &F::Elem, skip: usize) -> usize {
        let f = self.field;
        let neg = f.neg(c);
        let mut hi = 0;
        let row = &self.rows[row_id];
        for (j, cj) in &row[skip..] {
            match self.u.index_of(self.u.monos[*j as usize].mul(mono)) {
                Some(k) => {
                    let k = k as usize;
                    f.acc_fma(&mut self.acc[k], &neg, cj);
                    hi = k;
                }
                None => break,
            }
        }
        hi
    }

    /// Fully reduce the accumulator on columns `from..=hi` and drain it.
    fn reduce(&mut self, from: usize, mut hi: usize) -> Row<F::Elem> {
        let f = self.field;
        let mut out = Vec::new();
        let mut i = from;
        while i <= hi && i < self.acc.len() {
            if f.acc_is_clear(&self.acc[i]) {
                i += 1;
                continue;
            }
            let c = f.acc_take(&mut self.acc[i]);
            if f.is_zero(&c) {
                i += 1;
                continue;
            }
            let r = self.reducer[i];
            if r == NONE {
                out.push((i as u32, c));
            } else {
                let r = r as usize;
                let mono = self.leads[r].quotient_of(self.u.monos[i]);
                let h = self.sub_multiple(r, mono, &c, 1);
                hi = hi.max(h);
            }
            i += 1;
        }
        out
    }

    fn normalize(&self, row: &mut Row<F::Elem>) {
        let f = self.field;
        let inv = f.inv(&row[0].1).expect("nonzero lead");
        if !f.is_one(&inv) {
            for t in row.iter_mut() {
                t.1 = f.mul(&t.1, &inv);
            }
        }
    }

    /// An engine whose reducers are the given monic rows, for normal forms
    /// only; no pairs are formed.
    pub fn from_basis(field: &'a F, nvars: usize, bound: u32, basis: &[Vec<(Monomial, F::Elem)>]) -> Self {
        let mut e = LocalEngine::new(field, nvars, bound);
        for b in basis {
            let row: Row<F::Elem> = b.iter().filter_map(|(m, c)| e.u.index_of(*m).map(|i| (i, c.clone()))).collect();
            if !row.is_empty() {
                e.mark(row);
            }
        }
        e
    }

    /// Store `row` and let it reduce every multiple of its lead.
    fn mark(&mut self, mut row: Row<F::Elem>) -> usize {
        row.sort_unstable_by_key(|t| t.0);
        self.normalize(&mut row);
        let id = self.rows.len();
        let lead_idx = row[0].0;
        let lead = self.u.monos[lead_idx as usize];
        self.rows.push(row);
        self.leads.push(lead);
        let room = self.u.bound - lead.degree();
        let end = self.u.degree_start(room);
        for j in 0..end {
            let k = self.u.index_of(lead.mul(self.u.monos[j])).expect("inside universe") as usize;
            let cur = self.reducer[k];
            if cur == NONE || self.rows[cur as usize].len() > self.rows[id].len() {
                self.reducer[k] = id as u32;
            }
        }
        id
    }

    fn install(&mut self, row: Row<F::Elem>) {
        let id = self.mark(row);
        let bound = self.u.bound;
        self.queue.update(&self.leads, &mut self.active, id, false, |_, _, l| l.degree(), |l| l.degree() < bound);
    }

    /// Reduce and add one generator, then complete the basis. Returns
    /// whether the generator was new modulo the current ideal.
    pub fn add_generator(&mut self, terms: &[(Monomial, F::Elem)]) -> bool {
        let Some(lo) = self.load(terms) else {
            return false;
        };
        let row = self.reduce(lo, self.acc.len() - 1);
        if row.is_empty() {
            return false;
        }
        self.install(row);
        self.complete();
        true
    }

    pub fn complete(&mut self) {
        while let Some(p) = self.queue.pop() {
            let f = self.field;
            let ui = self.leads[p.i].quotient_of(p.lcm);
            let uj = self.leads[p.j].quotient_of(p.lcm);
            let neg_one = f.neg(&f.one());
            let h1 = self.sub_multiple(p.i, ui, &neg_one, 1);
            let h2 = self.sub_multiple(p.j, uj, &f.one(), 1);
            let from = self.u.index_of(p.lcm).expect("pairs stay inside") as usize;
            let row = self.reduce(from, h1.max(h2));
            if !row.is_empty() {
                self.install(row);
            }
        }
    }

    /// Number of standard monomials of each degree below the bound.
    pub fn profile(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.u.bound as usize];
        for (i, r) in self.reducer.iter().enumerate() {
            if *r == NONE {
                out[self.u.monos[i].degree() as usize] += 1;
            }
        }
        out
    }

    /// Normal form of `terms` modulo the ideal plus `m^B`.
    pub fn normal_form(&mut self, terms: &[(Monomial, F::Elem)]) -> Vec<(Monomial, F::Elem)> {
        let Some(lo) = self.load(terms) else {
            return Vec::new();
        };
        let row = self.reduce(lo, self.acc.len() - 1);
        row.into_iter().map(|(i, c)| (self.u.monos[i as usize], c)).collect()
    }

    /// Minimal, tail-reduced, monic basis, ascending in the local order.
    pub fn reduced_basis(&mut self) -> Vec<Vec<(Monomial, F::Elem)>> {
        let mut ids = self.active.clone();
        ids.sort_by_key(|&k| std::cmp::Reverse(self.rows[k][0].0));
        let mut out = Vec::with_capacity(ids.len());
        for k in ids {
            let row = self.rows[k].clone();
            let mut hi = 0;
            let mut lo = usize::MAX;
            for (j, c) in &row[1..] {
                self.field.acc_add(&mut self.acc[*j as usize], c);
                hi = *j as usize;
                lo = lo.min(*j as usize);
            }
            let mut terms = vec![(self.u.monos[row[0].0 as usize], row[0].1.clone())];
            if lo != usize::MAX {
                let tail = self.reduce(lo, hi);
                terms.extend(tail.into_iter().map(|(i, c)| (self.u.monos[i as usize], c)));
            }
            out.push(terms);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::monomials_below;

    #[test]
    fn index_matches_sorted_position() {
        for n in 1..=4 {
            let u = Universe::new(n, 9);
            for (i, m) in u.monos.iter().enumerate() {
                assert_eq!(u.index_of(*m), Some(i as u32));
            }
            assert_eq!(u.len(), monomials_below(n, 9).len());
        }
    }

    #[test]
    fn universe_is_descending_in_local_order() {
        let u = Universe::new(3, 6);
        for w in u.monos.windows(2) {
            assert_eq!(MonomialOrder::LocalGrevlex.compare(w[0], w[1]), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn colength_of_a_unit_plus_higher_terms() {
        // x + x^2 is a unit times x locally
        let f = PrimeField::default();
        let mut e = LocalEngine::new(&f, 2, 8);
        let x = Monomial::var_power(0, 1);
        let y3 = Monomial::var_power(1, 3);
        e.add_generator(&[(x, 1), (x.mul(x), 1)]);
        e.add_generator(&[(y3, 1)]);
        assert_eq!(e.profile().iter().sum::<u64>(), 3);
    }
}
