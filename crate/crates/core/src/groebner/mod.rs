//! Gröbner and local standard bases, normal forms and colengths.

pub(crate) mod local;
mod pairs;
pub(crate) mod sparse;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Ring};

use local::LocalEngine;
use sparse::{SparseEngine, Terms, Truncation};

/// A reduced basis. When `degree_bound = Some(D)` it is a basis of the
/// ideal plus `m^D` (in the truncated variables); the monomials of `m^D` are
/// implied and not listed.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    order: MonomialOrder,
    rows: Vec<Terms<F::Elem>>,
    degree_bound: Option<u32>,
}

/// Buchberger's algorithm with the Gebauer–Möller criteria.
///
/// `LocalGrevlex` requires a bound and yields a standard basis of the
/// localisation at the origin; the global orders yield ordinary Gröbner
/// bases. With a bound the answer is valid for every question about
/// monomials of (partial) degree below it.
pub fn buchberger<F: Field>(
    gens: &[Polynomial<F>],
    order: MonomialOrder,
    degree_bound: Option<u32>,
) -> Result<GroebnerBasis<F>> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidRing("buchberger needs at least one generator".into()));
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::MixedRings);
    }
    if let MonomialOrder::Block { split } = order {
        if split == 0 || split >= ring.nvars() {
            return Err(Error::InvalidOrder(format!("block split {split} out of range")));
        }
    }
    let field = ring.field();
    let rows = match (order, degree_bound) {
        (MonomialOrder::LocalGrevlex, None) => {
            return Err(Error::InvalidOrder("the local order needs a degree bound".into()))
        }
        (MonomialOrder::LocalGrevlex, Some(bound)) => {
            let mut e = LocalEngine::new(field, ring.nvars(), bound);
            let mut sorted: Vec<&Polynomial<F>> = gens.iter().collect();
            sorted.sort_by_key(|g| g.low_degree());
            for g in sorted {
                e.add_generator(g.terms());
            }
            e.reduced_basis()
        }
        (_, bound) => {
            let trunc = bound.map(|b| Truncation { bound: b, start: order.truncation_start() });
            let mut e = SparseEngine::new(field, order, ring.nvars(), trunc);
            e.add_generators(gens.iter().map(|g| g.terms().to_vec()).collect());
            e.reduced_basis()
        }
    };
    Ok(GroebnerBasis { ring, order, rows, degree_bound })
}

impl<F: Field> GroebnerBasis<F> {
    pub(crate) fn from_rows(
        ring: Arc<Ring<F>>,
        order: MonomialOrder,
        rows: Vec<Terms<F::Elem>>,
        degree_bound: Option<u32>,
    ) -> Self {
        GroebnerBasis { ring, order, rows, degree_bound }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn elements(&self) -> Vec<Polynomial<F>> {
        self.rows.iter().map(|r| Polynomial::from_distinct_terms(&self.ring, r.clone())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    fn trunc(&self) -> Option<Truncation> {
        self.degree_bound.map(|b| Truncation { bound: b, start: self.order.truncation_start() })
    }

    /// Remainder of `f`; zero iff `f` lies in the ideal (plus `m^D` when
    /// truncated). Errors if `f` reaches the truncation bound.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::MixedRings);
        }
        if let Some(t) = self.trunc() {
            if let Some(d) = f.terms().iter().map(|x| x.0.partial_degree(t.start)).max() {
                if d >= t.bound {
                    return Err(Error::OutsideWindow { degree: d, bound: t.bound });
                }
            }
        }
        let field = self.ring.field();
        if let (MonomialOrder::LocalGrevlex, Some(bound)) = (self.order, self.degree_bound) {
            let mut e = LocalEngine::from_basis(field, self.ring.nvars(), bound, &self.rows);
            return Ok(Polynomial::from_terms(&self.ring, e.normal_form(f.terms())));
        }
        let mut p = f.sorted_terms(self.order);
        let mut out = Vec::new();
        while !p.is_empty() {
            let (m, c) = p[0].clone();
            let red = self.rows.iter().find(|r| r[0].0.divides(m));
            match red {
                Some(r) => {
                    let u = r[0].0.quotient_of(m);
                    p = sub_scaled(field, self.order, self.trunc(), &p[1..], &c, u, &r[1..]);
                }
                None => {
                    out.push((m, c));
                    p.remove(0);
                }
            }
        }
        Ok(Polynomial::from_distinct_terms(&self.ring, out))
    }

    pub fn is_member(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Exponent caps per variable from pure-power leading monomials (or the
    /// truncation); `None` if some variable is free.
    fn caps(&self) -> Option<Vec<u32>> {
        let n = self.ring.nvars();
        let leads = self.leading_monomials();
        let t = self.trunc();
        (0..n)
            .map(|v| {
                let pure = leads.iter().filter(|m| m.degree() == m.exponent(v)).map(|m| m.exponent(v)).min();
                let implied = t.filter(|t| v >= t.start).map(|t| t.bound);
                match (pure, implied) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                }
            })
            .collect()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.caps().is_some()
    }

    /// Monomials outside the leading ideal (and below the bound).
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let caps = self.caps().ok_or(Error::NotZeroDimensional)?;
        let leads = self.leading_monomials();
        let t = self.trunc();
        let mut out = Vec::new();
        let mut exps = vec![0u32; caps.len()];
        walk(&caps, &leads, t, 0, &mut exps, &mut out);
        Ok(out)
    }

    /// `ℓ(R/I)` as the number of standard monomials.
    pub fn colength(&self) -> Result<u64> {
        Ok(self.standard_monomials()?.len() as u64)
    }
}

fn walk(caps: &[u32], leads: &[Monomial], t: Option<Truncation>, v: usize, exps: &mut [u32], out: &mut Vec<Monomial>) {
    if v == caps.len() {
        let m = Monomial::new(exps).expect("within caps");
        if t.is_none_or(|t| m.partial_degree(t.start) < t.bound) && !leads.iter().any(|l| l.divides(m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..caps[v] {
        exps[v] = e;
        // divisibility is monotone: once the prefix is in the ideal, stop
        let prefix = Monomial::new(&exps[..=v]).expect("within caps");
        if leads.iter().any(|l| l.divides(prefix)) {
            break;
        }
        if let Some(t) = t {
            if prefix.partial_degree(t.start) >= t.bound {
                break;
            }
        }
        walk(caps, leads, t, v + 1, exps, out);
    }
    exps[v] = 0;
}

fn sub_scaled<F: Field>(
    f: &F,
    order: MonomialOrder,
    trunc: Option<Truncation>,
    a: &[(Monomial, F::Elem)],
    c: &F::Elem,
    m: Monomial,
    b: &[(Monomial, F::Elem)],
) -> Terms<F::Elem> {
    let neg = f.neg(c);
    let mut acc: Vec<(Monomial, F::Elem)> = a.to_vec();
    for (bm, bc) in b {
        let x = bm.mul(m);
        if trunc.is_some_and(|t| x.partial_degree(t.start) >= t.bound) {
            continue;
        }
        acc.push((x, f.mul(&neg, bc)));
    }
    acc.sort_by(|p, q| order.compare(q.0, p.0));
    let mut out: Terms<F::Elem> = Vec::with_capacity(acc.len());
    for (m, c) in acc {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = f.add(&last.1, &c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|t| !f.is_zero(&t.1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn ring2() -> Arc<Ring<Rationals>> {
        Ring::new(&["x", "y"], Rationals).unwrap()
    }

    fn p(r: &Arc<Ring<Rationals>>, s: &str) -> Polynomial<Rationals> {
        Polynomial::parse(r, s).unwrap()
    }

    fn gens(r: &Arc<Ring<Rationals>>, s: &[&str]) -> Vec<Polynomial<Rationals>> {
        s.iter().map(|t| p(r, t)).collect()
    }

    #[test]
    fn substitution_example() {
        let r = ring2();
        let g = gens(&r, &["x^2 + y", "y^2"]);
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = buchberger(&g, order, None).unwrap();
            assert_eq!(gb.colength().unwrap(), 4);
            assert!(gb.is_member(&p(&r, "x^4")).unwrap());
            assert!(!gb.is_member(&p(&r, "x^3")).unwrap());
        }
        let gb = buchberger(&g, MonomialOrder::LocalGrevlex, Some(6)).unwrap();
        assert_eq!(gb.colength().unwrap(), 4);
    }

    #[test]
    fn trivial_bases() {
        let r = ring2();
        let gb = buchberger(&gens(&r, &["x", "y"]), MonomialOrder::Grevlex, None).unwrap();
        assert_eq!(gb.elements(), gens(&r, &["y", "x"]));
        let mono = gens(&r, &["x^3", "x^2*y", "x*y^2", "y^3"]);
        let gb = buchberger(&mono, MonomialOrder::Grevlex, None).unwrap();
        assert_eq!(gb.len(), 4);
        assert_eq!(gb.colength().unwrap(), 6);
        let gb = buchberger(&gens(&r, &["x^2", "y^3"]), MonomialOrder::Grevlex, None).unwrap();
        assert_eq!(gb.colength().unwrap(), 6);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring2();
        let gb = buchberger(&gens(&r, &["y"]), MonomialOrder::Grevlex, None).unwrap();
        assert_eq!(gb.normal_form(&p(&r, "x")).unwrap(), p(&r, "x"));
        assert_eq!(gb.is_zero_dimensional(), false);
        assert_eq!(gb.colength(), Err(Error::NotZeroDimensional));
        let gb = buchberger(&gens(&r, &["x^3", "y^3"]), MonomialOrder::Grevlex, None).unwrap();
        assert!(gb.is_member(&p(&r, "x^3*y^3")).unwrap());
        assert!(!gb.is_member(&p(&r, "x^2*y")).unwrap());
    }

    #[test]
    fn truncated_window_errors() {
        let r = ring2();
        let gb = buchberger(&gens(&r, &["x^2", "y^2"]), MonomialOrder::LocalGrevlex, Some(4)).unwrap();
        assert!(matches!(gb.normal_form(&p(&r, "x^4")), Err(Error::OutsideWindow { .. })));
        assert!(buchberger(&gens(&r, &["x"]), MonomialOrder::LocalGrevlex, None).is_err());
    }

    #[test]
    fn local_versus_global() {
        // (x(1-x), y): two points globally, one at the origin
        let r = ring2();
        let g = gens(&r, &["x - x^2", "y"]);
        assert_eq!(buchberger(&g, MonomialOrder::Grevlex, None).unwrap().colength().unwrap(), 2);
        assert_eq!(buchberger(&g, MonomialOrder::LocalGrevlex, Some(5)).unwrap().colength().unwrap(), 1);
    }

    #[test]
    fn block_order_eliminates() {
        let r = Ring::new(&["t", "x", "y"], Rationals).unwrap();
        // t*x, (1-t)*y: contraction is (x*y)
        let g = gens(&r, &["t*x", "y - t*y"]);
        let gb = buchberger(&g, MonomialOrder::Block { split: 1 }, None).unwrap();
        let free: Vec<_> =
            gb.elements().into_iter().filter(|e| e.terms().iter().all(|t| t.0.exponent(0) == 0)).collect();
        assert_eq!(free, vec![Polynomial::parse(&r, "x*y").unwrap()]);
    }

    fn random_ideal(seed: &[(u32, u32, i64)], r: &Arc<Ring<PrimeField>>) -> Vec<Polynomial<PrimeField>> {
        let f = PrimeField::default();
        let mut out = vec![
            Polynomial::monomial(r, Monomial::new(&[4, 0]).unwrap()),
            Polynomial::monomial(r, Monomial::new(&[0, 5]).unwrap()),
        ];
        for chunk in seed.chunks(2) {
            let terms = chunk.iter().map(|&(a, b, c)| (Monomial::new(&[a, b]).unwrap(), f.from_i64(c)));
            out.push(Polynomial::from_terms(r, terms));
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn colength_is_order_independent(seed in prop::collection::vec((0u32..4, 0u32..4, -3i64..4), 1..5)) {
            let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
            let g = random_ideal(&seed, &r);
            let a = buchberger(&g, MonomialOrder::Grevlex, None).unwrap().colength().unwrap();
            let b = buchberger(&g, MonomialOrder::Lex, None).unwrap().colength().unwrap();
            prop_assert_eq!(a, b);
            // x^4, y^5 force m^8 inside, so a bound of 12 changes nothing
            let c = buchberger(&g, MonomialOrder::Grevlex, Some(12)).unwrap().colength().unwrap();
            prop_assert_eq!(a, c);
        }

        #[test]
        fn normal_form_is_idempotent_and_linear(
            seed in prop::collection::vec((0u32..4, 0u32..4, -3i64..4), 1..5),
            f1 in prop::collection::vec((0u32..5, 0u32..5, -3i64..4), 0..5),
            f2 in prop::collection::vec((0u32..5, 0u32..5, -3i64..4), 0..5),
        ) {
            let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
            let fld = PrimeField::default();
            let gb = buchberger(&random_ideal(&seed, &r), MonomialOrder::Grevlex, None).unwrap();
            let mk = |t: &[(u32, u32, i64)]| Polynomial::from_terms(&r, t.iter().map(|&(a, b, c)| (Monomial::new(&[a, b]).unwrap(), fld.from_i64(c))));
            let (a, b) = (mk(&f1), mk(&f2));
            let na = gb.normal_form(&a).unwrap();
            prop_assert_eq!(gb.normal_form(&na).unwrap(), na.clone());
            let s = a.add(&b.scale(&7)).unwrap();
            let lhs = gb.normal_form(&s).unwrap();
            let rhs = na.add(&gb.normal_form(&b).unwrap().scale(&7)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
