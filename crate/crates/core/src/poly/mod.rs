//! Rings, sparse polynomials and term orders.

mod monomial;
mod order;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::Field;

pub use monomial::{monomials_below, monomials_of_degree, Monomial, MAX_EXPONENT, MAX_VARS};
pub use order::MonomialOrder;
pub use parse::parse_polynomial;

/// A polynomial ring `k[x_0, ..., x_{d-1}]`, read as the local ring at the
/// origin whenever lengths are taken.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring<F: Field> {
    vars: Vec<String>,
    field: F,
}

impl<F: Field> Ring<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], field: F) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables are supported")));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars, field }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same ring with one extra variable put in front, for elimination.
    /// Monomials move with [`shift_in`].
    pub fn with_leading_var(&self) -> Result<Arc<Self>> {
        let mut name = "t".to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = vec![name];
        vars.extend(self.vars.iter().cloned());
        Ring::new(&vars, self.field.clone())
    }

    /// Compare two exponent vectors in this ring.
    pub fn compare_exponents(&self, a: &[u32], b: &[u32], order: MonomialOrder) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch(a.len(), b.len()));
        }
        if a.len() != self.nvars() {
            return Err(Error::LengthMismatch(a.len(), self.nvars()));
        }
        Ok(order.compare(Monomial::new(a)?, Monomial::new(b)?))
    }
}

/// Shift every variable index up by one (for [`Ring::with_leading_var`]).
pub(crate) fn shift_in(m: Monomial) -> Monomial {
    let deg = m.degree();
    let low = m.low_bits() << 16;
    Monomial(low | ((deg as u128) << 112))
}

/// Inverse of [`shift_in`] on monomials free of variable 0.
pub(crate) fn shift_out(m: Monomial) -> Monomial {
    debug_assert_eq!(m.exponent(0), 0);
    let deg = m.degree();
    Monomial((m.low_bits() >> 16) | ((deg as u128) << 112))
}

/// A polynomial with exact coefficients. Terms are stored in descending
/// grevlex order without zero coefficients, so equality is structural.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

pub(crate) fn same_ring<F: Field>(a: &Arc<Ring<F>>, b: &Arc<Ring<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn canonical_sort<E>(terms: &mut [(Monomial, E)]) {
    terms.sort_unstable_by(|a, b| MonomialOrder::Grevlex.compare(b.0, a.0));
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        Self::term(ring, Monomial::ONE, c)
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn term(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Arc<Ring<F>>, m: Monomial) -> Self {
        Self::term(ring, m, ring.field.one())
    }

    pub fn var(ring: &Arc<Ring<F>>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var_power(i, 1))
    }

    /// Build from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<Ring<F>>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let f = &ring.field;
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = f.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        canonical_sort(&mut terms);
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusts the caller: no zeros, no duplicates. Sorts into canonical order.
    pub(crate) fn from_distinct_terms(ring: &Arc<Ring<F>>, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        canonical_sort(&mut terms);
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Lowest degree of a term (the order at the origin); `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.low_degree()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, F::Elem)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0)).cloned()
    }

    /// Terms sorted descending in `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, F::Elem)> {
        let mut t = self.terms.clone();
        if order != MonomialOrder::Grevlex {
            t.sort_unstable_by(|a, b| order.compare(b.0, a.0));
        }
        t
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        // merge of two canonically sorted lists
        let f = &self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match MonomialOrder::Grevlex.compare(a[i].0, b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&a[i].1, &b[j].1);
                    if !f.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let f = &self.ring.field;
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return other.mul_term(*m, c);
        }
        if other.is_monomial() {
            let (m, c) = &other.terms[0];
            return self.mul_term(*m, c);
        }
        let mut acc: FxHashMap<Monomial, F::Elem> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(*mb);
                match acc.get_mut(&m) {
                    Some(e) => *e = f.mul_add(e, ca, cb),
                    None => {
                        acc.insert(m, f.mul(ca, cb));
                    }
                }
            }
        }
        let terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        Self::from_distinct_terms(&self.ring, terms)
    }

    pub fn neg(&self) -> Self {
        let f = &self.ring.field;
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, e)| (*m, f.mul(e, c))).collect() }
    }

    /// Multiply by `c * m`; order-preserving, so no re-sort is needed.
    pub fn mul_term(&self, m: Monomial, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, e)| (t.mul(m), f.mul(e, c))).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Drop every term whose degree in variables `from..` is at least `bound`.
    pub fn truncate(&self, bound: u32, from: usize) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.partial_degree(from) < bound).cloned().collect(),
        }
    }

    /// Same coefficients in a ring with the same field; used for the
    /// elimination variable.
    pub(crate) fn map_monomials(&self, ring: &Arc<Ring<F>>, map: impl Fn(Monomial) -> Monomial) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (map(*m), c.clone())).collect();
        Self::from_distinct_terms(ring, terms)
    }

    /// Parse in this polynomial's ring (convenience for tests and examples).
    pub fn parse(ring: &Arc<Ring<F>>, text: &str) -> Result<Self> {
        parse_polynomial(text, ring)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = &self.ring.field;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut coef = f.format(c);
            let negative = coef.starts_with('-');
            if negative {
                coef.remove(0);
            }
            match (i, negative) {
                (0, false) => {}
                (0, true) => write!(out, "-")?,
                (_, false) => write!(out, " + ")?,
                (_, true) => write!(out, " - ")?,
            }
            let mono = m.display(&self.ring.vars);
            if *m == Monomial::ONE {
                write!(out, "{coef}")?;
            } else if coef == "1" {
                write!(out, "{mono}")?;
            } else {
                write!(out, "{coef}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
