//! Ideals of the local ring `k[x]` localised at the origin.
//!
//! Lengths of m-primary ideals come from local standard bases computed
//! in `k[x]/m^B`. If some degree `k < B` carries no standard monomial then
//! `m^k ⊆ I + m^B`, and Nakayama gives `m^k ⊆ I`, so the count of standard
//! monomials below the bound is the exact colength. Generators that reduce
//! to zero during the incremental computation are dropped, which is sound
//! by the same argument once the gap is certified.
//!
//! Ideals that are not m-primary fall back on global Gröbner bases; that is
//! exact for homogeneous ideals and is all the plumbing needs.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::local::LocalEngine;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::poly::{monomials_of_degree, same_ring, shift_in, shift_out, Monomial, MonomialOrder, Polynomial, Ring};

/// Largest universe (monomials below the bound) a colength search may use.
const UNIVERSE_LIMIT: u128 = 3_000_000;
const LOEWY_LIMIT: u32 = 64;

#[derive(Clone)]
pub struct Ideal<F: Field> {
    inner: Arc<Inner<F>>,
}

struct Inner<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<Polynomial<F>>,
    /// proven: `m^k ⊆ I`
    hint: Option<u32>,
    near: Option<Ideal<F>>,
    /// `(c, split)`: `gens[..split]` together with `m^c · near` generate
    layer: Option<(u32, usize)>,
    local: OnceLock<Result<Standard<F>>>,
    global: OnceLock<Result<GroebnerBasis<F>>>,
}

/// Local data of an m-primary ideal.
#[derive(Clone)]
pub struct Standard<F: Field> {
    colength: u64,
    m_power: u32,
    profile: Vec<u64>,
    generators: Vec<Polynomial<F>>,
    basis: GroebnerBasis<F>,
    /// the ideal the computation started from, with `ℓ(R/(I + near))`
    near: Option<(Ideal<F>, u64)>,
    /// some `c` with `m^c · near ⊆ I`
    loewy: Option<u32>,
    /// `generators[..split]` and `m^c · near` generate `I`
    split: usize,
}

impl<F: Field> Standard<F> {
    pub fn colength(&self) -> u64 {
        self.colength
    }

    /// Least `k` with `m^k ⊆ I`.
    pub fn m_power(&self) -> u32 {
        self.m_power
    }

    /// Standard monomials per degree, `0..m_power`.
    pub fn profile(&self) -> &[u64] {
        &self.profile
    }

    /// A generating set drawn from the input generators.
    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// Standard basis for the local degree order, truncated one past
    /// `m_power`.
    pub fn basis(&self) -> &GroebnerBasis<F> {
        &self.basis
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::MixedRings);
        }
        Ok(Self::build(ring, gens, None, None))
    }

    pub fn parse(ring: &Arc<Ring<F>>, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    fn build(ring: &Arc<Ring<F>>, gens: Vec<Polynomial<F>>, hint: Option<u32>, near: Option<Ideal<F>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            inner: Arc::new(Inner {
                ring: ring.clone(),
                gens,
                hint,
                near,
                layer: None,
                local: OnceLock::new(),
                global: OnceLock::new(),
            }),
        }
    }

    pub fn unit(ring: &Arc<Ring<F>>) -> Self {
        Self::build(ring, vec![Polynomial::one(ring)], Some(0), None)
    }

    pub fn maximal(ring: &Arc<Ring<F>>) -> Self {
        Self::maximal_power(ring, 1)
    }

    /// `m^k`, generated by the monomials of degree `k`.
    pub fn maximal_power(ring: &Arc<Ring<F>>, k: u32) -> Self {
        let gens = monomials_of_degree(ring.nvars(), k).into_iter().map(|m| Polynomial::monomial(ring, m)).collect();
        Self::build(ring, gens, Some(k), None)
    }

    pub fn monomial(ring: &Arc<Ring<F>>, exponents: &[Vec<u32>]) -> Result<Self> {
        let gens = exponents
            .iter()
            .map(|e| {
                if e.len() != ring.nvars() {
                    return Err(Error::LengthMismatch(e.len(), ring.nvars()));
                }
                Ok(Polynomial::monomial(ring, Monomial::new(e)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    /// The same ideal, with length computations started from `other`.
    /// Any m-primary ideal is correct here; one that contains `self`
    /// with small quotient makes colengths much cheaper.
    pub fn near(&self, other: &Ideal<F>) -> Self {
        Self::build(&self.inner.ring, self.inner.gens.clone(), self.inner.hint, Some(other.clone()))
    }

    /// `(G) + m^c A`. Generators are truncated where `m^c A` makes them
    /// irrelevant, and the colength is found in one pass.
    pub fn layered(core: Vec<Polynomial<F>>, a: &Ideal<F>, c: u32) -> Result<Self> {
        let ring = a.ring().clone();
        if core.iter().any(|g| !same_ring(g.ring(), &ring)) {
            return Err(Error::MixedRings);
        }
        let bound = a.m_power()? + c + 1;
        let mut gens: Vec<Polynomial<F>> = core.iter().map(|g| g.truncate(bound, 0)).filter(|g| !g.is_zero()).collect();
        let split = gens.len();
        let one = ring.field().one();
        let monos = monomials_of_degree(ring.nvars(), c);
        for g in a.generating_set() {
            for m in &monos {
                gens.push(g.mul_term(*m, &one));
            }
        }
        Ok(Ideal {
            inner: Arc::new(Inner {
                ring,
                gens,
                hint: None,
                near: Some(a.clone()),
                layer: Some((c, split)),
                local: OnceLock::new(),
                global: OnceLock::new(),
            }),
        })
    }

    /// `(G, c)` with `self = (G) + m^c a`, when a computation from `a`
    /// established one.
    pub fn layer_over(&self, a: &Ideal<F>) -> Option<(Vec<Polynomial<F>>, u32)> {
        let s = self.inner.local.get()?.as_ref().ok()?;
        match (&s.near, s.loewy) {
            (Some((n, _)), Some(c)) if Arc::ptr_eq(&n.inner, &a.inner) => Some((s.generators[..s.split].to_vec(), c)),
            _ => None,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.inner.ring
    }

    /// The generators as given (zeros removed).
    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.inner.gens
    }

    /// A small generating set: the pruned one when the ideal is m-primary.
    pub fn generating_set(&self) -> Vec<Polynomial<F>> {
        match self.standard() {
            Ok(s) => s.generators.clone(),
            Err(_) => self.inner.gens.clone(),
        }
    }

    fn known_generators(&self) -> &[Polynomial<F>] {
        match self.inner.local.get() {
            Some(Ok(s)) => &s.generators,
            _ => &self.inner.gens,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.inner.gens.iter().any(is_unit_element)
    }

    pub fn is_m_primary(&self) -> bool {
        self.standard().is_ok()
    }

    pub fn standard(&self) -> Result<&Standard<F>> {
        self.standard_from(None)
    }

    /// Local data, computed on first use. `near` only matters if nothing
    /// has been cached yet.
    fn standard_from(&self, near: Option<&Ideal<F>>) -> Result<&Standard<F>> {
        self.inner
            .local
            .get_or_init(|| {
                if let (Some((c, split)), Some(a)) = (self.inner.layer, &self.inner.near) {
                    return layered(&self.inner.ring, &self.inner.gens, split, c, a);
                }
                let near = self.inner.near.as_ref().or(near);
                compute_standard(&self.inner.ring, &self.inner.gens, self.inner.hint, near)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `ℓ(R/I)`.
    pub fn colength(&self) -> Result<u64> {
        Ok(self.standard()?.colength)
    }

    /// Least `k` with `m^k ⊆ I`.
    pub fn m_power(&self) -> Result<u32> {
        Ok(self.standard()?.m_power)
    }

    /// Global Gröbner basis under `order`.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<GroebnerBasis<F>> {
        let gens =
            if self.inner.gens.is_empty() { vec![Polynomial::zero(self.ring())] } else { self.inner.gens.clone() };
        buchberger(&gens, order, None)
    }

    fn global(&self) -> Result<&GroebnerBasis<F>> {
        self.inner.global.get_or_init(|| self.groebner_basis(MonomialOrder::Grevlex)).as_ref().map_err(Clone::clone)
    }

    pub fn contains_element(&self, f: &Polynomial<F>) -> Result<bool> {
        self.contains_all(std::slice::from_ref(f))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal<F>) -> Result<bool> {
        self.check(other)?;
        self.contains_all(other.known_generators())
    }

    fn contains_all(&self, elems: &[Polynomial<F>]) -> Result<bool> {
        if elems.iter().any(|f| !same_ring(f.ring(), self.ring())) {
            return Err(Error::MixedRings);
        }
        if self.is_unit() {
            return Ok(true);
        }
        match self.standard() {
            Ok(s) => {
                // terms at or past the bound lie in m^B ⊆ I
                let bound = s.basis.degree_bound().expect("local bases are bounded");
                let rows: Vec<_> = s.basis.elements().into_iter().map(|e| e.terms().to_vec()).collect();
                let mut engine = LocalEngine::from_basis(self.ring().field(), self.ring().nvars(), bound, &rows);
                Ok(elems.iter().all(|f| engine.normal_form(f.terms()).is_empty()))
            }
            Err(_) => {
                let gb = self.global()?;
                for f in elems {
                    if !gb.is_member(f)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Ideal equality (never generator-list equality).
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        if !self.contains(other)? {
            return Ok(false);
        }
        if self.is_m_primary() {
            return match quotient_length(self, other) {
                Ok(q) => Ok(q == 0),
                Err(Error::NotMPrimary(_)) => Ok(false),
                Err(e) => Err(e),
            };
        }
        other.contains(self)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        let mut gens = self.known_generators().to_vec();
        gens.extend(other.known_generators().iter().cloned());
        let hint = match (self.hint_now(), other.hint_now()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Ok(Self::build(self.ring(), gens, hint, None))
    }

    /// Pairwise products of the pruned generating sets.
    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        let a = self.generating_set();
        let b = other.generating_set();
        let hint = match (self.standard(), other.standard()) {
            (Ok(x), Ok(y)) => Some(x.m_power + y.m_power),
            _ => None,
        };
        // with m^h ⊆ AB, terms of degree > h change nothing by Nakayama
        let cut = hint.map(|h| h + 1);
        let mut gens = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                let p = x.mul_unchecked(y);
                gens.push(match cut {
                    Some(c) => p.truncate(c, 0),
                    None => p,
                });
            }
        }
        Ok(Self::build(self.ring(), gens, hint, None))
    }

    /// `self^k` by repeated squaring.
    pub fn power(&self, k: u32) -> Result<Ideal<F>> {
        let mut result: Option<Ideal<F>> = None;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = Some(match result {
                    Some(r) => r.product(&base)?,
                    None => base.clone(),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base)?;
            }
        }
        Ok(result.unwrap_or_else(|| Self::unit(self.ring())))
    }

    /// `self ∩ other` by eliminating `t` from `t·A + (1−t)·B`. For
    /// m-primary inputs the computation is truncated at a common power
    /// of `m`, which is then added back.
    pub fn intersection(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        let ring = self.ring();
        let big = ring.with_leading_var()?;
        let bound = match (self.standard(), other.standard()) {
            (Ok(a), Ok(b)) => Some(a.m_power.max(b.m_power)),
            _ => None,
        };
        if bound == Some(0) {
            return Ok(Self::unit(ring));
        }
        let t = Polynomial::var(&big, 0);
        let one_minus_t = Polynomial::one(&big).sub(&t)?;
        let mut gens = Vec::new();
        for g in self.generating_set() {
            gens.push(g.map_monomials(&big, shift_in).mul_unchecked(&t));
        }
        for g in other.generating_set() {
            gens.push(g.map_monomials(&big, shift_in).mul_unchecked(&one_minus_t));
        }
        if gens.is_empty() {
            return Ok(Self::build(ring, Vec::new(), None, None));
        }
        let gb = buchberger(&gens, MonomialOrder::Block { split: 1 }, bound)?;
        let mut out: Vec<Polynomial<F>> = gb
            .elements()
            .into_iter()
            .filter(|e| e.terms().iter().all(|(m, _)| m.exponent(0) == 0))
            .map(|e| e.map_monomials(ring, shift_out))
            .collect();
        if let Some(d) = bound {
            out.extend(monomials_of_degree(ring.nvars(), d).into_iter().map(|m| Polynomial::monomial(ring, m)));
        }
        let result = Self::build(ring, out, bound, None);
        let prod = self.product(other)?;
        if !result.contains(&prod)? {
            return Err(Error::Containment("intersection does not contain the product".into()));
        }
        Ok(result)
    }

    fn hint_now(&self) -> Option<u32> {
        match self.inner.local.get() {
            Some(Ok(s)) => Some(s.m_power),
            _ => self.inner.hint,
        }
    }

    fn check(&self, other: &Ideal<F>) -> Result<()> {
        if same_ring(self.ring(), other.ring()) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.inner.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

pub fn ideal_sum<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    a.sum(b)
}

pub fn ideal_product<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    a.product(b)
}

pub fn ideal_power<F: Field>(a: &Ideal<F>, k: u32) -> Result<Ideal<F>> {
    a.power(k)
}

pub fn ideal_intersection<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    a.intersection(b)
}

pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    a.equals(b)
}

/// `b ⊆ a`.
pub fn ideal_contains<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    a.contains(b)
}

/// `ℓ(A/B)` for `B ⊆ A`, both m-primary. The containment is checked and
/// its failure is an error.
pub fn quotient_length<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<u64> {
    a.check(b)?;
    let la = a.colength()?;
    let sb = b.standard_from(Some(a))?;
    let inside = match &sb.near {
        Some((n, sum)) if Arc::ptr_eq(&n.inner, &a.inner) => *sum == la,
        _ => a.contains(b)?,
    };
    if !inside || sb.colength < la {
        return Err(Error::Containment(format!("{b} is not contained in {a}")));
    }
    Ok(sb.colength - la)
}

/// `ℓ(R/(A ∩ B)) = ℓ(R/A) + ℓ(R/B) − ℓ(R/(A + B))`, from the exact
/// sequence `0 → R/(A∩B) → R/A ⊕ R/B → R/(A+B) → 0`.
pub fn intersection_colength<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<u64> {
    // A ⊆ A + B, so starting from A finishes after one stage
    let s = a.sum(b)?.near(a);
    Ok(a.colength()? + b.colength()? - s.colength()?)
}

fn is_unit_element<F: Field>(p: &Polynomial<F>) -> bool {
    p.low_degree() == Some(0)
}

fn universe_size(nvars: usize, bound: u32) -> u128 {
    // C(bound - 1 + nvars, nvars)
    let mut c: u128 = 1;
    for i in 0..nvars as u128 {
        c = c * (bound as u128 + i) / (i + 1);
    }
    c
}

fn too_large(nvars: usize, bound: u32) -> Result<()> {
    if universe_size(nvars, bound) > UNIVERSE_LIMIT {
        return Err(Error::NotMPrimary(format!("no power of m below degree {bound} lies in the ideal")));
    }
    Ok(())
}

fn unit_standard<F: Field>(ring: &Arc<Ring<F>>) -> Standard<F> {
    let one = Polynomial::one(ring);
    let basis =
        GroebnerBasis::from_rows(ring.clone(), MonomialOrder::LocalGrevlex, vec![one.terms().to_vec()], Some(1));
    Standard {
        colength: 0,
        m_power: 0,
        profile: Vec::new(),
        generators: vec![one],
        basis,
        near: None,
        loewy: None,
        split: 1,
    }
}

fn compute_standard<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Polynomial<F>],
    hint: Option<u32>,
    near: Option<&Ideal<F>>,
) -> Result<Standard<F>> {
    if gens.is_empty() {
        return Err(Error::NotMPrimary("the zero ideal".into()));
    }
    if gens.iter().any(is_unit_element) {
        return Ok(unit_standard(ring));
    }
    let sorted = by_order(gens);
    if let Some(a) = near {
        if let Ok(sa) = a.standard() {
            if sa.m_power > 0 {
                return relative(ring, &sorted, a, sa);
            }
        }
    }
    search(ring, &sorted, hint)
}

struct Stage<'a, F: Field> {
    engine: LocalEngine<'a, F>,
    bound: u32,
    profile: Vec<u64>,
    kept: Vec<Vec<Polynomial<F>>>,
}

fn stage<'a, F: Field>(ring: &'a Arc<Ring<F>>, bound: u32, groups: &[&[Polynomial<F>]]) -> Stage<'a, F> {
    let mut engine = LocalEngine::new(ring.field(), ring.nvars(), bound);
    let kept = groups.iter().map(|g| g.iter().filter(|p| engine.add_generator(p.terms())).cloned().collect()).collect();
    let profile = engine.profile();
    Stage { engine, bound, profile, kept }
}

fn by_order<F: Field>(gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut sorted = gens.to_vec();
    sorted.sort_by_cached_key(|g| g.low_degree());
    sorted
}

fn finish<F: Field>(
    ring: &Arc<Ring<F>>,
    mut st: Stage<'_, F>,
    generators: Vec<Polynomial<F>>,
    split: usize,
    near: Option<(Ideal<F>, u64)>,
    loewy: Option<u32>,
) -> Standard<F> {
    let m_power = st.profile.iter().position(|&c| c == 0).expect("certified gap") as u32;
    st.profile.truncate(m_power as usize);
    let rows = st.engine.reduced_basis();
    Standard {
        colength: st.profile.iter().sum(),
        m_power,
        profile: st.profile,
        generators,
        basis: GroebnerBasis::from_rows(ring.clone(), MonomialOrder::LocalGrevlex, rows, Some(st.bound)),
        near,
        loewy,
        split,
    }
}

/// Colength search when nothing is known but the generators.
fn search<F: Field>(ring: &Arc<Ring<F>>, gens: &[Polynomial<F>], hint: Option<u32>) -> Result<Standard<F>> {
    let n = ring.nvars() as u32;
    let homogeneous = gens.iter().all(|g| g.is_homogeneous());
    let top = gens.iter().filter_map(|g| g.low_degree()).max().unwrap_or(1);
    // a homogeneous m-primary ideal generated in degrees <= top contains
    // a regular sequence of that degree, hence m^(n(top-1)+1)
    let macaulay = n * (top - 1) + 1;
    let mut guess = hint.unwrap_or(macaulay).max(1);
    loop {
        let bound = guess + 1;
        too_large(ring.nvars(), bound)?;
        let mut st = stage(ring, bound, &[gens]);
        if st.profile.contains(&0) {
            let kept = std::mem::take(&mut st.kept[0]);
            let split = kept.len();
            return Ok(finish(ring, st, kept, split, None, None));
        }
        if homogeneous && guess >= macaulay {
            return Err(Error::NotMPrimary(format!("no power of m up to degree {guess} lies in the ideal")));
        }
        guess += guess / 4 + 1;
    }
}

/// Colength of `Q` from an m-primary `A`: the colengths of `Q + m^k A`
/// increase with `k` and stop exactly when `m^k A ⊆ Q` (Nakayama), at
/// which point they equal `ℓ(R/Q)`. Each stage holds `m^D` for a known `D`.
fn relative<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Polynomial<F>],
    a: &Ideal<F>,
    sa: &Standard<F>,
) -> Result<Standard<F>> {
    let mut layer = sa.generators.clone();
    let mut prev: Option<u64> = None;
    let mut sum_with_a = 0;
    for k in 0..LOEWY_LIMIT {
        let bound = sa.m_power + k + 1;
        too_large(ring.nvars(), bound)?;
        let mut st = stage(ring, bound, &[&layer, gens]);
        let len: u64 = st.profile.iter().sum();
        if k == 0 {
            sum_with_a = len;
        }
        if prev == Some(len) {
            // m^(k-1) A ⊆ Q, so m^k A ⊆ mQ and the kept generators of Q
            // generate Q on their own
            let kept = std::mem::take(&mut st.kept[1]);
            let split = kept.len();
            return Ok(finish(ring, st, kept, split, Some((a.clone(), sum_with_a)), Some(k - 1)));
        }
        prev = Some(len);
        layer = times_maximal(ring, &std::mem::take(&mut st.kept[0]));
    }
    Err(Error::NotMPrimary("colength did not stabilise".into()))
}

/// Colength of `Q = (G) + m^c A`, where `gens` is `G` followed by
/// generators of `m^c A`. The stage bound `D_A + c + 1` satisfies
/// `m^{D_A+c} ⊆ m^c A ⊆ Q`, so one stage is exact, and every kept
/// generator of `Q` lies outside `mQ`.
fn layered<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Polynomial<F>],
    split: usize,
    c: u32,
    a: &Ideal<F>,
) -> Result<Standard<F>> {
    let sa = a.standard()?;
    let core = by_order(&gens[..split]);
    let layer = by_order(&gens[split..]);
    too_large(ring.nvars(), sa.m_power + c + 1)?;
    let sum_with_a = stage(ring, sa.m_power + 1, &[&sa.generators, &core]).profile.iter().sum();
    let mut st = stage(ring, sa.m_power + c + 1, &[&layer, &core]);
    let mut kept = std::mem::take(&mut st.kept[1]);
    let split = kept.len();
    kept.append(&mut st.kept[0]);
    Ok(finish(ring, st, kept, split, Some((a.clone(), sum_with_a)), Some(c)))
}

fn times_maximal<F: Field>(ring: &Arc<Ring<F>>, gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let f = ring.field();
    let mut out = Vec::with_capacity(gens.len() * ring.nvars());
    for g in gens {
        for v in 0..ring.nvars() {
            out.push(g.mul_term(Monomial::var_power(v, 1), &f.one()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring2() -> Arc<Ring<Rationals>> {
        Ring::new(&["x", "y"], Rationals).unwrap()
    }

    fn id(r: &Arc<Ring<Rationals>>, g: &[&str]) -> Ideal<Rationals> {
        Ideal::parse(r, g).unwrap()
    }

    #[test]
    fn sums() {
        let r = ring2();
        let s = id(&r, &["x"]).sum(&id(&r, &["y"])).unwrap();
        assert!(s.equals(&Ideal::maximal(&r)).unwrap());
        let s = id(&r, &["x^2"]).sum(&id(&r, &["x"])).unwrap();
        assert!(s.equals(&id(&r, &["x"])).unwrap());
    }

    #[test]
    fn products() {
        let r = ring2();
        let m = Ideal::maximal(&r);
        assert!(m.product(&m).unwrap().equals(&id(&r, &["x^2", "x*y", "y^2"])).unwrap());
        let j = id(&r, &["x^3", "y^3"]);
        let p = j.product(&Ideal::maximal_power(&r, 3)).unwrap();
        assert_eq!(p.colength().unwrap(), 21);
        assert!(p.equals(&Ideal::maximal_power(&r, 6)).unwrap());
        let bar = id(&r, &["x^3", "x^2*y", "x*y^2", "y^3"]);
        assert_eq!(j.product(&bar).unwrap().colength().unwrap(), 21);
    }

    #[test]
    fn powers() {
        let r = ring2();
        let m = Ideal::maximal(&r);
        assert!(m.power(3).unwrap().equals(&id(&r, &["x^3", "x^2*y", "x*y^2", "y^3"])).unwrap());
        let j = id(&r, &["x^3", "y^3"]);
        assert!(j.power(2).unwrap().equals(&id(&r, &["x^6", "x^3*y^3", "y^6"])).unwrap());
        assert!(j.power(0).unwrap().is_unit());
        for k in 1..5 {
            let a = j.power(k + 1).unwrap();
            let b = j.power(k).unwrap().product(&j).unwrap();
            assert!(a.equals(&b).unwrap());
        }
    }

    #[test]
    fn intersections() {
        let r = ring2();
        let i = id(&r, &["x"]).intersection(&id(&r, &["y"])).unwrap();
        assert!(i.equals(&id(&r, &["x*y"])).unwrap());
        let i = id(&r, &["x^2", "y"]).intersection(&id(&r, &["x"])).unwrap();
        assert!(i.equals(&id(&r, &["x^2", "x*y"])).unwrap());
        let j = id(&r, &["x^3", "y^3"]);
        let i = j.intersection(&Ideal::maximal_power(&r, 6)).unwrap();
        assert!(i.equals(&Ideal::maximal_power(&r, 6)).unwrap());
    }

    #[test]
    fn intersection_length_matches_elimination() {
        let r = ring2();
        let a = id(&r, &["x^3 + y^4", "x*y^2"]);
        let b = id(&r, &["x^2 - y^3", "y^5"]);
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.colength().unwrap(), intersection_colength(&a, &b).unwrap());
    }

    #[test]
    fn containment() {
        let r = ring2();
        assert!(id(&r, &["x", "y"]).equals(&id(&r, &["y", "x"])).unwrap());
        assert!(id(&r, &["x"]).contains(&id(&r, &["x^2"])).unwrap());
        assert!(!id(&r, &["x^2"]).contains(&id(&r, &["x"])).unwrap());
    }

    #[test]
    fn quotient_lengths() {
        let r = ring2();
        let m = Ideal::maximal(&r);
        assert_eq!(quotient_length(&m, &m.power(2).unwrap()).unwrap(), 2);
        let bar2 = Ideal::maximal_power(&r, 6);
        let j = id(&r, &["x^3", "y^3"]);
        let bar = id(&r, &["x^3", "x^2*y", "x*y^2", "y^3"]);
        assert_eq!(quotient_length(&bar2, &j.product(&bar).unwrap()).unwrap(), 0);
        assert!(matches!(quotient_length(&bar2, &m), Err(Error::Containment(_))));
    }

    #[test]
    fn local_colengths() {
        let r = ring2();
        // a unit times x, locally
        assert_eq!(id(&r, &["x + x^2", "y^3"]).colength().unwrap(), 3);
        assert!(!id(&r, &["x*y"]).is_m_primary());
        assert!(id(&r, &["1 + x"]).is_unit());
        assert_eq!(id(&r, &["1 + x"]).colength().unwrap(), 0);
    }

    #[test]
    fn example_ideal_has_colength_31() {
        let r = Ring::new(&["x", "y", "z"], PrimeField::default()).unwrap();
        let n = Ideal::parse(&r, &["x^4", "x*y^3 + x*z^3", "y^4 + y*z^3", "y^3*z + z^4"]).unwrap();
        let i = n.sum(&Ideal::maximal_power(&r, 5)).unwrap();
        assert_eq!(i.colength().unwrap(), 31);
        assert_eq!(i.m_power().unwrap(), 5);
        let i2 = i.power(2).unwrap();
        assert_eq!(i2.colength().unwrap(), 167);
    }

    #[test]
    fn relative_colength_agrees_with_direct() {
        let r = Ring::new(&["x", "y", "z"], PrimeField::default()).unwrap();
        let i = Ideal::parse(&r, &["x^2", "y^2 + x*z", "z^3", "x*y*z"]).unwrap();
        let j = Ideal::parse(&r, &["x^2 + 3*y^2 + 3*x*z + 7*z^3", "5*x^2 - y^2 - x*z + x*y*z", "z^3 + 2*x*y*z - x^2"])
            .unwrap();
        let i2 = i.power(2).unwrap();
        let ji = j.product(&i).unwrap();
        let direct = Ideal::new(&r, ji.generators().to_vec()).unwrap();
        let near = ji.near(&i2);
        assert_eq!(direct.colength().unwrap(), near.colength().unwrap());
        assert_eq!(quotient_length(&i2, &ji).unwrap(), direct.colength().unwrap() - i2.colength().unwrap());
    }
}
