//! Integral closure of monomial ideals through the Newton polyhedron
//! `conv(V) + R^d_{≥0}`.
//!
//! The polyhedron's inequalities are obtained once by projecting the
//! convex-combination system onto exponent space; membership of a lattice
//! point is then a handful of integer dot products.

mod fm;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::poly::{Monomial, Polynomial, Ring};

/// A monomial ideal by its minimal exponent vectors, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut v: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    v.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    v.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for e in v {
        if !out.iter().any(|g| divides(g, &e)) {
            out.push(e);
        }
    }
    out.sort();
    out
}

impl MonomialIdeal {
    pub fn new(nvars: usize, exponents: Vec<Vec<u32>>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidRing("a monomial ideal needs a generator".into()));
        }
        if let Some(e) = exponents.iter().find(|e| e.len() != nvars) {
            return Err(Error::LengthMismatch(e.len(), nvars));
        }
        Ok(MonomialIdeal { nvars, gens: minimalize(exponents) })
    }

    /// Read off the exponents of an ideal generated by monomials.
    pub fn from_ideal<F: Field>(ideal: &Ideal<F>) -> Result<Self> {
        let n = ideal.ring().nvars();
        let mut exps = Vec::new();
        for g in ideal.generators() {
            if !g.is_monomial() {
                return Err(Error::Hypothesis(format!("`{g}` is not a monomial")));
            }
            exps.push(g.terms()[0].0.exponents(n));
        }
        Self::new(n, exps)
    }

    pub fn to_ideal<F: Field>(&self, ring: &Arc<Ring<F>>) -> Result<Ideal<F>> {
        if ring.nvars() != self.nvars {
            return Err(Error::LengthMismatch(self.nvars, ring.nvars()));
        }
        let gens =
            self.gens.iter().map(|e| Ok(Polynomial::monomial(ring, Monomial::new(e)?))).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, a))
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut v = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                v.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        MonomialIdeal { nvars: self.nvars, gens: minimalize(v) }
    }

    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal { nvars: self.nvars, gens: vec![vec![0; self.nvars]] };
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Pure-power exponent for each variable, if every variable has one.
    fn pure_powers(&self) -> Option<Vec<u32>> {
        (0..self.nvars)
            .map(|v| {
                self.gens.iter().filter(|g| g.iter().enumerate().all(|(i, &e)| i == v || e == 0)).map(|g| g[v]).min()
            })
            .collect()
    }

    pub fn is_m_primary(&self) -> bool {
        self.pure_powers().is_some()
    }

    /// Number of lattice points outside the ideal.
    pub fn colength(&self) -> Result<u64> {
        let caps = self.pure_powers().ok_or(Error::NotZeroDimensional)?;
        let mut count = 0;
        for_each_in_box(&caps.iter().map(|c| c - 1).collect::<Vec<_>>(), |a| {
            if !self.contains(a) {
                count += 1;
            }
        });
        Ok(count)
    }

    pub fn newton_polyhedron(&self) -> NewtonPolyhedron {
        NewtonPolyhedron::new(&self.gens)
    }

    /// Componentwise maximum of the generators.
    fn box_corner(&self) -> Vec<u32> {
        (0..self.nvars).map(|j| self.gens.iter().map(|g| g[j]).max().unwrap_or(0)).collect()
    }
}

/// `conv(V) + R^d_{≥0}` as `facets · a ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    nvars: usize,
    facets: Vec<(Vec<i64>, i64)>,
}

impl NewtonPolyhedron {
    pub fn new(v: &[Vec<u32>]) -> Self {
        let d = v.first().map_or(0, |e| e.len());
        let g = v.len();
        assert!(g > 0, "empty exponent set");
        // unknowns λ_1..λ_{g-1}, then a_1..a_d; λ_g = 1 − Σ λ_i
        let width = g - 1 + d;
        let total = g + d;
        let big = |x: i64| BigInt::from(x);
        let mut rows = Vec::with_capacity(total);
        for i in 0..g - 1 {
            let mut c = vec![big(0); width];
            c[i] = big(1);
            rows.push(fm::Row::new(c, big(0), i, total));
        }
        rows.push(fm::Row::new(
            (0..width).map(|k| big(if k < g - 1 { -1 } else { 0 })).collect(),
            big(-1),
            g - 1,
            total,
        ));
        let last = &v[g - 1];
        for j in 0..d {
            // a_j − Σ λ_i (v_ij − v_gj) ≥ v_gj
            let mut c = vec![big(0); width];
            for i in 0..g - 1 {
                c[i] = big(last[j] as i64 - v[i][j] as i64);
            }
            c[g - 1 + j] = big(1);
            rows.push(fm::Row::new(c, big(last[j] as i64), g + j, total));
        }
        let projected = fm::eliminate(rows, g - 1).expect("a Newton polyhedron is never empty");
        let mut facets: Vec<(Vec<i64>, i64)> = projected
            .into_iter()
            .map(|r| {
                let c = r.coef[g - 1..].iter().map(|x| x.to_i64().expect("small facet")).collect();
                (c, r.rhs.to_i64().expect("small facet"))
            })
            .collect();
        facets.sort();
        NewtonPolyhedron { nvars: d, facets }
    }

    pub fn facets(&self) -> &[(Vec<i64>, i64)] {
        &self.facets
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.contains_scaled(a, 1)
    }

    /// Membership in `n · P`, the polyhedron of the `n`-th power.
    pub fn contains_scaled(&self, a: &[u32], n: u32) -> bool {
        self.facets.iter().all(|(c, r)| {
            let lhs: i64 = c.iter().zip(a).map(|(x, &y)| x * y as i64).sum();
            lhs >= r * n as i64
        })
    }
}

/// Exact test for `a ∈ conv(V) + R^d_{≥0}`.
pub fn np_member(a: &[u32], v: &[Vec<u32>]) -> Result<bool> {
    if v.is_empty() {
        return Ok(false);
    }
    if let Some(e) = v.iter().find(|e| e.len() != a.len()) {
        return Err(Error::LengthMismatch(e.len(), a.len()));
    }
    Ok(NewtonPolyhedron::new(v).contains(a))
}

fn for_each_in_box(corner: &[u32], mut f: impl FnMut(&[u32])) {
    let mut a = vec![0u32; corner.len()];
    loop {
        f(&a);
        let mut i = 0;
        loop {
            if i == a.len() {
                return;
            }
            if a[i] < corner[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Minimal lattice points of `n · NP(I)` in the box `[0, n·max_i v_i]`.
fn minimal_points(i: &MonomialIdeal, n: u32) -> MonomialIdeal {
    let np = i.newton_polyhedron();
    let corner: Vec<u32> = i.box_corner().iter().map(|c| c * n).collect();
    let mut gens = Vec::new();
    let mut b = vec![0u32; i.nvars];
    for_each_in_box(&corner, |a| {
        if !np.contains_scaled(a, n) {
            return;
        }
        b.copy_from_slice(a);
        let minimal = (0..a.len()).all(|j| {
            if a[j] == 0 {
                return true;
            }
            b[j] -= 1;
            let inside = np.contains_scaled(&b, n);
            b[j] += 1;
            !inside
        });
        if minimal {
            gens.push(a.to_vec());
        }
    });
    MonomialIdeal { nvars: i.nvars, gens: minimalize(gens) }
}

pub fn integral_closure(i: &MonomialIdeal) -> MonomialIdeal {
    minimal_points(i, 1)
}

/// `\overline{I^n}`, using `NP(I^n) = n · NP(I)`.
pub fn normal_power(i: &MonomialIdeal, n: u32) -> Result<MonomialIdeal> {
    if n == 0 {
        return Err(Error::Hypothesis("normal powers start at n = 1".into()));
    }
    Ok(minimal_points(i, n))
}

/// Powers of `I` for the lattice oracle.
pub struct PowerOracle {
    powers: Vec<MonomialIdeal>,
}

impl PowerOracle {
    pub fn new(i: &MonomialIdeal, k_max: u32) -> Self {
        let mut powers = vec![i.clone()];
        for _ in 1..k_max {
            let next = powers.last().unwrap().product(i);
            powers.push(next);
        }
        PowerOracle { powers }
    }

    /// Whether `x^{ka} ∈ I^k` for some `k ≤ k_max`.
    pub fn integral(&self, a: &[u32]) -> bool {
        self.powers.iter().enumerate().any(|(k, p)| {
            let ka: Vec<u32> = a.iter().map(|x| x * (k as u32 + 1)).collect();
            p.contains(&ka)
        })
    }
}

/// x^a is integral over I iff `x^{ka} ∈ I^k` for some k; this checks
/// `k ≤ k_max` by exponent decomposition alone.
pub fn closure_oracle(a: &[u32], i: &MonomialIdeal, k_max: u32) -> Result<bool> {
    if a.len() != i.nvars {
        return Err(Error::LengthMismatch(a.len(), i.nvars));
    }
    if k_max == 0 {
        return Err(Error::Hypothesis("k_max must be positive".into()));
    }
    Ok(PowerOracle::new(i, k_max).integral(a))
}

/// Every lattice point of the closure search box of `I`.
pub fn box_points(i: &MonomialIdeal) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_in_box(&i.box_corner(), |a| out.push(a.to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(g: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(g[0].len(), g.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn hull_membership() {
        let v = vec![vec![3, 0], vec![0, 3]];
        assert!(np_member(&[2, 1], &v).unwrap());
        assert!(!np_member(&[2, 0], &v).unwrap());
        assert!(np_member(&[3, 0], &v).unwrap());
        assert!(np_member(&[0, 3], &v).unwrap());
    }

    #[test]
    fn closures() {
        assert_eq!(integral_closure(&mi(&[&[3, 0], &[0, 3]])), mi(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]));
        assert_eq!(integral_closure(&mi(&[&[4, 0], &[0, 3]])), mi(&[&[4, 0], &[3, 1], &[2, 2], &[0, 3]]));
        assert_eq!(integral_closure(&mi(&[&[1, 0], &[0, 1]])), mi(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn normal_powers() {
        let m6: Vec<Vec<u32>> = (0..=6).map(|a| vec![a, 6 - a]).collect();
        assert_eq!(normal_power(&mi(&[&[3, 0], &[0, 3]]), 2).unwrap(), MonomialIdeal::new(2, m6).unwrap());
        let m = mi(&[&[1, 0], &[0, 1]]);
        for n in 1..5 {
            assert_eq!(normal_power(&m, n).unwrap(), m.power(n));
        }
        let i = mi(&[&[4, 0], &[0, 3]]);
        assert_eq!(normal_power(&i, 1).unwrap(), integral_closure(&i));
    }

    #[test]
    fn oracle_examples() {
        let i = mi(&[&[3, 0], &[0, 3]]);
        assert!(closure_oracle(&[2, 1], &i, 3).unwrap());
        assert!(!closure_oracle(&[2, 1], &i, 2).unwrap());
        assert!(!closure_oracle(&[2, 0], &i, 8).unwrap());
        assert!(closure_oracle(&[3, 0], &i, 1).unwrap());
    }

    #[test]
    fn lattice_colength() {
        assert_eq!(mi(&[&[2, 0], &[0, 3]]).colength().unwrap(), 6);
        assert_eq!(mi(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]).colength().unwrap(), 6);
        assert!(mi(&[&[1, 1]]).colength().is_err());
    }

    fn ideal_strategy(d: usize) -> impl Strategy<Value = MonomialIdeal> {
        let pure = prop::collection::vec(1u32..7, d);
        let mixed = prop::collection::vec(prop::collection::vec(0u32..5, d), 0..4);
        (pure, mixed).prop_map(move |(p, m)| {
            let mut g: Vec<Vec<u32>> =
                (0..d).map(|i| (0..d).map(|j| if i == j { p[i] } else { 0 }).collect()).collect();
            g.extend(m.into_iter().filter(|e| e.iter().any(|&x| x > 0)));
            MonomialIdeal::new(d, g).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn closure_is_inflationary_and_idempotent(i in ideal_strategy(2)) {
            let c = integral_closure(&i);
            for g in i.generators() {
                prop_assert!(c.contains(g));
            }
            prop_assert_eq!(integral_closure(&c), c);
        }

        #[test]
        fn normal_powers_multiply(i in ideal_strategy(2), m in 1u32..3, n in 1u32..3) {
            let a = normal_power(&i, m).unwrap().product(&normal_power(&i, n).unwrap());
            let b = normal_power(&i, m + n).unwrap();
            for g in a.generators() {
                prop_assert!(b.contains(g));
            }
        }

        #[test]
        fn lattice_witness_implies_membership(i in ideal_strategy(3), a in prop::collection::vec(0u32..7, 3)) {
            if closure_oracle(&a, &i, 4).unwrap() {
                prop_assert!(np_member(&a, i.generators()).unwrap());
            }
        }
    }
}
