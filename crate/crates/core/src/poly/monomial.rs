//! Packed monomials.
//!
//! A monomial is eight 16-bit fields in a `u128`: fields 0..7 hold the
//! exponents of variables 0..7 and field 7 holds the total degree. The top
//! bit of every field is a guard, so products are plain additions and an
//! overflowing exponent shows up as a set guard bit.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 7;
pub const MAX_EXPONENT: u32 = 0x7fff;

const DEG_SHIFT: u32 = 112;
const GUARDS: u128 = 0x8000_8000_8000_8000_8000_8000_8000_8000;
const LOW: u128 = (1u128 << DEG_SHIFT) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub(crate) u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(exponents: &[u32]) -> Result<Self> {
        if exponents.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables are supported")));
        }
        let mut packed = 0u128;
        let mut deg = 0u32;
        for (i, &e) in exponents.iter().enumerate() {
            if e > MAX_EXPONENT {
                return Err(Error::ExponentOverflow { pos: 0 });
            }
            deg += e;
            packed |= (e as u128) << (16 * i);
        }
        if deg > MAX_EXPONENT {
            return Err(Error::ExponentOverflow { pos: 0 });
        }
        Ok(Monomial(packed | ((deg as u128) << DEG_SHIFT)))
    }

    /// The monomial `x_i^e`.
    pub fn var_power(i: usize, e: u32) -> Self {
        debug_assert!(i < MAX_VARS && e <= MAX_EXPONENT);
        Monomial(((e as u128) << (16 * i)) | ((e as u128) << DEG_SHIFT))
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0 >> DEG_SHIFT) as u32
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (16 * i)) & 0xffff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    /// Sum of the exponents of variables `from..MAX_VARS`.
    pub fn partial_degree(self, from: usize) -> u32 {
        if from == 0 {
            return self.degree();
        }
        (from..MAX_VARS).map(|i| self.exponent(i)).sum()
    }

    /// Product, or `None` on exponent overflow.
    #[inline]
    pub fn checked_mul(self, other: Monomial) -> Option<Monomial> {
        let s = self.0 + other.0;
        if s & GUARDS != 0 {
            None
        } else {
            Some(Monomial(s))
        }
    }

    /// Product; panics on overflow, which the parser rules out at desk scale.
    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    #[inline]
    pub fn divides(self, other: Monomial) -> bool {
        ((other.0 | GUARDS) - self.0) & GUARDS == GUARDS
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0 - self.0)
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        let mut packed = 0u128;
        let mut deg = 0u128;
        for i in 0..MAX_VARS {
            let e = self.exponent(i).max(other.exponent(i)) as u128;
            deg += e;
            packed |= e << (16 * i);
        }
        Monomial(packed | (deg << DEG_SHIFT))
    }

    pub fn is_coprime(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) == 0 || other.exponent(i) == 0)
    }

    /// Exponent bits without the degree field; used by the graded orders.
    #[inline]
    pub(crate) fn low_bits(self) -> u128 {
        self.0 & LOW
    }

    /// Render with the given variable names; `1` for the unit monomial.
    pub fn display(self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            match self.exponent(i) {
                0 => {}
                1 => parts.push(v.clone()),
                e => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

/// All monomials in `nvars` variables of total degree exactly `deg`.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill(&mut exps, 0, deg, &mut out);
    out
}

fn fill(exps: &mut [u32], i: usize, left: u32, out: &mut Vec<Monomial>) {
    if i + 1 == exps.len() {
        exps[i] = left;
        out.push(Monomial::new(exps).expect("degree within range"));
        exps[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[i] = e;
        fill(exps, i + 1, left - e, out);
    }
    exps[i] = 0;
}

/// All monomials in `nvars` variables of total degree below `bound`.
pub fn monomials_below(nvars: usize, bound: u32) -> Vec<Monomial> {
    (0..bound).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn packing_roundtrip() {
        let a = m(&[3, 0, 7]);
        assert_eq!(a.exponents(3), vec![3, 0, 7]);
        assert_eq!(a.degree(), 10);
        assert_eq!(Monomial::var_power(1, 4), m(&[0, 4]));
    }

    #[test]
    fn product_and_divisibility() {
        let a = m(&[1, 2]);
        let b = m(&[3, 1]);
        assert_eq!(a.mul(b), m(&[4, 3]));
        assert!(a.divides(m(&[1, 2, 5])));
        assert!(!a.divides(b));
        assert!(Monomial::ONE.divides(a));
        assert_eq!(a.quotient_of(m(&[2, 2])), m(&[1]));
        assert_eq!(a.lcm(b), m(&[3, 2]));
        assert!(m(&[2]).is_coprime(m(&[0, 5])));
    }

    #[test]
    fn overflow_is_detected() {
        let a = Monomial::var_power(0, MAX_EXPONENT);
        assert!(a.checked_mul(Monomial::var_power(0, 1)).is_none());
        assert!(Monomial::new(&[MAX_EXPONENT + 1]).is_err());
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_below(2, 4).len(), 10);
    }
}
