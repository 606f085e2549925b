//! Coefficient fields: prime fields `F_p` and the rationals.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::Error;

/// Default characteristic used throughout.
pub const DEFAULT_PRIME: u32 = 32003;

/// Exact coefficient arithmetic.
///
/// A `Field` value is a context object: elements are plain data and every
/// operation goes through the field, so a prime field can carry its modulus.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;
    /// Unreduced accumulator for long multiply-add chains.
    type Acc: Clone + Send;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, v: &BigInt) -> Self::Elem;
    /// A uniformly drawn element (bounded range for the rationals).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    /// Short tag used in reports: `fp:<p>` or `q`.
    fn tag(&self) -> String;

    fn acc_zero(&self) -> Self::Acc;
    /// `acc += a * b`
    fn acc_fma(&self, acc: &mut Self::Acc, a: &Self::Elem, b: &Self::Elem);
    fn acc_add(&self, acc: &mut Self::Acc, a: &Self::Elem);
    /// Cheap test that may miss zeros; `acc_value` is exact.
    fn acc_is_clear(&self, acc: &Self::Acc) -> bool;
    /// Reduced value, leaving the accumulator cleared.
    fn acc_take(&self, acc: &mut Self::Acc) -> Self::Elem;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_int(&BigInt::from(v))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a + b * c`, the inner step of every reduction.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }
}

/// The prime field `Z/pZ` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, Error> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut base: u32, mut e: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        base = acc as u32;
        base
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Accumulators are kept below this, so adding one more product (< 2^62)
/// cannot overflow.
const ACC_LIMIT: u64 = 1 << 62;

impl Field for PrimeField {
    type Elem = u32;
    type Acc = u64;

    #[inline]
    fn acc_zero(&self) -> u64 {
        0
    }
    #[inline]
    fn acc_fma(&self, acc: &mut u64, a: &u32, b: &u32) {
        *acc += *a as u64 * *b as u64;
        if *acc >= ACC_LIMIT {
            *acc %= self.p as u64;
        }
    }
    #[inline]
    fn acc_add(&self, acc: &mut u64, a: &u32) {
        *acc += *a as u64;
        if *acc >= ACC_LIMIT {
            *acc %= self.p as u64;
        }
    }
    #[inline]
    fn acc_is_clear(&self, acc: &u64) -> bool {
        *acc == 0
    }
    #[inline]
    fn acc_take(&self, acc: &mut u64) -> u32 {
        let v = (*acc % self.p as u64) as u32;
        *acc = 0;
        v
    }

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if *a >= *b {
            *a - *b
        } else {
            *a + self.p - *b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_int(&self, v: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        let mut r = v % &p;
        if r.is_negative() {
            r += &p;
        }
        r.to_u32().expect("residue fits in u32")
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn tag(&self) -> String {
        format!("fp:{}", self.p)
    }
    #[inline]
    fn mul_add(&self, a: &u32, b: &u32, c: &u32) -> u32 {
        ((*a as u64 + *b as u64 * *c as u64) % self.p as u64) as u32
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// Range used when drawing "random" rationals.
const RATIONAL_SAMPLE_BOUND: i64 = 1000;

impl Field for Rationals {
    type Elem = BigRational;
    type Acc = BigRational;

    fn acc_zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn acc_fma(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        *acc += a * b;
    }
    fn acc_add(&self, acc: &mut BigRational, a: &BigRational) {
        *acc += a;
    }
    fn acc_is_clear(&self, acc: &BigRational) -> bool {
        acc.is_zero()
    }
    fn acc_take(&self, acc: &mut BigRational) -> BigRational {
        std::mem::replace(acc, BigRational::zero())
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_int(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let v = rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND);
        BigRational::from_integer(BigInt::from(v))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn tag(&self) -> String {
        "q".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&2, &3), 1);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.from_i64(-1), 4);
        for a in 1..5 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.mul_add(&4, &4, &4), 0);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn rational_random_is_seeded() {
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert_eq!(Rationals.random(&mut a), Rationals.random(&mut b));
    }
}
