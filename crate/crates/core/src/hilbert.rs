//! Hilbert–Samuel functions, their binomial-basis coefficients and the
//! numerator of the Hilbert series of the associated graded ring.
//!
//! `H(n) = ℓ(R/I_{n+1}) = Σ_i (−1)^i e_i C(n+d−i, d−i)` for large `n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::filtration::Filtration;

/// `C(x, c)` as a polynomial in `x`; zero for `c < 0`.
pub fn binom(x: i64, c: i64) -> i64 {
    if c < 0 {
        return 0;
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..c {
        num *= x - i;
        den *= i + 1;
    }
    (num / den).to_i64().expect("binomial fits in i64")
}

/// `H(n) = ℓ(R/I_{n+1})` for `n = 0..=N`.
pub fn hilbert_function<F: Field>(f: &Filtration<F>, n_max: usize) -> Result<Vec<u64>> {
    let ideals = (1..=n_max + 1).map(|n| f.ideal(n)).collect::<Result<Vec<_>>>()?;
    ideals.par_iter().map(|i| i.colength()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub lengths: Vec<u64>,
    pub d: usize,
    /// `e_0, …, e_d`
    pub e: Vec<i64>,
    /// samples the polynomial was solved on
    pub fit_window: (usize, usize),
    /// samples it was checked against
    pub verify_window: (usize, usize),
    /// `h_0, …, h_s` with trailing zeros dropped
    pub numerator: Vec<i64>,
}

impl HilbertData {
    /// Fit coefficients and numerator from `lengths`, given that the
    /// filtration is stable from `r` on.
    pub fn new(lengths: Vec<u64>, d: usize, r: usize) -> Result<Self> {
        let e = hilbert_coefficients(&lengths, d, r)?;
        let numerator = series_numerator(&lengths, d, r)?;
        let top = lengths.len() - 1;
        Ok(HilbertData { d, e, fit_window: (top - d, top), verify_window: (r, top - d - 1), numerator, lengths })
    }

    /// The polynomial at `n`.
    pub fn polynomial(&self, n: i64) -> i64 {
        let d = self.d as i64;
        (0..=d).map(|i| sign(i) * self.e[i as usize] * binom(n + d - i, d - i)).sum()
    }
}

fn sign(i: i64) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

fn window_check(len: usize, d: usize, r: usize) -> Result<()> {
    if len < r + d + 4 {
        return Err(Error::WindowTooSmall(format!(
            "{len} samples; stabilization index {r} and dimension {d} need {}",
            r + d + 4
        )));
    }
    Ok(())
}

/// Solve for `e_0..e_d` on the top `d+1` samples and verify on every
/// sample `n ≥ r` below them.
pub fn hilbert_coefficients(lengths: &[u64], d: usize, r: usize) -> Result<Vec<i64>> {
    window_check(lengths.len(), d, r)?;
    let top = lengths.len() - 1;
    let di = d as i64;
    let size = d + 1;
    let mut rows: Vec<Vec<BigRational>> = (top - d..=top)
        .map(|n| {
            let n = n as i64;
            let mut row: Vec<BigRational> = (0..=di)
                .map(|i| BigRational::from_integer(BigInt::from(sign(i) * binom(n + di - i, di - i))))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(lengths[n as usize])));
            row
        })
        .collect();
    // Gauss–Jordan; the system is a nonsingular Vandermonde in disguise
    for col in 0..size {
        let pivot = (col..size).find(|&k| !rows[k][col].is_zero()).expect("binomial basis is independent");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &inv;
        }
        for k in 0..size {
            if k != col && !rows[k][col].is_zero() {
                let factor = rows[k][col].clone();
                for j in col..=size {
                    let t = &rows[col][j] * &factor;
                    rows[k][j] -= t;
                }
            }
        }
    }
    let mut e = Vec::with_capacity(size);
    for row in &rows {
        let v = &row[size];
        if !v.is_integer() {
            return Err(Error::WindowTooSmall(format!("non-integral coefficient {v}")));
        }
        e.push(v.to_integer().to_i64().expect("coefficient fits in i64"));
    }
    let data = HilbertData {
        lengths: Vec::new(),
        d,
        e: e.clone(),
        fit_window: (0, 0),
        verify_window: (0, 0),
        numerator: Vec::new(),
    };
    for n in r..top - d {
        let p = data.polynomial(n as i64);
        if p != lengths[n] as i64 {
            return Err(Error::WindowTooSmall(format!("polynomial gives {p} at n = {n}, length is {}", lengths[n])));
        }
    }
    Ok(e)
}

/// `h_k = Σ_j (−1)^j C(d,j) g_{k−j}` with `g_0 = H(0)`, `g_i = H(i) − H(i−1)`,
/// for every `k ≤ N`, trailing zeros included.
pub fn raw_numerator(lengths: &[u64], d: usize) -> Vec<i64> {
    let g: Vec<i64> = (0..lengths.len())
        .map(|i| if i == 0 { lengths[0] as i64 } else { lengths[i] as i64 - lengths[i - 1] as i64 })
        .collect();
    (0..g.len()).map(|k| (0..=k.min(d)).map(|j| sign(j as i64) * binom(d as i64, j as i64) * g[k - j]).sum()).collect()
}

/// The numerator trimmed to its degree. Coefficients past `r + d` lie in
/// the verification tail and must vanish.
pub fn series_numerator(lengths: &[u64], d: usize, r: usize) -> Result<Vec<i64>> {
    window_check(lengths.len(), d, r)?;
    let mut h = raw_numerator(lengths, d);
    if let Some(k) = (r + d + 1..h.len()).find(|&k| h[k] != 0) {
        return Err(Error::WindowTooSmall(format!("numerator coefficient h_{k} = {} in the tail", h[k])));
    }
    while h.len() > 1 && *h.last().unwrap() == 0 {
        h.pop();
    }
    Ok(h)
}

pub fn gring_series_numerator<F: Field>(f: &Filtration<F>, n_max: usize, r: usize) -> Result<Vec<i64>> {
    series_numerator(&hilbert_function(f, n_max)?, f.ring().nvars(), r)
}

/// `e_i = Σ_k C(k, i) h_k`, the normalized derivatives at 1.
pub fn coefficients_from_numerator(h: &[i64], d: usize) -> Vec<i64> {
    (0..=d as i64).map(|i| h.iter().enumerate().map(|(k, &hk)| binom(k as i64, i) * hk).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ideal::Ideal;
    use crate::poly::Ring;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(2, 0), 1);
        assert_eq!(binom(3, -1), 0);
        assert_eq!(binom(-1, 2), 1);
    }

    #[test]
    fn plane_maximal_ideal() {
        let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
        let f = Filtration::adic(&Ideal::maximal(&r));
        let h = hilbert_function(&f, 7).unwrap();
        assert_eq!(h[..4], [1, 3, 6, 10]);
        assert_eq!(hilbert_coefficients(&h, 2, 0).unwrap(), vec![1, 0, 0]);
        assert_eq!(series_numerator(&h, 2, 0).unwrap(), vec![1]);
    }

    #[test]
    fn normal_filtration_of_pure_cubes() {
        let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
        let i = Ideal::parse(&r, &["x^3", "y^3"]).unwrap();
        let f = Filtration::normal_monomial(&i).unwrap();
        let h = hilbert_function(&f, 6).unwrap();
        // ℓ(R/m^{3n+3})
        let oracle: Vec<u64> = (0..=6).map(|n| binom(3 * n + 4, 2) as u64).collect();
        assert_eq!(h, oracle);
        let data = HilbertData::new(h, 2, 1).unwrap();
        assert_eq!(data.e, vec![9, 3, 0]);
        assert_eq!(data.numerator, vec![6, 3]);
        assert_eq!(coefficients_from_numerator(&data.numerator, 2), data.e);
    }

    #[test]
    fn short_windows_are_refused() {
        let h: Vec<u64> = (0..5).map(|n| binom(n + 2, 2) as u64).collect();
        assert!(matches!(hilbert_coefficients(&h, 2, 0), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn early_noise_is_caught() {
        // polynomial from n = 2 on; claiming r = 0 must fail verification
        let mut h: Vec<u64> = (0..9).map(|n| binom(n + 2, 2) as u64 + 2).collect();
        h[0] = 1;
        assert!(hilbert_coefficients(&h, 2, 2).is_ok());
        assert!(matches!(hilbert_coefficients(&h, 2, 0), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn numerator_matches_coefficients() {
        // 31 + 43z + z^2 + z^3 over (1−z)^3
        let h = vec![31i64, 43, 1, 1];
        assert_eq!(coefficients_from_numerator(&h, 3), vec![76, 48, 4, 1]);
    }
}
