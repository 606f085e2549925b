//! Minimal reductions `J = (a_1, …, a_d)` of a filtration, reduction
//! numbers, Itoh's condition and the Valabrega–Valla test.
//!
//! `J` is drawn as `d` random combinations of the generators of `I_1`. A
//! draw is accepted once `I_{n+1} = J I_n` holds for `d + 2` consecutive
//! `n`; that is strong evidence, not a proof, and reports say so.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::filtration::Filtration;
use crate::ideal::{intersection_colength, quotient_length, Ideal};
use crate::poly::Polynomial;

/// Draws tried before giving up.
pub const MAX_ATTEMPTS: usize = 5;

/// Cache of the products `J^a I_l`.
pub struct Tower<F: Field> {
    j: Ideal<F>,
    cache: Mutex<HashMap<(usize, usize), Ideal<F>>>,
}

impl<F: Field> Tower<F> {
    pub fn new(j: &Ideal<F>) -> Self {
        Tower { j: j.clone(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn j(&self) -> &Ideal<F> {
        &self.j
    }

    /// `J^a I_l`, built as `J · J^{a−1} I_l` with lengths measured from
    /// `I_{a+l}`, which contains it.
    ///
    /// Once `J^{a−1} I_l = (G) + m^c I_{a+l−1}` is known and
    /// `J I_{a+l−1} = I_{a+l}`, the next one is `(JG) + m^c I_{a+l}`.
    pub fn get(&self, f: &Filtration<F>, a: usize, l: usize) -> Result<Ideal<F>> {
        if a == 0 {
            return f.ideal(l);
        }
        if let Some(x) = self.cache.lock().unwrap().get(&(a, l)) {
            return Ok(x.clone());
        }
        let value = if a == 1 && l == 0 {
            self.j.clone()
        } else {
            let below = self.get(f, a - 1, l)?;
            let target = f.ideal(a + l)?;
            let layer = if a >= 2 { below.layer_over(&f.ideal(a + l - 1)?) } else { None };
            match layer {
                Some((core, c)) if self.gap(f, a + l - 1)? == 0 => {
                    let js = self.j.generating_set();
                    let products = js.iter().flat_map(|x| core.iter().map(move |y| x.mul_unchecked(y))).collect();
                    Ideal::layered(products, &target, c)?
                }
                _ => self.j.product(&below)?.near(&target),
            }
        };
        self.cache.lock().unwrap().insert((a, l), value.clone());
        Ok(value)
    }

    /// `ℓ(I_{n+1}/J I_n)`.
    pub fn gap(&self, f: &Filtration<F>, n: usize) -> Result<u64> {
        quotient_length(&f.ideal(n + 1)?, &self.get(f, 1, n)?)
    }
}

pub struct ReductionData<F: Field> {
    pub tower: Tower<F>,
    /// `d × g` over the generators of `I_1`; empty for a supplied `J`
    pub matrix: Vec<Vec<F::Elem>>,
    pub seed: u64,
    /// draws used, counting the accepted one
    pub attempts: usize,
    /// `ℓ(I_{n+1}/J I_n)` for `n = 0, 1, …` as far as they were computed
    pub gaps: Vec<u64>,
    pub r: usize,
    /// `J ∩ I_2 = J I_1`
    pub itoh: bool,
    /// `J ∩ I_{n+1} = J I_n` for `n = 0..=r+1`
    pub vv: Vec<bool>,
    pub cm: bool,
}

impl<F: Field> ReductionData<F> {
    pub fn j(&self) -> &Ideal<F> {
        self.tower.j()
    }

    /// `J ∩ I_{l+1} = J I_l`; beyond `r + 1` it follows from `I_{l+1} = J I_l`.
    pub fn intersection_condition(&self, l: usize) -> bool {
        self.vv.get(l).copied().unwrap_or(true)
    }
}

/// Combine `gens` with the rows of `matrix`.
fn combinations<F: Field>(gens: &[Polynomial<F>], matrix: &[Vec<F::Elem>]) -> Result<Vec<Polynomial<F>>> {
    matrix
        .iter()
        .map(|row| {
            let mut acc = Polynomial::zero(gens[0].ring());
            for (g, c) in gens.iter().zip(row) {
                acc = acc.add(&g.scale(c))?;
            }
            Ok(acc)
        })
        .collect()
}

/// Scan `n = 0..=n_max` for a run of `d + 2` equalities `I_{n+1} = J I_n`.
fn stabilization<F: Field>(f: &Filtration<F>, tower: &Tower<F>, n_max: usize) -> Result<Option<(usize, Vec<u64>)>> {
    let d = f.ring().nvars();
    let mut gaps = Vec::new();
    let mut run = 0;
    for n in 0..=n_max {
        let g = tower.gap(f, n)?;
        gaps.push(g);
        run = if g == 0 { run + 1 } else { 0 };
        if run == d + 2 {
            return Ok(Some((n + 1 - run, gaps)));
        }
    }
    Ok(None)
}

/// Find (or verify) a minimal reduction and its reduction number, then test
/// Itoh's condition and Valabrega–Valla.
pub fn find_minimal_reduction<F: Field>(
    f: &Filtration<F>,
    seed: u64,
    n_max: usize,
    explicit: Option<&Ideal<F>>,
) -> Result<ReductionData<F>> {
    let i1 = f.ideal(1)?;
    let d = f.ring().nvars();
    if let Some(j) = explicit {
        if j.generators().len() != d {
            return Err(Error::Hypothesis(format!(
                "a minimal reduction has d = {d} generators, {} were given",
                j.generators().len()
            )));
        }
        if !i1.contains(j)? {
            return Err(Error::Hypothesis("the reduction J must lie in I_1".into()));
        }
        if !j.is_m_primary() {
            return Err(Error::Hypothesis("J is not m-primary, so it is no reduction".into()));
        }
        let tower = Tower::new(j);
        let Some((r, gaps)) = stabilization(f, &tower, n_max)? else {
            return Err(Error::ReductionNotCertified(format!("supplied J within n ≤ {n_max}")));
        };
        return finish(f, tower, Vec::new(), seed, 1, r, gaps);
    }
    let gens = i1.generating_set();
    let field = f.ring().field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let matrix: Vec<Vec<F::Elem>> = (0..d).map(|_| gens.iter().map(|_| field.random(&mut rng)).collect()).collect();
        let j = Ideal::new(f.ring(), combinations(&gens, &matrix)?)?;
        if j.generators().len() < d || !j.is_m_primary() {
            log::debug!("draw {attempt} is not m-primary");
            continue;
        }
        let tower = Tower::new(&j);
        if let Some((r, gaps)) = stabilization(f, &tower, n_max)? {
            return finish(f, tower, matrix, seed, attempt, r, gaps);
        }
        log::debug!("draw {attempt} did not stabilise by n = {n_max}");
    }
    Err(Error::ReductionNotCertified(format!("{MAX_ATTEMPTS} draws, n ≤ {n_max}")))
}

fn finish<F: Field>(
    f: &Filtration<F>,
    tower: Tower<F>,
    matrix: Vec<Vec<F::Elem>>,
    seed: u64,
    attempts: usize,
    r: usize,
    gaps: Vec<u64>,
) -> Result<ReductionData<F>> {
    let mut data = ReductionData { tower, matrix, seed, attempts, gaps, r, itoh: false, vv: Vec::new(), cm: false };
    data.itoh = check_itoh(f, &data)?;
    let (vv, cm) = valabrega_valla(f, &data)?;
    data.vv = vv;
    data.cm = cm;
    Ok(data)
}

/// `J ∩ I_{n+1} = J I_n`, compared through colengths.
fn intersection_holds<F: Field>(f: &Filtration<F>, tower: &Tower<F>, n: usize) -> Result<bool> {
    let cap = intersection_colength(tower.j(), &f.ideal(n + 1)?)?;
    Ok(cap == tower.get(f, 1, n)?.colength()?)
}

pub fn check_itoh<F: Field>(f: &Filtration<F>, red: &ReductionData<F>) -> Result<bool> {
    intersection_holds(f, &red.tower, 1)
}

/// Per-`n` table for `n = 0..=r+1` and the Cohen–Macaulay verdict.
pub fn valabrega_valla<F: Field>(f: &Filtration<F>, red: &ReductionData<F>) -> Result<(Vec<bool>, bool)> {
    let table = (0..=red.r + 1).map(|n| intersection_holds(f, &red.tower, n)).collect::<Result<Vec<_>>>()?;
    let cm = table.iter().all(|&b| b);
    Ok((table, cm))
}

/// `J^{n+1} ∩ J^n I_2 = J^{n+1} I_1`.
pub fn power_intersection<F: Field>(f: &Filtration<F>, tower: &Tower<F>, n: usize) -> Result<bool> {
    let cap = intersection_colength(&tower.get(f, n + 1, 0)?, &tower.get(f, n, 2)?)?;
    Ok(cap == tower.get(f, n + 1, 1)?.colength()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Ring;

    #[test]
    fn maximal_ideal_has_reduction_number_zero() {
        let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
        let f = Filtration::adic(&Ideal::maximal(&r));
        let red = find_minimal_reduction(&f, 1, 10, None).unwrap();
        assert_eq!(red.r, 0);
        assert!(red.itoh && red.cm);
    }

    #[test]
    fn explicit_reduction_of_the_normal_cubes() {
        let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
        let i = Ideal::parse(&r, &["x^3", "y^3"]).unwrap();
        let f = Filtration::normal_monomial(&i).unwrap();
        let red = find_minimal_reduction(&f, 0, 10, Some(&i)).unwrap();
        assert_eq!(red.r, 1);
        assert_eq!(red.gaps[0], 3);
        assert!(red.itoh && red.cm);
        for n in 0..3 {
            assert!(power_intersection(&f, &red.tower, n).unwrap());
        }
    }

    #[test]
    fn random_reductions_agree_across_seeds() {
        let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
        let i = Ideal::parse(&r, &["x^4", "x^3*y", "y^3"]).unwrap();
        let f = Filtration::adic(&i);
        let a = find_minimal_reduction(&f, 1, 12, None).unwrap();
        let b = find_minimal_reduction(&f, 2, 12, None).unwrap();
        assert_eq!(a.r, b.r);
        assert_eq!(a.gaps[1], b.gaps[1]);
        assert!(a.j().generators() != b.j().generators());
    }

    #[test]
    fn rejects_bad_explicit_reductions() {
        let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
        let f = Filtration::adic(&Ideal::parse(&r, &["x^2", "y^2"]).unwrap());
        let outside = Ideal::parse(&r, &["x", "y^2"]).unwrap();
        assert!(matches!(find_minimal_reduction(&f, 0, 8, Some(&outside)), Err(Error::Hypothesis(_))));
        let short = Ideal::parse(&r, &["x^2"]).unwrap();
        assert!(matches!(find_minimal_reduction(&f, 0, 8, Some(&short)), Err(Error::Hypothesis(_))));
    }
}
