//! Filtrations `R = I_0 ⊇ I_1 ⊇ I_2 ⊇ …` with `I_m I_n ⊆ I_{m+n}`.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::closure::{normal_power, MonomialIdeal};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::poly::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    /// `I_n = I^n`
    Adic,
    /// `I_n = \overline{I^n}` for a monomial ideal
    NormalMonomial,
    /// `I_n = I^n`, with the caller's word that `I` is normal
    DeclaredNormal,
    /// explicit `I_1, …, I_N`
    Table,
}

impl FiltrationKind {
    pub fn name(self) -> &'static str {
        match self {
            FiltrationKind::Adic => "adic",
            FiltrationKind::NormalMonomial => "normal_monomial",
            FiltrationKind::DeclaredNormal => "declared_normal",
            FiltrationKind::Table => "table",
        }
    }
}

impl fmt::Display for FiltrationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub struct Filtration<F: Field> {
    ring: Arc<Ring<F>>,
    kind: FiltrationKind,
    base: Ideal<F>,
    monomial: Option<MonomialIdeal>,
    table: Vec<Ideal<F>>,
    /// realized `I_0, I_1, …`
    cache: Mutex<Vec<Ideal<F>>>,
}

impl<F: Field> Filtration<F> {
    fn build(kind: FiltrationKind, base: Ideal<F>, monomial: Option<MonomialIdeal>, table: Vec<Ideal<F>>) -> Self {
        let ring = base.ring().clone();
        let unit = Ideal::unit(&ring);
        Filtration { ring, kind, base, monomial, table, cache: Mutex::new(vec![unit]) }
    }

    pub fn adic(i: &Ideal<F>) -> Self {
        Self::build(FiltrationKind::Adic, i.clone(), None, Vec::new())
    }

    /// `{I^n}` where the caller asserts `\overline{I^n} = I^n`. Nothing is
    /// verified; reports carry the assumption.
    pub fn declared_normal(i: &Ideal<F>) -> Self {
        Self::build(FiltrationKind::DeclaredNormal, i.clone(), None, Vec::new())
    }

    /// `{\overline{I^n}}` for an ideal generated by monomials.
    pub fn normal_monomial(i: &Ideal<F>) -> Result<Self> {
        let m = MonomialIdeal::from_ideal(i)?;
        Ok(Self::build(FiltrationKind::NormalMonomial, i.clone(), Some(m), Vec::new()))
    }

    /// `I_1, …, I_N` as given; `I_1` serves as the base ideal.
    pub fn table(entries: Vec<Ideal<F>>) -> Result<Self> {
        let first = entries.first().ok_or_else(|| Error::Hypothesis("a table filtration needs I_1".into()))?.clone();
        Ok(Self::build(FiltrationKind::Table, first, None, entries))
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn base(&self) -> &Ideal<F> {
        &self.base
    }

    /// Entries available, `None` if unbounded.
    pub fn table_len(&self) -> Option<usize> {
        (self.kind == FiltrationKind::Table).then_some(self.table.len())
    }

    /// Whether this is a normal filtration `{\overline{I^n}}`, proven or
    /// declared.
    pub fn is_normal(&self) -> bool {
        matches!(self.kind, FiltrationKind::NormalMonomial | FiltrationKind::DeclaredNormal)
    }

    pub fn normality_assumed(&self) -> bool {
        self.kind == FiltrationKind::DeclaredNormal
    }

    /// `I_n`, realized on first request and cached.
    pub fn ideal(&self, n: usize) -> Result<Ideal<F>> {
        if let FiltrationKind::Table = self.kind {
            if n > self.table.len() {
                return Err(Error::TableExhausted { requested: n, available: self.table.len() });
            }
        }
        let mut cache = self.cache.lock().expect("filtration cache poisoned");
        while cache.len() <= n {
            let k = cache.len();
            let next = self.realize(k, &cache[k - 1])?;
            if !next.is_unit() && !next.is_m_primary() {
                return Err(Error::NotMPrimary(format!("I_{k} = {next}")));
            }
            cache.push(next);
        }
        Ok(cache[n].clone())
    }

    fn realize(&self, k: usize, prev: &Ideal<F>) -> Result<Ideal<F>> {
        match self.kind {
            FiltrationKind::Adic | FiltrationKind::DeclaredNormal => {
                if k == 1 {
                    if !self.base.is_m_primary() {
                        return Err(Error::NotMPrimary(format!("{}", self.base)));
                    }
                    Ok(self.base.clone())
                } else {
                    prev.product(&self.base)
                }
            }
            FiltrationKind::NormalMonomial => {
                let m = self.monomial.as_ref().expect("monomial data");
                if !m.is_m_primary() {
                    return Err(Error::NotMPrimary(format!("{}", self.base)));
                }
                normal_power(m, k as u32)?.to_ideal(&self.ring)
            }
            FiltrationKind::Table => Ok(self.table[k - 1].clone()),
        }
    }

    /// Check `I_m I_n ⊆ I_{m+n}` and `I^n ⊆ I_n` for `m + n ≤ N`, plus the
    /// descending chain. Violations are reported, not raised.
    pub fn check_admissible(&self, n_max: usize) -> Result<Admissibility> {
        if n_max < 2 {
            return Err(Error::Hypothesis("admissibility needs N ≥ 2".into()));
        }
        match self.kind {
            FiltrationKind::Adic | FiltrationKind::DeclaredNormal => {
                Ok(Admissibility { checked: 0, violation: None, definitional: true })
            }
            FiltrationKind::NormalMonomial => Ok(self.monomial_admissible(n_max)),
            FiltrationKind::Table => self.table_admissible(n_max),
        }
    }

    fn monomial_admissible(&self, n_max: usize) -> Admissibility {
        let base = self.monomial.as_ref().expect("monomial data");
        let mut report = Admissibility { checked: 0, violation: None, definitional: false };
        let Ok(closures) = (1..=n_max as u32).map(|n| normal_power(base, n)).collect::<Result<Vec<_>>>() else {
            report.violation = Some("normal powers unavailable".into());
            return report;
        };
        let mut power = base.clone();
        for n in 1..=n_max {
            if n > 1 {
                power = power.product(base);
            }
            report.checked += 1;
            if !power.generators().iter().all(|g| closures[n - 1].contains(g)) {
                report.violation = Some(format!("I^{n} ⊄ I_{n}"));
                return report;
            }
            for m in 1..n {
                if n + m > n_max {
                    break;
                }
                report.checked += 1;
                let prod = closures[m - 1].product(&closures[n - 1]);
                if !prod.generators().iter().all(|g| closures[n + m - 1].contains(g)) {
                    report.violation = Some(format!("I_{m}·I_{n} ⊄ I_{}", m + n));
                    return report;
                }
            }
        }
        report
    }

    fn table_admissible(&self, n_max: usize) -> Result<Admissibility> {
        let top = n_max.min(self.table.len());
        let mut report = Admissibility { checked: 0, violation: None, definitional: false };
        let mut power = Ideal::unit(&self.ring);
        for n in 1..=top {
            let cur = self.ideal(n)?;
            let prev = self.ideal(n - 1)?;
            report.checked += 1;
            if !prev.contains(&cur)? {
                report.violation = Some(format!("I_{n} ⊄ I_{}", n - 1));
                return Ok(report);
            }
            power = if n == 1 { self.base.clone() } else { power.product(&self.base)? };
            report.checked += 1;
            if !cur.contains(&power)? {
                report.violation = Some(format!("I^{n} ⊄ I_{n}"));
                return Ok(report);
            }
            for m in 1..=n {
                if n + m > top {
                    break;
                }
                report.checked += 1;
                let prod = self.ideal(m)?.product(&cur)?;
                if !self.ideal(n + m)?.contains(&prod)? {
                    report.violation = Some(format!("I_{m}·I_{n} ⊄ I_{}", m + n));
                    return Ok(report);
                }
            }
        }
        Ok(report)
    }
}

pub fn filtration_ideal<F: Field>(f: &Filtration<F>, n: usize) -> Result<Ideal<F>> {
    f.ideal(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    /// containments actually tested
    pub checked: usize,
    pub violation: Option<String>,
    /// true when admissibility holds by construction
    pub definitional: bool,
}

impl Admissibility {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(vars: &[&str]) -> Arc<Ring<PrimeField>> {
        Ring::new(vars, PrimeField::default()).unwrap()
    }

    #[test]
    fn adic_powers_of_the_maximal_ideal() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::maximal(&r));
        assert!(f.ideal(0).unwrap().is_unit());
        assert!(f.ideal(3).unwrap().equals(&Ideal::maximal_power(&r, 3)).unwrap());
        assert_eq!(f.ideal(3).unwrap().colength().unwrap(), 6);
    }

    #[test]
    fn normal_monomial_powers() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^3", "y^3"]).unwrap();
        let f = Filtration::normal_monomial(&i).unwrap();
        assert!(f.ideal(1).unwrap().equals(&Ideal::maximal_power(&r, 3)).unwrap());
        assert!(f.ideal(2).unwrap().equals(&Ideal::maximal_power(&r, 6)).unwrap());
        assert!(!f.ideal(1).unwrap().equals(&i).unwrap());
        let rep = f.check_admissible(4).unwrap();
        assert!(rep.passed() && rep.checked > 0);
    }

    #[test]
    fn declared_normal_keeps_the_ideal() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^2", "y^2", "z^2", "x*y"]).unwrap();
        let f = Filtration::declared_normal(&i);
        assert!(f.ideal(1).unwrap().equals(&i).unwrap());
        assert!(f.normality_assumed() && f.is_normal());
        assert!(!Filtration::adic(&i).is_normal());
    }

    #[test]
    fn tables() {
        let r = ring(&["x", "y"]);
        let m = |k| Ideal::maximal_power(&r, k);
        let good = Filtration::table(vec![m(1), m(2), m(3)]).unwrap();
        assert!(good.check_admissible(3).unwrap().passed());
        assert!(matches!(good.ideal(4), Err(Error::TableExhausted { requested: 4, available: 3 })));

        let bad = Filtration::table(vec![m(2), m(1)]).unwrap();
        let rep = bad.check_admissible(2).unwrap();
        assert_eq!(rep.violation.as_deref(), Some("I_2 ⊄ I_1"));
    }

    #[test]
    fn rejects_non_primary_bases() {
        let r = ring(&["x", "y"]);
        let f = Filtration::adic(&Ideal::parse(&r, &["x^2"]).unwrap());
        assert!(matches!(f.ideal(1), Err(Error::NotMPrimary(_))));
    }

    #[test]
    fn chain_descends_and_cache_is_coherent() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "x*y^2", "y^3"]).unwrap();
        let f = Filtration::normal_monomial(&i).unwrap();
        for n in 0..4 {
            assert!(f.ideal(n).unwrap().contains(&f.ideal(n + 1).unwrap()).unwrap());
            assert!(f.ideal(n).unwrap().equals(&f.ideal(n).unwrap()).unwrap());
        }
    }
}
