//! Which boundary case a filtration realizes, and whether every consequence
//! predicted for that case holds on the computed data.
//!
//! With `Δ = e_1 − (e_0 − ℓ(R/I_1) + ℓ(I_2/J I_1))`:
//! `Δ = 0` forces `r ≤ 2` and a Cohen–Macaulay associated graded ring;
//! for normal filtrations `Δ = 1` forces `C^(2) ≅ B(−m)`, whose length
//! shadow is checked here.

use std::fmt;

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::filtration::{Filtration, FiltrationKind};
use crate::hilbert::{binom, HilbertData};
use crate::reduction::ReductionData;
use crate::sally::SallyTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `e_1 = e_0 − ℓ(R/I_1)`, so `Δ = ℓ_2 = 0`
    R1,
    /// `Δ = 0`
    EV,
    /// `Δ = 1`
    #[serde(rename = "PLUS_ONE")]
    PlusOne,
    #[serde(rename = "OTHER")]
    Other,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::R1 => "R1",
            Case::EV => "EV",
            Case::PlusOne => "PLUS_ONE",
            Case::Other => "OTHER",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Depth {
    #[serde(rename = "CM")]
    CohenMacaulay,
    #[serde(rename = "exactly-d-1-by-theorem")]
    ExactlyDMinusOne,
    #[serde(rename = "at-least-d-1-by-theorem")]
    AtLeastDMinusOne,
    #[serde(rename = "unknown")]
    Unknown,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Depth::CohenMacaulay => "CM",
            Depth::ExactlyDMinusOne => "exactly-d-1-by-theorem",
            Depth::AtLeastDMinusOne => "at-least-d-1-by-theorem",
            Depth::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub d: usize,
    pub kind: String,
    pub seed: u64,
    pub colength: u64,
    pub l2: u64,
    pub e: Vec<i64>,
    pub numerator: Vec<i64>,
    pub r: usize,
    pub delta: i64,
    pub itoh: bool,
    pub cm: bool,
    pub m: Option<usize>,
    pub case: Case,
    pub depth: Depth,
    pub checks: Vec<Check>,
    pub normality_assumed: bool,
}

impl ClassificationReport {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.failed()).collect()
    }
}

/// Pure function of `(Δ, ℓ_2)`.
pub fn case_of(delta: i64, l2: u64) -> Case {
    match (delta, l2) {
        (0, 0) => Case::R1,
        (0, _) => Case::EV,
        (1, _) => Case::PlusOne,
        _ => Case::Other,
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// The unique `m ≥ 2` with `ℓ(I_{m+1}/J I_m) = 1` and `I_{n+1} = J I_n`
/// for every other `n ≥ 2` in the window; all candidates are returned.
pub fn locate_m(gaps: &[u64]) -> Vec<usize> {
    (2..gaps.len()).filter(|&m| gaps[m] == 1 && (2..gaps.len()).all(|n| n == m || gaps[n] == 0)).collect()
}

pub fn classify<F: Field>(
    f: &Filtration<F>,
    red: &ReductionData<F>,
    hilbert: &HilbertData,
    sally: &SallyTable,
) -> Result<ClassificationReport> {
    let d = f.ring().nvars();
    let n_max = hilbert.lengths.len() - 1;
    if n_max < red.r + d + 3 {
        return Err(Error::WindowTooSmall(format!(
            "classification needs N ≥ r + d + 3 = {}, have {n_max}",
            red.r + d + 3
        )));
    }
    let e = &hilbert.e;
    let (l1, l2) = (sally.colength as i64, sally.l2 as i64);
    let delta = sally.delta;
    let case = case_of(delta, sally.l2);
    let normal = f.is_normal();
    let mut checks = Vec::new();
    let mut m = None;
    let mut depth = if red.cm { Depth::CohenMacaulay } else { Depth::Unknown };

    if normal {
        checks.push(Check::new("itoh_for_normal_filtration", true, red.itoh, red.itoh));
    }
    if red.itoh {
        checks.push(Check::new("delta_nonnegative", "delta ≥ 0", delta, delta >= 0));
    }
    if normal && d >= 2 {
        let mid = e[1] - e[0] + l1;
        checks.push(Check::new(
            "e2_chain",
            format!("e2 ≥ {mid} ≥ l2 = {l2}"),
            format!("e2 = {}", e[2]),
            e[2] >= mid && mid >= l2,
        ));
    }

    match case {
        Case::R1 | Case::EV => {
            if !red.itoh {
                checks.push(Check::skipped("reduction_at_most_two", "J ∩ I_2 ≠ J I_1"));
            } else {
                let bound = if case == Case::R1 { 1 } else { 2 };
                checks.push(Check::new(
                    format!("reduction_at_most_{bound}"),
                    format!("r ≤ {bound}"),
                    red.r,
                    red.r <= bound,
                ));
                checks.push(Check::equal("cohen_macaulay", true, red.cm));
                checks.push(Check::equal("numerator", trim(vec![l1, e[0] - l1 - l2, l2]), hilbert.numerator.clone()));
                if d >= 2 {
                    checks.push(Check::equal("e2", l2, e[2]));
                }
                if d >= 3 {
                    checks.push(Check::equal("e_higher", vec![0; d - 2], e[3..].to_vec()));
                }
            }
        }
        Case::PlusOne => {
            if !normal || !red.itoh {
                checks.push(Check::skipped("plus_one_structure", "needs a normal filtration with J ∩ I_2 = J I_1"));
            } else {
                let found = locate_m(&red.gaps);
                checks.push(Check::new("unique_m", "exactly one m", format!("{found:?}"), found.len() == 1));
                if let [mm] = found[..] {
                    m = Some(mm);
                    plus_one_battery(f, red, hilbert, sally, mm, &mut checks)?;
                    if !red.cm {
                        depth = Depth::ExactlyDMinusOne;
                    }
                }
            }
        }
        Case::Other => {}
    }

    if normal && e[1] == e[0] - l1 + 1 {
        // then ℓ_2 ≤ 1, and depth is d iff ℓ_2 = 1
        checks.push(Check::new("one_above_l2_bound", "l2 ≤ 1", l2, l2 <= 1));
        checks.push(Check::new(
            "one_above_depth",
            format!("CM = {}", l2 == 1),
            format!("CM = {}", red.cm),
            red.cm == (l2 == 1),
        ));
        if l2 == 0 && !red.cm {
            depth = Depth::ExactlyDMinusOne;
        }
    }
    if normal && d >= 2 && e[2] <= l2 + 2 && depth == Depth::Unknown {
        depth = Depth::AtLeastDMinusOne;
    }

    Ok(ClassificationReport {
        d,
        kind: f.kind().name().to_string(),
        seed: red.seed,
        colength: sally.colength,
        l2: sally.l2,
        e: e.clone(),
        numerator: hilbert.numerator.clone(),
        r: red.r,
        delta,
        itoh: red.itoh,
        cm: red.cm,
        m,
        case,
        depth,
        checks,
        normality_assumed: f.normality_assumed(),
    })
}

fn plus_one_battery<F: Field>(
    f: &Filtration<F>,
    red: &ReductionData<F>,
    hilbert: &HilbertData,
    sally: &SallyTable,
    m: usize,
    checks: &mut Vec<Check>,
) -> Result<()> {
    let d = f.ring().nvars();
    let e = &hilbert.e;
    let (l1, l2) = (sally.colength as i64, sally.l2 as i64);

    checks.push(Check::equal("reduction_is_m_plus_1", m + 1, red.r));

    let mut num = vec![l1, e[0] - l1 - l2, l2, 0, 0];
    num.resize(num.len().max(m + 2), 0);
    num[m] -= 1;
    num[m + 1] += 1;
    checks.push(Check::equal("numerator_shift", trim(num), hilbert.numerator.clone()));

    if d >= 2 {
        checks.push(Check::equal("e2_is_l2_plus_m", l2 + m as i64, e[2]));
    }
    if d >= 3 {
        let expected: Vec<i64> = (3..=d).map(|i| binom(m as i64, i as i64 - 1)).collect();
        checks.push(Check::equal("e_higher_binomial", expected, e[3..].to_vec()));
    }

    let i3_in_j = red.j().contains(&f.ideal(3)?)?;
    checks.push(Check::new(
        "cm_iff_i3_outside_j",
        format!("CM = {}", !i3_in_j),
        format!("CM = {}", red.cm),
        red.cm == !i3_in_j,
    ));
    if red.cm {
        checks.push(Check::equal("cm_forces_m_2", 2, m));
    }

    // length-level evidence for C^(2) ≅ B(−m)
    let di = d as i64;
    let predicted: Vec<u64> = (0..=sally.n_max as i64)
        .map(|n| if n < m as i64 { 0 } else { binom(n - m as i64 + di - 1, di - 1) as u64 })
        .collect();
    checks.push(Check::equal("c2_table_is_shifted_fiber", predicted, sally.c[1].clone()));

    if f.kind() == FiltrationKind::DeclaredNormal {
        checks.push(Check::equal("normal_ideal_m_is_2", 2, m));
        checks.push(Check::equal("normal_ideal_gaps", vec![1, 0], red.gaps[2..4].to_vec()));
        let expected = trim(vec![l1, e[0] - l1 - l2, l2 - 1, 1]);
        checks.push(Check::equal("normal_ideal_numerator", expected, hilbert.numerator.clone()));
        if d >= 3 {
            let mut higher = vec![0i64; d - 2];
            higher[0] = 1;
            checks.push(Check::equal("normal_ideal_e_higher", higher, e[3..].to_vec()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_assignment() {
        assert_eq!(case_of(0, 0), Case::R1);
        assert_eq!(case_of(0, 2), Case::EV);
        assert_eq!(case_of(1, 2), Case::PlusOne);
        assert_eq!(case_of(2, 0), Case::Other);
        assert_eq!(case_of(-1, 0), Case::Other);
    }

    #[test]
    fn m_detection() {
        // gaps = ℓ(I_{n+1}/J I_n)
        assert_eq!(locate_m(&[5, 2, 1, 0, 0, 0]), vec![2]);
        assert_eq!(locate_m(&[5, 2, 0, 1, 0, 0]), vec![3]);
        assert!(locate_m(&[5, 2, 1, 1, 0]).is_empty());
        assert!(locate_m(&[5, 2, 0, 0, 0]).is_empty());
        assert!(locate_m(&[5, 2, 2, 0, 0]).is_empty());
    }
}
