//! Lengths of the Sally module `S_n = I_{n+1}/J^n I_1` and of its
//! filtration `C^(ℓ)_n = I_{n+1}/J^{n−ℓ+1} I_ℓ`, `L^(ℓ)_n =
//! J^{n−ℓ} I_{ℓ+1}/J^{n−ℓ+1} I_ℓ`, with the identities they satisfy.

use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::filtration::Filtration;
use crate::hilbert::{binom, raw_numerator, HilbertData};
use crate::ideal::quotient_length;
use crate::reduction::{power_intersection, ReductionData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SallyTable {
    pub level_max: usize,
    pub n_max: usize,
    /// `ℓ(S_n)`, `n = 0..=N`
    pub s: Vec<u64>,
    /// `c[ℓ−1][n]` for `ℓ = 1..=level_max+1`
    pub c: Vec<Vec<u64>>,
    /// `l[ℓ−1][n]` for `ℓ = 1..=level_max`
    pub l: Vec<Vec<u64>>,
    /// `ℓ(R/I_1)`
    pub colength: u64,
    /// `ℓ(I_2/J I_1)`
    pub l2: u64,
    /// `e_1 − (e_0 − ℓ(R/I_1) + ℓ_2)`
    pub delta: i64,
    /// multiplicity of `C^(2)`, taken to be `delta`
    pub c2_mult: i64,
    /// the same read off the `C^(2)` table, when it is polynomial on the
    /// verified window
    pub c2_fit: Option<i64>,
}

impl SallyTable {
    pub fn c(&self, level: usize, n: usize) -> u64 {
        self.c[level - 1][n]
    }

    pub fn l(&self, level: usize, n: usize) -> u64 {
        self.l[level - 1][n]
    }
}

pub fn sally_lengths<F: Field>(
    f: &Filtration<F>,
    red: &ReductionData<F>,
    hilbert: &HilbertData,
    level_max: usize,
    n_max: usize,
) -> Result<SallyTable> {
    let d = f.ring().nvars();
    if level_max < 2 {
        return Err(Error::Hypothesis("Sally tables need at least two levels".into()));
    }
    if n_max < red.r + d + 3 {
        return Err(Error::WindowTooSmall(format!("N = {n_max} < r + d + 3 = {}", red.r + d + 3)));
    }
    let tower = &red.tower;
    let mut c = Vec::with_capacity(level_max + 1);
    for level in 1..=level_max + 1 {
        let mut row = vec![0u64; n_max + 1];
        for (n, slot) in row.iter_mut().enumerate().skip(level) {
            *slot = quotient_length(&f.ideal(n + 1)?, &tower.get(f, n - level + 1, level)?)?;
        }
        c.push(row);
    }
    let mut l = Vec::with_capacity(level_max);
    for level in 1..=level_max {
        let mut row = vec![0u64; n_max + 1];
        for (n, slot) in row.iter_mut().enumerate().skip(level) {
            *slot = quotient_length(&tower.get(f, n - level, level + 1)?, &tower.get(f, n - level + 1, level)?)?;
        }
        l.push(row);
    }
    let colength = hilbert.lengths[0];
    let l2 = c[0][1];
    let e = &hilbert.e;
    let delta = e[1] - (e[0] - colength as i64 + l2 as i64);
    let c2_fit = multiplicity_fit(&c[1], d, red.r.max(2));
    Ok(SallyTable { level_max, n_max, s: c[0].clone(), c, l, colength, l2, delta, c2_mult: delta, c2_fit })
}

/// `Δ^{d−1} c` at the top of the window, provided `Δ^d c` vanishes on
/// every window starting at `from` or later.
fn multiplicity_fit(c: &[u64], d: usize, from: usize) -> Option<i64> {
    let diff = |start: usize, order: usize| -> i64 {
        (0..=order)
            .map(|j| {
                let sign = if (order - j) % 2 == 0 { 1 } else { -1 };
                sign * binom(order as i64, j as i64) * c[start + j] as i64
            })
            .sum()
    };
    let top = c.len() - 1;
    if top < from + d {
        return None;
    }
    if (from..=top - d).any(|s| diff(s, d) != 0) {
        return None;
    }
    Some(diff(top + 1 - d, d - 1))
}

/// The identities and inequalities the tables must satisfy. Those that
/// need `J ∩ I_2 = J I_1` are skipped when it fails.
pub fn identities<F: Field>(
    f: &Filtration<F>,
    red: &ReductionData<F>,
    hilbert: &HilbertData,
    table: &SallyTable,
) -> Result<Vec<Check>> {
    let d = f.ring().nvars();
    let di = d as i64;
    let n_max = table.n_max;
    let e = &hilbert.e;
    let h = &hilbert.lengths;
    let (l1, l2) = (table.colength as i64, table.l2 as i64);
    let mut out = Vec::new();

    let mut bad = None;
    'outer: for level in 1..=table.level_max {
        for n in 0..=n_max {
            if table.c(level, n) != table.l(level, n) + table.c(level + 1, n) {
                bad = Some((level, n));
                break 'outer;
            }
        }
    }
    out.push(match bad {
        None => Check::new("exact_sequence_additivity", "c(l) = l(l) + c(l+1)", "all n, l", true),
        Some((level, n)) => Check::new(
            "exact_sequence_additivity",
            table.l(level, n) + table.c(level + 1, n),
            format!("c({level})_{n} = {}", table.c(level, n)),
            false,
        ),
    });

    for level in 1..=table.level_max + 1 {
        let zero = table.c[level - 1].iter().all(|&x| x == 0);
        out.push(Check::new(
            format!("c{level}_vanishes_iff_r_le_{level}"),
            format!("vanishes = {}", red.r <= level),
            format!("vanishes = {zero}"),
            zero == (red.r <= level),
        ));
    }

    for level in 1..=table.level_max {
        let name = format!("l{level}_free_over_fiber");
        if !red.intersection_condition(level) {
            out.push(Check::skipped(name, format!("J ∩ I_{} ≠ J I_{level}", level + 1)));
            continue;
        }
        let base = table.l(level, level) as i64;
        let expected: Vec<i64> = (0..=n_max as i64)
            .map(|n| if n < level as i64 { 0 } else { base * binom(n - level as i64 + di - 1, di - 1) })
            .collect();
        let computed: Vec<i64> = table.l[level - 1].iter().map(|&x| x as i64).collect();
        out.push(Check::equal(name, expected, computed));
    }

    let l2_formula = e[0] + (di - 1) * l1 - (h[1] as i64 - h[0] as i64);
    out.push(Check::equal("l2_closed_form", l2_formula, l2));

    if !red.itoh {
        for name in [
            "length_identity",
            "e1_lower_bound",
            "c2_multiplicity",
            "delta_zero_iff_c2_vanishes",
            "series_identity",
            "power_intersections",
        ] {
            out.push(Check::skipped(name, "J ∩ I_2 ≠ J I_1"));
        }
        return Ok(out);
    }

    let c2 = &table.c[1];
    let first = if d == 1 { 1 } else { 0 };
    let predicted: Vec<i64> = (first..=n_max as i64)
        .map(|n| {
            e[0] * binom(n + di, di) - (e[0] - l1 + l2) * binom(n + di - 1, di - 1) + l2 * binom(n + di - 2, di - 2)
                - c2[n as usize] as i64
        })
        .collect();
    let actual: Vec<i64> = h[first as usize..].iter().map(|&x| x as i64).collect();
    out.push(Check::equal("length_identity", predicted, actual));

    out.push(Check::new("e1_lower_bound", format!("e1 ≥ {}", e[0] - l1 + l2), e[1], table.delta >= 0));
    out.push(match table.c2_fit {
        Some(fit) => Check::equal("c2_multiplicity", table.delta, fit),
        None => Check::new("c2_multiplicity", table.delta, "C2 table not polynomial on the window", false),
    });
    let vanishes = c2.iter().all(|&x| x == 0);
    out.push(Check::new(
        "delta_zero_iff_c2_vanishes",
        format!("vanishes = {}", table.delta == 0),
        format!("vanishes = {vanishes}"),
        vanishes == (table.delta == 0),
    ));

    // h(z) = (ℓ_1 + (e_0 − ℓ_1 − ℓ_2) z + ℓ_2 z²) − (1−z)^{d+1} Σ c2_n z^n
    let raw = raw_numerator(h, d);
    let mut rhs = vec![0i64; n_max + 1];
    for (k, v) in [l1, e[0] - l1 - l2, l2].into_iter().enumerate() {
        if k <= n_max {
            rhs[k] += v;
        }
    }
    for (k, slot) in rhs.iter_mut().enumerate() {
        for j in 0..=k.min(d + 1) {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            *slot -= sign * binom(di + 1, j as i64) * c2[k - j] as i64;
        }
    }
    out.push(Check::equal("series_identity", rhs, raw));

    let holds = (0..=3).map(|n| power_intersection(f, &red.tower, n)).collect::<Result<Vec<_>>>()?;
    out.push(Check::equal("power_intersections", vec![true; 4], holds));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::hilbert::hilbert_function;
    use crate::ideal::Ideal;
    use crate::poly::Ring;
    use crate::reduction::find_minimal_reduction;

    fn run(
        f: &Filtration<PrimeField>,
        j: Option<&Ideal<PrimeField>>,
        n: usize,
    ) -> (HilbertData, ReductionData<PrimeField>, SallyTable) {
        let red = find_minimal_reduction(f, 7, 16, j).unwrap();
        let h = HilbertData::new(hilbert_function(f, n).unwrap(), f.ring().nvars(), red.r).unwrap();
        let t = sally_lengths(f, &red, &h, 2, n).unwrap();
        (h, red, t)
    }

    #[test]
    fn normal_cubes_have_empty_tables() {
        let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
        let i = Ideal::parse(&r, &["x^3", "y^3"]).unwrap();
        let f = Filtration::normal_monomial(&i).unwrap();
        let (h, red, t) = run(&f, Some(&i), 6);
        assert!(t.s.iter().all(|&x| x == 0));
        assert!(t.c[1].iter().all(|&x| x == 0));
        assert_eq!((t.delta, t.l2, t.c2_fit), (0, 0, Some(0)));
        let checks = identities(&f, &red, &h, &t).unwrap();
        assert!(checks.iter().all(|c| !c.failed()), "{checks:?}");
    }

    #[test]
    fn adic_monomial_ideal_identities() {
        let r = Ring::new(&["x", "y"], PrimeField::default()).unwrap();
        let i = Ideal::parse(&r, &["x^5", "x^4*y", "y^4"]).unwrap();
        let f = Filtration::adic(&i);
        let (h, red, t) = run(&f, None, 8);
        let checks = identities(&f, &red, &h, &t).unwrap();
        assert!(checks.iter().all(|c| !c.failed()), "{checks:#?}");
    }

    #[test]
    fn fit_reads_the_leading_coefficient() {
        // c_n = 3n − 2 from n = 1 on, d = 2
        let c: Vec<u64> = (0..9).map(|n: u64| if n == 0 { 0 } else { 3 * n - 2 }).collect();
        assert_eq!(multiplicity_fit(&c, 2, 1), Some(3));
        let bent: Vec<u64> = (0..9).map(|n: u64| n * n).collect();
        assert_eq!(multiplicity_fit(&bent, 2, 1), None);
    }
}
