//! Fourier–Motzkin elimination over the integers (rows are scaled, never
//! rounded, so the projected polyhedron is the exact rational one).
//!
//! Chernikov's rule drops a combined row whose set of parent rows has more
//! than `s + 1` members after `s` eliminations; such rows are implied by
//! the others.

use rustc_hash::FxHashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `Σ coef[i]·v[i] ≥ rhs`.
#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub coef: Vec<BigInt>,
    pub rhs: BigInt,
    parents: Vec<u64>,
}

impl Row {
    pub fn new(coef: Vec<BigInt>, rhs: BigInt, id: usize, total: usize) -> Self {
        let mut parents = vec![0u64; total.div_ceil(64)];
        parents[id / 64] |= 1 << (id % 64);
        let mut r = Row { coef, rhs, parents };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        let mut g = self.rhs.abs();
        for c in &self.coef {
            g = g.gcd(c);
        }
        if !g.is_zero() && g != BigInt::from(1) {
            for c in self.coef.iter_mut() {
                *c /= &g;
            }
            self.rhs /= &g;
        }
    }

    fn history(&self) -> u32 {
        self.parents.iter().map(|w| w.count_ones()).sum()
    }

    /// `−b[k]·a + a[k]·b`, cancelling variable `k`.
    fn combine(a: &Row, b: &Row, k: usize) -> Row {
        let (ka, kb) = (&a.coef[k], &b.coef[k]);
        let na = -kb;
        let coef = a.coef.iter().zip(&b.coef).map(|(x, y)| x * &na + y * ka).collect();
        let rhs = &a.rhs * &na + &b.rhs * ka;
        let parents = a.parents.iter().zip(&b.parents).map(|(x, y)| x | y).collect();
        let mut r = Row { coef, rhs, parents };
        r.normalize();
        r
    }
}

/// Eliminate variables `0..count`; returns the rows on the remaining
/// variables, or `None` if the system is infeasible.
pub(crate) fn eliminate(mut rows: Vec<Row>, count: usize) -> Option<Vec<Row>> {
    for k in 0..count {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.coef[k].is_positive() {
                pos.push(r);
            } else if r.coef[k].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        let limit = k as u32 + 2;
        for p in &pos {
            for n in &neg {
                let r = Row::combine(p, n, k);
                if r.history() <= limit {
                    rest.push(r);
                }
            }
        }
        rows = clean(rest)?;
    }
    Some(rows)
}

/// Drop duplicates and trivial rows; detect `0 ≥ c` with `c > 0`.
fn clean(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut seen = FxHashSet::default();
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        if r.coef.iter().all(|c| c.is_zero()) {
            if r.rhs.is_positive() {
                return None;
            }
            continue;
        }
        if seen.insert((r.coef.clone(), r.rhs.clone())) {
            out.push(r);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(c: &[i64], rhs: i64, id: usize, total: usize) -> Row {
        Row::new(c.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(rhs), id, total)
    }

    #[test]
    fn projects_a_triangle() {
        // x >= 0, y >= 0, -x - y >= -1; eliminate x: y >= 0, -y >= -1
        let rows = vec![row(&[1, 0], 0, 0, 3), row(&[0, 1], 0, 1, 3), row(&[-1, -1], -1, 2, 3)];
        let out = eliminate(rows, 1).unwrap();
        let mut got: Vec<(i64, i64)> =
            out.iter().map(|r| (i64::try_from(&r.coef[1]).unwrap(), i64::try_from(&r.rhs).unwrap())).collect();
        got.sort();
        assert_eq!(got, vec![(-1, -1), (1, 0)]);
    }

    #[test]
    fn detects_infeasibility() {
        // x >= 2, -x >= -1
        let rows = vec![row(&[1], 2, 0, 2), row(&[-1], -1, 1, 2)];
        assert!(eliminate(rows, 1).is_none());
    }
}
