#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use hilbert_sally::check::Check;
use hilbert_sally::closure::MonomialIdeal;
use hilbert_sally::job::JobSpec;
use hilbert_sally::pipeline::{analyze, Analysis, Options};
use hilbert_sally::{Filtration, Ideal, PrimeField, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn job_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("jobs").join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

pub fn load_job(name: &str) -> JobSpec {
    let text = std::fs::read_to_string(job_path(name)).unwrap();
    JobSpec::parse(&text).unwrap()
}

pub fn ring(d: usize) -> Arc<Ring<PrimeField>> {
    let vars = ["x", "y", "z"];
    Ring::new(&vars[..d], PrimeField::default()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random exponent vectors of total degree at most `max_deg`.
pub fn random_monomials(rng: &mut ChaCha8Rng, d: usize, count: usize, max_deg: u32) -> Vec<Vec<u32>> {
    (0..count)
        .map(|_| {
            let total = rng.gen_range(1..=max_deg);
            let mut e = vec![0u32; d];
            for _ in 0..total {
                e[rng.gen_range(0..d)] += 1;
            }
            e
        })
        .collect()
}

/// Pure powers `x_i^{a_i}` with `2 ≤ a_i ≤ cap`, plus up to `extra` mixed
/// monomials strictly inside the box they span.
pub fn random_m_primary(rng: &mut ChaCha8Rng, d: usize, cap: u32, extra: usize) -> MonomialIdeal {
    let caps: Vec<u32> = (0..d).map(|_| rng.gen_range(2..=cap)).collect();
    let mut gens: Vec<Vec<u32>> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = caps[i];
            e
        })
        .collect();
    for _ in 0..extra {
        let e: Vec<u32> = caps.iter().map(|&c| rng.gen_range(0..c)).collect();
        if e.iter().filter(|&&x| x > 0).count() > 1 {
            gens.push(e);
        }
    }
    MonomialIdeal::new(d, gens).unwrap()
}

/// `count` distinct ideals from [`random_m_primary`].
pub fn distinct_m_primary(rng: &mut ChaCha8Rng, d: usize, cap: u32, extra: usize, count: usize) -> Vec<MonomialIdeal> {
    let mut out: Vec<MonomialIdeal> = Vec::new();
    while out.len() < count {
        let i = random_m_primary(rng, d, cap, extra);
        if !out.contains(&i) {
            out.push(i);
        }
    }
    out
}

/// Lattice count of `ℓ(R/I^{n+1})` or of the normal version.
pub fn lattice_lengths(i: &MonomialIdeal, normal: bool, n_max: usize) -> Vec<u64> {
    (1..=n_max as u32 + 1)
        .map(|n| {
            let p = if normal { hilbert_sally::closure::normal_power(i, n).unwrap() } else { i.power(n) };
            p.colength().unwrap()
        })
        .collect()
}

pub struct Run {
    pub label: String,
    pub analysis: Analysis<PrimeField>,
    pub oracle: Vec<u64>,
}

impl Run {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.analysis.identities.iter().chain(&self.analysis.report.checks)
    }
}

pub fn run_instance(i: &MonomialIdeal, normal: bool, seed: u64) -> Run {
    let d = i.nvars();
    let r = ring(d);
    let ideal: Ideal<PrimeField> = i.to_ideal(&r).unwrap();
    let f = if normal { Filtration::normal_monomial(&ideal).unwrap() } else { Filtration::adic(&ideal) };
    let opts = Options { seed, max_n: d + 5, ..Options::default() };
    let analysis = analyze(&f, &opts).unwrap();
    let oracle = lattice_lengths(i, normal, analysis.n_max);
    let kind = if normal { "normal" } else { "adic" };
    Run { label: format!("{:?} {kind} seed {seed}", i.generators()), analysis, oracle }
}
