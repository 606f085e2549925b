use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{Command, FieldSpec, JobSpec, KindSpec};
use crate::check::{Check, Status};
use crate::classify::classify;
use crate::closure::{integral_closure, normal_power, MonomialIdeal};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::filtration::{Filtration, FiltrationKind};
use crate::hilbert::{binom, hilbert_function, HilbertData};
use crate::ideal::Ideal;
use crate::pipeline::{prepare, Options};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::reduction::ReductionData;
use crate::sally::{identities, sally_lengths, SallyTable};

/// The JSON document a job produces. Field order is the serialization
/// order and is frozen by golden files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub ring: Vec<String>,
    pub field: String,
    pub command: String,
    pub seed: u64,
    pub lengths: Option<Vec<u64>>,
    pub e: Option<Vec<i64>>,
    pub numerator: Option<Vec<i64>>,
    pub r: Option<usize>,
    pub itoh: Option<bool>,
    pub vv: Option<Vec<bool>>,
    pub cm: Option<bool>,
    pub case: Option<String>,
    pub m: Option<usize>,
    pub checks: Vec<Check>,
    pub normality_assumed: bool,
    pub warnings: Vec<String>,
    pub details: Details,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Details {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_window: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify_window: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaps: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colength: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sally: Option<SallyTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureOutput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureOutput {
    pub n: u32,
    pub exponents: Vec<Vec<u32>>,
    pub generators: Vec<String>,
    pub colength: u64,
}

impl Report {
    fn empty(job: &JobSpec) -> Self {
        Report {
            ring: job.variables.clone(),
            field: job.field.to_string(),
            command: job.task.command.name().to_string(),
            seed: job.task.seed,
            lengths: None,
            e: None,
            numerator: None,
            r: None,
            itoh: None,
            vv: None,
            cm: None,
            case: None,
            m: None,
            checks: Vec::new(),
            normality_assumed: false,
            warnings: Vec::new(),
            details: Details::default(),
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }

    /// 1 when a computed value contradicts a theorem whose hypotheses hold.
    pub fn exit_code(&self) -> i32 {
        if self.failures().next().is_some() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    fn set_reduction<F: Field>(&mut self, red: &ReductionData<F>) {
        self.r = Some(red.r);
        self.itoh = Some(red.itoh);
        self.vv = Some(red.vv.clone());
        self.cm = Some(red.cm);
        self.details.reduction = Some(red.j().generators().iter().map(|g| g.to_string()).collect());
        self.details.attempts = Some(red.attempts);
        self.details.gaps = Some(red.gaps.clone());
    }

    fn set_hilbert(&mut self, h: &HilbertData) {
        self.lengths = Some(h.lengths.clone());
        self.e = Some(h.e.clone());
        self.numerator = Some(h.numerator.clone());
        self.details.fit_window = Some(h.fit_window);
        self.details.verify_window = Some(h.verify_window);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {}[{}], seed {}", self.command, self.field, self.ring.join(", "), self.seed)?;
        if let Some(l) = &self.lengths {
            writeln!(f, "lengths   {l:?}")?;
        }
        if let (Some(e), Some(h)) = (&self.e, &self.numerator) {
            writeln!(f, "e         {e:?}")?;
            writeln!(f, "numerator {h:?}")?;
        }
        if let Some(r) = self.r {
            writeln!(
                f,
                "r = {r}, J ∩ I_2 = J I_1: {}, Cohen–Macaulay: {}",
                self.itoh.unwrap_or(false),
                self.cm.unwrap_or(false)
            )?;
        }
        if let Some(case) = &self.case {
            write!(f, "case {case}")?;
            if let Some(m) = self.m {
                write!(f, ", m = {m}")?;
            }
            if let Some(d) = &self.details.depth {
                write!(f, ", depth {d}")?;
            }
            writeln!(f)?;
        }
        if let Some(c) = &self.details.closure {
            writeln!(f, "normal power {}: ({})", c.n, c.generators.join(", "))?;
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        writeln!(
            f,
            "checks: {} passed, {} skipped, {} failed",
            count(Status::Pass),
            count(Status::Skipped),
            count(Status::Fail)
        )?;
        for c in self.failures() {
            writeln!(f, "  {c}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

/// Run a job. Errors carry their exit status in [`Error::exit_code`];
/// a report with failed checks exits 1.
pub fn run(job: &JobSpec) -> Result<Report> {
    job.validate()?;
    if job.task.command == Command::Selftest {
        return selftest(job);
    }
    match job.field {
        FieldSpec::Prime(p) => run_in(job, PrimeField::new(p)?),
        FieldSpec::Rationals => run_in(job, Rationals),
    }
}

fn build_ideal<F: Field>(ring: &Arc<Ring<F>>, job: &JobSpec, name: &str) -> Result<Ideal<F>> {
    let spec = job.ideal(name).expect("validated");
    let gens = spec.generators.iter().map(|g| Polynomial::parse(ring, g)).collect::<Result<Vec<_>>>()?;
    let mut ideal = Ideal::new(ring, gens)?;
    if let Some(k) = spec.maximal_power {
        ideal = if spec.generators.is_empty() {
            Ideal::maximal_power(ring, k)
        } else {
            ideal.sum(&Ideal::maximal_power(ring, k))?
        };
    }
    Ok(ideal)
}

fn run_in<F: Field>(job: &JobSpec, field: F) -> Result<Report> {
    let ring = Ring::new(&job.variables, field)?;
    let spec = job.filtration.as_ref().expect("validated");
    let t = &job.task;
    let base = match &spec.base {
        Some(b) => build_ideal(&ring, job, b)?,
        None => build_ideal(&ring, job, &spec.entries[0])?,
    };
    let mut report = Report::empty(job);

    if t.command == Command::Closure {
        let mono = MonomialIdeal::from_ideal(&base)?;
        let closure = normal_power(&mono, t.n)?;
        report.checks.push(Check::equal("closure_idempotent", &closure, &integral_closure(&closure)));
        let power = mono.power(t.n);
        report.checks.push(Check::new(
            "closure_contains_power",
            format!("I^{} inside", t.n),
            "all generators",
            power.generators().iter().all(|g| closure.contains(g)),
        ));
        let generators = closure
            .generators()
            .iter()
            .map(|e| Ok(Polynomial::monomial(&ring, Monomial::new(e)?).to_string()))
            .collect::<Result<Vec<_>>>()?;
        report.details.closure = Some(ClosureOutput {
            n: t.n,
            exponents: closure.generators().to_vec(),
            generators,
            colength: closure.colength()?,
        });
        return Ok(report);
    }

    let filtration = match spec.kind {
        KindSpec::Adic => Filtration::adic(&base),
        KindSpec::DeclaredNormal => Filtration::declared_normal(&base),
        KindSpec::Normal => Filtration::normal_monomial(&base)?,
        KindSpec::Table => {
            let entries = spec.entries.iter().map(|n| build_ideal(&ring, job, n)).collect::<Result<Vec<_>>>()?;
            Filtration::table(entries)?
        }
    };
    if matches!(filtration.kind(), FiltrationKind::NormalMonomial | FiltrationKind::Table) {
        let top = filtration.table_len().unwrap_or(t.max_n + 1).min(t.max_n + 1);
        let adm = filtration.check_admissible(top.max(2))?;
        if let Some(v) = adm.violation {
            return Err(Error::Hypothesis(format!("the filtration is not admissible: {v}")));
        }
    }
    let reduction = t.reduction.as_ref().map(|n| build_ideal(&ring, job, n)).transpose()?;
    let opts = Options { seed: t.seed, max_n: t.max_n, levels: t.levels, reduction };

    report.normality_assumed = filtration.normality_assumed();
    report.details.filtration = Some(filtration.kind().name().to_string());
    let (red, n_max, warnings) = prepare(&filtration, &opts)?;
    report.warnings = warnings;
    report.set_reduction(&red);
    if t.command == Command::Reduction {
        return Ok(report);
    }
    report.details.n_max = Some(n_max);
    let hilbert = HilbertData::new(hilbert_function(&filtration, n_max)?, ring.nvars(), red.r)?;
    report.set_hilbert(&hilbert);
    report.details.colength = Some(hilbert.lengths[0]);
    if t.command == Command::Hilbert {
        return Ok(report);
    }
    let sally = sally_lengths(&filtration, &red, &hilbert, t.levels, n_max)?;
    report.checks = identities(&filtration, &red, &hilbert, &sally)?;
    report.details.l2 = Some(sally.l2);
    report.details.delta = Some(sally.delta);
    if t.command == Command::Classify {
        let c = classify(&filtration, &red, &hilbert, &sally)?;
        report.case = Some(c.case.to_string());
        report.m = c.m;
        report.details.depth = Some(c.depth.to_string());
        report.checks.extend(c.checks);
    }
    report.details.sally = Some(sally);
    Ok(report)
}

/// Built-in instances whose values are known independently of the
/// pipeline: lattice counts for the lengths, closed forms for the rest.
fn selftest(job: &JobSpec) -> Result<Report> {
    let mut report = Report::empty(job);
    let field = PrimeField::default();
    let plane = Ring::new(&["x", "y"], field)?;

    let mut section = |name: &str, checks: Vec<Check>| {
        report.checks.extend(checks.into_iter().map(|mut c| {
            c.name = format!("{name}/{}", c.name);
            c
        }));
    };

    // m in two variables: ℓ(R/m^{n+1}) = C(n+2, 2)
    let f = Filtration::adic(&Ideal::maximal(&plane));
    let (h, mut checks) = analyzed(&f, None)?;
    checks.push(Check::equal(
        "lengths",
        (0..h.lengths.len() as i64).map(|n| binom(n + 2, 2) as u64).collect(),
        h.lengths.clone(),
    ));
    checks.push(Check::equal("e", vec![1, 0, 0], h.e.clone()));
    section("maximal_ideal", checks);

    // normal filtration of (x^3, y^3) is m^{3n}, reduced by the cubes themselves
    let cubes = Ideal::parse(&plane, &["x^3", "y^3"])?;
    let f = Filtration::normal_monomial(&cubes)?;
    let (h, mut checks) = analyzed(&f, Some(&cubes))?;
    checks.push(Check::equal("lengths", lattice_lengths(&f, h.lengths.len())?, h.lengths.clone()));
    checks.push(Check::equal("e", vec![9, 3, 0], h.e.clone()));
    section("pure_cubes", checks);

    // a complete intersection: ℓ(R/I^{n+1}) = 6 C(n+2, 2)
    let ci = Ideal::parse(&plane, &["x^2", "y^3"])?;
    let f = Filtration::adic(&ci);
    let (h, mut checks) = analyzed(&f, None)?;
    checks.push(Check::equal(
        "lengths",
        (0..h.lengths.len() as i64).map(|n| 6 * binom(n + 2, 2) as u64).collect(),
        h.lengths.clone(),
    ));
    checks.push(Check::equal("e", vec![6, 0, 0], h.e.clone()));
    section("complete_intersection", checks);

    for (name, gens) in [("three_generators", ["x^4", "x^3*y", "y^3"]), ("corner", ["x^3", "x*y", "y^3"])] {
        let i = Ideal::parse(&plane, &gens)?;
        for f in [Filtration::adic(&i), Filtration::normal_monomial(&i)?] {
            let (h, mut checks) = analyzed(&f, None)?;
            checks.push(Check::equal("lengths", lattice_lengths(&f, h.lengths.len())?, h.lengths.clone()));
            section(&format!("{name}_{}", f.kind().name()), checks);
        }
    }
    Ok(report)
}

/// `ℓ(R/I_{n+1})` by counting lattice points outside the monomial ideal.
fn lattice_lengths<F: Field>(f: &Filtration<F>, count: usize) -> Result<Vec<u64>> {
    (1..=count).map(|n| MonomialIdeal::from_ideal(&f.ideal(n)?)?.colength()).collect()
}

fn analyzed<F: Field>(f: &Filtration<F>, j: Option<&Ideal<F>>) -> Result<(HilbertData, Vec<Check>)> {
    let d = f.ring().nvars();
    let opts = Options { reduction: j.cloned(), max_n: d + 5, ..Options::default() };
    let (red, n_max, _) = prepare(f, &opts)?;
    let h = HilbertData::new(hilbert_function(f, n_max)?, d, red.r)?;
    let s = sally_lengths(f, &red, &h, 2, n_max)?;
    let mut checks = identities(f, &red, &h, &s)?;
    checks.extend(classify(f, &red, &h, &s)?.checks);
    Ok((h, checks))
}
