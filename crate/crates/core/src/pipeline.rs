//! Filtration → reduction → Hilbert data → Sally tables → classification.

use crate::check::Check;
use crate::classify::{classify, ClassificationReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::filtration::Filtration;
use crate::hilbert::{hilbert_function, HilbertData};
use crate::ideal::Ideal;
use crate::reduction::{find_minimal_reduction, ReductionData};
use crate::sally::{identities, sally_lengths, SallyTable};

#[derive(Clone, Debug)]
pub struct Options<F: Field> {
    pub seed: u64,
    /// requested window `N`; widened to `r + d + 3` when needed
    pub max_n: usize,
    /// Sally levels `ℓ = 1..=levels`
    pub levels: usize,
    pub reduction: Option<Ideal<F>>,
}

impl<F: Field> Default for Options<F> {
    fn default() -> Self {
        Options { seed: 1, max_n: 8, levels: 2, reduction: None }
    }
}

pub struct Analysis<F: Field> {
    pub n_max: usize,
    pub reduction: ReductionData<F>,
    pub hilbert: HilbertData,
    pub sally: SallyTable,
    pub identities: Vec<Check>,
    pub report: ClassificationReport,
    pub warnings: Vec<String>,
}

/// How far the reduction search may look.
pub fn search_limit<F: Field>(f: &Filtration<F>, max_n: usize) -> usize {
    let d = f.ring().nvars();
    let want = max_n.max(d + 5) + d + 2;
    match f.table_len() {
        Some(len) => want.min(len.saturating_sub(1)),
        None => want,
    }
}

pub fn reduce<F: Field>(f: &Filtration<F>, opts: &Options<F>) -> Result<ReductionData<F>> {
    find_minimal_reduction(f, opts.seed, search_limit(f, opts.max_n), opts.reduction.as_ref())
}

/// The window actually used: `max(max_n, r + d + 3)`. Tables cannot be
/// extended, so a short table is an error.
pub fn window<F: Field>(f: &Filtration<F>, max_n: usize, r: usize, warnings: &mut Vec<String>) -> Result<usize> {
    let need = r + f.ring().nvars() + 3;
    if max_n >= need {
        return Ok(max_n);
    }
    if let Some(len) = f.table_len() {
        if len < need + 1 {
            return Err(Error::WindowTooSmall(format!("table has I_1..I_{len}, the analysis needs I_{}", need + 1)));
        }
    }
    warnings.push(format!("max_n {max_n} widened to {need} (r + d + 3)"));
    Ok(need)
}

/// Reduction, the window and the warnings every report carries.
pub fn prepare<F: Field>(f: &Filtration<F>, opts: &Options<F>) -> Result<(ReductionData<F>, usize, Vec<String>)> {
    let d = f.ring().nvars();
    let mut warnings = Vec::new();
    if f.normality_assumed() {
        warnings.push("normality assumed, not verified".to_string());
    }
    let reduction = reduce(f, opts)?;
    if opts.reduction.is_none() {
        warnings.push(format!("reduction certified by {} consecutive equalities (probabilistic)", d + 2));
    }
    let n_max = window(f, opts.max_n, reduction.r, &mut warnings)?;
    Ok((reduction, n_max, warnings))
}

pub fn analyze<F: Field>(f: &Filtration<F>, opts: &Options<F>) -> Result<Analysis<F>> {
    let (reduction, n_max, warnings) = prepare(f, opts)?;
    let hilbert = HilbertData::new(hilbert_function(f, n_max)?, f.ring().nvars(), reduction.r)?;
    let sally = sally_lengths(f, &reduction, &hilbert, opts.levels, n_max)?;
    let identities = identities(f, &reduction, &hilbert, &sally)?;
    let report = classify(f, &reduction, &hilbert, &sally)?;
    Ok(Analysis { n_max, reduction, hilbert, sally, identities, report, warnings })
}
