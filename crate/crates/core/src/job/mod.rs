//! Job files: a flat, sectioned text format.
//!
//! ```text
//! # comments run to the end of the line
//! [ring]
//! variables = x, y, z
//! field = fp:32003          # or q
//!
//! [ideal I]
//! generators = x^4, x*y^3 + x*z^3, y^4 + y*z^3, y^3*z + z^4
//! maximal_power = 5         # adds m^5
//!
//! [filtration]
//! kind = declared_normal    # adic | normal | declared_normal | table
//! base = I                  # tables list `entries = I1, I2, ...` instead
//!
//! [task]
//! command = classify        # hilbert | reduction | sally | classify | closure | selftest
//! max_n = 8
//! seed = 1
//! levels = 2
//! reduction = J             # optional: a named ideal used as the reduction
//! n = 2                     # closure only: which normal power
//! ```
//!
//! `generators` may be repeated; the lists are concatenated. Polynomials
//! are written expanded, since the grammar has no parentheses.

mod run;

pub use run::{run, ClosureOutput, Details, Report};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(32003)
    }
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("fp:") {
            Some(p) => p.trim().parse().map(FieldSpec::Prime).map_err(|_| format!("bad prime `{p}`")),
            None => Err(format!("field must be `fp:<p>` or `q`, got `{s}`")),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
            FieldSpec::Rationals => f.write_str("q"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Hilbert,
    Reduction,
    Sally,
    Classify,
    Closure,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Reduction => "reduction",
            Command::Sally => "sally",
            Command::Classify => "classify",
            Command::Closure => "closure",
            Command::Selftest => "selftest",
        }
    }

    /// Whether the command runs the reduction and window machinery.
    fn analytic(self) -> bool {
        matches!(self, Command::Hilbert | Command::Reduction | Command::Sally | Command::Classify)
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "hilbert" => Command::Hilbert,
            "reduction" => Command::Reduction,
            "sally" => Command::Sally,
            "classify" => Command::Classify,
            "closure" => Command::Closure,
            "selftest" => Command::Selftest,
            _ => return Err(format!("unknown command `{s}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindSpec {
    Adic,
    Normal,
    DeclaredNormal,
    Table,
}

impl FromStr for KindSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "adic" => KindSpec::Adic,
            "normal" => KindSpec::Normal,
            "declared_normal" => KindSpec::DeclaredNormal,
            "table" => KindSpec::Table,
            _ => return Err(format!("unknown filtration kind `{s}`")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub name: String,
    pub generators: Vec<String>,
    pub maximal_power: Option<u32>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationSpec {
    pub kind: KindSpec,
    pub base: Option<String>,
    pub entries: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskSpec {
    pub command: Command,
    pub max_n: usize,
    pub seed: u64,
    pub levels: usize,
    pub reduction: Option<String>,
    pub n: u32,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub variables: Vec<String>,
    pub field: FieldSpec,
    pub ideals: Vec<IdealSpec>,
    pub filtration: Option<FiltrationSpec>,
    pub task: TaskSpec,
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn ideal(&self, name: &str) -> Option<&IdealSpec> {
        self.ideals.iter().find(|i| i.name == name)
    }

    /// Names resolve, the filtration is complete and `max_n ≥ d + 5`.
    pub fn validate(&self) -> Result<()> {
        let t = &self.task;
        if t.command == Command::Selftest {
            return Ok(());
        }
        let err = |line: usize, msg: String| Err(Error::Job { line, msg });
        if self.variables.is_empty() {
            return err(0, "missing [ring] variables".into());
        }
        let Some(f) = &self.filtration else {
            return err(0, "missing [filtration] section".into());
        };
        let mut names: Vec<&String> = f.base.iter().chain(&f.entries).collect();
        names.extend(&t.reduction);
        if let Some(missing) = names.into_iter().find(|n| self.ideal(n).is_none()) {
            return err(f.line, format!("no ideal named `{missing}`"));
        }
        match (f.kind, &f.base, f.entries.is_empty()) {
            (KindSpec::Table, _, true) => return err(f.line, "a table filtration needs `entries`".into()),
            (KindSpec::Table, _, false) => {}
            (_, None, _) => return err(f.line, "the filtration needs a `base` ideal".into()),
            _ => {}
        }
        let d = self.variables.len();
        if t.command.analytic() && t.max_n < d + 5 {
            return err(t.line, format!("max_n = {} is below d + 5 = {}", t.max_n, d + 5));
        }
        if t.levels < 2 {
            return err(t.line, "levels must be at least 2".into());
        }
        Ok(())
    }
}

#[derive(PartialEq)]
enum Section {
    None,
    Ring,
    Ideal(usize),
    Filtration,
    Task,
}

fn list(value: &str) -> Vec<String> {
    value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse(text: &str) -> Result<JobSpec> {
    let mut variables = Vec::new();
    let mut field = FieldSpec::default();
    let mut ideals: Vec<IdealSpec> = Vec::new();
    let mut filtration: Option<(Option<KindSpec>, Option<String>, Vec<String>, usize)> = None;
    let mut task: Option<(Option<Command>, TaskSpec)> = None;
    let mut seen = Vec::new();
    let mut section = Section::None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| Error::Job { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(header) = content.strip_prefix('[') {
            let header = header.strip_suffix(']').ok_or_else(|| err("unterminated section header".into()))?.trim();
            let mut words = header.split_whitespace();
            let kind = words.next().unwrap_or("");
            let name = words.next();
            if words.next().is_some() {
                return Err(err(format!("bad section header `[{header}]`")));
            }
            section = match (kind, name) {
                ("ideal", Some(n)) => {
                    if ideals.iter().any(|i| i.name == n) {
                        return Err(err(format!("ideal `{n}` defined twice")));
                    }
                    ideals.push(IdealSpec { name: n.to_string(), generators: Vec::new(), maximal_power: None, line });
                    Section::Ideal(ideals.len() - 1)
                }
                ("ring", None) | ("filtration", None) | ("task", None) => {
                    if seen.contains(&kind) {
                        return Err(err(format!("section [{kind}] appears twice")));
                    }
                    seen.push(kind);
                    match kind {
                        "ring" => Section::Ring,
                        "filtration" => {
                            filtration = Some((None, None, Vec::new(), line));
                            Section::Filtration
                        }
                        _ => {
                            let spec = TaskSpec {
                                command: Command::Classify,
                                max_n: 8,
                                seed: 1,
                                levels: 2,
                                reduction: None,
                                n: 1,
                                line,
                            };
                            task = Some((None, spec));
                            Section::Task
                        }
                    }
                }
                _ => return Err(err(format!("unknown section `[{header}]`"))),
            };
            continue;
        }
        let (key, value) =
            content.split_once('=').ok_or_else(|| err(format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let number =
            |v: &str| v.parse::<u64>().map_err(|_| err(format!("`{key}` needs a nonnegative integer, got `{v}`")));
        match &section {
            Section::None => return Err(err("entry outside any section".into())),
            Section::Ring => match key {
                "variables" => variables = list(value),
                "field" => field = value.parse().map_err(err)?,
                _ => return Err(err(format!("unknown ring key `{key}`"))),
            },
            Section::Ideal(i) => match key {
                "generators" => ideals[*i].generators.extend(list(value)),
                "maximal_power" => ideals[*i].maximal_power = Some(number(value)? as u32),
                _ => return Err(err(format!("unknown ideal key `{key}`"))),
            },
            Section::Filtration => {
                let f = filtration.as_mut().expect("section opened");
                match key {
                    "kind" => f.0 = Some(value.parse().map_err(err)?),
                    "base" => f.1 = Some(value.to_string()),
                    "entries" => f.2.extend(list(value)),
                    _ => return Err(err(format!("unknown filtration key `{key}`"))),
                }
            }
            Section::Task => {
                let t = task.as_mut().expect("section opened");
                match key {
                    "command" => t.0 = Some(value.parse().map_err(err)?),
                    "max_n" => t.1.max_n = number(value)? as usize,
                    "seed" => t.1.seed = number(value)?,
                    "levels" => t.1.levels = number(value)? as usize,
                    "reduction" => t.1.reduction = Some(value.to_string()),
                    "n" => t.1.n = number(value)? as u32,
                    _ => return Err(err(format!("unknown task key `{key}`"))),
                }
            }
        }
    }

    let Some((command, mut task)) = task else {
        return Err(Error::Job { line: 0, msg: "missing [task] section".into() });
    };
    task.command = command.ok_or(Error::Job { line: task.line, msg: "missing `command`".into() })?;
    let filtration = match filtration {
        None => None,
        Some((kind, base, entries, line)) => {
            let kind = kind.ok_or(Error::Job { line, msg: "missing filtration `kind`".into() })?;
            Some(FiltrationSpec { kind, base, entries, line })
        }
    };
    if let Some(i) = ideals.iter().find(|i| i.generators.is_empty() && i.maximal_power.is_none()) {
        return Err(Error::Job { line: i.line, msg: format!("ideal `{}` has no generators", i.name) });
    }
    Ok(JobSpec { variables, field, ideals, filtration, task })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "
[ring]
variables = x, y
field = q

[ideal I]
generators = x^3, y^3   # pure cubes

[filtration]
kind = normal
base = I

[task]
command = hilbert
max_n = 9
";

    #[test]
    fn parses_a_complete_job() {
        let job = JobSpec::parse(EXAMPLE).unwrap();
        assert_eq!(job.variables, vec!["x", "y"]);
        assert_eq!(job.field, FieldSpec::Rationals);
        assert_eq!(job.ideal("I").unwrap().generators, vec!["x^3", "y^3"]);
        assert_eq!(job.filtration.as_ref().unwrap().kind, KindSpec::Normal);
        assert_eq!((job.task.command, job.task.max_n, job.task.seed), (Command::Hilbert, 9, 1));
        job.validate().unwrap();
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = EXAMPLE.replace("kind = normal", "kind = weird");
        assert!(matches!(JobSpec::parse(&bad), Err(Error::Job { line: 10, .. })));
        let bad = EXAMPLE.replace("[task]", "[tusk]");
        assert!(matches!(JobSpec::parse(&bad), Err(Error::Job { line: 13, .. })));
    }

    #[test]
    fn validation_resolves_names_and_window() {
        let job = JobSpec::parse(&EXAMPLE.replace("base = I", "base = K")).unwrap();
        assert!(matches!(job.validate(), Err(Error::Job { .. })));
        let job = JobSpec::parse(&EXAMPLE.replace("max_n = 9", "max_n = 6")).unwrap();
        assert!(job.validate().unwrap_err().to_string().contains("d + 5"));
    }

    #[test]
    fn field_specs() {
        assert_eq!("fp:7".parse::<FieldSpec>(), Ok(FieldSpec::Prime(7)));
        assert_eq!("q".parse::<FieldSpec>(), Ok(FieldSpec::Rationals));
        assert!("gf:7".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(32003).to_string(), "fp:32003");
    }
}
