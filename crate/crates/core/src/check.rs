//! Expected-versus-computed records shared by the analysis stages.

use std::fmt::{Debug, Display};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// hypotheses not met; nothing was asserted
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Display, computed: impl Display, ok: bool) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
        }
    }

    pub fn equal<T: PartialEq + Debug>(name: impl Into<String>, expected: T, computed: T) -> Self {
        let ok = expected == computed;
        Check::new(name, format!("{expected:?}"), format!("{computed:?}"), ok)
    }

    pub fn skipped(name: impl Into<String>, reason: impl Display) -> Self {
        Check { name: name.into(), expected: reason.to_string(), computed: String::new(), status: Status::Skipped }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.status {
            Status::Skipped => write!(f, "skip {}: {}", self.name, self.expected),
            Status::Pass => write!(f, "pass {}: {}", self.name, self.computed),
            Status::Fail => write!(f, "FAIL {}: expected {}, computed {}", self.name, self.expected, self.computed),
        }
    }
}
