use std::fmt;

use serde::Serialize;

/// Outcome of one verification case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub family: String,
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<Vec<usize>>,
    pub mode: String,
    pub pass: bool,
    /// Number of index-set elements or terms compared.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Report {
    pub fn new(family: &str, identity: &str, mode: &str) -> Self {
        Report {
            family: family.to_string(),
            identity: identity.to_string(),
            n: None,
            split: None,
            mode: mode.to_string(),
            pass: true,
            checked: 0,
            counterexample: None,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_split(mut self, split: &[usize]) -> Self {
        self.n = Some(split.iter().sum());
        self.split = Some(split.to_vec());
        self
    }

    /// Records a failure; only the first counterexample is kept.
    pub fn fail(&mut self, what: impl Into<String>) {
        if self.pass {
            self.counterexample = Some(what.into());
        }
        self.pass = false;
    }

    pub fn tsv_header() -> &'static str {
        "family\tidentity\tn\tsplit\tmode\tpass\tchecked"
    }

    pub fn tsv(&self) -> String {
        let split = self
            .split
            .as_ref()
            .map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .unwrap_or_else(|| "-".into());
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.family,
            self.identity,
            self.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
            split,
            self.mode,
            if self.pass { "pass" } else { "FAIL" },
            self.checked
        )
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", if self.pass { "PASS" } else { "FAIL" }, self.family, self.identity)?;
        if let Some(s) = &self.split {
            write!(f, " split={}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))?;
        } else if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        write!(f, " mode={} checked={}", self.mode, self.checked)?;
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample: {c}")?;
        }
        Ok(())
    }
}
