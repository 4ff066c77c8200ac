//! Check records and their line-oriented rendering.
//!
//! ```text
//! CHECK <suite>/<name> PASS|FAIL[ <witness tokens>]
//! INFO <suite>/<name> <text>
//! SUMMARY <pass> <fail>
//! ```

use std::fmt;

use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Line {
    Check { suite: String, name: String, failure: Option<String> },
    Info { suite: String, name: String, text: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<Line>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check; `failure` holds the witness when it failed.
    pub fn check(&mut self, suite: &str, name: &str, failure: Option<String>) {
        self.lines.push(Line::Check { suite: suite.into(), name: name.into(), failure });
    }

    pub fn pass(&mut self, suite: &str, name: &str) {
        self.check(suite, name, None);
    }

    pub fn fail(&mut self, suite: &str, name: &str, witness: impl Into<String>) {
        self.check(suite, name, Some(witness.into()));
    }

    pub fn info(&mut self, suite: &str, name: &str, text: impl Into<String>) {
        self.lines.push(Line::Info { suite: suite.into(), name: name.into(), text: text.into() });
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn passed(&self) -> usize {
        self.checks().filter(|(_, _, f)| f.is_none()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks().filter(|(_, _, f)| f.is_some()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// Iterates `(suite, name, failure)` over the check lines.
    pub fn checks(&self) -> impl Iterator<Item = (&str, &str, Option<&str>)> {
        self.lines.iter().filter_map(|l| match l {
            Line::Check { suite, name, failure } => Some((suite.as_str(), name.as_str(), failure.as_deref())),
            Line::Info { .. } => None,
        })
    }

    /// Looks up a check by `suite/name`; `Some(None)` means it passed.
    pub fn get(&self, suite: &str, name: &str) -> Option<Option<&str>> {
        self.checks().find(|(s, n, _)| *s == suite && *n == name).map(|(_, _, f)| f)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks().filter_map(|(s, n, f)| f.map(|w| format!("{s}/{n} {w}"))).collect()
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            match line {
                Line::Check { suite, name, failure: None } => writeln!(f, "CHECK {suite}/{name} PASS")?,
                Line::Check { suite, name, failure: Some(w) } if w.is_empty() => {
                    writeln!(f, "CHECK {suite}/{name} FAIL")?
                }
                Line::Check { suite, name, failure: Some(w) } => writeln!(f, "CHECK {suite}/{name} FAIL {w}")?,
                Line::Info { suite, name, text } => writeln!(f, "INFO {suite}/{name} {text}")?,
            }
        }
        writeln!(f, "SUMMARY {} {}", self.passed(), self.failed())
    }
}

/// Scans `0..n` in parallel and returns the witness from the lowest index
/// that fails, so results do not depend on scheduling.
pub fn first_failure<F>(n: usize, f: F) -> Option<String>
where
    F: Fn(usize) -> Option<String> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(f)
}
