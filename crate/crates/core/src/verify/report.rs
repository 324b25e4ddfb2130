use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack allowed on every asserted inequality.
pub const PASS_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inequality {
    Haagerup,
    Buchholz,
    Main,
    LemmaBlock,
    Remark3,
    Rd,
    Counterexample,
}

impl Inequality {
    pub const ALL: [Inequality; 7] = [
        Self::Haagerup,
        Self::Buchholz,
        Self::Main,
        Self::LemmaBlock,
        Self::Remark3,
        Self::Rd,
        Self::Counterexample,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::Haagerup => "haagerup",
            Self::Buchholz => "buchholz",
            Self::Main => "main",
            Self::LemmaBlock => "lemma-block",
            Self::Remark3 => "remark3",
            Self::Rd => "rd",
            Self::Counterexample => "counterexample",
        }
    }

    /// Whether a failure of this inequality fails the run. The unproved
    /// divided-coefficient bound and the counterexample (which is expected to
    /// exceed its right-hand side) are only recorded.
    pub fn is_assertive(self) -> bool {
        !matches!(self, Self::Remark3 | Self::Counterexample)
    }

    /// Whether the right-hand side involves a hyperbolicity constant.
    pub fn uses_delta(self) -> bool {
        matches!(self, Self::Main | Self::LemmaBlock | Self::Remark3)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|i| i.id() == s.trim())
            .ok_or_else(|| Error::Usage(format!("unknown inequality `{s}`")))
    }
}

/// One inequality trial. Serialised as one JSON object per line; the field
/// order below is the wire order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub inequality: Inequality,
    /// Which right-hand side was used when an inequality has more than one
    /// (`row-column` for the `k = 1` special case of `buchholz`).
    pub variant: Option<String>,
    pub group: String,
    pub k: usize,
    pub d: usize,
    pub radius: Option<usize>,
    pub delta: Option<u32>,
    pub delta_unverified: bool,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub seed: u64,
    pub trial: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub pass: bool,
    pub timing_ms: f64,
    pub version: String,
}

impl VerificationReport {
    pub fn passes(lhs: f64, rhs: f64) -> bool {
        lhs <= rhs * (1.0 + PASS_SLACK)
    }

    /// A failing report of an assertive inequality.
    pub fn is_violation(&self) -> bool {
        self.inequality.is_assertive() && !self.pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

pub fn write_jsonl(out: &mut dyn Write, reports: &[VerificationReport]) -> io::Result<()> {
    for r in reports {
        writeln!(out, "{}", r.to_json_line())?;
    }
    Ok(())
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn write_table(out: &mut dyn Write, reports: &[VerificationReport]) -> io::Result<()> {
    writeln!(
        out,
        "{:<14} {:<10} {:<9} {:>2} {:>2} {:>3} {:>5} {:>5} {:>3} {:>3} {:>14} {:>14} {:>9}  result",
        "inequality", "variant", "group", "k", "d", "R", "delta", "trial", "m", "n", "lhs", "rhs", "ratio"
    )?;
    for r in reports {
        let delta = match r.delta {
            Some(d) if r.delta_unverified => format!("{d}?"),
            other => opt(other),
        };
        let verdict = match (r.pass, r.inequality.is_assertive()) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "exceeds",
        };
        writeln!(
            out,
            "{:<14} {:<10} {:<9} {:>2} {:>2} {:>3} {:>5} {:>5} {:>3} {:>3} {:>14.8} {:>14.8} {:>9.6}  {}",
            r.inequality.id(),
            r.variant.as_deref().unwrap_or("-"),
            r.group,
            r.k,
            r.d,
            opt(r.radius),
            delta,
            r.trial,
            opt(r.m),
            opt(r.n),
            r.lhs,
            r.rhs,
            r.ratio,
            verdict
        )?;
    }
    Ok(())
}
