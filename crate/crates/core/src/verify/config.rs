use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupModel;

use super::report::Inequality;

/// Environment variable overriding the enumeration cap.
pub const CAP_ENV: &str = "HYPNORM_CAP";

/// Where the hyperbolicity constant fed to the bounds comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaSource {
    /// `δ = 0`, proven for free groups only.
    Proven,
    /// Ball estimate at the given radius; a lower bound, flagged unverified.
    Estimate(usize),
    /// User-supplied value, flagged unverified.
    Override(u32),
}

impl FromStr for DeltaSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Usage(format!("bad delta source `{s}` (expected proven, estimate:R or override:N)"));
        if s == "proven" {
            return Ok(Self::Proven);
        }
        match s.split_once(':') {
            Some(("estimate", r)) => Ok(Self::Estimate(r.parse().map_err(|_| bad())?)),
            Some(("override", n)) => Ok(Self::Override(n.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for DeltaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Proven => f.write_str("proven"),
            Self::Estimate(r) => write!(f, "estimate:{r}"),
            Self::Override(n) => write!(f, "override:{n}"),
        }
    }
}

/// A resolved δ with its provenance flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResolvedDelta {
    pub value: u32,
    pub unverified: bool,
}

impl DeltaSource {
    pub fn resolve(self, group: &GroupModel) -> Result<ResolvedDelta> {
        match self {
            Self::Proven if group.is_free() => Ok(ResolvedDelta {
                value: 0,
                unverified: false,
            }),
            Self::Proven => Err(Error::Usage(format!(
                "no proven delta is built in for {group}; use estimate:R or override:N"
            ))),
            Self::Estimate(r) => Ok(ResolvedDelta {
                value: group.estimate_delta(r)?.delta,
                unverified: true,
            }),
            Self::Override(n) => Ok(ResolvedDelta {
                value: n,
                unverified: true,
            }),
        }
    }
}

/// Parses `3`, `1..3` or `1..=3` (both inclusive) or `1-3`.
pub fn parse_k_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Usage(format!("bad k range `{s}`"));
    let s = s.trim();
    let split = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'));
    let (lo, hi) = match split {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let k: usize = s.parse().map_err(|_| bad())?;
            (k, k)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

/// Every setting of a verification campaign, each optional so that flags,
/// a config file and defaults can be layered.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialVerifyConfig {
    pub ineq: Option<Vec<String>>,
    pub group: Option<String>,
    pub k: Option<String>,
    pub d: Option<usize>,
    pub density: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub radius: Option<usize>,
    pub delta: Option<String>,
    pub tol: Option<f64>,
    pub m_max: Option<usize>,
    pub rhs_scale: Option<f64>,
    pub d_exponent: Option<u32>,
}

impl PartialVerifyConfig {
    /// Reads a TOML or JSON file, chosen by extension (JSON is also tried
    /// when the extension is unknown).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        let is_toml = path.extension().is_some_and(|e| e == "toml");
        if is_toml {
            toml::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
        } else {
            serde_json::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
        }
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: Self) -> Self {
        Self {
            ineq: self.ineq.or(lower.ineq),
            group: self.group.or(lower.group),
            k: self.k.or(lower.k),
            d: self.d.or(lower.d),
            density: self.density.or(lower.density),
            trials: self.trials.or(lower.trials),
            seed: self.seed.or(lower.seed),
            radius: self.radius.or(lower.radius),
            delta: self.delta.or(lower.delta),
            tol: self.tol.or(lower.tol),
            m_max: self.m_max.or(lower.m_max),
            rhs_scale: self.rhs_scale.or(lower.rhs_scale),
            d_exponent: self.d_exponent.or(lower.d_exponent),
        }
    }

    pub fn resolve(self) -> Result<VerifyConfig> {
        let group: GroupModel = self
            .group
            .as_deref()
            .ok_or_else(|| Error::Usage("--group is required".into()))?
            .parse()
            .map_err(|e: Error| Error::Usage(e.to_string()))?;
        let group = match std::env::var(CAP_ENV) {
            Ok(v) => {
                let cap = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Usage(format!("{CAP_ENV}={v} is not an integer")))?;
                group.with_cap(cap)
            }
            Err(_) => group,
        };
        let inequalities = self
            .ineq
            .unwrap_or_else(|| vec!["haagerup".into()])
            .iter()
            .flat_map(|s| s.split(','))
            .map(str::parse)
            .collect::<Result<Vec<Inequality>>>()?;
        let ks = parse_k_range(self.k.as_deref().unwrap_or("1"))?;
        let delta = self.delta.as_deref().map(str::parse).transpose()?;
        let cfg = VerifyConfig {
            inequalities,
            group,
            ks,
            d: self.d.unwrap_or(1),
            density: self.density.unwrap_or(1.0),
            trials: self.trials.unwrap_or(10),
            seed: self.seed.unwrap_or(0),
            radius: self.radius,
            delta,
            tol: self.tol.unwrap_or(1e-6),
            m_max: self.m_max,
            rhs_scale: self.rhs_scale.unwrap_or(1.0),
            d_exponent: self.d_exponent.unwrap_or(1),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub inequalities: Vec<Inequality>,
    pub group: GroupModel,
    pub ks: Vec<usize>,
    pub d: usize,
    pub density: f64,
    pub trials: usize,
    pub seed: u64,
    /// Truncation radius; `k + 4` when unset.
    pub radius: Option<usize>,
    pub delta: Option<DeltaSource>,
    pub tol: f64,
    /// Largest sphere radius for the exact block suite; `k + 3` when unset.
    pub m_max: Option<usize>,
    /// Multiplies every right-hand side; values below 1 force violations.
    pub rhs_scale: f64,
    pub d_exponent: u32,
}

impl VerifyConfig {
    pub fn radius_for(&self, k: usize) -> usize {
        self.radius.unwrap_or(k + 4)
    }

    pub fn m_max_for(&self, k: usize) -> usize {
        self.m_max.unwrap_or(k + 3)
    }

    fn validate(&self) -> Result<()> {
        let usage = |m: String| Err(Error::Usage(m));
        if self.d == 0 {
            return usage("--d must be positive".into());
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return usage(format!("--density {} not in (0, 1]", self.density));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return usage(format!("--tol {} not in (0, 1)", self.tol));
        }
        if self.rhs_scale.is_nan() || self.rhs_scale <= 0.0 {
            return usage(format!("--rhs-scale {} must be positive", self.rhs_scale));
        }
        for ineq in &self.inequalities {
            match ineq {
                Inequality::Haagerup | Inequality::Rd if self.d != 1 => {
                    return usage(format!("{ineq} is a scalar inequality; use --d 1"));
                }
                Inequality::Haagerup | Inequality::Rd | Inequality::Buchholz if !self.group.is_free() => {
                    return usage(format!("{ineq} is only asserted for free groups"));
                }
                Inequality::Counterexample if self.group.to_string() != "free:2" => {
                    return usage("the counterexample lives in free:2".into());
                }
                _ => {}
            }
            if ineq.uses_delta() && self.delta.is_none() && !self.group.is_free() {
                return usage(format!(
                    "{ineq} on {} needs an explicit --delta (estimate:R or override:N)",
                    self.group
                ));
            }
        }
        if self.delta == Some(DeltaSource::Proven) && !self.group.is_free() {
            return usage(format!("no proven delta is built in for {}", self.group));
        }
        Ok(())
    }
}
