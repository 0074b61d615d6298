use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Result};
use clap::ValueEnum;
use hvcert_core::certify::MuBranch;
use serde::{Deserialize, Serialize};

/// Largest order of vanishing accepted on the command line.
pub const MAX_OMEGA: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Certify,
    Scan,
    Coeffs,
    Integrals,
    SphereCheck,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Certify => "certify",
            Command::Scan => "scan",
            Command::Coeffs => "coeffs",
            Command::Integrals => "integrals",
            Command::SphereCheck => "sphere-check",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "md",
        }
    }
}

/// Degree of the leading curvature term relative to `omega`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `deg Rbar = omega`: the interval intersection decides.
    #[default]
    Equal,
    /// `deg Rbar >= omega + 1`: nothing to certify.
    Higher,
}

impl From<Branch> for MuBranch {
    fn from(b: Branch) -> Self {
        match b {
            Branch::Equal => MuBranch::DegRbarEqualsOmega,
            Branch::Higher => MuBranch::DegRbarAtLeastOmegaPlusOne,
        }
    }
}

/// Inclusive range written `a..b`, `a..=b` or `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span<T> {
    pub start: T,
    pub end: T,
}

impl<T: Copy> Span<T> {
    pub fn single(v: T) -> Self {
        Self { start: v, end: v }
    }
}

impl<T: FromStr + PartialOrd + Copy> FromStr for Span<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("not a nonnegative integer: {x:?}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self { start, end })
    }
}

impl<T: fmt::Display + PartialEq> fmt::Display for Span<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub omega: Option<Span<u32>>,
    pub n: Option<Span<u64>>,
    pub symbolic: bool,
    pub mu_branch: Branch,
    /// Relative tolerance of the annulus curvature check.
    pub tolerance: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: u64,
    pub require_nonempty: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            omega: None,
            n: None,
            symbolic: false,
            mu_branch: Branch::Equal,
            tolerance: 0.05,
            format: Format::Json,
            output: None,
            jobs: None,
            seed: 0,
            require_nonempty: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(w) = self.omega {
            if w.start < 2 {
                bail!("omega {} < 2 is covered by prior work; use omega >= 2", w.start);
            }
            if w.end > MAX_OMEGA {
                bail!("omega {} exceeds the supported maximum {MAX_OMEGA}", w.end);
            }
        }
        if matches!(self.n, Some(n) if n.start < 3) {
            bail!("dimension n must be at least 3");
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            bail!("tolerance must be positive, got {}", self.tolerance);
        }
        if self.jobs == Some(0) {
            bail!("--jobs must be at least 1");
        }
        let needs_omega = matches!(self.command, Command::Certify | Command::Scan | Command::Coeffs);
        if needs_omega && self.omega.is_none() {
            bail!("{} needs --omega", self.command.name());
        }
        match self.command {
            Command::Scan if self.n.is_none() => bail!("scan needs --n"),
            Command::Certify if !self.symbolic => {
                let (Some(w), Some(n)) = (self.omega, self.n) else {
                    bail!("certify needs --n, or --symbolic");
                };
                let min = 2 * w.end as u64 + 6;
                if n.start < min {
                    bail!("certify needs n >= 2 omega + 6 = {min} for omega = {}; got n = {}", w.end, n.start);
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!("3..15".parse::<Span<u32>>().unwrap(), Span { start: 3, end: 15 });
        assert_eq!("3..=15".parse::<Span<u32>>().unwrap(), Span { start: 3, end: 15 });
        assert_eq!("16".parse::<Span<u32>>().unwrap(), Span::single(16));
        assert!("9..3".parse::<Span<u32>>().is_err());
        assert!("a..3".parse::<Span<u32>>().is_err());
        assert_eq!(Span { start: 3u32, end: 15 }.to_string(), "3..15");
    }

    #[test]
    fn config_round_trips() {
        let mut c = RunConfig::new(Command::Scan);
        c.omega = Some(Span::single(16));
        c.n = Some(Span { start: 38, end: 2000 });
        c.jobs = Some(4);
        c.tolerance = 0.125;
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&s).unwrap(), c);
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::new(Command::Certify);
        c.omega = Some(Span::single(5));
        assert!(c.validate().is_err());
        c.symbolic = true;
        assert!(c.validate().is_ok());
        c.symbolic = false;
        c.n = Some(Span { start: 10, end: 20 });
        assert!(c.validate().is_err());
        c.n = Some(Span { start: 16, end: 20 });
        assert!(c.validate().is_ok());
        c.omega = Some(Span::single(1));
        assert!(c.validate().is_err());
    }
}
