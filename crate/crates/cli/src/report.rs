use std::io::{Read, Write};

use anyhow::{anyhow, Context, Result};
use hvcert_core::algebra::{decimal_string, format_rational, parse_rational, parse_surd, QuadraticSurd, Rational};
use hvcert_core::certify::IntervalCertificate;
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};

/// Digits after the decimal point in previews.
pub const DIGITS: usize = 20;

/// An exact value with a decimal preview.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact {
    pub decimal: String,
    pub exact: String,
}

impl Exact {
    pub fn rational(r: &Rational) -> Self {
        Self {
            decimal: decimal_string(r, DIGITS),
            exact: format_rational(r),
        }
    }

    pub fn surd(s: &QuadraticSurd) -> Self {
        Self {
            decimal: s.to_decimal(DIGITS),
            exact: s.to_string(),
        }
    }

    fn cell(&self) -> String {
        format!("{}@{}", self.decimal, self.exact)
    }

    fn from_cell(s: &str) -> Result<Self> {
        let (decimal, exact) = s.split_once('@').ok_or_else(|| anyhow!("expected decimal@exact, got {s:?}"))?;
        if parse_rational(exact).is_none() && parse_surd(exact).is_none() {
            return Err(anyhow!("not an exact value: {exact:?}"));
        }
        Ok(Self {
            decimal: decimal.into(),
            exact: exact.into(),
        })
    }
}

/// One `(omega, n)` cell of a certification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellEntry {
    pub omega: u32,
    pub n: u64,
    pub nonempty: bool,
    pub x: Vec<Exact>,
    pub y: Vec<Exact>,
    pub chosen_c: Option<Exact>,
    pub status: String,
}

impl From<&IntervalCertificate> for CellEntry {
    fn from(c: &IntervalCertificate) -> Self {
        Self {
            omega: c.omega,
            n: c.n,
            nonempty: c.nonempty,
            x: c.pairs.iter().map(|p| Exact::surd(&p.x)).collect(),
            y: c.pairs.iter().map(|p| Exact::surd(&p.y)).collect(),
            chosen_c: c.chosen_c.as_ref().map(Exact::rational),
            status: c.status.as_str().into(),
        }
    }
}

/// Rows that render as CSV and markdown tables.
pub trait Tabular {
    fn header() -> Vec<&'static str>;
    fn record(&self) -> Vec<String>;
}

fn join(v: &[Exact]) -> String {
    v.iter().map(Exact::cell).collect::<Vec<_>>().join(";")
}

impl Tabular for CellEntry {
    fn header() -> Vec<&'static str> {
        vec!["omega", "n", "nonempty", "x", "y", "chosen_c", "status"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.omega.to_string(),
            self.n.to_string(),
            self.nonempty.to_string(),
            join(&self.x),
            join(&self.y),
            self.chosen_c.as_ref().map(Exact::cell).unwrap_or_default(),
            self.status.clone(),
        ]
    }
}

/// Reads cell entries back from the CSV written by [`emit`].
pub fn cells_from_csv<R: Read>(r: R) -> Result<Vec<CellEntry>> {
    let mut rd = csv::Reader::from_reader(r);
    let header: Vec<String> = rd.headers()?.iter().map(String::from).collect();
    if header != CellEntry::header() {
        return Err(anyhow!("unexpected CSV header {header:?}"));
    }
    let list = |s: &str| -> Result<Vec<Exact>> {
        if s.is_empty() {
            Ok(Vec::new())
        } else {
            s.split(';').map(Exact::from_cell).collect()
        }
    };
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        out.push(CellEntry {
            omega: rec[0].parse()?,
            n: rec[1].parse()?,
            nonempty: rec[2].parse()?,
            x: list(&rec[3])?,
            y: list(&rec[4])?,
            chosen_c: if rec[5].is_empty() { None } else { Some(Exact::from_cell(&rec[5])?) },
            status: rec[6].to_string(),
        });
    }
    Ok(out)
}

/// One verified (or refuted) identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub group: String,
    pub name: String,
    pub params: String,
    pub value: f64,
    pub reference: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub holds: bool,
    /// Identities known not to hold are listed with `false` here.
    pub expected_to_hold: bool,
}

impl CheckRow {
    pub fn new(group: &str, name: &str, params: String, value: f64, reference: f64, tolerance: f64) -> Self {
        let rel_error = if reference == 0.0 { value.abs() } else { ((value - reference) / reference).abs() };
        Self {
            group: group.into(),
            name: name.into(),
            params,
            value,
            reference,
            rel_error,
            tolerance,
            holds: rel_error <= tolerance,
            expected_to_hold: true,
        }
    }

    /// A yes/no check, recorded as value 1 or 0 against reference 1.
    pub fn flag(group: &str, name: &str, params: String, holds: bool) -> Self {
        Self::new(group, name, params, if holds { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    pub fn expecting_failure(mut self) -> Self {
        self.expected_to_hold = false;
        self
    }

    pub fn pass(&self) -> bool {
        self.holds == self.expected_to_hold
    }
}

fn float(x: f64) -> String {
    format!("{x:e}")
}

impl Tabular for CheckRow {
    fn header() -> Vec<&'static str> {
        vec!["group", "name", "params", "value", "reference", "rel_error", "tolerance", "holds", "expected_to_hold"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.name.clone(),
            self.params.clone(),
            float(self.value),
            float(self.reference),
            float(self.rel_error),
            float(self.tolerance),
            self.holds.to_string(),
            self.expected_to_hold.to_string(),
        ]
    }
}

/// Symbolic coefficients of one `(omega, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub omega: u32,
    pub k: u32,
    pub nu: String,
    pub d: String,
    pub u_over_nu: String,
    pub delta: String,
}

impl Tabular for CoeffRow {
    fn header() -> Vec<&'static str> {
        vec!["omega", "k", "nu", "d", "u_over_nu", "delta"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.omega.to_string(),
            self.k.to_string(),
            self.nu.clone(),
            self.d.clone(),
            self.u_over_nu.clone(),
            self.delta.clone(),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<E, S> {
    pub tool_version: String,
    pub config_echo: RunConfig,
    pub entries: Vec<E>,
    pub summary: S,
}

impl<E, S> Report<E, S> {
    pub fn new(config: &RunConfig, entries: Vec<E>, summary: S) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").into(),
            config_echo: config.clone(),
            entries,
            summary,
        }
    }
}

/// Renders a report. CSV carries the entries only; JSON and markdown also
/// carry the configuration and summary. `table` overrides the entry rows used
/// by CSV and markdown.
pub fn render<E: Serialize, S: Serialize, T: Tabular>(
    report: &Report<E, S>,
    table: &[T],
    format: Format,
) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(T::header())?;
            for row in table {
                w.write_record(row.record())?;
            }
            w.into_inner().map_err(|e| anyhow!("{e}"))
        }
        Format::Markdown => {
            let mut s = String::new();
            let cfg = &report.config_echo;
            s.push_str(&format!("# hvcert {} {}\n\n", cfg.command.name(), report.tool_version));
            let header = T::header();
            s.push_str(&format!("| {} |\n", header.join(" | ")));
            s.push_str(&format!("|{}\n", "---|".repeat(header.len())));
            for row in table {
                let cells: Vec<String> = row.record().iter().map(|c| c.replace('|', "\\|")).collect();
                s.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
            s.push_str("\n## Summary\n\n```json\n");
            s.push_str(&serde_json::to_string_pretty(&report.summary)?);
            s.push_str("\n```\n");
            Ok(s.into_bytes())
        }
    }
}

/// Writes to `--output`, else into `$HVCERT_OUTPUT_DIR`, else to stdout.
/// Returns the path written, if any.
pub fn emit(bytes: &[u8], config: &RunConfig) -> Result<Option<std::path::PathBuf>> {
    let path = match (&config.output, std::env::var_os("HVCERT_OUTPUT_DIR")) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => {
            Some(std::path::Path::new(&dir).join(format!("{}.{}", config.command.name(), config.format.extension())))
        }
        (None, None) => None,
    };
    match &path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("cannot write {}", p.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(path)
}
