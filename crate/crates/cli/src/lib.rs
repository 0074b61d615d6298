//! Driver for certification scans, symbolic certificates, coefficient tables
//! and identity checks, with JSON, CSV and markdown reports.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{execute, Outcome};
pub use config::{Branch, Command, Format, RunConfig, Span};
