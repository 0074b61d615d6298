use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::{certify_with_family, CertStatus, CertifyError, IntervalCertificate, MuBranch};
use crate::spectral::spectral_family;

#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub omega: u32,
    pub n: u64,
    pub outcome: Result<IntervalCertificate, CertifyError>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OmegaSummary {
    pub omega: u32,
    pub cells: usize,
    pub nonempty: usize,
    pub empty: usize,
    pub undecided: usize,
    pub errors: usize,
    pub first_empty: Option<u64>,
}

#[derive(Clone, Debug, Default)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    pub summary: Vec<OmegaSummary>,
    /// Cells with an empty intersection, in scan order.
    pub failures: Vec<(u32, u64)>,
}

impl ScanReport {
    pub fn all_nonempty(&self) -> bool {
        self.summary.iter().all(|s| s.nonempty == s.cells)
    }
}

/// Certifies every `(omega, n)` with `n >= 2 omega + 6`, ordered by `omega`
/// then `n`. Cells run in parallel on the current rayon pool.
pub fn scan(omegas: RangeInclusive<u32>, ns: RangeInclusive<u64>, mu_branch: MuBranch) -> ScanReport {
    let mut report = ScanReport::default();
    for omega in omegas {
        let lo = (*ns.start()).max(2 * omega as u64 + 6);
        if lo > *ns.end() {
            continue;
        }
        let entries: Vec<ScanEntry> = match spectral_family(omega) {
            Err(e) => (lo..=*ns.end())
                .map(|n| ScanEntry {
                    omega,
                    n,
                    outcome: Err(if omega < 2 {
                        CertifyError::CoveredByPriorWork(omega)
                    } else {
                        e.clone().into()
                    }),
                })
                .collect(),
            Ok(family) => (lo..=*ns.end())
                .into_par_iter()
                .map(|n| ScanEntry {
                    omega,
                    n,
                    outcome: certify_with_family(&family, omega, n, mu_branch),
                })
                .collect(),
        };
        let mut s = OmegaSummary {
            omega,
            cells: entries.len(),
            ..Default::default()
        };
        for e in &entries {
            match &e.outcome {
                Ok(c) => match c.status {
                    CertStatus::Nonempty => s.nonempty += 1,
                    CertStatus::Empty => {
                        s.empty += 1;
                        s.first_empty.get_or_insert(e.n);
                        report.failures.push((omega, e.n));
                    }
                    CertStatus::Undecided => s.undecided += 1,
                },
                Err(_) => s.errors += 1,
            }
        }
        report.summary.push(s);
        report.entries.extend(entries);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuous_grid() {
        let r = scan(10..=10, 3..=20, MuBranch::default());
        assert!(r.entries.is_empty());
        assert!(r.summary.is_empty());
    }

    #[test]
    fn ordered_and_nonempty() {
        let r = scan(3..=5, 10..=30, MuBranch::default());
        let keys: Vec<_> = r.entries.iter().map(|e| (e.omega, e.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys[0], (3, 12));
        assert!(r.all_nonempty());
    }
}
