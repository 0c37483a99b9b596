//! Per-block cycle contributions, the resulting shortness and oddness
//! coefficients for a host/edge pair, and scans over host lists.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cycles::{self, ConstrainedMaxima};
use crate::error::{Error, Result};
use crate::factors;
use crate::graph::{Edge, Graph};

pub type Rational = Ratio<u64>;

/// Rationals travel as `"p/q"` strings.
pub mod ratio_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_ratio(&text).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => super::serialize(r, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?.map(|t| super::super::parse_ratio(&t).map_err(serde::de::Error::custom)).transpose()
        }
    }
}

/// Parses `"p/q"` or an integer.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational: {text:?}"));
    let (p, q) = match text.trim().split_once('/') {
        Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Largest number of block vertices a cycle of the substitution can use:
/// each class maximum minus the endpoints of `e` that class needs outside
/// the block.
pub fn per_block_bound(m: &ConstrainedMaxima) -> Result<usize> {
    [(m.through_e, 2), (m.one_endpoint, 1), (m.both_avoid_e, 2), (m.two_cycles, 2)]
        .into_iter()
        .filter_map(|(v, off)| v.map(|v| v.saturating_sub(off)))
        .max()
        .ok_or(Error::NoCycleClass)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub host: String,
    pub edge: Edge,
    pub maxima: ConstrainedMaxima,
    pub block_size: usize,
    pub per_block: usize,
    /// `per_block / block_size`, reduced.
    #[serde(with = "ratio_str")]
    pub coefficient: Rational,
    pub q: usize,
    /// `q / block_size`, reduced.
    #[serde(with = "ratio_str")]
    pub oddness_growth: Rational,
}

pub fn shortness_report(h: &Graph, e: Edge, host: &str) -> Result<BoundReport> {
    let maxima = cycles::constrained_maxima(h, e)?;
    let q = factors::forced_odd_count(h, e)?;
    report_from(h, e, host, maxima, q)
}

fn report_from(h: &Graph, e: Edge, host: &str, maxima: ConstrainedMaxima, q: usize) -> Result<BoundReport> {
    let block_size = h.n() - 2;
    let per_block = per_block_bound(&maxima)?;
    Ok(BoundReport {
        host: host.to_string(),
        edge: e,
        maxima,
        block_size,
        per_block,
        coefficient: Rational::new(per_block as u64, block_size as u64),
        q,
        oddness_growth: Rational::new(q as u64, block_size as u64),
    })
}

/// `q(H, e) / (|H| - 2)`.
pub fn oddness_growth(h: &Graph, e: Edge) -> Result<Rational> {
    let q = factors::forced_odd_count(h, e)?;
    Ok(Rational::new(q as u64, h.n() as u64 - 2))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanCriteria {
    /// Keep pairs with coefficient at most this.
    #[serde(default, with = "ratio_str::option", skip_serializing_if = "Option::is_none")]
    pub max_coefficient: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_per_block: Option<usize>,
}

impl ScanCriteria {
    pub fn accepts(&self, r: &BoundReport) -> bool {
        self.max_coefficient.is_none_or(|c| r.coefficient <= c)
            && self.min_q.is_none_or(|q| r.q >= q)
            && self.max_per_block.is_none_or(|p| r.per_block <= p)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    pub jobs: usize,
    /// Append-only JSON-lines file of finished pairs; entries written under
    /// the same criteria are reused instead of recomputed.
    pub journal: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct JournalEntry {
    criteria: ScanCriteria,
    host_index: usize,
    edge_index: usize,
    report: Option<BoundReport>,
    error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub pairs_evaluated: usize,
    /// Matching reports ordered by host index, then edge id.
    pub reports: Vec<BoundReport>,
    pub errors: Vec<(String, String)>,
}

impl ScanResult {
    pub fn distinct_hosts(&self) -> Vec<&str> {
        let mut hosts: Vec<&str> = self.reports.iter().map(|r| r.host.as_str()).collect();
        hosts.dedup();
        hosts
    }
}

/// Evaluates every (host, edge) pair and keeps those meeting `criteria`.
/// With `min_q` set, the expensive cycle maxima are computed only for pairs
/// meeting it.
pub fn scan_candidates(hosts: &[(String, Graph)], criteria: &ScanCriteria, opts: &ScanOptions) -> Result<ScanResult> {
    let mut tasks = Vec::new();
    let mut errors = Vec::new();
    for (hi, (name, h)) in hosts.iter().enumerate() {
        match h.require_cubic() {
            Ok(()) => tasks.extend((0..h.m()).map(|ei| (hi, ei))),
            Err(e) => errors.push((name.clone(), e.to_string())),
        }
    }

    let mut done: Vec<JournalEntry> = Vec::new();
    if let Some(path) = &opts.journal {
        if let Ok(file) = std::fs::File::open(path) {
            for line in BufReader::new(file).lines() {
                let line = line.map_err(|e| Error::InvalidInput(format!("journal: {e}")))?;
                // a torn last line from an interrupted run is recomputed
                if let Ok(entry) = serde_json::from_str::<JournalEntry>(&line) {
                    done.push(entry);
                }
            }
        }
    }
    done.retain(|d| d.host_index < hosts.len() && d.criteria == *criteria);
    let finished: std::collections::HashSet<(usize, usize)> = done.iter().map(|d| (d.host_index, d.edge_index)).collect();
    tasks.retain(|t| !finished.contains(t));

    let journal = match &opts.journal {
        Some(path) => Some(Mutex::new(
            OpenOptions::new().create(true).append(true).open(path).map_err(|e| Error::InvalidInput(format!("journal: {e}")))?,
        )),
        None => None,
    };
    let next = AtomicUsize::new(0);
    let results = Mutex::new(done);
    let jobs = opts.jobs.max(1);
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(hi, ei)) = tasks.get(i) else { break };
                let (name, h) = &hosts[hi];
                let e = h.edges()[ei];
                let entry = match evaluate(h, e, name, criteria) {
                    Ok(report) => JournalEntry { criteria: criteria.clone(), host_index: hi, edge_index: ei, report, error: None },
                    Err(err) => JournalEntry {
                        criteria: criteria.clone(),
                        host_index: hi,
                        edge_index: ei,
                        report: None,
                        error: Some(err.to_string()),
                    },
                };
                if let Some(j) = &journal {
                    let line = serde_json::to_string(&entry).unwrap();
                    let mut f = j.lock().unwrap();
                    let _ = writeln!(f, "{line}");
                    let _ = f.flush();
                }
                results.lock().unwrap().push(entry);
            });
        }
    });

    let mut all = results.into_inner().unwrap();
    all.sort_by_key(|d| (d.host_index, d.edge_index));
    let pairs_evaluated = all.len();
    let mut reports = Vec::new();
    for d in all {
        if let Some(err) = d.error {
            errors.push((hosts[d.host_index].0.clone(), format!("edge {}: {err}", hosts[d.host_index].1.edges()[d.edge_index])));
        }
        if let Some(r) = d.report {
            if criteria.accepts(&r) {
                reports.push(r);
            }
        }
    }
    Ok(ScanResult { pairs_evaluated, reports, errors })
}

/// Report for one pair, or `None` if it is already known to fail.
fn evaluate(h: &Graph, e: Edge, name: &str, criteria: &ScanCriteria) -> Result<Option<BoundReport>> {
    let q = factors::forced_odd_count(h, e)?;
    if criteria.min_q.is_some_and(|m| q < m) {
        return Ok(None);
    }
    let maxima = cycles::constrained_maxima(h, e)?;
    let r = report_from(h, e, name, maxima, q)?;
    Ok(criteria.accepts(&r).then_some(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn m(a: [Option<usize>; 4]) -> ConstrainedMaxima {
        ConstrainedMaxima { through_e: a[0], one_endpoint: a[1], both_avoid_e: a[2], two_cycles: a[3] }
    }

    #[test]
    fn formula_values() {
        assert_eq!(per_block_bound(&m([Some(19), Some(18), Some(19), Some(18)])).unwrap(), 17);
        assert_eq!(per_block_bound(&m([Some(26), Some(25), Some(26), Some(25)])).unwrap(), 24);
        assert_eq!(per_block_bound(&m([Some(12), Some(11), Some(12), None])).unwrap(), 10);
        assert_eq!(per_block_bound(&m([None; 4])), Err(Error::NoCycleClass));
        assert_eq!(Rational::new(24, 26), Rational::new(12, 13));
    }

    #[test]
    fn k4_has_no_improvement() {
        let r = shortness_report(&named::k4(), Edge(0, 1), "k4").unwrap();
        assert_eq!(r.coefficient, Rational::new(1, 1));
        assert_eq!(r.oddness_growth, Rational::new(0, 1));
        assert_eq!(oddness_growth(&named::k4(), Edge(0, 1)).unwrap(), Rational::new(0, 1));
    }

    #[test]
    fn ratios_round_trip_as_strings() {
        let r = shortness_report(&named::petersen(), Edge(0, 1), "petersen").unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(&format!("\"coefficient\":\"{}/{}\"", r.coefficient.numer(), r.coefficient.denom())));
        let back: BoundReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let c: ScanCriteria = serde_json::from_str(r#"{"max_coefficient":"17/18","min_q":2}"#).unwrap();
        assert_eq!(c.max_coefficient, Some(Rational::new(17, 18)));
        assert!(serde_json::from_str::<ScanCriteria>(r#"{"max_coefficient":"1/0"}"#).is_err());
    }

    #[test]
    fn empty_scan() {
        let r = scan_candidates(&[], &ScanCriteria::default(), &ScanOptions::default()).unwrap();
        assert!(r.reports.is_empty() && r.errors.is_empty());
    }

    #[test]
    fn scan_ordering_is_independent_of_jobs() {
        let hosts = vec![("petersen".to_string(), named::petersen()), ("k5".into(), named::k5()), ("k33".into(), named::k33())];
        let c = ScanCriteria::default();
        let one = scan_candidates(&hosts, &c, &ScanOptions { jobs: 1, journal: None }).unwrap();
        let four = scan_candidates(&hosts, &c, &ScanOptions { jobs: 4, journal: None }).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.reports.len(), 15 + 9);
        assert_eq!(one.errors.len(), 1);
    }

    #[test]
    fn journal_resumes() {
        let dir = std::env::temp_dir().join(format!("bounds-journal-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let hosts = vec![("petersen".to_string(), named::petersen())];
        let c = ScanCriteria { max_coefficient: Some(Rational::new(1, 1)), ..Default::default() };
        let opts = ScanOptions { jobs: 2, journal: Some(dir.clone()) };
        let first = scan_candidates(&hosts, &c, &opts).unwrap();
        let lines = std::fs::read_to_string(&dir).unwrap().lines().count();
        assert_eq!(lines, 15);
        let again = scan_candidates(&hosts, &c, &opts).unwrap();
        assert_eq!(first, again);
        assert_eq!(std::fs::read_to_string(&dir).unwrap().lines().count(), 15);
        std::fs::remove_file(&dir).unwrap();
    }
}
