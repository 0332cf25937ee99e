//! Report emission: exact-schema CSV and a per-corpus table rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Algorithm, BenchError, BenchReport, BenchRow, RowStats};

/// Output shapes for [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Table,
}

/// On-disk row shape; unsupported cells serialize as empty fields.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRecord {
    corpus: String,
    algo: String,
    m: usize,
    patterns: usize,
    mean_ms: Option<f64>,
    median_ms: Option<f64>,
    total_occ: Option<u64>,
    checksum: Option<String>,
}

impl From<&BenchRow> for CsvRecord {
    fn from(row: &BenchRow) -> CsvRecord {
        CsvRecord {
            corpus: row.corpus.clone(),
            algo: row.algo.name().to_string(),
            m: row.m,
            patterns: row.patterns,
            mean_ms: row.stats.as_ref().map(|s| s.mean_ms),
            median_ms: row.stats.as_ref().map(|s| s.median_ms),
            total_occ: row.stats.as_ref().map(|s| s.total_occ),
            checksum: row.stats.as_ref().map(|s| format!("{:016x}", s.checksum)),
        }
    }
}

/// Serializes the report as CSV with columns
/// `corpus,algo,m,patterns,mean_ms,median_ms,total_occ,checksum`.
pub fn emit_csv(report: &BenchReport) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &report.rows {
        writer.serialize(CsvRecord::from(row)).expect("csv serialization cannot fail");
    }
    String::from_utf8(writer.into_inner().expect("in-memory writer")).expect("ascii output")
}

/// Parses CSV emitted by [`emit_csv`] back into a report.
pub fn parse_csv(input: &str) -> Result<BenchReport, BenchError> {
    let mut reader = csv::Reader::from_reader(input.as_bytes());
    let mut rows = Vec::new();
    for record in reader.deserialize::<CsvRecord>() {
        let record = record?;
        let algo = Algorithm::from_str(&record.algo)?;
        let stats = match (record.mean_ms, record.median_ms, record.total_occ, record.checksum) {
            (Some(mean_ms), Some(median_ms), Some(total_occ), Some(checksum)) => {
                let checksum = u64::from_str_radix(&checksum, 16)
                    .map_err(|_| BenchError::MalformedChecksum(checksum))?;
                Some(RowStats { mean_ms, median_ms, total_occ, checksum })
            }
            (None, None, None, None) => None,
            _ => return Err(BenchError::PartialRow { algo: record.algo, m: record.m }),
        };
        rows.push(BenchRow {
            corpus: record.corpus,
            algo,
            m: record.m,
            patterns: record.patterns,
            stats,
        });
    }
    Ok(BenchReport { rows })
}

/// Renders the report as one block per corpus: one row per algorithm, one
/// column per pattern length, mean times in milliseconds, `-` where a length
/// is unsupported.
pub fn render_table(report: &BenchReport) -> String {
    let mut out = String::new();
    let mut corpora: Vec<&str> = Vec::new();
    for row in &report.rows {
        if !corpora.contains(&row.corpus.as_str()) {
            corpora.push(&row.corpus);
        }
    }
    for corpus in corpora {
        let rows: Vec<&BenchRow> =
            report.rows.iter().filter(|r| r.corpus == corpus).collect();
        let mut lengths: Vec<usize> = Vec::new();
        let mut algos: Vec<Algorithm> = Vec::new();
        for row in &rows {
            if !lengths.contains(&row.m) {
                lengths.push(row.m);
            }
            if !algos.contains(&row.algo) {
                algos.push(row.algo);
            }
        }
        let patterns = rows.first().map_or(0, |r| r.patterns);
        let _ = writeln!(
            out,
            "corpus: {corpus} ({patterns} patterns per length, mean ms per pattern)"
        );
        let _ = write!(out, "{:<10}", "algorithm");
        for m in &lengths {
            let _ = write!(out, "{:>10}", format!("m={m}"));
        }
        out.push('\n');
        for algo in algos {
            let _ = write!(out, "{:<10}", algo.name());
            for &m in &lengths {
                let cell = rows
                    .iter()
                    .find(|r| r.algo == algo && r.m == m)
                    .and_then(|r| r.stats.as_ref());
                match cell {
                    Some(stats) => {
                        let _ = write!(out, "{:>10.4}", stats.mean_ms);
                    }
                    None => {
                        let _ = write!(out, "{:>10}", "-");
                    }
                }
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Renders the report in the requested format.
pub fn emit_report(report: &BenchReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Table => render_table(report),
    }
}
