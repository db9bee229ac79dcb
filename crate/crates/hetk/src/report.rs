//! Bound and discrepancy runs and their CSV / JSON rendering.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use hetk_core::bounds::Variant;
use hetk_core::oracle::{discrepancy_exact, DiscrepancyResult, OracleCaps};
use serde::Serialize;

use crate::config::{Experiment, Format, SCHEMA_VERSION};
use crate::error::Result;
use crate::generator::format_tags;
use crate::parallel::etk_bound_parallel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexEntry {
    pub k: Vec<u64>,
    pub weight: f64,
    pub abs_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub g: Vec<u32>,
    pub variant: String,
    pub epsilon: f64,
    pub weighted_sum: f64,
    pub bound_total: f64,
    pub max_abs_sum: f64,
    pub exact_discrepancy: Option<f64>,
    pub margin: Option<f64>,
    pub runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_k: Option<Vec<IndexEntry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyRow {
    pub n: usize,
    pub variant: String,
    pub value: f64,
    pub exact: Option<String>,
    pub attained: bool,
    pub witness: String,
    pub runtime_ms: f64,
}

/// Header shared by both report kinds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<R> {
    pub schema: u32,
    pub kind: &'static str,
    pub source: String,
    pub bases: Vec<u32>,
    pub tags: String,
    pub seed: Option<u64>,
    pub rows: Vec<R>,
}

fn elapsed_ms(start: Instant, timing: bool) -> f64 {
    if timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    }
}

fn header<R>(ex: &Experiment, kind: &'static str, seed: Option<u64>, rows: Vec<R>) -> Report<R> {
    Report {
        schema: SCHEMA_VERSION,
        kind,
        source: ex.points.provenance().to_string(),
        bases: ex.spec.bases().iter().map(|b| b.get()).collect(),
        tags: format_tags(&ex.spec.tags()),
        seed,
        rows,
    }
}

fn witness_text(r: &DiscrepancyResult) -> String {
    r.witness
        .iter()
        .map(|iv| {
            format!(
                "{}{},{}{}",
                if iv.lower_limit { "(" } else { "[" },
                iv.lower,
                iv.upper,
                if iv.upper_limit { "]" } else { ")" }
            )
        })
        .collect::<Vec<_>>()
        .join("x")
}

/// One row per `(g, variant)`; with `oracle`, the exact discrepancy and the margin.
/// `timing = false` zeroes `runtime_ms` so that reports can be compared byte for byte.
pub fn run_bound(
    ex: &Experiment,
    oracle: bool,
    seed: Option<u64>,
    timing: bool,
) -> Result<Report<ReportRow>> {
    let caps = OracleCaps::default();
    let mut exact: BTreeMap<&'static str, f64> = BTreeMap::new();
    if oracle {
        for &v in &ex.variants {
            exact.insert(
                variant_key(v),
                discrepancy_exact(&ex.points, v, &caps)?.value,
            );
        }
    }
    let mut rows = Vec::new();
    for g in &ex.resolutions {
        for &v in &ex.variants {
            let start = Instant::now();
            let r = etk_bound_parallel(&ex.spec, g, &ex.points, v, &ex.options)?;
            let exact_value = exact.get(variant_key(v)).copied();
            rows.push(ReportRow {
                n: ex.points.len(),
                g: g.clone(),
                variant: v.to_string(),
                epsilon: r.epsilon,
                weighted_sum: r.weighted_sum,
                bound_total: r.total,
                max_abs_sum: r.max_abs_sum,
                exact_discrepancy: exact_value,
                margin: exact_value.map(|e| r.total - e),
                runtime_ms: elapsed_ms(start, timing),
                per_k: r.per_k.map(|rows| {
                    rows.into_iter()
                        .map(|row| IndexEntry {
                            k: row.k,
                            weight: row.weight,
                            abs_sum: row.abs_sum,
                        })
                        .collect()
                }),
            });
        }
    }
    Ok(header(ex, "bound", seed, rows))
}

fn variant_key(v: Variant) -> &'static str {
    match v {
        Variant::Extreme => "extreme",
        Variant::Star => "star",
    }
}

pub fn run_discrepancy(
    ex: &Experiment,
    caps: &OracleCaps,
    timing: bool,
) -> Result<Report<DiscrepancyRow>> {
    let mut rows = Vec::new();
    for &v in &ex.variants {
        let start = Instant::now();
        let r = discrepancy_exact(&ex.points, v, caps)?;
        rows.push(DiscrepancyRow {
            n: ex.points.len(),
            variant: v.to_string(),
            value: r.value,
            exact: r.exact.map(|f| f.to_string()),
            attained: r.attained,
            witness: witness_text(&r),
            runtime_ms: elapsed_ms(start, timing),
        });
    }
    Ok(header(ex, "discrepancy", None, rows))
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

#[derive(Serialize)]
struct CsvBoundRow<'a> {
    n: usize,
    g: String,
    variant: &'a str,
    epsilon: f64,
    weighted_sum: f64,
    bound_total: f64,
    max_abs_sum: f64,
    exact_discrepancy: Option<f64>,
    margin: Option<f64>,
    runtime_ms: f64,
}

#[derive(Serialize)]
struct CsvIndexRow<'a> {
    g: &'a str,
    variant: &'a str,
    k: String,
    weight: f64,
    abs_sum: f64,
}

/// CSV writes the main table; with per-index data a blank line and a second
/// table `g,variant,k,weight,abs_sum` follow. Vectors are space separated.
pub fn write_bound(report: &Report<ReportRow>, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &report.rows {
                w.serialize(CsvBoundRow {
                    n: r.n,
                    g: join(&r.g, " "),
                    variant: &r.variant,
                    epsilon: r.epsilon,
                    weighted_sum: r.weighted_sum,
                    bound_total: r.bound_total,
                    max_abs_sum: r.max_abs_sum,
                    exact_discrepancy: r.exact_discrepancy,
                    margin: r.margin,
                    runtime_ms: r.runtime_ms,
                })?;
            }
            w.flush()?;
            drop(w);
            if report.rows.iter().any(|r| r.per_k.is_some()) {
                writeln!(out)?;
                let mut w = csv::Writer::from_writer(&mut *out);
                for r in &report.rows {
                    let g = join(&r.g, " ");
                    for e in r.per_k.iter().flatten() {
                        w.serialize(CsvIndexRow {
                            g: &g,
                            variant: &r.variant,
                            k: join(&e.k, " "),
                            weight: e.weight,
                            abs_sum: e.abs_sum,
                        })?;
                    }
                }
                w.flush()?;
            }
        }
    }
    Ok(())
}

pub fn write_discrepancy(
    report: &Report<DiscrepancyRow>,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in &report.rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ExperimentConfig, VariantChoice};

    fn vdc8(variant: VariantChoice, oracle: bool) -> Report<ReportRow> {
        let cfg = ExperimentConfig {
            generator: Some("vdc:2".into()),
            n: Some(8),
            g: vec![vec![3]],
            variant,
            oracle,
            ..ExperimentConfig::default()
        };
        run_bound(&cfg.experiment().unwrap(), oracle, None, false).unwrap()
    }

    #[test]
    fn van_der_corput_row() {
        let r = vdc8(VariantChoice::Star, true);
        let row = &r.rows[0];
        assert_eq!(row.epsilon, 0.125);
        assert_eq!(row.weighted_sum, 0.0);
        assert_eq!(row.bound_total, 0.125);
        assert_eq!(row.exact_discrepancy, Some(0.125));
        assert_eq!(row.margin, Some(0.0));
    }

    #[test]
    fn csv_layout() {
        let r = vdc8(VariantChoice::Star, true);
        let mut buf = Vec::new();
        write_bound(&r, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,g,variant,epsilon,weighted_sum,bound_total,max_abs_sum,exact_discrepancy,margin,runtime_ms"
        );
        assert_eq!(
            lines.next().unwrap(),
            "8,3,star,0.125,0.0,0.125,0.0,0.125,0.0,0.0"
        );
    }

    #[test]
    fn json_has_schema() {
        let r = vdc8(VariantChoice::Both, false);
        let mut buf = Vec::new();
        write_bound(&r, Format::Json, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["rows"].as_array().unwrap().len(), 2);
        assert!(v["rows"][0]["margin"].is_null());
    }
}
