//! Aggregates over query records.

use std::io::Write;

use serde::Serialize;

use crate::io::{IoError, QueryRecord};

/// Means per (scenario, algorithm) group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub algorithm: String,
    pub queries: usize,
    pub mean_running_time_ms: f64,
    pub mean_queue_pushes: f64,
    pub mean_settled_nodes: f64,
    /// Over reachable queries, in percent.
    pub mean_length_increase_pct: Option<f64>,
    /// Mean `dijkstra` time of the same scenario over this group's mean time.
    pub speedup: Option<f64>,
}

fn groups(records: &[QueryRecord]) -> Vec<((String, String), Vec<&QueryRecord>)> {
    let mut out: Vec<((String, String), Vec<&QueryRecord>)> = Vec::new();
    for r in records {
        let key = (r.scenario.clone(), r.algorithm.clone());
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(r),
            None => out.push((key, vec![r])),
        }
    }
    out
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Groups appear in order of first occurrence.
pub fn summarize(records: &[QueryRecord]) -> Vec<SummaryRow> {
    let groups = groups(records);
    let time = |rs: &[&QueryRecord]| mean(rs.iter().map(|r| r.running_time_ns as f64 / 1e6)).unwrap_or(0.0);
    groups
        .iter()
        .map(|((scenario, algorithm), rs)| {
            let baseline = groups.iter().find(|((s, a), _)| s == scenario && a == "dijkstra").map(|(_, b)| time(b));
            let own = time(rs);
            SummaryRow {
                scenario: scenario.clone(),
                algorithm: algorithm.clone(),
                queries: rs.len(),
                mean_running_time_ms: own,
                mean_queue_pushes: mean(rs.iter().map(|r| r.queue_pushes as f64)).unwrap_or(0.0),
                mean_settled_nodes: mean(rs.iter().map(|r| r.settled_nodes as f64)).unwrap_or(0.0),
                mean_length_increase_pct: mean(rs.iter().filter_map(|r| r.length_increase()).map(|x| 100.0 * x)),
                speedup: baseline.filter(|_| own > 0.0).map(|b| b / own),
            }
        })
        .collect()
}

/// Five-number summary plus mean, with whiskers at the most extreme values
/// within 1.5 interquartile ranges of the box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxStats {
    pub count: usize,
    pub min: f64,
    pub whisker_low: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub whisker_high: f64,
    pub max: f64,
    pub mean: f64,
}

/// Quartiles interpolate linearly between order statistics.
pub fn box_stats(values: &[f64]) -> Option<BoxStats> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let quantile = |q: f64| {
        let pos = q * (v.len() - 1) as f64;
        let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
        v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
    };
    let (q1, median, q3) = (quantile(0.25), quantile(0.5), quantile(0.75));
    let iqr = q3 - q1;
    let whisker_low = *v.iter().find(|&&x| x >= q1 - 1.5 * iqr).unwrap();
    let whisker_high = *v.iter().rev().find(|&&x| x <= q3 + 1.5 * iqr).unwrap();
    Some(BoxStats {
        count: v.len(),
        min: v[0],
        whisker_low,
        q1,
        median,
        q3,
        whisker_high,
        max: v[v.len() - 1],
        mean: v.iter().sum::<f64>() / v.len() as f64,
    })
}

#[derive(Serialize)]
struct BoxRow<'a> {
    scenario: &'a str,
    algorithm: &'a str,
    metric: &'a str,
    count: usize,
    min: f64,
    whisker_low: f64,
    q1: f64,
    median: f64,
    q3: f64,
    whisker_high: f64,
    max: f64,
    mean: f64,
}

/// Box statistics of running times in milliseconds per (scenario, algorithm).
pub fn box_stats_by_group(records: &[QueryRecord]) -> Vec<(String, String, BoxStats)> {
    groups(records)
        .into_iter()
        .filter_map(|((s, a), rs)| {
            let times: Vec<f64> = rs.iter().map(|r| r.running_time_ns as f64 / 1e6).collect();
            box_stats(&times).map(|b| (s, a, b))
        })
        .collect()
}

pub fn write_summary_csv(rows: &[SummaryRow], out: impl Write) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_box_csv(rows: &[(String, String, BoxStats)], out: impl Write) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    for (scenario, algorithm, stats) in rows {
        let b = stats;
        w.serialize(BoxRow {
            scenario,
            algorithm,
            metric: "running_time_ms",
            count: b.count,
            min: b.min,
            whisker_low: b.whisker_low,
            q1: b.q1,
            median: b.median,
            q3: b.q3,
            whisker_high: b.whisker_high,
            max: b.max,
            mean: b.mean,
        })?;
    }
    w.flush()?;
    Ok(())
}
