use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::graph::{NodeId, Weight};

/// Measurements of one query run by one algorithm. `None` distances mean
/// unreachable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub query_id: usize,
    pub source: NodeId,
    pub target: NodeId,
    pub algorithm: String,
    pub scenario: String,
    pub distance: Option<Weight>,
    pub queue_pushes: usize,
    pub settled_nodes: usize,
    pub running_time_ns: u64,
    pub lower_bound_distance: Option<Weight>,
}

impl QueryRecord {
    /// `distance / lower_bound - 1`; zero for zero-length routes.
    pub fn length_increase(&self) -> Option<f64> {
        match (self.distance, self.lower_bound_distance) {
            (Some(0), Some(0)) => Some(0.0),
            (Some(d), Some(lb)) if lb > 0 => Some(d as f64 / lb as f64 - 1.0),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Row {
    query_id: usize,
    source: NodeId,
    target: NodeId,
    algorithm: String,
    scenario: String,
    distance: Option<Weight>,
    queue_pushes: usize,
    settled_nodes: usize,
    running_time_ns: u64,
    lower_bound_distance: Option<Weight>,
    length_increase: Option<f64>,
}

pub const RESULT_COLUMNS: [&str; 11] = [
    "query_id",
    "source",
    "target",
    "algorithm",
    "scenario",
    "distance",
    "queue_pushes",
    "settled_nodes",
    "running_time_ns",
    "lower_bound_distance",
    "length_increase",
];

pub fn write_results_csv(records: &[QueryRecord], out: impl Write) -> Result<(), IoError> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record(RESULT_COLUMNS)?;
    for r in records {
        writer.serialize(Row {
            query_id: r.query_id,
            source: r.source,
            target: r.target,
            algorithm: r.algorithm.clone(),
            scenario: r.scenario.clone(),
            distance: r.distance,
            queue_pushes: r.queue_pushes,
            settled_nodes: r.settled_nodes,
            running_time_ns: r.running_time_ns,
            lower_bound_distance: r.lower_bound_distance,
            length_increase: r.length_increase(),
        })?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads records back; the length-increase column is returned alongside.
pub fn read_results_csv(input: impl Read) -> Result<Vec<(QueryRecord, Option<f64>)>, IoError> {
    let mut reader = csv::Reader::from_reader(input);
    reader
        .deserialize::<Row>()
        .map(|row| {
            let row = row?;
            let record = QueryRecord {
                query_id: row.query_id,
                source: row.source,
                target: row.target,
                algorithm: row.algorithm,
                scenario: row.scenario,
                distance: row.distance,
                queue_pushes: row.queue_pushes,
                settled_nodes: row.settled_nodes,
                running_time_ns: row.running_time_ns,
                lower_bound_distance: row.lower_bound_distance,
            };
            Ok((record, row.length_increase))
        })
        .collect()
}
