//! Text formats: DIMACS graphs and coordinates, per-edge tables for tags,
//! travel time functions, live weights and turns, result CSVs, and instance
//! directories bundling them.
//!
//! Table files may start with a header line `# <kind> v1`; files without one
//! are read as version 1. Other lines starting with `#` are comments. All
//! times are integer milliseconds. Edge indices are graph edge ids: arcs
//! sorted by tail, keeping file order among arcs with the same tail. Graph
//! files written here list arcs in exactly that order.

mod bundle;
mod dimacs;
mod results;
mod tables;

use thiserror::Error;

use crate::applications::TtfError;
use crate::graph::{EdgeId, GraphError};

pub use bundle::InstanceBundle;
pub use dimacs::{read_coordinates, read_dimacs_gr, write_coordinates, write_dimacs_gr};
pub use results::{read_results_csv, write_results_csv, QueryRecord, RESULT_COLUMNS};
pub use tables::{
    read_live_file, read_tags_file, read_ttf_file, read_turns_file, write_live_file, write_tags_file, write_ttf_file,
    write_turns_file,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: travel time function of edge {edge}: {source}")]
    Ttf { line: usize, edge: EdgeId, source: TtfError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{path}: {source}")]
    File { path: String, source: Box<IoError> },
}

impl IoError {
    fn parse(line: usize, message: impl Into<String>) -> Self {
        IoError::Parse { line, message: message.into() }
    }

    fn in_file(self, path: &std::path::Path) -> Self {
        IoError::File { path: path.display().to_string(), source: Box::new(self) }
    }
}
