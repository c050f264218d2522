use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use super::{dimacs, tables, IoError};
use crate::applications::{TravelTimeFunction, TurnModel};
use crate::graph::{Graph, Weight};

const GRAPH: &str = "graph.gr";
const COORDS: &str = "graph.co";
const TAGS: &str = "graph.tags";
const TTF: &str = "graph.ttf";
const LIVE: &str = "graph.live";
const TURNS: &str = "graph.turns";

/// A graph with its optional side tables, stored as one directory.
#[derive(Debug, Clone)]
pub struct InstanceBundle {
    pub graph: Graph,
    /// (latitude, longitude) per node.
    pub coordinates: Option<Vec<(f64, f64)>>,
    pub turns: Option<TurnModel>,
    pub ttf: Option<Vec<TravelTimeFunction>>,
    pub live: Option<Vec<Option<Weight>>>,
}

fn open(path: &Path) -> Result<BufReader<File>, IoError> {
    File::open(path).map(BufReader::new).map_err(|e| IoError::from(e).in_file(path))
}

fn save_file(path: &Path, write: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<(), IoError> {
    let inner = || -> std::io::Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        write(&mut out)?;
        out.flush()
    };
    inner().map_err(|e| IoError::from(e).in_file(path))
}

impl InstanceBundle {
    pub fn new(graph: Graph) -> Self {
        InstanceBundle { graph, coordinates: None, turns: None, ttf: None, live: None }
    }

    /// Loads `graph.gr` plus whichever of `graph.co`, `.tags`, `.ttf`,
    /// `.live` and `.turns` exist in `dir`.
    pub fn load(dir: &Path) -> Result<Self, IoError> {
        let path = dir.join(GRAPH);
        let mut graph = dimacs::read_dimacs_gr(open(&path)?).map_err(|e| e.in_file(&path))?;
        let optional = |name: &str| {
            let p = dir.join(name);
            p.exists().then_some(p)
        };
        if let Some(p) = optional(TAGS) {
            let tags = tables::read_tags_file(open(&p)?, &graph).map_err(|e| e.in_file(&p))?;
            graph.set_tags(tags);
        }
        let coordinates = match optional(COORDS) {
            Some(p) => {
                let c = dimacs::read_coordinates(open(&p)?).map_err(|e| e.in_file(&p))?;
                if c.len() != graph.num_nodes() {
                    let err = IoError::parse(1, format!("{} coordinates for {} nodes", c.len(), graph.num_nodes()));
                    return Err(err.in_file(&p));
                }
                Some(c)
            }
            None => None,
        };
        let ttf = match optional(TTF) {
            Some(p) => Some(tables::read_ttf_file(open(&p)?, &graph).map_err(|e| e.in_file(&p))?),
            None => None,
        };
        let live = match optional(LIVE) {
            Some(p) => Some(tables::read_live_file(open(&p)?, &graph).map_err(|e| e.in_file(&p))?),
            None => None,
        };
        let turns = match optional(TURNS) {
            Some(p) => Some(tables::read_turns_file(open(&p)?, &graph).map_err(|e| e.in_file(&p))?),
            None => None,
        };
        Ok(InstanceBundle { graph, coordinates, turns, ttf, live })
    }

    pub fn save(&self, dir: &Path) -> Result<(), IoError> {
        std::fs::create_dir_all(dir).map_err(|e| IoError::from(e).in_file(dir))?;
        save_file(&dir.join(GRAPH), |out| dimacs::write_dimacs_gr(&self.graph, out))?;
        if self.graph.tags().iter().any(|t| !t.is_empty()) {
            save_file(&dir.join(TAGS), |out| tables::write_tags_file(self.graph.tags(), out))?;
        }
        if let Some(c) = &self.coordinates {
            save_file(&dir.join(COORDS), |out| dimacs::write_coordinates(c, out))?;
        }
        if let Some(f) = &self.ttf {
            save_file(&dir.join(TTF), |out| tables::write_ttf_file(f, &self.graph, out))?;
        }
        if let Some(l) = &self.live {
            save_file(&dir.join(LIVE), |out| tables::write_live_file(l, out))?;
        }
        if let Some(t) = &self.turns {
            save_file(&dir.join(TURNS), |out| tables::write_turns_file(t, out))?;
        }
        Ok(())
    }
}
