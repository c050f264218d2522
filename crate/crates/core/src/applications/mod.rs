//! Query scenarios on top of one shared preprocessing.
//!
//! Each scenario fixes query weights that never drop below the lower-bound
//! weights the hierarchy was built for, which is all the potentials need to
//! stay feasible.

mod blend;
mod ttf;
mod turns;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{EdgeId, EdgeTags, Graph, Weight, INFINITY};

pub use blend::{blend, LiveBlend, DEFAULT_SOON};
pub use ttf::{TdWeights, TravelTimeFunction, TtfError, PERIOD};
pub use turns::{expand_turns, TurnCost, TurnExpandedGraph, TurnModel, TurnWeights};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApplicationError {
    #[error("scale factor {0} is below 1")]
    ScaleBelowOne(String),
    #[error("cannot parse scale factor {0:?}")]
    BadScale(String),
    #[error("edge {edge}: query weight {query_weight} is below lower bound {lower_bound}")]
    ContractViolation { edge: EdgeId, query_weight: Weight, lower_bound: Weight },
    #[error("turn from edge {in_edge} into edge {out_edge}: edges do not meet")]
    TurnNotIncident { in_edge: EdgeId, out_edge: EdgeId },
    #[error("edge {edge} out of range for {num_edges} edges")]
    EdgeOutOfRange { edge: EdgeId, num_edges: usize },
    #[error("scenario {0} needs a {1} table")]
    MissingTable(&'static str, &'static str),
    #[error("{table} table has {len} entries, graph has {num_edges} edges")]
    TableSize { table: &'static str, len: usize, num_edges: usize },
}

/// Exact decimal factor `numerator / denominator`, at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleFactor {
    numerator: u64,
    denominator: u64,
}

impl ScaleFactor {
    pub const ONE: ScaleFactor = ScaleFactor { numerator: 1, denominator: 1 };

    pub fn new(numerator: u64, denominator: u64) -> Result<Self, ApplicationError> {
        if denominator == 0 {
            return Err(ApplicationError::BadScale(format!("{numerator}/{denominator}")));
        }
        if numerator < denominator {
            return Err(ApplicationError::ScaleBelowOne(format!("{numerator}/{denominator}")));
        }
        Ok(ScaleFactor { numerator, denominator })
    }

    /// Rounds up so the scaled weight never falls below the original.
    pub fn apply(self, w: Weight) -> Weight {
        if w >= INFINITY {
            return INFINITY;
        }
        let scaled = (w as u64 * self.numerator).div_ceil(self.denominator);
        scaled.min(INFINITY as u64) as Weight
    }

    pub fn as_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl FromStr for ScaleFactor {
    type Err = ApplicationError;

    /// Parses decimals such as `1`, `1.05` or `2.000`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ApplicationError::BadScale(s.to_string());
        let (int, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
        let digits = |p: &str| p.chars().all(|c| c.is_ascii_digit());
        if int.is_empty() || !digits(int) || !digits(frac) || frac.len() > 9 || int.len() > 9 {
            return Err(bad());
        }
        let denominator = 10u64.pow(frac.len() as u32);
        let numerator = int.parse::<u64>().map_err(|_| bad())? * denominator
            + if frac.is_empty() { 0 } else { frac.parse::<u64>().map_err(|_| bad())? };
        ScaleFactor::new(numerator, denominator).map_err(|_| ApplicationError::ScaleBelowOne(s.to_string()))
    }
}

impl fmt::Display for ScaleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.numerator / self.denominator;
        let mut rest = self.numerator % self.denominator;
        write!(f, "{int}")?;
        if rest != 0 {
            write!(f, ".")?;
            let mut den = self.denominator;
            while rest != 0 {
                den /= 10;
                if den == 0 {
                    break;
                }
                write!(f, "{}", rest / den)?;
                rest %= den;
            }
        }
        Ok(())
    }
}

pub fn scenario_scaled(graph: &Graph, alpha: ScaleFactor) -> Vec<Weight> {
    graph.weights().iter().map(|&w| alpha.apply(w)).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AvoidFlags {
    pub tunnels: bool,
    pub highways: bool,
}

impl AvoidFlags {
    fn hits(self, tags: EdgeTags) -> bool {
        (self.tunnels && tags.tunnel) || (self.highways && tags.highway)
    }
}

/// Closes every edge carrying an avoided tag.
pub fn scenario_avoid(graph: &Graph, avoid: AvoidFlags) -> Vec<Weight> {
    graph.weights().iter().zip(graph.tags()).map(|(&w, &t)| if avoid.hits(t) { INFINITY } else { w }).collect()
}

/// Static live weights; edges without a live value keep the freeflow weight.
pub fn scenario_live(graph: &Graph, live: &[Option<Weight>]) -> Result<Vec<Weight>, ApplicationError> {
    check_len("live", live.len(), graph.num_edges())?;
    let weights: Vec<Weight> = graph.weights().iter().zip(live).map(|(&w, l)| l.unwrap_or(w)).collect();
    check_bounds(&weights, graph.weights())?;
    Ok(weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Scaled(ScaleFactor),
    Avoid(AvoidFlags),
    Live,
    TimeDependent,
    LiveAndPredicted,
}

impl Scenario {
    pub fn is_time_dependent(self) -> bool {
        matches!(self, Scenario::TimeDependent | Scenario::LiveAndPredicted)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scenario::Scaled(a) => write!(f, "scaled({a})"),
            Scenario::Avoid(a) => match (a.tunnels, a.highways) {
                (true, true) => write!(f, "avoid(tunnels+highways)"),
                (true, false) => write!(f, "avoid(tunnels)"),
                (false, true) => write!(f, "avoid(highways)"),
                (false, false) => write!(f, "avoid(none)"),
            },
            Scenario::Live => write!(f, "live"),
            Scenario::TimeDependent => write!(f, "td"),
            Scenario::LiveAndPredicted => write!(f, "td+live"),
        }
    }
}

/// Per-edge tables some scenarios read.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScenarioTables<'a> {
    pub predicted: Option<&'a TdWeights>,
    pub live: Option<&'a [Option<Weight>]>,
}

/// Weights to build the hierarchy for. Freeflow everywhere except the pure
/// time-dependent scenario, which uses each function's minimum. Fails if
/// some query weight could fall below its lower bound.
pub fn lower_bound_weights(graph: &Graph, scenario: Scenario, tables: ScenarioTables) -> Result<Vec<Weight>, ApplicationError> {
    let m = graph.num_edges();
    let freeflow = graph.weights();
    let predicted = |name| tables.predicted.ok_or(ApplicationError::MissingTable(name, "travel time function"));
    let live = |name| tables.live.ok_or(ApplicationError::MissingTable(name, "live"));
    match scenario {
        Scenario::Scaled(_) | Scenario::Avoid(_) => Ok(freeflow.to_vec()),
        Scenario::Live => {
            scenario_live(graph, live("live")?)?;
            Ok(freeflow.to_vec())
        }
        Scenario::TimeDependent => {
            let td = predicted("td")?;
            check_len("travel time function", td.num_edges(), m)?;
            Ok(td.lower_bounds())
        }
        Scenario::LiveAndPredicted => {
            let td = predicted("td+live")?;
            check_len("travel time function", td.num_edges(), m)?;
            check_bounds(&td.lower_bounds(), freeflow)?;
            scenario_live(graph, live("td+live")?)?;
            Ok(freeflow.to_vec())
        }
    }
}

fn check_len(table: &'static str, len: usize, num_edges: usize) -> Result<(), ApplicationError> {
    if len == num_edges {
        Ok(())
    } else {
        Err(ApplicationError::TableSize { table, len, num_edges })
    }
}

fn check_bounds(query: &[Weight], lower: &[Weight]) -> Result<(), ApplicationError> {
    match query.iter().zip(lower).position(|(q, l)| q < l) {
        Some(e) => Err(ApplicationError::ContractViolation { edge: e as EdgeId, query_weight: query[e], lower_bound: lower[e] }),
        None => Ok(()),
    }
}
