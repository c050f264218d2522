//! Periodic piecewise-linear travel time functions.

use thiserror::Error;

use crate::astar::QueryWeights;
use crate::graph::{EdgeId, Timestamp, Weight, INFINITY};

/// One day in milliseconds.
pub const PERIOD: Timestamp = 86_400_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TtfError {
    #[error("travel time function has no breakpoints")]
    Empty,
    #[error("breakpoint time {time} is outside [0, {PERIOD})")]
    TimeOutOfRange { time: Timestamp },
    #[error("breakpoint times are not strictly increasing at index {index}")]
    NotIncreasing { index: usize },
    #[error("travel time {value} at index {index} is not finite")]
    ValueTooLarge { index: usize, value: Weight },
    #[error("segment starting at breakpoint {index} falls faster than time passes (FIFO violated)")]
    FifoViolation { index: usize },
}

/// Travel time as a function of the entry time, repeating every [`PERIOD`].
/// Between breakpoints (and across midnight, from the last breakpoint to the
/// first) values are interpolated linearly and rounded down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TravelTimeFunction {
    points: Vec<(Timestamp, Weight)>,
}

impl TravelTimeFunction {
    /// Validates breakpoints: times strictly increasing within one period and
    /// every segment, the wrap-around one included, with slope at least -1.
    pub fn new(points: Vec<(Timestamp, Weight)>) -> Result<Self, TtfError> {
        validate(&points)?;
        Ok(TravelTimeFunction { points })
    }

    pub fn constant(value: Weight) -> Self {
        TravelTimeFunction { points: vec![(0, value)] }
    }

    pub fn points(&self) -> &[(Timestamp, Weight)] {
        &self.points
    }

    pub fn is_constant(&self) -> bool {
        self.points.iter().all(|&(_, v)| v == self.points[0].1)
    }

    pub fn eval(&self, at: Timestamp) -> Weight {
        eval_points(&self.points, at)
    }

    /// Minimum over the whole period. Linear pieces take their extremes at
    /// breakpoints, so this is the smallest breakpoint value.
    pub fn lower_bound(&self) -> Weight {
        self.points.iter().map(|&(_, v)| v).min().unwrap()
    }
}

fn validate(points: &[(Timestamp, Weight)]) -> Result<(), TtfError> {
    if points.is_empty() {
        return Err(TtfError::Empty);
    }
    for (index, &(time, value)) in points.iter().enumerate() {
        if time >= PERIOD {
            return Err(TtfError::TimeOutOfRange { time });
        }
        if value >= INFINITY {
            return Err(TtfError::ValueTooLarge { index, value });
        }
        if index > 0 && time <= points[index - 1].0 {
            return Err(TtfError::NotIncreasing { index });
        }
    }
    let k = points.len();
    for index in 0..k {
        let (t0, v0) = points[index];
        let (t1, v1) = if index + 1 < k { points[index + 1] } else { (points[0].0 + PERIOD, points[0].1) };
        if k > 1 && (v1 as i64 - v0 as i64) < -(t1 as i64 - t0 as i64) {
            return Err(TtfError::FifoViolation { index });
        }
    }
    Ok(())
}

#[inline]
fn interpolate(t0: i64, v0: i64, t1: i64, v1: i64, t: i64) -> Weight {
    (v0 + ((v1 - v0) * (t - t0)).div_euclid(t1 - t0)) as Weight
}

pub(crate) fn eval_points(points: &[(Timestamp, Weight)], at: Timestamp) -> Weight {
    if points.len() == 1 {
        return points[0].1;
    }
    let t = (at % PERIOD) as i64;
    // index of the first breakpoint after t
    let next = points.partition_point(|&(time, _)| time as i64 <= t);
    let period = PERIOD as i64;
    if next == 0 || next == points.len() {
        let (lt, lv) = points[points.len() - 1];
        let (ft, fv) = points[0];
        let (lt, ft) = (lt as i64, ft as i64 + period);
        let t = if next == 0 { t + period } else { t };
        return interpolate(lt, lv as i64, ft, fv as i64, t);
    }
    let (t0, v0) = points[next - 1];
    let (t1, v1) = points[next];
    interpolate(t0 as i64, v0 as i64, t1 as i64, v1 as i64, t)
}

/// Travel time functions for every edge in one flat array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdWeights {
    first: Vec<u32>,
    points: Vec<(Timestamp, Weight)>,
}

impl TdWeights {
    pub fn new(functions: &[TravelTimeFunction]) -> Self {
        let mut first = Vec::with_capacity(functions.len() + 1);
        let mut points = Vec::new();
        first.push(0);
        for f in functions {
            points.extend_from_slice(f.points());
            first.push(points.len() as u32);
        }
        TdWeights { first, points }
    }

    /// Constant functions equal to the given weights.
    pub fn constant(weights: &[Weight]) -> Self {
        TdWeights { first: (0..=weights.len() as u32).collect(), points: weights.iter().map(|&w| (0, w)).collect() }
    }

    pub fn num_edges(&self) -> usize {
        self.first.len() - 1
    }

    pub fn points(&self, edge: EdgeId) -> &[(Timestamp, Weight)] {
        &self.points[self.first[edge as usize] as usize..self.first[edge as usize + 1] as usize]
    }

    pub fn function(&self, edge: EdgeId) -> TravelTimeFunction {
        TravelTimeFunction { points: self.points(edge).to_vec() }
    }

    #[inline]
    pub fn eval(&self, edge: EdgeId, at: Timestamp) -> Weight {
        eval_points(self.points(edge), at)
    }

    pub fn lower_bounds(&self) -> Vec<Weight> {
        (0..self.num_edges() as EdgeId).map(|e| self.points(e).iter().map(|&(_, v)| v).min().unwrap()).collect()
    }
}

impl QueryWeights for TdWeights {
    #[inline]
    fn travel_time(&self, edge: EdgeId, at: Timestamp) -> Weight {
        self.eval(edge, at)
    }
}
