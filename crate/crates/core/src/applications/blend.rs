//! Live traffic that fades into predicted traffic.

use crate::astar::QueryWeights;
use crate::graph::{EdgeId, Timestamp, Weight};

use super::ttf::TdWeights;

/// Blends a live travel time `w_c` with the predicted function `w_p`.
///
/// Up to `tau_soon` the live value holds. Afterwards the result moves towards
/// the prediction with slope one (from above if the prediction is faster,
/// from below otherwise) until it reaches it.
pub fn blend(live: Weight, predicted: impl Fn(Timestamp) -> Weight, tau_soon: Timestamp, tau: Timestamp) -> Weight {
    if tau <= tau_soon {
        return live;
    }
    let elapsed = tau - tau_soon;
    if predicted(tau_soon) < live {
        live.saturating_sub(elapsed).max(predicted(tau))
    } else {
        live.saturating_add(elapsed).min(predicted(tau))
    }
}

/// Query weights for the live-and-predicted scenario. Edges without a live
/// value follow the prediction.
#[derive(Debug, Clone, Copy)]
pub struct LiveBlend<'a> {
    pub predicted: &'a TdWeights,
    pub live: &'a [Option<Weight>],
    /// Absolute switch-over moment, on the same clock as departure times.
    pub tau_soon: Timestamp,
}

/// Default distance between departure and `tau_soon`: one hour.
pub const DEFAULT_SOON: Timestamp = 3_600_000;

impl<'a> LiveBlend<'a> {
    pub fn new(predicted: &'a TdWeights, live: &'a [Option<Weight>], tau_soon: Timestamp) -> Self {
        assert_eq!(predicted.num_edges(), live.len());
        LiveBlend { predicted, live, tau_soon }
    }

    pub fn eval(&self, edge: EdgeId, tau: Timestamp) -> Weight {
        match self.live[edge as usize] {
            Some(w_c) => blend(w_c, |at| self.predicted.eval(edge, at), self.tau_soon, tau),
            None => self.predicted.eval(edge, tau),
        }
    }
}

impl QueryWeights for LiveBlend<'_> {
    #[inline]
    fn travel_time(&self, edge: EdgeId, at: Timestamp) -> Weight {
        self.eval(edge, at)
    }
}
