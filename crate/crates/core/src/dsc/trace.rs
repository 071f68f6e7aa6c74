use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dsc::pairs::equidistant_pairs;
use crate::error::{Error, Result};
use crate::graph::profile::{least_sym_diff, Side};
use crate::graph::GraphHandle;
use crate::vertex::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStatus {
    Complete,
    /// No witness within budget at this (1-based) step.
    BudgetExhausted(usize),
}

impl fmt::Display for TraceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStatus::Complete => f.write_str("complete"),
            TraceStatus::BudgetExhausted(i) => write!(f, "budget-exhausted({i})"),
        }
    }
}

impl FromStr for TraceStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "complete" {
            return Ok(TraceStatus::Complete);
        }
        s.strip_prefix("budget-exhausted(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|i| i.parse().ok())
            .map(TraceStatus::BudgetExhausted)
            .ok_or_else(|| Error::Argument(format!("unknown trace status '{s}'")))
    }
}

impl Serialize for TraceStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TraceStatus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub i: usize,
    pub gamma: VertexId,
    pub delta: VertexId,
    #[serde(rename = "N")]
    pub big_n: u32,
    pub n: u32,
    pub beta: VertexId,
    pub side: Side,
}

/// The pair at which the construction ran out of budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub i: usize,
    pub gamma: VertexId,
    pub delta: VertexId,
    #[serde(rename = "N")]
    pub big_n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YTrace {
    pub alpha: VertexId,
    #[serde(rename = "N1")]
    pub n1: u32,
    pub budget: u32,
    pub status: TraceStatus,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    /// Set when fewer pairs than requested exist within the budget.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub pairs_truncated: bool,
    /// Present when the first pair is not at distance 1 from `alpha`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_pair_distance: Option<u32>,
}

impl YTrace {
    pub fn is_complete(&self) -> bool {
        self.status == TraceStatus::Complete
    }

    pub fn betas(&self) -> Vec<VertexId> {
        self.steps.iter().map(|s| s.beta.clone()).collect()
    }
}

fn dist(g: &GraphHandle, a: &VertexId, b: &VertexId) -> Result<u32> {
    g.distance(a, b)?
        .ok_or_else(|| Error::Argument(format!("{a} and {b} lie in different components")))
}

/// Runs the distinguishing-set construction on the first `num_pairs`
/// equidistant pairs around `alpha`, radii capped at `n_max`.
pub fn build_distinguishing_set(
    g: &GraphHandle,
    alpha: &VertexId,
    n1: u32,
    num_pairs: usize,
    n_max: u32,
) -> Result<YTrace> {
    if n1 < 3 {
        return Err(Error::Argument(format!("N1 must be at least 3, got {n1}")));
    }
    let pairs = equidistant_pairs(g, alpha, num_pairs, n_max)?;
    let mut trace = YTrace {
        alpha: alpha.clone(),
        n1,
        budget: n_max,
        status: TraceStatus::Complete,
        steps: Vec::with_capacity(pairs.pairs.len()),
        failure: None,
        pairs_truncated: pairs.truncated,
        first_pair_distance: pairs.first_dist().filter(|&d| d != 1),
    };
    let mut prev_beta_dist = None;
    for (k, p) in pairs.pairs.iter().enumerate() {
        let i = k + 1;
        let big_n = match prev_beta_dist {
            None => n1,
            Some(d) => p.dist + d + 1,
        };
        match least_sym_diff(g, &p.gamma, &p.delta, big_n, n_max)? {
            Some(w) => {
                prev_beta_dist = Some(dist(g, alpha, &w.beta)?);
                trace.steps.push(Step {
                    i,
                    gamma: p.gamma.clone(),
                    delta: p.delta.clone(),
                    big_n,
                    n: w.n,
                    beta: w.beta,
                    side: w.side,
                });
            }
            None => {
                trace.status = TraceStatus::BudgetExhausted(i);
                trace.failure = Some(Failure {
                    i,
                    gamma: p.gamma.clone(),
                    delta: p.delta.clone(),
                    big_n,
                });
                break;
            }
        }
    }
    Ok(trace)
}
