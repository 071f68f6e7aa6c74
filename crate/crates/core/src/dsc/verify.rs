//! Independent re-checking of a [`YTrace`].
//!
//! Membership and all inequalities use closed-form distances. Minimality of
//! each `n_i` is re-derived by explicit breadth-first spheres when the balls
//! involved stay below [`VERIFY_BALL_LIMIT`], and by the profile search
//! otherwise.

use serde::Serialize;

use crate::dsc::trace::{TraceStatus, YTrace};
use crate::error::Error;
use crate::graph::profile::{least_sym_diff, Side};
use crate::graph::GraphHandle;
use crate::metric::Layers;
use crate::vertex::VertexId;

pub const VERIFY_BALL_LIMIT: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    InvalidVertex,
    N1TooSmall,
    StatusMismatch,
    StepIndex,
    PairNotEquidistant,
    PairOrder,
    NMismatch,
    NOutOfRange,
    NotInSymmetricDifference,
    SideMismatch,
    NNotLeast,
    ConsecutiveGap,
    PairwiseGap,
    GapFromFirst,
    Adjacency,
    EqualDistance,
    InsideBall1,
    InsideBallN1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub steps_checked: usize,
    /// Minimality checks that had to fall back to the profile search.
    pub profile_fallbacks: usize,
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

struct Checker<'a> {
    g: &'a GraphHandle,
    out: Vec<Violation>,
    fallbacks: usize,
}

impl Checker<'_> {
    fn flag(&mut self, step: Option<usize>, kind: ViolationKind, detail: String) {
        self.out.push(Violation { step, kind, detail });
    }

    fn dist(&self, a: &VertexId, b: &VertexId) -> Option<u32> {
        self.g.distance(a, b).ok().flatten()
    }

    /// True if some radius in `(lo, hi)` already separates the spheres.
    fn earlier_difference(&mut self, gamma: &VertexId, delta: &VertexId, lo: u32, hi: u32) -> bool {
        if hi <= lo + 1 {
            return false;
        }
        match bfs_difference(self.g, gamma, delta, lo, hi) {
            Ok(found) => found,
            Err(_) => {
                self.fallbacks += 1;
                matches!(least_sym_diff(self.g, gamma, delta, lo, hi - 1), Ok(Some(_)))
            }
        }
    }
}

fn bfs_difference(g: &GraphHandle, gamma: &VertexId, delta: &VertexId, lo: u32, hi: u32) -> Result<bool, Error> {
    let mut a = Layers::with_limit(g, gamma, VERIFY_BALL_LIMIT)?;
    let mut b = Layers::with_limit(g, delta, VERIFY_BALL_LIMIT)?;
    for m in 0..hi {
        let differ = a.next_layer()? != b.next_layer()?;
        if m > lo && differ {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Re-derives every `N_i` and `n_i` of the trace and checks the spacing,
/// non-adjacency and distance conditions on the chosen vertices.
pub fn verify_trace(g: &GraphHandle, t: &YTrace) -> Verdict {
    use ViolationKind::*;
    let mut c = Checker {
        g,
        out: Vec::new(),
        fallbacks: 0,
    };
    let alpha = &t.alpha;
    if !g.contains(alpha) {
        c.flag(None, InvalidVertex, format!("alpha {alpha} is not a vertex of {g}"));
        return finish(c, 0);
    }
    if t.n1 < 3 {
        c.flag(None, N1TooSmall, format!("N1 = {}", t.n1));
    }
    match (t.status, &t.failure) {
        (TraceStatus::Complete, None) => {}
        (TraceStatus::BudgetExhausted(i), Some(f)) if i == t.steps.len() + 1 && f.i == i => {}
        (status, _) => c.flag(
            None,
            StatusMismatch,
            format!("status {status} with {} recorded steps", t.steps.len()),
        ),
    }

    // distance of each beta from alpha, None when unusable
    let mut beta_dist: Vec<Option<u32>> = Vec::with_capacity(t.steps.len());
    let mut prev_key: Option<(u32, &VertexId, &VertexId)> = None;
    for (k, s) in t.steps.iter().enumerate() {
        let i = k + 1;
        let at = Some(i);
        if s.i != i {
            c.flag(at, StepIndex, format!("step recorded as {}", s.i));
        }
        let invalid: Vec<&VertexId> = [&s.gamma, &s.delta, &s.beta].into_iter().filter(|v| !g.contains(v)).collect();
        if !invalid.is_empty() {
            c.flag(at, InvalidVertex, format!("{invalid:?} not in {g}"));
            beta_dist.push(None);
            continue;
        }
        let dg = c.dist(alpha, &s.gamma);
        let dd = c.dist(alpha, &s.delta);
        let pair_dist = match (dg, dd) {
            (Some(a), Some(b)) if a == b && s.gamma < s.delta => a,
            _ => {
                c.flag(at, PairNotEquidistant, format!("d(α,γ) = {dg:?}, d(α,δ) = {dd:?}"));
                dg.unwrap_or(0)
            }
        };
        let key = (pair_dist, &s.gamma, &s.delta);
        match prev_key {
            None => {
                let expected = t.first_pair_distance.unwrap_or(1);
                if pair_dist != expected {
                    c.flag(at, PairOrder, format!("first pair at distance {pair_dist}, expected {expected}"));
                }
            }
            Some(prev) if prev >= key => {
                c.flag(at, PairOrder, "pairs not in (dist, γ, δ) order".into());
            }
            _ => {}
        }
        prev_key = Some(key);

        let expected_n = if i == 1 {
            Some(t.n1)
        } else {
            beta_dist[k - 1].map(|d| pair_dist + d + 1)
        };
        if let Some(e) = expected_n {
            if e != s.big_n {
                c.flag(at, NMismatch, format!("recorded N = {}, recomputed {e}", s.big_n));
            }
        }
        if s.n <= s.big_n || s.n > t.budget {
            c.flag(at, NOutOfRange, format!("n = {} outside ({}, {}]", s.n, s.big_n, t.budget));
        }
        let (bg, bd) = (c.dist(&s.gamma, &s.beta), c.dist(&s.delta, &s.beta));
        let on_gamma = bg == Some(s.n) && bd != Some(s.n);
        let on_delta = bd == Some(s.n) && bg != Some(s.n);
        if !on_gamma && !on_delta {
            c.flag(
                at,
                NotInSymmetricDifference,
                format!("d(γ,β) = {bg:?}, d(δ,β) = {bd:?}, n = {}", s.n),
            );
        } else if (s.side == Side::Gamma) != on_gamma {
            c.flag(at, SideMismatch, format!("recorded side {:?}", s.side));
        }
        if c.earlier_difference(&s.gamma, &s.delta, s.big_n, s.n) {
            c.flag(at, NNotLeast, format!("spheres already differ below n = {}", s.n));
        }
        beta_dist.push(c.dist(alpha, &s.beta));
    }

    let d = &beta_dist;
    let steps = &t.steps;
    for i in 0..steps.len() {
        let Some(di) = d[i] else { continue };
        let step = Some(i + 1);
        if di <= 1 {
            c.flag(step, InsideBall1, format!("d(α,β) = {di}"));
        }
        if di < t.n1 {
            c.flag(step, InsideBallN1, format!("d(α,β) = {di} < N1 = {}", t.n1));
        }
        if i == 0 && di <= 2 {
            c.flag(step, GapFromFirst, format!("d(α,β_1) = {di} is not above 2"));
        }
        if i >= 1 {
            if let Some(dp) = d[i - 1] {
                if di <= dp + 1 {
                    c.flag(step, ConsecutiveGap, format!("d(α,β_i) = {di}, d(α,β_(i-1)) = {dp}"));
                }
            }
            if let Some(d1) = d[0] {
                if di <= d1 + i as u32 {
                    c.flag(step, GapFromFirst, format!("d(α,β_i) = {di}, d(α,β_1) = {d1}"));
                }
            }
        }
        for j in 0..i {
            let Some(dj) = d[j] else { continue };
            if di <= dj + (i - j) as u32 {
                c.flag(step, PairwiseGap, format!("against step {}: {di} vs {dj}", j + 1));
            }
            if di == dj {
                c.flag(step, EqualDistance, format!("same distance as step {}", j + 1));
            }
            if c.dist(&steps[i].beta, &steps[j].beta) == Some(1) {
                c.flag(step, Adjacency, format!("adjacent to β_{}", j + 1));
            }
        }
    }
    finish(c, t.steps.len())
}

fn finish(c: Checker<'_>, steps: usize) -> Verdict {
    Verdict {
        ok: c.out.is_empty(),
        steps_checked: steps,
        profile_fallbacks: c.fallbacks,
        violations: c.out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsc::build_distinguishing_set;
    use crate::graph::parse_family;

    fn line_trace() -> (GraphHandle, YTrace) {
        let z = parse_family("zline").unwrap();
        let t = build_distinguishing_set(&z, &VertexId::Int(0), 3, 5, 128).unwrap();
        (z, t)
    }

    #[test]
    fn builder_output_verifies() {
        let (z, t) = line_trace();
        let v = verify_trace(&z, &t);
        assert!(v.ok, "{:?}", v.violations);
        let c = parse_family("cliquetree(3,2)").unwrap();
        let t = build_distinguishing_set(&c, &c.root(), 3, 10, 128).unwrap();
        assert!(t.is_complete());
        assert!(verify_trace(&c, &t).ok);
    }

    #[test]
    fn neighbor_of_previous_beta_is_caught() {
        let (z, mut t) = line_trace();
        let b1 = t.steps[0].beta.as_int().unwrap();
        t.steps[1].beta = VertexId::Int(b1 - 1);
        let v = verify_trace(&z, &t);
        assert!(v.has(ViolationKind::Adjacency));
    }

    #[test]
    fn shifted_n_is_caught() {
        let (z, mut t) = line_trace();
        t.steps[1].big_n += 1;
        let v = verify_trace(&z, &t);
        assert!(v.has(ViolationKind::NMismatch));
    }

    #[test]
    fn non_least_n_is_caught() {
        let (z, mut t) = line_trace();
        // move the first witness two radii further out along the same side
        let s = &mut t.steps[0];
        s.n += 2;
        s.beta = VertexId::Int(s.beta.as_int().unwrap() - 2);
        let v = verify_trace(&z, &t);
        assert!(v.has(ViolationKind::NNotLeast));
        assert_eq!(v.profile_fallbacks, 0);
    }

    #[test]
    fn bad_status_and_vertices() {
        let (z, mut t) = line_trace();
        t.status = TraceStatus::BudgetExhausted(2);
        assert!(verify_trace(&z, &t).has(ViolationKind::StatusMismatch));
        let tree = parse_family("tree(3)").unwrap();
        assert!(verify_trace(&tree, &line_trace().1).has(ViolationKind::InvalidVertex));
    }
}
