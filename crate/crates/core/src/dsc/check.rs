use serde::Serialize;

use crate::dsc::pairs::equidistant_pairs;
use crate::error::Result;
use crate::graph::profile::{least_sym_diff, Side};
use crate::graph::GraphHandle;
use crate::metric::{ball, layers};
use crate::par;
use crate::vertex::VertexId;

/// Outcome of a witness search. `Exhausted` only means none was found
/// within the radius budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum DscWitness {
    Witnessed { n: u32, beta: VertexId, side: Side },
    Exhausted,
}

impl DscWitness {
    pub fn is_witnessed(&self) -> bool {
        matches!(self, DscWitness::Witnessed { .. })
    }
}

/// The least `n` in `(n_start, n_max]` with `S(γ,n) ≠ S(δ,n)` and the
/// canonically least vertex of the symmetric difference.
pub fn dsc_witness(
    g: &GraphHandle,
    gamma: &VertexId,
    delta: &VertexId,
    n_start: u32,
    n_max: u32,
) -> Result<DscWitness> {
    Ok(match least_sym_diff(g, gamma, delta, n_start, n_max)? {
        Some(w) => DscWitness::Witnessed {
            n: w.n,
            beta: w.beta,
            side: w.side,
        },
        None => DscWitness::Exhausted,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairVerdict {
    pub gamma: VertexId,
    pub delta: VertexId,
    pub dist: u32,
    #[serde(flatten)]
    pub witness: DscWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct DscReport {
    pub alpha: VertexId,
    /// Witnesses are searched for in `(window_start, n_max]`.
    pub window_start: u32,
    pub n_max: u32,
    pub pairs_truncated: bool,
    pub all_witnessed: bool,
    pub pairs: Vec<PairVerdict>,
}

impl DscReport {
    pub fn exhausted(&self) -> usize {
        self.pairs.iter().filter(|p| !p.witness.is_witnessed()).count()
    }
}

/// Looks for sphere differences of the first `num_pairs` equidistant pairs
/// in the upper half `(n_max/2, n_max]` of the radius budget, so that a
/// witness is not just an artifact of small radii.
pub fn check_dsc(g: &GraphHandle, alpha: &VertexId, num_pairs: usize, n_max: u32) -> Result<DscReport> {
    let window_start = n_max / 2;
    let pairs = equidistant_pairs(g, alpha, num_pairs, n_max)?;
    let verdicts = par::map(&pairs.pairs, |p| {
        dsc_witness(g, &p.gamma, &p.delta, window_start, n_max).map(|w| PairVerdict {
            gamma: p.gamma.clone(),
            delta: p.delta.clone(),
            dist: p.dist,
            witness: w,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(DscReport {
        alpha: alpha.clone(),
        window_start,
        n_max,
        pairs_truncated: pairs.truncated,
        all_witnessed: verdicts.iter().all(|v| v.witness.is_witnessed()),
        pairs: verdicts,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EqualSpheres {
    pub gamma: VertexId,
    pub delta: VertexId,
    pub n: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinctnessReport {
    pub alpha: VertexId,
    pub radius: u32,
    pub n_max: u32,
    pub vertices: usize,
    pub pairs_checked: usize,
    pub all_distinct: bool,
    pub equal_count: usize,
    /// The first equal instances in `(gamma, delta, n)` order.
    pub equal: Vec<EqualSpheres>,
}

const LISTED: usize = 100;

/// Compares `S(γ,n)` and `S(δ,n)` for all distinct `γ, δ ∈ B(α,R)` and
/// all `1 ≤ n ≤ n_max`.
pub fn sphere_distinctness(g: &GraphHandle, alpha: &VertexId, r: u32, n_max: u32) -> Result<DistinctnessReport> {
    let verts = ball(g, alpha, r)?;
    let spheres: Vec<Vec<Vec<VertexId>>> = par::map(&verts, |v| layers(g, v, n_max))
        .into_iter()
        .collect::<Result<_>>()?;
    let idx: Vec<usize> = (0..verts.len()).collect();
    let equal: Vec<EqualSpheres> = par::map(&idx, |&i| {
        let mut found = Vec::new();
        for j in i + 1..verts.len() {
            let pairs = spheres[i].iter().zip(&spheres[j]).enumerate().skip(1);
            for (n, _) in pairs.filter(|(_, (a, b))| a == b) {
                found.push(EqualSpheres {
                    gamma: verts[i].clone(),
                    delta: verts[j].clone(),
                    n: n as u32,
                });
            }
        }
        found
    })
    .into_iter()
    .flatten()
    .collect();
    let n = verts.len();
    Ok(DistinctnessReport {
        alpha: alpha.clone(),
        radius: r,
        n_max,
        vertices: n,
        pairs_checked: n * n.saturating_sub(1) / 2,
        all_distinct: equal.is_empty(),
        equal_count: equal.len(),
        equal: equal.into_iter().take(LISTED).collect(),
    })
}
