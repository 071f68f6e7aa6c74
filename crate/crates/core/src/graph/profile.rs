//! Distance-profile search.
//!
//! Spheres of the tree-like families grow exponentially, so sphere
//! symmetric differences at large radii cannot be listed. Instead, for a
//! short list of anchor vertices we compute the finite set of *profiles*
//! (the parity-distance vector to every anchor, cut off at a bound) that
//! occur in the graph, together with the canonically least vertex realising
//! each profile. Membership in `S(γ,n) △ S(δ,n)` depends only on the profile
//! with respect to `[γ, δ]`, so the least witness is a minimum over profiles.
//!
//! * Finite families enumerate their vertices.
//! * The line scans the window around the anchors.
//! * Trees and clique trees split into the hull (prefixes of the anchors and
//!   the root) and hanging branches, whose profiles are shifts of the profile
//!   of the branch root.
//! * Products combine factor profiles: Cartesian by min-plus on parities,
//!   direct by coordinatewise max. The least pair with a combined profile is
//!   the pair of least factor vertices, since pairs are ordered
//!   lexicographically.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Family, GraphHandle, Parity, NONE};
use crate::vertex::VertexId;

pub(crate) type Profile = Vec<Parity>;

/// Which sphere the witness belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `β ∈ S(γ,n) ∖ S(δ,n)`
    Gamma,
    /// `β ∈ S(δ,n) ∖ S(γ,n)`
    Delta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymDiffWitness {
    pub n: u32,
    pub beta: VertexId,
    pub side: Side,
}

fn relevant(p: &[Parity]) -> bool {
    p.iter().any(|x| x.even != NONE || x.odd != NONE)
}

fn insert(map: &mut BTreeMap<Profile, VertexId>, profile: Profile, v: VertexId) {
    match map.get_mut(&profile) {
        Some(best) if *best <= v => {}
        Some(best) => *best = v,
        None => {
            map.insert(profile, v);
        }
    }
}

/// Every profile (cut off at `bound`) with at least one component within the
/// bound, mapped to the least vertex that has it.
pub(crate) fn profile_map(
    g: &GraphHandle,
    anchors: &[VertexId],
    bound: u32,
) -> BTreeMap<Profile, VertexId> {
    let mut map = BTreeMap::new();
    let profile_of = |x: &VertexId| -> Profile {
        anchors
            .iter()
            .map(|a| g.parity_unchecked(a, x).saturate(bound))
            .collect()
    };
    match g.family() {
        Family::Cycle { .. } | Family::Path { .. } | Family::Complete { .. } | Family::Explicit(_) => {
            for x in g.vertices().unwrap() {
                let p = profile_of(&x);
                if relevant(&p) {
                    insert(&mut map, p, x);
                }
            }
        }
        Family::ZLine => {
            let ints: Vec<i64> = anchors.iter().map(|a| a.as_int().unwrap()).collect();
            let lo = ints.iter().min().unwrap() - bound as i64 - 1;
            let hi = ints.iter().max().unwrap() + bound as i64 + 1;
            for i in lo..=hi {
                let x = VertexId::Int(i);
                let p = profile_of(&x);
                if relevant(&p) {
                    insert(&mut map, p, x);
                }
            }
        }
        Family::Tree { r } => {
            let words: Vec<&Vec<u32>> = anchors
                .iter()
                .map(|a| match a {
                    VertexId::Word(w) => &w.0,
                    _ => unreachable!(),
                })
                .collect();
            let mut hull: BTreeSet<Vec<u32>> = BTreeSet::new();
            for w in &words {
                for k in 0..=w.len() {
                    hull.insert(w[..k].to_vec());
                }
            }
            hull.insert(Vec::new());
            for h in &hull {
                let hv = VertexId::word(h.clone());
                let p = profile_of(&hv);
                if relevant(&p) {
                    insert(&mut map, p, hv);
                }
                let children = if h.is_empty() { *r } else { r - 1 };
                let off = (0..children).find(|&c| {
                    let mut child = h.clone();
                    child.push(c);
                    !hull.contains(&child)
                });
                if let Some(c) = off {
                    let mut base = h.clone();
                    base.push(c);
                    let base_d: Vec<u32> = words
                        .iter()
                        .map(|a| crate::graph::tree_distance(a, &base))
                        .collect();
                    branch(&mut map, &base_d, bound, Parity::bipartite, |j| {
                        let mut w = base.clone();
                        w.extend(std::iter::repeat_n(0, j as usize));
                        VertexId::word(w)
                    });
                }
            }
        }
        Family::CliqueTree { m, t } => {
            let words: Vec<&Vec<(u32, u32)>> = anchors
                .iter()
                .map(|a| match a {
                    VertexId::Clique(w) => &w.0,
                    _ => unreachable!(),
                })
                .collect();
            let mut hull: BTreeSet<Vec<(u32, u32)>> = BTreeSet::new();
            for w in &words {
                for k in 0..=w.len() {
                    hull.insert(w[..k].to_vec());
                }
            }
            hull.insert(Vec::new());
            let rule: fn(u32) -> Parity = if *m >= 3 {
                Parity::triangulated
            } else {
                Parity::bipartite
            };
            for h in &hull {
                let hv = VertexId::clique(h.clone());
                let p = profile_of(&hv);
                if relevant(&p) {
                    insert(&mut map, p, hv);
                }
                let cliques = if h.is_empty() { *t } else { t - 1 };
                for c in 0..cliques {
                    let off = (0..m - 1).find(|&s| {
                        let mut x = h.clone();
                        x.push((c, s));
                        !hull.contains(&x)
                    });
                    let Some(s) = off else { continue };
                    let mut base = h.clone();
                    base.push((c, s));
                    let base_d: Vec<u32> = words
                        .iter()
                        .map(|a| crate::graph::clique_tree_distance(a, &base))
                        .collect();
                    branch(&mut map, &base_d, bound, rule, |j| {
                        let mut w = base.clone();
                        w.extend(std::iter::repeat_n((0, 0), j as usize));
                        VertexId::clique(w)
                    });
                }
            }
        }
        Family::Cart(a, b) | Family::Direct(a, b) => {
            let (xs, ys): (Vec<VertexId>, Vec<VertexId>) = anchors
                .iter()
                .map(|v| {
                    let (x, y) = v.as_pair().unwrap();
                    (x.clone(), y.clone())
                })
                .unzip();
            let left = profile_map(a, &xs, bound);
            let right = profile_map(b, &ys, bound);
            let cartesian = matches!(g.family(), Family::Cart(..));
            for (p1, v1) in &left {
                for (p2, v2) in &right {
                    let p: Profile = p1
                        .iter()
                        .zip(p2)
                        .map(|(&x, &y)| {
                            if cartesian {
                                Parity::cartesian(x, y).saturate(bound)
                            } else {
                                Parity::direct(x, y).saturate(bound)
                            }
                        })
                        .collect();
                    if relevant(&p) {
                        insert(&mut map, p, VertexId::pair(v1.clone(), v2.clone()));
                    }
                }
            }
        }
    }
    map
}

// A hanging branch: at depth j below its root every vertex is j further from
// every anchor, and the least one is the root followed by zero letters.
fn branch(
    map: &mut BTreeMap<Profile, VertexId>,
    base: &[u32],
    bound: u32,
    rule: impl Fn(u32) -> Parity,
    vertex_at: impl Fn(u32) -> VertexId,
) {
    let nearest = *base.iter().min().unwrap();
    if nearest > bound {
        return;
    }
    for j in 0..=(bound - nearest) {
        let p: Profile = base.iter().map(|&d| rule(d + j).saturate(bound)).collect();
        insert(map, p, vertex_at(j));
    }
}

/// The least radius `n` with `lo < n ≤ hi` at which `S(γ,n) ≠ S(δ,n)`,
/// together with the canonically least vertex of the symmetric difference.
pub fn least_sym_diff(
    g: &GraphHandle,
    gamma: &VertexId,
    delta: &VertexId,
    lo: u32,
    hi: u32,
) -> Result<Option<SymDiffWitness>> {
    g.check(gamma)?;
    g.check(delta)?;
    if gamma == delta {
        return Err(Error::Argument("γ and δ must be distinct".into()));
    }
    if hi <= lo {
        return Ok(None);
    }
    let map = profile_map(g, &[gamma.clone(), delta.clone()], hi);
    let mut best: Option<SymDiffWitness> = None;
    for (p, v) in &map {
        let dg = p[0].distance();
        let dd = p[1].distance();
        if dg == dd {
            continue;
        }
        for (d, side) in [(dg, Side::Gamma), (dd, Side::Delta)] {
            let Some(n) = d else { continue };
            if n <= lo || n > hi {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => (n, v) < (b.n, &b.beta),
            };
            if better {
                best = Some(SymDiffWitness {
                    n,
                    beta: v.clone(),
                    side,
                });
            }
        }
    }
    Ok(best)
}
