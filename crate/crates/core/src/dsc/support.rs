use serde::Serialize;

use crate::coloring::Coloring;
use crate::dsc::trace::YTrace;
use crate::error::{Error, Result};
use crate::finite::{automorphism_generators, find_automorphism};
use crate::graph::GraphHandle;
use crate::metric::{ball, sphere, sorted_sym_diff, truncate};
use crate::par;
use crate::permgrp::orbits_of;
use crate::vertex::VertexId;

#[derive(Clone, Debug, Serialize)]
pub struct TwoColoring {
    pub coloring: Coloring,
    /// No `ζ ∈ Y′ ∖ {α}` inside the ball has its closed neighborhood in `Y′`.
    pub no_closed_neighborhood_in_y: bool,
}

/// Colors `B(α,R)` with 2 on `Y′ = Y ∪ B(α,1)` and 1 elsewhere.
pub fn emit_two_coloring(g: &GraphHandle, t: &YTrace, r: u32) -> Result<TwoColoring> {
    if !t.is_complete() {
        return Err(Error::IncompleteTrace);
    }
    let alpha = &t.alpha;
    let mut y_prime = ball(g, alpha, 1)?;
    y_prime.extend(t.betas());
    y_prime.sort();
    y_prime.dedup();
    let domain = ball(g, alpha, r)?;
    let colors = domain
        .iter()
        .map(|v| if y_prime.binary_search(v).is_ok() { 2 } else { 1 })
        .collect();
    let mut ok = true;
    for z in &y_prime {
        if z == alpha || domain.binary_search(z).is_err() {
            continue;
        }
        if g.neighbors(z)?.iter().all(|u| y_prime.binary_search(u).is_ok()) {
            ok = false;
        }
    }
    Ok(TwoColoring {
        coloring: Coloring::new(domain, colors)?,
        no_closed_neighborhood_in_y: ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportViolation {
    pub gamma: VertexId,
    pub delta: VertexId,
    pub n: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub alpha: VertexId,
    pub radius: u32,
    pub vertices: usize,
    /// Equidistant pairs `(γ, δ)` in the truncation.
    pub pairs: usize,
    /// Pairs some automorphism fixing `α` maps onto each other.
    pub swappable_pairs: usize,
    /// `(pair, n)` instances with `n + d(α,γ) ≤ R` and a nonempty witness set.
    pub witnessed_instances: usize,
    pub ok: bool,
    pub violations: Vec<SupportViolation>,
}

/// For every equidistant pair `γ, δ` of `B(α,R)` and every radius `n` with
/// `n + d(α,γ) ≤ R` whose witness set `W = S(γ,n) △ S(δ,n)` is nonempty,
/// confirms that no automorphism of the truncation fixes `α`, maps `γ` to
/// `δ` and fixes `W` pointwise.
pub fn finite_support_check(g: &GraphHandle, alpha: &VertexId, r: u32) -> Result<SupportReport> {
    let tr = truncate(g, alpha, r)?;
    let a = tr.index_of(alpha).expect("center is in its ball");
    let dist = tr.graph.bfs(a);
    let mut jobs = Vec::new();
    for x in 0..tr.vertices.len() {
        for y in x + 1..tr.vertices.len() {
            if dist[x] == dist[y] && dist[x] != Some(0) {
                jobs.push((x, y, dist[x].unwrap()));
            }
        }
    }
    let mut fix_alpha = vec![0u32; tr.vertices.len()];
    fix_alpha[a] = 1;
    let (gens, _) = automorphism_generators(&tr.graph, Some(&fix_alpha));
    let mut orbit = vec![0usize; tr.vertices.len()];
    for (i, o) in orbits_of(tr.vertices.len(), &gens).iter().enumerate() {
        for &v in o {
            orbit[v] = i;
        }
    }
    let results = par::map(&jobs, |&(x, y, d)| -> Result<(bool, usize, Vec<SupportViolation>)> {
        let swappable = orbit[x] == orbit[y];
        let mut instances = 0;
        let mut bad = Vec::new();
        for n in 1..=r.saturating_sub(d) {
            let w = sorted_sym_diff(&sphere(g, &tr.vertices[x], n)?.members, &sphere(g, &tr.vertices[y], n)?.members);
            if w.is_empty() {
                continue;
            }
            instances += 1;
            if !swappable {
                continue;
            }
            // α and every vertex of W get a color of their own
            let mut colors = fix_alpha.clone();
            for (c, v) in w.iter().enumerate() {
                let i = tr.index_of(v).expect("n + d(α,γ) ≤ R keeps W inside the ball");
                colors[i] = c as u32 + 2;
            }
            if find_automorphism(&tr.graph, Some(&colors), &[(x, y)]).is_some() {
                bad.push(SupportViolation {
                    gamma: tr.vertices[x].clone(),
                    delta: tr.vertices[y].clone(),
                    n,
                });
            }
        }
        Ok((swappable, instances, bad))
    });
    let mut report = SupportReport {
        alpha: alpha.clone(),
        radius: r,
        vertices: tr.vertices.len(),
        pairs: jobs.len(),
        swappable_pairs: 0,
        witnessed_instances: 0,
        ok: true,
        violations: Vec::new(),
    };
    for res in results {
        let (swappable, instances, bad) = res?;
        report.swappable_pairs += usize::from(swappable);
        report.witnessed_instances += instances;
        report.violations.extend(bad);
    }
    report.ok = report.violations.is_empty();
    Ok(report)
}
