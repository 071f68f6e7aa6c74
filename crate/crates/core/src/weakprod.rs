//! Direct products `tree(r) ⊗ cycle(k)` for odd `k ≥ 7`: level sets, the
//! product coloring built from colorings of the factors, sphere equality
//! for the pair of neighbors sharing a tree vertex, and motion evidence on
//! truncations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::finite::{automorphism_generators, automorphism_group, distinguishing_number_graph, palette, FiniteGraph};
use crate::graph::GraphHandle;
use crate::metric::{ball, sphere, sorted_sym_diff, truncate, Truncation};
use crate::par;
use crate::permgrp::{close_group, find_distinguishing_coloring, Permutation, ENUMERATION_CAP};
use crate::vertex::VertexId;

fn check_k(k: u32) -> Result<()> {
    if k < 7 || k.is_multiple_of(2) {
        return Err(Error::Argument(format!("cycle length must be odd and at least 7, got {k}")));
    }
    Ok(())
}

pub fn product(r: u32, k: u32) -> Result<GraphHandle> {
    GraphHandle::direct(GraphHandle::tree(r)?, GraphHandle::cycle(k)?)
}

/// `H_α = {(α, ζ)}` for each tree vertex `α` of a truncation.
#[derive(Clone, Debug, Serialize)]
pub struct LevelPartition {
    pub levels: BTreeMap<VertexId, Vec<VertexId>>,
}

impl LevelPartition {
    pub fn new(tree_vertices: &[VertexId], k: u32) -> Self {
        let levels = tree_vertices
            .iter()
            .map(|a| {
                let set = (0..k as i64).map(|z| VertexId::pair(a.clone(), VertexId::Int(z))).collect();
                (a.clone(), set)
            })
            .collect();
        LevelPartition { levels }
    }
}

/// `F(α,ζ) = 1` if `f(α) = h(ζ)`, else 2, on the product of the domains.
pub fn weak_product_coloring(f: &Coloring, h: &Coloring) -> Result<Coloring> {
    for (name, c) in [("f", f), ("h", h)] {
        if c.num_colors() > 2 {
            return Err(Error::Coloring(format!("{name} uses more than 2 colors")));
        }
    }
    if h.len() < 7 || h.len().is_multiple_of(2) {
        return Err(Error::Coloring(format!(
            "h must color an odd cycle of length at least 7, got {} vertices",
            h.len()
        )));
    }
    let mut domain = Vec::with_capacity(f.len() * h.len());
    let mut colors = Vec::with_capacity(f.len() * h.len());
    for (a, &fa) in f.domain().iter().zip(f.colors()) {
        for (z, &hz) in h.domain().iter().zip(h.colors()) {
            domain.push(VertexId::pair(a.clone(), z.clone()));
            colors.push(if fa == hz { 1 } else { 2 });
        }
    }
    Coloring::new(domain, colors)
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereCheck {
    pub n: u32,
    pub equal: bool,
    pub matches_closed_form: bool,
    pub size_first: usize,
    pub size_second: usize,
    pub closed_form_size: usize,
    pub sym_diff_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EqualSpheresReport {
    pub r: u32,
    pub k: u32,
    pub first: VertexId,
    pub second: VertexId,
    pub all_equal: bool,
    pub all_match_closed_form: bool,
    /// Least `n` in the range from which every checked radius is equal.
    pub equal_from: Option<u32>,
    pub checks: Vec<SphereCheck>,
}

/// Compares the spheres of `([0],1)` and `([0],k-1)`, the two neighbors of
/// `([],0)` over the tree vertex `[0]`, with each other and with
/// `{(γ,θ) : d_T([0],γ) = n}` for every `n` in `[n_lo, n_hi]`.
pub fn verify_equal_spheres(r: u32, k: u32, n_lo: u32, n_hi: u32) -> Result<EqualSpheresReport> {
    check_k(k)?;
    if n_lo == 0 || n_hi < n_lo {
        return Err(Error::Argument(format!("bad radius range [{n_lo}, {n_hi}]")));
    }
    let g = product(r, k)?;
    let tree = GraphHandle::tree(r)?;
    let beta = VertexId::word([0]);
    let first = VertexId::pair(beta.clone(), VertexId::Int(1));
    let second = VertexId::pair(beta.clone(), VertexId::Int(k as i64 - 1));
    let radii: Vec<u32> = (n_lo..=n_hi).collect();
    let checks = par::map(&radii, |&n| -> Result<SphereCheck> {
        let a = sphere(&g, &first, n)?.members;
        let b = sphere(&g, &second, n)?.members;
        let mut closed: Vec<VertexId> = Vec::new();
        for t in sphere(&tree, &beta, n)?.members {
            for z in 0..k as i64 {
                closed.push(VertexId::pair(t.clone(), VertexId::Int(z)));
            }
        }
        closed.sort();
        Ok(SphereCheck {
            n,
            equal: a == b,
            matches_closed_form: a == closed && b == closed,
            size_first: a.len(),
            size_second: b.len(),
            closed_form_size: closed.len(),
            sym_diff_size: sorted_sym_diff(&a, &b).len(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let equal_from = checks
        .iter()
        .rposition(|c| !c.equal)
        .map_or(Some(n_lo), |i| checks.get(i + 1).map(|c| c.n));
    Ok(EqualSpheresReport {
        r,
        k,
        first,
        second,
        all_equal: checks.iter().all(|c| c.equal),
        all_match_closed_form: checks.iter().all(|c| c.matches_closed_form),
        equal_from,
        checks,
    })
}

/// The product restricted to `B_T([],R) × C_k`, with tree vertices listed in
/// canonical order.
pub fn level_truncation(r: u32, k: u32, radius: u32) -> Result<(Truncation, Vec<VertexId>)> {
    check_k(k)?;
    let g = product(r, k)?;
    let tree = GraphHandle::tree(r)?;
    let tree_vertices = ball(&tree, &tree.root(), radius)?;
    let parts = LevelPartition::new(&tree_vertices, k);
    let verts: Vec<VertexId> = parts.levels.into_values().flatten().collect();
    Ok((Truncation::from_vertices(&g, verts)?, tree_vertices))
}

fn level_of(tr: &Truncation, tree_vertices: &[VertexId]) -> Vec<usize> {
    tr.vertices
        .iter()
        .map(|v| {
            let (a, _) = v.as_pair().expect("product vertex");
            tree_vertices.binary_search(a).expect("level in ball")
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelMotionReport {
    pub r: u32,
    pub k: u32,
    pub radius: u32,
    pub vertices: usize,
    /// Order of the group of automorphisms mapping every level to itself.
    pub level_fixing_order: u128,
    pub non_identity: usize,
    pub min_support: Option<usize>,
    pub max_support: Option<usize>,
    pub interior_levels: usize,
    /// Every non-identity level-fixing automorphism moves a vertex of every
    /// interior level.
    pub every_interior_level_moved: bool,
}

/// Enumerates the automorphisms of the level truncation that fix every level
/// setwise and records how they move the interior levels.
pub fn level_motion_evidence(r: u32, k: u32, radius: u32) -> Result<LevelMotionReport> {
    let (tr, tree_vertices) = level_truncation(r, k, radius)?;
    let levels = level_of(&tr, &tree_vertices);
    let colors: Vec<u32> = levels.iter().map(|&l| l as u32).collect();
    let (gens, order) = automorphism_generators(&tr.graph, Some(&colors));
    if order > ENUMERATION_CAP as u128 {
        return Err(Error::EnumerationCap { cap: ENUMERATION_CAP });
    }
    let group = close_group(tr.graph.order(), gens, ENUMERATION_CAP)?;
    let tree = GraphHandle::tree(r)?;
    let interior: Vec<usize> = (0..tree_vertices.len())
        .filter(|&i| tree.distance(&tree.root(), &tree_vertices[i]).ok().flatten().unwrap_or(u32::MAX) < radius)
        .collect();
    let mut min_support = None;
    let mut max_support = None;
    let mut non_identity = 0;
    let mut every = true;
    for g in group.elements()? {
        if g.is_identity() {
            continue;
        }
        non_identity += 1;
        let support = g.support();
        min_support = Some(min_support.map_or(support.len(), |m: usize| m.min(support.len())));
        max_support = Some(max_support.map_or(support.len(), |m: usize| m.max(support.len())));
        let mut moved = vec![false; tree_vertices.len()];
        for &x in &support {
            moved[levels[x]] = true;
        }
        every &= interior.iter().all(|&l| moved[l]);
    }
    Ok(LevelMotionReport {
        r,
        k,
        radius,
        vertices: tr.graph.order(),
        level_fixing_order: order,
        non_identity,
        min_support,
        max_support,
        interior_levels: interior.len(),
        every_interior_level_moved: every,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub r: u32,
    pub k: u32,
    pub radius: u32,
    pub tree_group_order: u128,
    pub cycle_group_order: u128,
    /// 2-coloring of the tree truncation such that every automorphism
    /// preserving it fixes `B([], R-1)` pointwise.
    pub f: Coloring,
    /// Distinguishing 2-coloring of the cycle.
    pub h: Coloring,
    /// Pairs `(g1, g2)` acting nontrivially on the interior levels.
    pub checked: usize,
    /// How many of those preserve the product coloring.
    pub preserved: usize,
    pub ok: bool,
}

/// Builds `F` from brute-force colorings of the tree truncation and the
/// cycle, then checks it against every level-respecting automorphism
/// `(g1, g2) ∈ Aut(T_R) × Aut(C_k)` that moves a vertex of an interior level.
pub fn coloring_rigidity(r: u32, k: u32, radius: u32) -> Result<RigidityReport> {
    check_k(k)?;
    if radius == 0 {
        return Err(Error::Argument("radius must be at least 1".into()));
    }
    let tree = GraphHandle::tree(r)?;
    let root = tree.root();
    let tr = truncate(&tree, &root, radius)?;
    let tree_group = automorphism_group(&tr.graph, ENUMERATION_CAP)?;
    let interior: Vec<usize> = (0..tr.vertices.len())
        .filter(|&i| tree.distance(&root, &tr.vertices[i]).ok().flatten().unwrap_or(u32::MAX) < radius)
        .collect();
    let f_colors = find_distinguishing_coloring(tr.graph.order(), tree_group.elements()?, 2, Some(&interior))
        .ok_or_else(|| Error::Coloring("no interior-distinguishing 2-coloring of the tree truncation".into()))?;
    let cycle = FiniteGraph::cycle(k as usize);
    let cycle_group = automorphism_group(&cycle, ENUMERATION_CAP)?;
    let h_colors = distinguishing_number_graph(&cycle, 2, ENUMERATION_CAP)?
        .witness
        .ok_or_else(|| Error::Coloring(format!("cycle({k}) has no distinguishing 2-coloring")))?;
    let f = Coloring::new(tr.vertices.clone(), f_colors.clone())?;
    let h = Coloring::new((0..k as i64).map(VertexId::Int).collect(), h_colors.clone())?;
    let big_f = weak_product_coloring(&f, &h)?;
    // pair (a, z) sits at index a * k + z in the product domain
    let kk = k as usize;
    let color = |a: usize, z: usize| big_f.colors()[a * kk + z];

    let mut interior_mask = vec![false; tr.vertices.len()];
    for &i in &interior {
        interior_mask[i] = true;
    }
    let tree_elems = tree_group.elements()?;
    let cycle_elems = cycle_group.elements()?;
    let counts = par::map(tree_elems, |g1: &Permutation| {
        let g1_trivial_inside = interior.iter().all(|&x| g1.apply(x) == x);
        let mut checked = 0usize;
        let mut preserved = 0usize;
        for g2 in cycle_elems {
            if g1_trivial_inside && g2.is_identity() {
                continue;
            }
            checked += 1;
            let keeps = (0..tr.vertices.len()).all(|a| (0..kk).all(|z| color(g1.apply(a), g2.apply(z)) == color(a, z)));
            preserved += usize::from(keeps);
        }
        (checked, preserved)
    });
    let (checked, preserved) = counts.into_iter().fold((0, 0), |(c, p), (a, b)| (c + a, p + b));
    Ok(RigidityReport {
        r,
        k,
        radius,
        tree_group_order: tree_group.order().unwrap_or(0),
        cycle_group_order: cycle_group.order().unwrap_or(0),
        f,
        h,
        checked,
        preserved,
        ok: preserved == 0,
    })
}

/// DOT for the level truncation with one cluster per level and optional
/// node fills.
pub fn level_dot(r: u32, k: u32, radius: u32, fill: Option<&Coloring>) -> Result<String> {
    let (tr, tree_vertices) = level_truncation(r, k, radius)?;
    let levels = level_of(&tr, &tree_vertices);
    let mut out = String::from("graph G {\n");
    for (l, a) in tree_vertices.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{l} {{\n    label=\"H {a}\";");
        for (i, v) in tr.vertices.iter().enumerate() {
            if levels[i] != l {
                continue;
            }
            match fill.and_then(|c| c.get(v)) {
                Some(c) => {
                    let _ = writeln!(out, "    {i} [label=\"{v}\", style=filled, fillcolor=\"{}\"];", palette(c));
                }
                None => {
                    let _ = writeln!(out, "    {i} [label=\"{v}\"];");
                }
            }
        }
        out.push_str("  }\n");
    }
    for (u, v) in tr.graph.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    Ok(out)
}
