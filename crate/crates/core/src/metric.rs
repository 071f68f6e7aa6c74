//! Budgeted breadth-first metric queries on any [`GraphHandle`].
//!
//! All sets come back sorted in canonical vertex order.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::FiniteGraph;
use crate::graph::GraphHandle;
use crate::vertex::VertexId;

/// Largest number of vertices a single breadth-first search may visit.
pub const BALL_LIMIT: usize = 4_000_000;

/// Result of a capped distance query. `Unreached` only says the cap ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reach {
    Within(u32),
    Unreached,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereSet {
    pub center: VertexId,
    pub radius: u32,
    pub members: Vec<VertexId>,
}

/// Breadth-first layers around a center, one sorted layer at a time.
pub struct Layers<'g> {
    graph: &'g GraphHandle,
    seen: HashSet<VertexId>,
    frontier: Vec<VertexId>,
    started: bool,
    limit: usize,
}

impl<'g> Layers<'g> {
    pub fn new(graph: &'g GraphHandle, center: &VertexId) -> Result<Self> {
        Layers::with_limit(graph, center, BALL_LIMIT)
    }

    /// Like `new`, but fails once more than `limit` vertices have been seen.
    pub fn with_limit(graph: &'g GraphHandle, center: &VertexId, limit: usize) -> Result<Self> {
        graph.check(center)?;
        Ok(Layers {
            graph,
            seen: HashSet::from([center.clone()]),
            frontier: vec![center.clone()],
            started: false,
            limit,
        })
    }

    /// The next layer; empty once the component is exhausted.
    pub fn next_layer(&mut self) -> Result<&[VertexId]> {
        if !self.started {
            self.started = true;
            return Ok(&self.frontier);
        }
        let mut next = Vec::new();
        for v in &self.frontier {
            for u in self.graph.neighbors_unchecked(v) {
                if !self.seen.contains(&u) {
                    self.seen.insert(u.clone());
                    next.push(u);
                }
            }
            if self.seen.len() > self.limit {
                return Err(Error::BallTooLarge { limit: self.limit });
            }
        }
        next.sort();
        self.frontier = next;
        Ok(&self.frontier)
    }
}

/// Spheres of radius `0..=r` around `center`.
pub fn layers(g: &GraphHandle, center: &VertexId, r: u32) -> Result<Vec<Vec<VertexId>>> {
    let mut it = Layers::new(g, center)?;
    let mut out = Vec::with_capacity(r as usize + 1);
    for _ in 0..=r {
        out.push(it.next_layer()?.to_vec());
    }
    Ok(out)
}

/// Distance by breadth-first search, giving up beyond `cap`.
pub fn bfs_distance(g: &GraphHandle, u: &VertexId, v: &VertexId, cap: u32) -> Result<Option<u32>> {
    g.check(v)?;
    let mut it = Layers::new(g, u)?;
    for d in 0..=cap {
        let layer = it.next_layer()?;
        if layer.binary_search(v).is_ok() {
            return Ok(Some(d));
        }
        if layer.is_empty() {
            break;
        }
    }
    Ok(None)
}

/// Exact distance if it is at most `cap`, `Unreached` otherwise.
pub fn distance(g: &GraphHandle, u: &VertexId, v: &VertexId, cap: u32) -> Result<Reach> {
    Ok(match g.distance(u, v)? {
        Some(d) if d <= cap => Reach::Within(d),
        _ => Reach::Unreached,
    })
}

pub fn sphere(g: &GraphHandle, center: &VertexId, n: u32) -> Result<SphereSet> {
    let mut all = layers(g, center, n)?;
    Ok(SphereSet {
        center: center.clone(),
        radius: n,
        members: all.pop().unwrap(),
    })
}

pub fn ball(g: &GraphHandle, center: &VertexId, r: u32) -> Result<Vec<VertexId>> {
    let mut out: Vec<VertexId> = layers(g, center, r)?.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// `S(γ,n) △ S(δ,n)` by explicit breadth-first search.
pub fn sphere_sym_diff(
    g: &GraphHandle,
    gamma: &VertexId,
    delta: &VertexId,
    n: u32,
) -> Result<Vec<VertexId>> {
    let a = sphere(g, gamma, n)?.members;
    let b = sphere(g, delta, n)?.members;
    Ok(sorted_sym_diff(&a, &b))
}

pub(crate) fn sorted_sym_diff(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A finite induced subgraph together with the vertices it came from.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub graph: FiniteGraph,
    /// `vertices[i]` is the original name of vertex `i`, in canonical order.
    pub vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
}

impl Truncation {
    pub fn from_vertices(g: &GraphHandle, vertices: Vec<VertexId>) -> Result<Self> {
        let index: HashMap<VertexId, usize> =
            vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            for u in g.neighbors(v)? {
                if let Some(&j) = index.get(&u) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Ok(Truncation {
            graph: FiniteGraph::new(vertices.len(), edges)?,
            vertices,
            index,
        })
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn labels(&self) -> Vec<String> {
        self.vertices.iter().map(ToString::to_string).collect()
    }
}

/// Induced subgraph on `B(α, R)`, renumbered in canonical order.
pub fn truncate(g: &GraphHandle, alpha: &VertexId, r: u32) -> Result<Truncation> {
    Truncation::from_vertices(g, ball(g, alpha, r)?)
}

/// JSON shape for sphere queries; members are omitted above `threshold`.
#[derive(Clone, Debug, Serialize)]
pub struct SphereReport {
    pub center: VertexId,
    pub radius: u32,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<VertexId>>,
}

impl SphereReport {
    pub fn new(s: SphereSet, threshold: usize) -> Self {
        let size = s.members.len();
        SphereReport {
            center: s.center,
            radius: s.radius,
            size,
            members: (size <= threshold).then_some(s.members),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_family;
    use proptest::prelude::*;

    fn g(s: &str) -> GraphHandle {
        parse_family(s).unwrap()
    }

    fn v(s: &str) -> VertexId {
        s.parse().unwrap()
    }

    // Independent oracle: all tree words of length <= n, filtered by the
    // path-through-common-prefix distance computed letter by letter.
    fn tree_sphere_oracle(r: u32, n: usize) -> usize {
        let mut words: Vec<Vec<u32>> = vec![vec![]];
        let mut count = usize::from(n == 0);
        for len in 1..=n {
            let mut next = Vec::new();
            for w in &words {
                let choices = if w.is_empty() { r } else { r - 1 };
                for c in 0..choices {
                    let mut x = w.clone();
                    x.push(c);
                    next.push(x);
                }
            }
            if len == n {
                count = next.len();
            }
            words = next;
        }
        count
    }

    #[test]
    fn trivial_spheres_and_balls() {
        for fam in ["tree(3)", "zline", "cycle(7)", "cart(zline,tree(3))"] {
            let h = g(fam);
            let root = h.root();
            assert_eq!(sphere(&h, &root, 0).unwrap().members, vec![root.clone()]);
            assert_eq!(ball(&h, &root, 0).unwrap(), vec![root.clone()]);
            assert_eq!(distance(&h, &root, &root, 0).unwrap(), Reach::Within(0));
        }
    }

    #[test]
    fn tree_sphere_sizes() {
        let t = g("tree(3)");
        let oracle = tree_sphere_oracle(3, 4);
        assert_eq!(oracle, 24);
        assert_eq!(sphere(&t, &t.root(), 4).unwrap().members.len(), oracle);
        assert_eq!(ball(&t, &t.root(), 2).unwrap().len(), 10);
    }

    #[test]
    fn line_and_cycle() {
        let z = g("zline");
        assert_eq!(sphere(&z, &v("0"), 5).unwrap().members, vec![v("-5"), v("5")]);
        assert_eq!(sphere_sym_diff(&z, &v("0"), &v("2"), 1).unwrap(), vec![v("-1"), v("3")]);
        assert!(sphere_sym_diff(&z, &v("4"), &v("4"), 3).unwrap().is_empty());
        let c = g("cycle(7)");
        assert_eq!(ball(&c, &v("3"), 3).unwrap().len(), 7);
    }

    #[test]
    fn capped_distance() {
        let c = g("cart(zline,zline)");
        assert_eq!(distance(&c, &v("(0,0)"), &v("(2,3)"), 10).unwrap(), Reach::Within(5));
        let d = g("direct(tree(3),cycle(7))");
        assert_eq!(distance(&d, &v("([],0)"), &v("([0],1)"), 0).unwrap(), Reach::Unreached);
        assert_eq!(distance(&d, &v("([],0)"), &v("([0],0)"), 4).unwrap(), Reach::Unreached);
        assert_eq!(bfs_distance(&d, &v("([],0)"), &v("([0],0)"), 9).unwrap(), Some(7));
    }

    #[test]
    fn weak_product_sphere_equality_starts_after_k() {
        // Plain breadth-first search: the pair still differs at n = 7
        // and agrees from n = 8 on.
        let d = g("direct(tree(3),cycle(7))");
        let (a, b) = (v("([0],1)"), v("([0],6)"));
        assert_eq!(sphere_sym_diff(&d, &a, &b, 7).unwrap().len(), 126);
        assert!(sphere_sym_diff(&d, &a, &b, 8).unwrap().is_empty());
        assert!(sphere_sym_diff(&d, &a, &b, 9).unwrap().is_empty());
    }

    #[test]
    fn truncations() {
        let t = g("tree(3)");
        let one = truncate(&t, &t.root(), 0).unwrap();
        assert_eq!((one.graph.order(), one.graph.edge_count()), (1, 0));
        let star = truncate(&t, &t.root(), 1).unwrap();
        assert_eq!(star.graph.order(), 4);
        assert_eq!(star.graph.degree(0), 3);
        assert!((1..4).all(|i| star.graph.degree(i) == 1));
        let c = truncate(&g("cycle(7)"), &v("0"), 3).unwrap();
        assert_eq!(c.graph, FiniteGraph::cycle(7));
    }

    #[test]
    fn sphere_report_threshold() {
        let t = g("tree(3)");
        let s = sphere(&t, &t.root(), 3).unwrap();
        let json = serde_json::to_string(&SphereReport::new(s.clone(), 5)).unwrap();
        assert_eq!(json, r#"{"center":"[]","radius":3,"size":12}"#);
        assert!(SphereReport::new(s, 100).members.is_some());
    }

    fn families() -> Vec<GraphHandle> {
        [
            "tree(3)",
            "zline",
            "cliquetree(3,2)",
            "cart(zline,zline)",
            "cart(tree(3),zline)",
            "direct(tree(3),cycle(7))",
            "cycle(9)",
        ]
        .iter()
        .map(|s| g(s))
        .collect()
    }

    // a deterministic walk of `steps` from the root, driven by `picks`
    fn walk(h: &GraphHandle, picks: &[usize]) -> VertexId {
        let mut cur = h.root();
        for &p in picks {
            let nb = h.neighbors(&cur).unwrap();
            cur = nb[p % nb.len()].clone();
        }
        cur
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn neighbor_symmetry(fam in 0usize..7, picks in proptest::collection::vec(0usize..64, 0..6)) {
            let h = &families()[fam];
            let x = walk(h, &picks);
            let nb = h.neighbors(&x).unwrap();
            prop_assert!(!nb.contains(&x));
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            for u in nb {
                prop_assert!(h.neighbors(&u).unwrap().contains(&x));
            }
        }

        #[test]
        fn triangle_inequality(fam in 0usize..7,
                               a in proptest::collection::vec(0usize..64, 0..5),
                               b in proptest::collection::vec(0usize..64, 0..5),
                               c in proptest::collection::vec(0usize..64, 0..5)) {
            let h = &families()[fam];
            let (x, y, z) = (walk(h, &a), walk(h, &b), walk(h, &c));
            let d = |p: &VertexId, q: &VertexId| h.distance(p, q).unwrap().unwrap();
            prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
            prop_assert_eq!(d(&x, &y), d(&y, &x));
        }
    }

    #[test]
    fn ball_layer_properties() {
        for h in families() {
            let root = h.root();
            let ls = layers(&h, &root, 4).unwrap();
            for n in 1..=4u32 {
                let s = sphere(&h, &root, n).unwrap().members;
                let outer = ball(&h, &root, n).unwrap();
                let inner = ball(&h, &root, n - 1).unwrap();
                let diff: Vec<VertexId> =
                    outer.into_iter().filter(|x| inner.binary_search(x).is_err()).collect();
                assert_eq!(s, diff, "{h}");
                assert_eq!(s, ls[n as usize]);
            }
            // |d(α,u) − d(α,v)| ≤ 1 along every edge of the ball
            let ball3 = ball(&h, &root, 3).unwrap();
            for u in &ball3 {
                let du = h.distance(&root, u).unwrap().unwrap();
                for w in h.neighbors(u).unwrap() {
                    let dw = h.distance(&root, &w).unwrap().unwrap();
                    assert!(du.abs_diff(dw) <= 1);
                }
            }
        }
    }

    #[test]
    fn equal_spheres_stay_equal() {
        // wherever a pair's spheres coincide, they keep coinciding; this
        // needs an infinite graph, in cycle(8) the spheres of 0 and 4
        // agree at 2 and differ at 3
        let cases = [
            ("direct(tree(3),cycle(7))", "([0],1)", "([0],6)"),
            ("direct(tree(3),cycle(9))", "([0],1)", "([0],8)"),
            ("complete(5)", "0", "1"),
        ];
        for (fam, a, b) in cases {
            let h = g(fam);
            let (a, b) = (v(a), v(b));
            let first = (1..12)
                .find(|&n| sphere_sym_diff(&h, &a, &b, n).unwrap().is_empty())
                .unwrap();
            for m in first..=first + 5 {
                assert!(sphere_sym_diff(&h, &a, &b, m).unwrap().is_empty(), "{fam} at {m}");
            }
        }
    }
}
