use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Parity;

/// A simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Debug)]
pub struct FiniteGraph {
    adj: Vec<Vec<usize>>,
    parity: OnceLock<Vec<Vec<Parity>>>,
}

impl Clone for FiniteGraph {
    fn clone(&self) -> Self {
        FiniteGraph {
            adj: self.adj.clone(),
            parity: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for FiniteGraph {}

/// Edge-list interchange form: `{"n": 4, "edges": [[0,1],[1,2]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl FiniteGraph {
    /// Builds a graph from an edge list. Loops and out-of-range endpoints are
    /// rejected; repeated edges collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::GraphInput(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::GraphInput(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FiniteGraph {
            adj,
            parity: OnceLock::new(),
        })
    }

    pub fn cycle(k: usize) -> Self {
        FiniteGraph::new(k, (0..k).map(|i| (i, (i + 1) % k))).expect("cycle of length >= 3")
    }

    pub fn path(n: usize) -> Self {
        FiniteGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        FiniteGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        FiniteGraph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    pub fn is_connected(&self) -> bool {
        if self.order() == 0 {
            return true;
        }
        self.bfs(0).iter().all(Option::is_some)
    }

    /// Distances from `s`; `None` for unreachable vertices.
    pub fn bfs(&self, s: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Shortest even and odd walk lengths between `u` and `v`.
    pub fn parity_distance(&self, u: usize, v: usize) -> Parity {
        self.parity.get_or_init(|| self.all_parity())[u][v]
    }

    // BFS on the bipartite double cover, one source at a time.
    fn all_parity(&self) -> Vec<Vec<Parity>> {
        let n = self.order();
        let mut out = Vec::with_capacity(n);
        for s in 0..n {
            let mut dist = vec![u32::MAX; 2 * n];
            dist[2 * s] = 0;
            let mut queue = VecDeque::from([2 * s]);
            while let Some(state) = queue.pop_front() {
                let (v, p) = (state / 2, state % 2);
                for &u in &self.adj[v] {
                    let next = 2 * u + (1 - p);
                    if dist[next] == u32::MAX {
                        dist[next] = dist[state] + 1;
                        queue.push_back(next);
                    }
                }
            }
            out.push(
                (0..n)
                    .map(|v| Parity {
                        even: dist[2 * v],
                        odd: dist[2 * v + 1],
                    })
                    .collect(),
            );
        }
        out
    }

    /// Induced subgraph on `keep` (renumbered in the given order).
    pub fn induced(&self, keep: &[usize]) -> FiniteGraph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        FiniteGraph::new(keep.len(), edges).unwrap()
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.order(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_edge_list(list: &EdgeList) -> Result<Self> {
        FiniteGraph::new(list.n, list.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let list: EdgeList = serde_json::from_str(text)?;
        FiniteGraph::from_edge_list(&list)
    }

    /// Reads the edge statements of an undirected DOT graph. Attribute lists
    /// and graph/node/edge default statements are ignored. If every node name
    /// is a non-negative integer those integers are the vertex indices;
    /// otherwise vertices are numbered by first appearance.
    pub fn from_dot(text: &str) -> Result<Self> {
        let body = match (text.find('{'), text.rfind('}')) {
            (Some(a), Some(b)) if a < b => &text[a + 1..b],
            _ => return Err(Error::GraphInput("DOT input needs a { ... } body".into())),
        };
        let mut cleaned = String::with_capacity(body.len());
        let mut depth = 0usize;
        for ch in body.chars() {
            match ch {
                '[' => depth += 1,
                ']' => depth = depth.saturating_sub(1),
                _ if depth == 0 => cleaned.push(ch),
                _ => {}
            }
        }
        let mut names: Vec<String> = Vec::new();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut lookup: BTreeMap<String, usize> = BTreeMap::new();
        for stmt in cleaned.split([';', '\n']) {
            let stmt = stmt.trim();
            if stmt.is_empty() || stmt.contains('=') {
                continue;
            }
            if matches!(stmt, "node" | "edge" | "graph") {
                continue;
            }
            if stmt.contains("->") {
                return Err(Error::GraphInput("directed edges are not supported".into()));
            }
            let mut chain = Vec::new();
            for token in stmt.split("--") {
                let token = token.trim().trim_matches('"').to_string();
                if token.is_empty() {
                    return Err(Error::GraphInput(format!("malformed statement '{stmt}'")));
                }
                let id = *lookup.entry(token.clone()).or_insert_with(|| {
                    names.push(token);
                    names.len() - 1
                });
                chain.push(id);
            }
            chains.push(chain);
        }
        let numeric: Option<Vec<usize>> = names.iter().map(|s| s.parse().ok()).collect();
        let (n, relabel): (usize, Vec<usize>) = match numeric {
            Some(nums) => (nums.iter().map(|&x| x + 1).max().unwrap_or(0), nums),
            None => (names.len(), (0..names.len()).collect()),
        };
        let mut edges = Vec::new();
        for chain in chains {
            for w in chain.windows(2) {
                edges.push((relabel[w[0]], relabel[w[1]]));
            }
        }
        FiniteGraph::new(n, edges)
    }

    /// DOT rendering. `labels` names the vertices; `fill` optionally gives a
    /// color index per vertex.
    pub fn to_dot(&self, labels: &[String], fill: Option<&[u8]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.order() {
            let label = labels.get(v).cloned().unwrap_or_else(|| v.to_string());
            match fill {
                Some(colors) => {
                    let _ = writeln!(
                        out,
                        "  {v} [label=\"{label}\", style=filled, fillcolor=\"{}\"];",
                        palette(colors[v])
                    );
                }
                None => {
                    let _ = writeln!(out, "  {v} [label=\"{label}\"];");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn palette(color: u8) -> &'static str {
    const NAMES: [&str; 7] = [
        "white", "lightgrey", "black", "red", "green", "blue", "orange",
    ];
    NAMES.get(color as usize).copied().unwrap_or("purple")
}
