//! Lazy graph families and product combinators.
//!
//! A [`GraphHandle`] describes a (possibly infinite) locally finite graph.
//! Nothing is ever enumerated globally: the handle answers neighbor, root and
//! distance queries, and everything else is budgeted on top of that.

mod dsl;
pub mod profile;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite::FiniteGraph;
use crate::vertex::VertexId;

pub use dsl::parse_family;

/// Shortest even and shortest odd walk lengths between two vertices;
/// `u32::MAX` when no walk of that parity exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parity {
    pub even: u32,
    pub odd: u32,
}

pub(crate) const NONE: u32 = u32::MAX;

impl Parity {
    pub const UNREACHABLE: Parity = Parity { even: NONE, odd: NONE };

    /// Parity pair of a bipartite graph at distance `d`.
    pub fn bipartite(d: u32) -> Parity {
        if d.is_multiple_of(2) {
            Parity { even: d, odd: NONE }
        } else {
            Parity { even: NONE, odd: d }
        }
    }

    /// Parity pair of a graph in which every edge lies on a triangle.
    pub fn triangulated(d: u32) -> Parity {
        let other = if d == 0 { 3 } else { d + 1 };
        let (shorter, longer) = (d, other);
        if d.is_multiple_of(2) {
            Parity { even: shorter, odd: longer }
        } else {
            Parity { even: longer, odd: shorter }
        }
    }

    pub fn distance(self) -> Option<u32> {
        let d = self.even.min(self.odd);
        (d != NONE).then_some(d)
    }

    /// Walks in a Cartesian product interleave walks of the two factors.
    pub fn cartesian(a: Parity, b: Parity) -> Parity {
        Parity {
            even: add(a.even, b.even).min(add(a.odd, b.odd)),
            odd: add(a.even, b.odd).min(add(a.odd, b.even)),
        }
    }

    /// Walks in a direct product move in both factors at once; in a factor
    /// without isolated vertices a walk can always be padded by two steps.
    pub fn direct(a: Parity, b: Parity) -> Parity {
        Parity {
            even: a.even.max(b.even),
            odd: a.odd.max(b.odd),
        }
    }

    /// Values above `bound` become `u32::MAX`.
    pub fn saturate(self, bound: u32) -> Parity {
        let cut = |x: u32| if x > bound { NONE } else { x };
        Parity {
            even: cut(self.even),
            odd: cut(self.odd),
        }
    }
}

fn add(a: u32, b: u32) -> u32 {
    if a == NONE || b == NONE {
        NONE
    } else {
        a.saturating_add(b).min(NONE - 1)
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum Family {
    /// The `r`-regular infinite tree.
    Tree { r: u32 },
    /// The cycle `C_k` on `0..k`.
    Cycle { k: u32 },
    /// The two-way infinite path on the integers.
    ZLine,
    /// The finite path on `0..n`.
    Path { n: u32 },
    /// The complete graph on `0..n`.
    Complete { n: u32 },
    /// Tree-like amalgam of `m`-cliques, every vertex in exactly `t` cliques.
    CliqueTree { m: u32, t: u32 },
    Cart(GraphHandle, GraphHandle),
    Direct(GraphHandle, GraphHandle),
    Explicit(Arc<FiniteGraph>),
}

/// Immutable, cheaply clonable graph description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphHandle(Arc<Family>);

fn domain(message: impl Into<String>) -> Error {
    Error::Domain {
        offset: 0,
        message: message.into(),
    }
}

impl GraphHandle {
    fn from_family(f: Family) -> Self {
        GraphHandle(Arc::new(f))
    }

    pub fn tree(r: u32) -> Result<Self> {
        if r < 2 {
            return Err(domain("tree(r) needs r >= 2"));
        }
        Ok(Self::from_family(Family::Tree { r }))
    }

    pub fn cycle(k: u32) -> Result<Self> {
        if k < 3 {
            return Err(domain("cycle(k) needs k >= 3"));
        }
        Ok(Self::from_family(Family::Cycle { k }))
    }

    pub fn zline() -> Self {
        Self::from_family(Family::ZLine)
    }

    pub fn path(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(domain("path(n) needs n >= 1"));
        }
        Ok(Self::from_family(Family::Path { n }))
    }

    pub fn complete(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(domain("complete(n) needs n >= 1"));
        }
        Ok(Self::from_family(Family::Complete { n }))
    }

    pub fn cliquetree(m: u32, t: u32) -> Result<Self> {
        if m < 2 || t < 2 {
            return Err(domain("cliquetree(m,t) needs m >= 2 and t >= 2"));
        }
        Ok(Self::from_family(Family::CliqueTree { m, t }))
    }

    pub fn cart(a: GraphHandle, b: GraphHandle) -> Self {
        Self::from_family(Family::Cart(a, b))
    }

    /// Direct product. Factors with isolated vertices are rejected because
    /// walk padding (and hence the distance formula) fails there.
    pub fn direct(a: GraphHandle, b: GraphHandle) -> Result<Self> {
        if a.has_isolated_vertex() || b.has_isolated_vertex() {
            return Err(domain("direct(G,H) needs factors without isolated vertices"));
        }
        Ok(Self::from_family(Family::Direct(a, b)))
    }

    pub fn explicit(g: FiniteGraph) -> Self {
        Self::from_family(Family::Explicit(Arc::new(g)))
    }

    pub fn family(&self) -> &Family {
        &self.0
    }

    pub fn has_isolated_vertex(&self) -> bool {
        match self.family() {
            Family::Path { n } | Family::Complete { n } => *n == 1,
            Family::Explicit(g) => g.has_isolated_vertex(),
            Family::Cart(a, b) => a.has_isolated_vertex() && b.has_isolated_vertex(),
            Family::Direct(a, b) => a.has_isolated_vertex() || b.has_isolated_vertex(),
            _ => false,
        }
    }

    /// Number of vertices of a finite graph, `None` for infinite ones.
    pub fn order(&self) -> Option<usize> {
        match self.family() {
            Family::Cycle { k } => Some(*k as usize),
            Family::Path { n } | Family::Complete { n } => Some(*n as usize),
            Family::Explicit(g) => Some(g.order()),
            Family::Cart(a, b) | Family::Direct(a, b) => Some(a.order()? * b.order()?),
            _ => None,
        }
    }

    /// All vertices in canonical order, for finite graphs.
    pub fn vertices(&self) -> Option<Vec<VertexId>> {
        match self.family() {
            Family::Cart(a, b) | Family::Direct(a, b) => {
                let (va, vb) = (a.vertices()?, b.vertices()?);
                let mut out = Vec::with_capacity(va.len() * vb.len());
                for x in &va {
                    for y in &vb {
                        out.push(VertexId::pair(x.clone(), y.clone()));
                    }
                }
                Some(out)
            }
            _ => Some((0..self.order()? as i64).map(VertexId::Int).collect()),
        }
    }

    /// The documented base vertex: the empty word for trees and clique trees,
    /// `0` for integer families, the pair of roots for products.
    pub fn root(&self) -> VertexId {
        match self.family() {
            Family::Tree { .. } => VertexId::word(vec![]),
            Family::CliqueTree { .. } => VertexId::clique(vec![]),
            Family::Cart(a, b) | Family::Direct(a, b) => VertexId::pair(a.root(), b.root()),
            _ => VertexId::Int(0),
        }
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        match (self.family(), v) {
            (Family::Tree { r }, VertexId::Word(w)) => w
                .0
                .iter()
                .enumerate()
                .all(|(i, &l)| l < if i == 0 { *r } else { r - 1 }),
            (Family::CliqueTree { m, t }, VertexId::Clique(w)) => {
                w.0.iter().enumerate().all(|(i, &(c, s))| {
                    c < if i == 0 { *t } else { t - 1 } && s < m - 1
                })
            }
            (Family::ZLine, VertexId::Int(_)) => true,
            (_, VertexId::Int(i)) if self.order().is_some() => {
                *i >= 0 && (*i as usize) < self.order().unwrap()
                    && !matches!(self.family(), Family::Cart(..) | Family::Direct(..))
            }
            (Family::Cart(a, b) | Family::Direct(a, b), VertexId::Pair(x, y)) => {
                a.contains(x) && b.contains(y)
            }
            _ => false,
        }
    }

    pub(crate) fn check(&self, v: &VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v.to_string(),
                graph: self.to_string(),
            })
        }
    }

    /// Parses a vertex in its string form and checks that it belongs here.
    pub fn parse_vertex(&self, s: &str) -> Result<VertexId> {
        let v: VertexId = s.parse()?;
        self.check(&v)?;
        Ok(v)
    }

    /// The exact neighbor set of `v`, sorted canonically.
    pub fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        self.check(v)?;
        Ok(self.neighbors_unchecked(v))
    }

    pub(crate) fn neighbors_unchecked(&self, v: &VertexId) -> Vec<VertexId> {
        let mut out = match (self.family(), v) {
            (Family::Tree { r }, VertexId::Word(w)) => {
                let w = &w.0;
                let mut out = Vec::new();
                if !w.is_empty() {
                    out.push(VertexId::word(w[..w.len() - 1].to_vec()));
                }
                let children = if w.is_empty() { *r } else { r - 1 };
                for c in 0..children {
                    let mut child = w.clone();
                    child.push(c);
                    out.push(VertexId::word(child));
                }
                out
            }
            (Family::CliqueTree { m, t }, VertexId::Clique(w)) => {
                let w = &w.0;
                let mut out = Vec::new();
                if let Some(&(c, s)) = w.last() {
                    let parent = &w[..w.len() - 1];
                    out.push(VertexId::clique(parent.to_vec()));
                    for s2 in (0..m - 1).filter(|&x| x != s) {
                        let mut sib = parent.to_vec();
                        sib.push((c, s2));
                        out.push(VertexId::clique(sib));
                    }
                }
                let cliques = if w.is_empty() { *t } else { t - 1 };
                for c in 0..cliques {
                    for s in 0..m - 1 {
                        let mut child = w.clone();
                        child.push((c, s));
                        out.push(VertexId::clique(child));
                    }
                }
                out
            }
            (Family::ZLine, VertexId::Int(i)) => vec![VertexId::Int(i - 1), VertexId::Int(i + 1)],
            (Family::Cycle { k }, VertexId::Int(i)) => {
                let k = *k as i64;
                vec![VertexId::Int((i + k - 1) % k), VertexId::Int((i + 1) % k)]
            }
            (Family::Path { n }, VertexId::Int(i)) => [i - 1, i + 1]
                .into_iter()
                .filter(|&j| j >= 0 && j < *n as i64)
                .map(VertexId::Int)
                .collect(),
            (Family::Complete { n }, VertexId::Int(i)) => (0..*n as i64)
                .filter(|j| j != i)
                .map(VertexId::Int)
                .collect(),
            (Family::Explicit(g), VertexId::Int(i)) => g
                .neighbors(*i as usize)
                .iter()
                .map(|&u| VertexId::Int(u as i64))
                .collect(),
            (Family::Cart(a, b), VertexId::Pair(x, y)) => {
                let mut out: Vec<VertexId> = a
                    .neighbors_unchecked(x)
                    .into_iter()
                    .map(|x2| VertexId::pair(x2, (**y).clone()))
                    .collect();
                out.extend(
                    b.neighbors_unchecked(y)
                        .into_iter()
                        .map(|y2| VertexId::pair((**x).clone(), y2)),
                );
                out
            }
            (Family::Direct(a, b), VertexId::Pair(x, y)) => {
                let nb = b.neighbors_unchecked(y);
                let mut out = Vec::new();
                for x2 in a.neighbors_unchecked(x) {
                    for y2 in &nb {
                        out.push(VertexId::pair(x2.clone(), y2.clone()));
                    }
                }
                out
            }
            _ => unreachable!("vertex checked against family"),
        };
        out.sort();
        out.dedup();
        out
    }

    pub fn degree(&self, v: &VertexId) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    /// Shortest even/odd walk lengths, computed in closed form per family.
    pub fn parity_distance(&self, u: &VertexId, v: &VertexId) -> Result<Parity> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.parity_unchecked(u, v))
    }

    pub(crate) fn parity_unchecked(&self, u: &VertexId, v: &VertexId) -> Parity {
        match (self.family(), u, v) {
            (Family::Tree { .. }, VertexId::Word(a), VertexId::Word(b)) => {
                Parity::bipartite(tree_distance(&a.0, &b.0))
            }
            (Family::CliqueTree { m, .. }, VertexId::Clique(a), VertexId::Clique(b)) => {
                let d = clique_tree_distance(&a.0, &b.0);
                if *m >= 3 {
                    Parity::triangulated(d)
                } else {
                    Parity::bipartite(d)
                }
            }
            (Family::ZLine, VertexId::Int(a), VertexId::Int(b)) => {
                Parity::bipartite(a.abs_diff(*b) as u32)
            }
            (Family::Path { .. }, VertexId::Int(a), VertexId::Int(b)) => {
                Parity::bipartite(a.abs_diff(*b) as u32)
            }
            (Family::Cycle { k }, VertexId::Int(a), VertexId::Int(b)) => {
                let j = a.abs_diff(*b) as u32;
                let (short, long) = (j.min(k - j), j.max(k - j));
                let mut p = Parity::bipartite(short);
                if long % 2 != short % 2 {
                    if long % 2 == 0 {
                        p.even = long;
                    } else {
                        p.odd = long;
                    }
                }
                p
            }
            (Family::Complete { n }, VertexId::Int(a), VertexId::Int(b)) => {
                let d = u32::from(a != b);
                if *n >= 3 {
                    Parity::triangulated(d)
                } else if *n == 2 {
                    Parity::bipartite(d)
                } else {
                    Parity { even: 0, odd: NONE }
                }
            }
            (Family::Explicit(g), VertexId::Int(a), VertexId::Int(b)) => {
                g.parity_distance(*a as usize, *b as usize)
            }
            (Family::Cart(ga, gb), VertexId::Pair(x1, y1), VertexId::Pair(x2, y2)) => {
                Parity::cartesian(ga.parity_unchecked(x1, x2), gb.parity_unchecked(y1, y2))
            }
            (Family::Direct(ga, gb), VertexId::Pair(x1, y1), VertexId::Pair(x2, y2)) => {
                Parity::direct(ga.parity_unchecked(x1, x2), gb.parity_unchecked(y1, y2))
            }
            _ => unreachable!("vertices checked against family"),
        }
    }

    /// Exact graph distance; `None` when the vertices are disconnected.
    pub fn distance(&self, u: &VertexId, v: &VertexId) -> Result<Option<u32>> {
        Ok(self.parity_distance(u, v)?.distance())
    }
}

fn common_prefix<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub(crate) fn tree_distance(a: &[u32], b: &[u32]) -> u32 {
    let l = common_prefix(a, b);
    (a.len() + b.len() - 2 * l) as u32
}

pub(crate) fn clique_tree_distance(a: &[(u32, u32)], b: &[(u32, u32)]) -> u32 {
    let l = common_prefix(a, b);
    if l == a.len() || l == b.len() {
        return a.len().abs_diff(b.len()) as u32;
    }
    if a[l].0 == b[l].0 {
        // siblings inside one clique
        (a.len() + b.len() - 2 * l - 1) as u32
    } else {
        (a.len() + b.len() - 2 * l) as u32
    }
}

impl fmt::Display for GraphHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family() {
            Family::Tree { r } => write!(f, "tree({r})"),
            Family::Cycle { k } => write!(f, "cycle({k})"),
            Family::ZLine => f.write_str("zline"),
            Family::Path { n } => write!(f, "path({n})"),
            Family::Complete { n } => write!(f, "complete({n})"),
            Family::CliqueTree { m, t } => write!(f, "cliquetree({m},{t})"),
            Family::Cart(a, b) => write!(f, "cart({a},{b})"),
            Family::Direct(a, b) => write!(f, "direct({a},{b})"),
            Family::Explicit(g) => {
                write!(f, "edges({}", g.order())?;
                for (u, v) in g.edges() {
                    write!(f, ",{u}-{v}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::bfs_distance;

    fn g(s: &str) -> GraphHandle {
        parse_family(s).unwrap()
    }

    fn v(s: &str) -> VertexId {
        s.parse().unwrap()
    }

    #[test]
    fn zline_neighbors() {
        assert_eq!(g("zline").neighbors(&v("0")).unwrap(), vec![v("-1"), v("1")]);
    }

    #[test]
    fn product_degrees() {
        let c = g("cart(zline,zline)");
        assert_eq!(c.degree(&v("(0,0)")).unwrap(), 4);
        let d = g("direct(tree(3),cycle(7))");
        for s in ["([],0)", "([1,0,1],6)", "([2],3)"] {
            assert_eq!(d.degree(&v(s)).unwrap(), 6);
        }
    }

    #[test]
    fn roots() {
        assert_eq!(g("tree(3)").root(), v("[]"));
        assert_eq!(g("cart(tree(3),zline)").root(), v("([],0)"));
        assert_eq!(g("cycle(7)").root(), v("0"));
        assert_eq!(g("cliquetree(3,2)").root(), v("{}"));
    }

    #[test]
    fn invalid_vertices_are_rejected() {
        let t = g("tree(3)");
        assert!(t.neighbors(&v("[0,2]")).is_err());
        assert!(t.neighbors(&v("[2,1]")).is_ok());
        assert!(g("cycle(7)").neighbors(&v("7")).is_err());
        assert!(g("cart(zline,zline)").neighbors(&v("0")).is_err());
        assert!(g("cliquetree(3,2)").neighbors(&v("{0:2}")).is_err());
    }

    #[test]
    fn clique_tree_degree_and_cliques() {
        let c = g("cliquetree(3,2)");
        for s in ["{}", "{1:0}", "{0:1,0:0}"] {
            assert_eq!(c.degree(&v(s)).unwrap(), 4);
        }
        // {0:0} and {0:1} share the clique with the root
        let n = c.neighbors(&v("{0:0}")).unwrap();
        assert!(n.contains(&v("{}")) && n.contains(&v("{0:1}")));
    }

    #[test]
    fn cart_distance_adds() {
        let c = g("cart(zline,zline)");
        assert_eq!(c.distance(&v("(0,0)"), &v("(2,3)")).unwrap(), Some(5));
    }

    #[test]
    fn direct_needs_padding() {
        assert!(parse_family("direct(path(1),zline)").is_err());
        assert!(parse_family("direct(path(2),zline)").is_ok());
    }

    #[test]
    fn even_cycle_direct_product_is_disconnected() {
        let d = g("direct(zline,cycle(6))");
        assert_eq!(d.distance(&v("(0,0)"), &v("(0,1)")).unwrap(), None);
    }

    #[test]
    fn closed_forms_match_bfs() {
        let cases = [
            ("tree(3)", vec!["[]", "[0]", "[1,1]", "[2,0,1]", "[0,1,0]"]),
            ("cliquetree(3,2)", vec!["{}", "{0:0}", "{0:1}", "{0:1,0:0}", "{1:0,0:1}"]),
            ("cliquetree(2,3)", vec!["{}", "{0:0}", "{2:0,1:0}"]),
            ("cycle(7)", vec!["0", "1", "3", "6"]),
            ("complete(4)", vec!["0", "3"]),
            ("path(5)", vec!["0", "4", "2"]),
            ("cart(tree(3),zline)", vec!["([],0)", "([1],-2)", "([0,0],3)"]),
            ("direct(tree(3),cycle(7))", vec!["([],0)", "([0],1)", "([0],6)", "([],1)", "([1,1],4)"]),
            ("direct(cliquetree(3,2),cycle(5))", vec!["({},0)", "({0:0},0)", "({0:1,0:0},3)"]),
            ("cart(cycle(5),direct(zline,cycle(3)))", vec!["(0,(0,0))", "(2,(1,2))", "(4,(-2,0))"]),
            ("edges(5,0-1,1-2,2-0,3-4)", vec!["0", "2", "3", "4"]),
        ];
        for (fam, verts) in cases {
            let h = g(fam);
            for a in &verts {
                for b in &verts {
                    let (a, b) = (v(a), v(b));
                    let closed = h.distance(&a, &b).unwrap();
                    let bfs = bfs_distance(&h, &a, &b, 24).unwrap();
                    assert_eq!(closed, bfs, "{fam}: {a} -> {b}");
                }
            }
        }
    }
}
