use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::GraphHandle;
use crate::metric::Layers;
use crate::vertex::VertexId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquidistantPair {
    pub gamma: VertexId,
    pub delta: VertexId,
    pub dist: u32,
}

/// The first pairs of distinct vertices equidistant from `base`, sorted by
/// `(dist, gamma, delta)` with `gamma < delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairEnumeration {
    pub base: VertexId,
    pub pairs: Vec<EquidistantPair>,
    /// Fewer pairs than requested exist within the distance budget.
    pub truncated: bool,
}

impl PairEnumeration {
    /// Distance of the first pair; 1 unless the base has a single neighbor.
    pub fn first_dist(&self) -> Option<u32> {
        self.pairs.first().map(|p| p.dist)
    }
}

pub fn equidistant_pairs(
    g: &GraphHandle,
    alpha: &VertexId,
    count: usize,
    budget: u32,
) -> Result<PairEnumeration> {
    let mut pairs = Vec::with_capacity(count);
    let mut layers = Layers::new(g, alpha)?;
    layers.next_layer()?;
    'outer: for dist in 1..=budget {
        let layer = layers.next_layer()?;
        if layer.is_empty() {
            break;
        }
        for (i, gamma) in layer.iter().enumerate() {
            for delta in &layer[i + 1..] {
                if pairs.len() == count {
                    break 'outer;
                }
                pairs.push(EquidistantPair {
                    gamma: gamma.clone(),
                    delta: delta.clone(),
                    dist,
                });
            }
        }
    }
    Ok(PairEnumeration {
        base: alpha.clone(),
        truncated: pairs.len() < count,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_family;

    fn names(e: &PairEnumeration) -> Vec<(String, String, u32)> {
        e.pairs
            .iter()
            .map(|p| (p.gamma.to_string(), p.delta.to_string(), p.dist))
            .collect()
    }

    #[test]
    fn line_and_tree() {
        let z = parse_family("zline").unwrap();
        let e = equidistant_pairs(&z, &VertexId::Int(0), 3, 10).unwrap();
        assert_eq!(
            names(&e),
            vec![("-1".into(), "1".into(), 1), ("-2".into(), "2".into(), 2), ("-3".into(), "3".into(), 3)]
        );
        let t = parse_family("tree(3)").unwrap();
        let e = equidistant_pairs(&t, &t.root(), 4, 10).unwrap();
        assert_eq!(
            names(&e)[..3],
            [
                ("[0]".into(), "[1]".into(), 1),
                ("[0]".into(), "[2]".into(), 1),
                ("[1]".into(), "[2]".into(), 1)
            ]
        );
        assert_eq!(e.pairs[3].dist, 2);
        assert!(!e.truncated);
    }

    #[test]
    fn cycle_is_truncated() {
        // oracle: enumerate all pairs of 0..7 by hand-computed distance
        let c = parse_family("cycle(7)").unwrap();
        let e = equidistant_pairs(&c, &VertexId::Int(0), 10, 3).unwrap();
        assert!(e.truncated);
        let dist = |x: i64| x.min(7 - x) as u32;
        let mut expected = Vec::new();
        for d in 1..=3 {
            for a in 1..7i64 {
                for b in a + 1..7 {
                    if dist(a) == d && dist(b) == d {
                        expected.push((a.to_string(), b.to_string(), d));
                    }
                }
            }
        }
        assert_eq!(names(&e), expected);
        assert_eq!(e.pairs.len(), 3);
    }

    #[test]
    fn leaf_base_starts_later() {
        let p = parse_family("path(5)").unwrap();
        let e = equidistant_pairs(&p, &VertexId::Int(0), 1, 4).unwrap();
        assert!(e.pairs.is_empty() && e.truncated);
        let e = equidistant_pairs(&p, &VertexId::Int(1), 2, 4).unwrap();
        assert_eq!(e.first_dist(), Some(1));
        let star = parse_family("edges(4,0-1,1-2,1-3)").unwrap();
        let e = equidistant_pairs(&star, &VertexId::Int(0), 1, 4).unwrap();
        assert_eq!(e.first_dist(), Some(2));
    }
}
