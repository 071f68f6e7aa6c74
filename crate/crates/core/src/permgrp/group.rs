use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::FiniteGraph;
use crate::permgrp::Permutation;

/// Default limit on the number of enumerated group elements.
pub const ENUMERATION_CAP: usize = 1_000_000;

/// A permutation group given by generators, with its element list when the
/// group is small enough to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Option<Vec<Permutation>>,
    cap: usize,
    known_order: Option<u128>,
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; false if they were already one.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller representative
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }

    /// Classes sorted internally and by least element.
    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

pub(crate) fn orbits_of(degree: usize, perms: &[Permutation]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    for g in perms {
        for x in 0..degree {
            uf.union(x, g.apply(x));
        }
    }
    uf.classes()
}

/// Closes the generators under composition by breadth-first search.
/// Groups larger than `cap` keep only their generators.
pub fn close_group(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<PermGroup> {
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::Permutation(format!(
            "generator {g} has degree {}, expected {degree}",
            g.degree()
        )));
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut capped = false;
    'outer: while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    capped = true;
                    break 'outer;
                }
                queue.push_back(y);
            }
        }
    }
    let elements = (!capped).then(|| {
        let mut v: Vec<Permutation> = seen.into_iter().collect();
        v.sort();
        v
    });
    Ok(PermGroup {
        degree,
        generators: gens,
        elements,
        cap,
        known_order: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub degree: usize,
    pub order: Option<u128>,
    pub enumerated: bool,
    pub generators: Vec<String>,
    pub orbits: Vec<Vec<usize>>,
}

impl PermGroup {
    /// A group from an already enumerated, closed element list.
    pub(crate) fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> PermGroup {
        elements.sort();
        let generators = elements.iter().filter(|g| !g.is_identity()).cloned().collect();
        PermGroup {
            degree,
            generators,
            elements: Some(elements),
            cap: ENUMERATION_CAP,
            known_order: None,
        }
    }

    /// A group too large to enumerate, with its order computed elsewhere.
    pub(crate) fn from_generators(
        degree: usize,
        generators: Vec<Permutation>,
        order: u128,
        cap: usize,
    ) -> PermGroup {
        PermGroup {
            degree,
            generators,
            elements: None,
            cap,
            known_order: Some(order),
        }
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut cyc: Vec<usize> = (1..n).collect();
            cyc.push(0);
            gens.push(Permutation::from_images(cyc).unwrap());
            gens.push(Permutation::from_cycles("(0 1)", n).unwrap());
        }
        close_group(n, gens, ENUMERATION_CAP).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let mut cyc: Vec<usize> = (1..n).collect();
        cyc.push(0);
        close_group(n, vec![Permutation::from_images(cyc).unwrap()], ENUMERATION_CAP).unwrap()
    }

    /// The dihedral group acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> PermGroup {
        let mut cyc: Vec<usize> = (1..n).collect();
        cyc.push(0);
        let flip: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        close_group(
            n,
            vec![
                Permutation::from_images(cyc).unwrap(),
                Permutation::from_images(flip).unwrap(),
            ],
            ENUMERATION_CAP,
        )
        .unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    /// The group order, if enumerated or otherwise known.
    pub fn order(&self) -> Option<u128> {
        match &self.elements {
            Some(e) => Some(e.len() as u128),
            None => self.known_order,
        }
    }

    pub fn elements(&self) -> Result<&[Permutation]> {
        self.elements
            .as_deref()
            .ok_or(Error::EnumerationCap { cap: self.cap })
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Elements fixing `alpha`.
    pub fn point_stabilizer(&self, alpha: usize) -> Result<PermGroup> {
        let elems = self
            .elements()?
            .iter()
            .filter(|g| g.apply(alpha) == alpha)
            .cloned()
            .collect();
        Ok(PermGroup::from_elements(self.degree, elems))
    }

    /// Orbits of the point stabilizer `G_α`, ordered by least element.
    pub fn suborbits(&self, alpha: usize) -> Result<Vec<Vec<usize>>> {
        Ok(self.point_stabilizer(alpha)?.orbits())
    }

    /// The graph on `0..n` whose edge set is the orbit of `{α, β}`.
    pub fn orbital_graph(&self, alpha: usize, beta: usize) -> Result<FiniteGraph> {
        if alpha == beta {
            return Err(Error::Argument("orbital graph needs α ≠ β".into()));
        }
        let edges: Vec<(usize, usize)> = self
            .elements()?
            .iter()
            .map(|g| (g.apply(alpha), g.apply(beta)))
            .collect();
        FiniteGraph::new(self.degree, edges)
    }

    /// `G_{Y}`: elements mapping `Y` onto itself.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup> {
        let mut member = vec![false; self.degree];
        for &y in set {
            member[y] = true;
        }
        let elems = self
            .elements()?
            .iter()
            .filter(|g| set.iter().all(|&y| member[g.apply(y)]))
            .cloned()
            .collect();
        Ok(PermGroup::from_elements(self.degree, elems))
    }

    /// Least support size over non-identity elements.
    pub fn motion(&self) -> Result<usize> {
        self.elements()?
            .iter()
            .filter(|g| !g.is_identity())
            .map(Permutation::support_size)
            .min()
            .ok_or(Error::TrivialGroup)
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            degree: self.degree,
            order: self.order(),
            enumerated: self.is_enumerated(),
            generators: self.generators.iter().map(ToString::to_string).collect(),
            orbits: self.orbits(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::from_cycles(s, n).unwrap()
    }

    #[test]
    fn closures() {
        let trivial = close_group(3, vec![Permutation::identity(3)], 10).unwrap();
        assert_eq!(trivial.order(), Some(1));
        assert_eq!(close_group(5, vec![p("(0 1 2 3 4)", 5)], 100).unwrap().order(), Some(5));
        // oracle: D4 has 4 rotations and 4 reflections
        let d4 = close_group(4, vec![p("(0 1 2 3)", 4), p("(1 3)", 4)], 100).unwrap();
        assert_eq!(d4.order(), Some(8));
        let rotations = d4.elements().unwrap().iter().filter(|g| g.cycles().len() != 2 || g.support_size() == 4).count();
        assert!(rotations >= 4);
        let capped = close_group(6, PermGroup::symmetric(6).generators().to_vec(), 100).unwrap();
        assert!(!capped.is_enumerated());
        assert!(matches!(capped.elements(), Err(Error::EnumerationCap { cap: 100 })));
        assert!(close_group(4, vec![p("(0 1)", 3)], 10).is_err());
    }

    #[test]
    fn orbits_and_transitivity() {
        let id = close_group(3, vec![], 10).unwrap();
        assert_eq!(id.orbits(), vec![vec![0], vec![1], vec![2]]);
        assert!(PermGroup::cyclic(5).is_transitive());
        let d4_plus = close_group(5, vec![p("(0 1 2 3)", 5), p("(1 3)", 5)], 100).unwrap();
        assert_eq!(d4_plus.orbits(), vec![vec![0, 1, 2, 3], vec![4]]);
    }

    #[test]
    fn suborbits() {
        let d7 = PermGroup::dihedral(7);
        assert_eq!(
            d7.suborbits(0).unwrap(),
            vec![vec![0], vec![1, 6], vec![2, 5], vec![3, 4]]
        );
        assert_eq!(PermGroup::symmetric(4).suborbits(0).unwrap(), vec![vec![0], vec![1, 2, 3]]);
        let id = close_group(4, vec![], 10).unwrap();
        assert_eq!(id.suborbits(2).unwrap().len(), 4);
    }

    #[test]
    fn orbital_graphs() {
        let c5 = PermGroup::cyclic(5);
        assert_eq!(c5.orbital_graph(0, 1).unwrap(), FiniteGraph::cycle(5));
        let star = c5.orbital_graph(0, 2).unwrap();
        assert!(star.is_connected());
        assert!(star.has_edge(0, 2) && star.has_edge(0, 3) && !star.has_edge(0, 1));
        assert_eq!(PermGroup::symmetric(4).orbital_graph(0, 1).unwrap(), FiniteGraph::complete(4));
        assert!(c5.orbital_graph(1, 1).is_err());
    }

    #[test]
    fn setwise_stabilizers() {
        let d4 = PermGroup::dihedral(4);
        assert_eq!(d4.setwise_stabilizer(&[0, 1, 2, 3]).unwrap().order(), Some(8));
        assert_eq!(PermGroup::cyclic(5).setwise_stabilizer(&[0]).unwrap().order(), Some(1));
        // element filter oracle
        let expected = d4
            .elements()
            .unwrap()
            .iter()
            .filter(|g| {
                let img = [g.apply(0), g.apply(2)];
                img.iter().all(|x| *x == 0 || *x == 2)
            })
            .count();
        assert_eq!(expected, 4);
        assert_eq!(d4.setwise_stabilizer(&[0, 2]).unwrap().order(), Some(expected as u128));
    }

    #[test]
    fn motion() {
        assert_eq!(PermGroup::dihedral(5).motion().unwrap(), 4);
        assert_eq!(PermGroup::dihedral(6).motion().unwrap(), 4);
        let t = close_group(4, vec![p("(1 3)", 4)], 10).unwrap();
        assert_eq!(t.motion().unwrap(), 2);
        assert!(matches!(close_group(3, vec![], 10).unwrap().motion(), Err(Error::TrivialGroup)));
    }
}
