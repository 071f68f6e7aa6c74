use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgrp::group::UnionFind;
use crate::permgrp::{PermGroup, Permutation};

/// A partition of `0..n` into blocks, each sorted, ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_universal(&self) -> bool {
        self.blocks.len() == 1
    }

    /// True if every permutation maps each block onto a block.
    pub fn is_invariant_under(&self, perms: &[Permutation]) -> bool {
        let n: usize = self.blocks.iter().map(Vec::len).sum();
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        perms.iter().all(|g| {
            self.blocks.iter().all(|b| {
                let target = block_of[g.apply(b[0])];
                b.iter().all(|&x| block_of[g.apply(x)] == target)
                    && self.blocks[target].len() == b.len()
            })
        })
    }
}

impl PermGroup {
    /// The finest invariant partition with `alpha` and `beta` in one block.
    pub fn minimal_blocks(&self, alpha: usize, beta: usize) -> Result<BlockSystem> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        if alpha == beta || alpha >= self.degree() || beta >= self.degree() {
            return Err(Error::Argument(format!(
                "minimal blocks need distinct points below {}, got {alpha} and {beta}",
                self.degree()
            )));
        }
        let mut uf = UnionFind::new(self.degree());
        uf.union(alpha, beta);
        let mut queue = VecDeque::from([(alpha, beta)]);
        while let Some((x, y)) = queue.pop_front() {
            for g in self.generators() {
                let (a, b) = (uf.find(g.apply(x)), uf.find(g.apply(y)));
                if uf.union(a, b) {
                    queue.push_back((a, b));
                }
            }
        }
        Ok(BlockSystem {
            blocks: uf.classes(),
        })
    }

    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        if self.degree() < 2 {
            return Err(Error::Argument("primitivity needs degree at least 2".into()));
        }
        for beta in 1..self.degree() {
            if !self.minimal_blocks(0, beta)?.is_universal() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A nontrivial block system if the group is imprimitive.
    pub fn block_system(&self) -> Result<Option<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        for beta in 1..self.degree() {
            let b = self.minimal_blocks(0, beta)?;
            if !b.is_universal() {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::close_group;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::from_cycles(s, n).unwrap()
    }

    // every set partition of 0..n in restricted growth form
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for c in 0..=max + 1 {
                cur[i] = c;
                rec(i + 1, max.max(c), cur, out);
            }
        }
        if n > 0 {
            rec(1, 0, &mut cur, &mut out);
        }
        out
    }

    fn brute_primitive(g: &PermGroup) -> bool {
        partitions(g.degree()).into_iter().all(|labels| {
            let classes = labels.iter().max().unwrap() + 1;
            let invariant = g.generators().iter().all(|h| {
                (0..g.degree()).all(|x| {
                    (0..g.degree()).all(|y| (labels[x] == labels[y]) == (labels[h.apply(x)] == labels[h.apply(y)]))
                })
            });
            !invariant || classes == 1 || classes == g.degree()
        })
    }

    #[test]
    fn square_blocks() {
        let d4 = PermGroup::dihedral(4);
        let b = d4.minimal_blocks(0, 2).unwrap();
        assert_eq!(b.blocks, vec![vec![0, 2], vec![1, 3]]);
        assert!(b.is_invariant_under(d4.generators()));
        assert!(!d4.is_primitive().unwrap());
        assert!(d4.minimal_blocks(0, 1).unwrap().is_universal());
    }

    #[test]
    fn primitive_examples() {
        assert!(PermGroup::cyclic(5).is_primitive().unwrap());
        assert!(PermGroup::symmetric(3).is_primitive().unwrap());
        assert!(PermGroup::cyclic(5).minimal_blocks(0, 1).unwrap().is_universal());
        let intransitive = close_group(4, vec![p("(0 1)", 4)], 10).unwrap();
        assert!(matches!(intransitive.is_primitive(), Err(Error::NotTransitive)));
        assert!(matches!(intransitive.minimal_blocks(0, 1), Err(Error::NotTransitive)));
    }

    #[test]
    fn agrees_with_partition_enumeration() {
        let groups = [
            PermGroup::cyclic(4),
            PermGroup::cyclic(6),
            PermGroup::cyclic(7),
            PermGroup::dihedral(6),
            PermGroup::dihedral(8),
            PermGroup::symmetric(5),
            close_group(8, vec![p("(0 1 2 3)(4 5 6 7)", 8), p("(0 4)(1 5)(2 6)(3 7)", 8)], 100).unwrap(),
        ];
        for g in &groups {
            assert_eq!(g.is_primitive().unwrap(), brute_primitive(g), "{:?}", g.generators());
            for beta in 1..g.degree() {
                assert!(g.minimal_blocks(0, beta).unwrap().is_invariant_under(g.generators()));
            }
        }
    }
}
