use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::permgrp::{PermGroup, Permutation};

/// Largest number of colors the brute-force search will try.
pub const MAX_COLORS: usize = 6;

/// Outcome of a distinguishing-number search. `distinguishing_number` is
/// `None` when no coloring with at most `max_colors` colors works.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distinguishing {
    pub distinguishing_number: Option<usize>,
    pub max_colors: usize,
    /// Colors `1..=c` indexed by point.
    pub witness: Option<Vec<u8>>,
}

struct Constraint {
    pairs: Vec<(usize, usize)>,
}

struct Search<'a> {
    n: usize,
    colors: u8,
    // constraints that become fully decided once point i is colored
    completing: &'a [Vec<Constraint>],
}

impl Search<'_> {
    fn dfs(&self, coloring: &mut Vec<u8>, used: u8) -> bool {
        let i = coloring.len();
        if i == self.n {
            return true;
        }
        let top = (used + 1).min(self.colors);
        for c in 0..top {
            coloring.push(c);
            let alive = self.completing[i]
                .iter()
                .all(|k| k.pairs.iter().any(|&(x, y)| coloring[x] != coloring[y]));
            if alive && self.dfs(coloring, used.max(c + 1)) {
                return true;
            }
            coloring.pop();
        }
        false
    }
}

/// Searches for a coloring of `0..degree` with at most `colors` colors that
/// is preserved by none of the given permutations (identities are skipped).
/// When `must_fix` is given, permutations fixing all of it pointwise are
/// ignored as well. Returns the least such coloring in point order.
pub fn find_distinguishing_coloring(
    degree: usize,
    perms: &[Permutation],
    colors: usize,
    must_fix: Option<&[usize]>,
) -> Option<Vec<u8>> {
    let mut in_fix = vec![must_fix.is_none(); degree];
    if let Some(m) = must_fix {
        for &x in m {
            in_fix[x] = true;
        }
    }
    let mut completing: Vec<Vec<Constraint>> = (0..degree).map(|_| Vec::new()).collect();
    for g in perms {
        let support = g.support();
        if support.is_empty() || !support.iter().any(|&x| in_fix[x]) {
            continue;
        }
        let last = *support.last().unwrap();
        completing[last].push(Constraint {
            pairs: support.iter().map(|&x| (x, g.apply(x))).collect(),
        });
    }
    if degree == 0 {
        return Some(Vec::new());
    }
    if colors == 0 {
        return None;
    }
    let search = Search {
        n: degree,
        colors: colors.min(u8::MAX as usize) as u8,
        completing: &completing,
    };
    // point 0 takes the first color; branch on point 1
    if !completing[0].is_empty() {
        return None;
    }
    if degree == 1 {
        return Some(vec![1]);
    }
    let firsts: Vec<u8> = (0..2.min(search.colors)).collect();
    let results = par::map(&firsts, |&c| {
        let mut coloring = vec![0, c];
        let alive = completing[1]
            .iter()
            .all(|k| k.pairs.iter().any(|&(x, y)| coloring[x] != coloring[y]));
        (alive && search.dfs(&mut coloring, c + 1)).then_some(coloring)
    });
    results
        .into_iter()
        .flatten()
        .next()
        .map(|c| c.into_iter().map(|x| x + 1).collect())
}

/// Elements of `perms` preserving every color class of `coloring`.
pub fn preserving<'a>(perms: &'a [Permutation], coloring: &[u8]) -> Vec<&'a Permutation> {
    perms
        .iter()
        .filter(|g| (0..coloring.len()).all(|x| coloring[g.apply(x)] == coloring[x]))
        .collect()
}

pub(crate) fn least_colors(
    degree: usize,
    perms: &[Permutation],
    max_colors: usize,
    must_fix: Option<&[usize]>,
) -> Distinguishing {
    for c in 1..=max_colors {
        if let Some(w) = find_distinguishing_coloring(degree, perms, c, must_fix) {
            return Distinguishing {
                distinguishing_number: Some(c),
                max_colors,
                witness: Some(w),
            };
        }
    }
    Distinguishing {
        distinguishing_number: None,
        max_colors,
        witness: None,
    }
}

impl PermGroup {
    /// Least number of colors whose color-class-preserving subgroup is
    /// trivial, with a witness coloring.
    pub fn distinguishing_number(&self, max_colors: usize) -> Result<Distinguishing> {
        Ok(least_colors(self.degree(), self.elements()?, max_colors, None))
    }

    /// Subgroup preserving each color class of `coloring` setwise.
    pub fn color_preserving(&self, coloring: &[u8]) -> Result<PermGroup> {
        if coloring.len() != self.degree() {
            return Err(Error::Coloring(format!(
                "coloring has {} entries, group degree is {}",
                coloring.len(),
                self.degree()
            )));
        }
        let kept = preserving(self.elements()?, coloring).into_iter().cloned().collect();
        Ok(PermGroup::from_elements(self.degree(), kept))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::close_group;

    #[test]
    fn small_groups() {
        let trivial = close_group(4, vec![], 10).unwrap();
        assert_eq!(trivial.distinguishing_number(6).unwrap().distinguishing_number, Some(1));
        assert_eq!(PermGroup::dihedral(5).distinguishing_number(6).unwrap().distinguishing_number, Some(3));
        assert_eq!(PermGroup::symmetric(4).distinguishing_number(6).unwrap().distinguishing_number, Some(4));
        assert_eq!(PermGroup::dihedral(7).distinguishing_number(6).unwrap().distinguishing_number, Some(2));
        let above = PermGroup::symmetric(5).distinguishing_number(3).unwrap();
        assert_eq!(above.distinguishing_number, None);
        assert!(above.witness.is_none());
    }

    #[test]
    fn witnesses_are_distinguishing() {
        for g in [PermGroup::dihedral(5), PermGroup::dihedral(8), PermGroup::symmetric(4), PermGroup::cyclic(6)] {
            let d = g.distinguishing_number(6).unwrap();
            let w = d.witness.unwrap();
            assert_eq!(w[0], 1);
            assert!(w.iter().all(|&c| (c as usize) <= d.distinguishing_number.unwrap()));
            assert_eq!(g.color_preserving(&w).unwrap().order(), Some(1));
        }
    }

    #[test]
    fn must_fix_ignores_elements_trivial_there() {
        // (2 3) acts trivially on {0, 1}
        let g = close_group(4, vec![Permutation::from_cycles("(0 1)", 4).unwrap(), Permutation::from_cycles("(2 3)", 4).unwrap()], 10).unwrap();
        let all = find_distinguishing_coloring(4, g.elements().unwrap(), 2, None).unwrap();
        assert_eq!(all, vec![1, 2, 1, 2]);
        let w = find_distinguishing_coloring(4, g.elements().unwrap(), 2, Some(&[0, 1])).unwrap();
        assert_eq!(&w[..2], &[1, 2]);
        assert_eq!(find_distinguishing_coloring(4, g.elements().unwrap(), 1, Some(&[2])), None);
    }

    // two colors suffice exactly when some subset has a trivial setwise stabilizer
    #[test]
    fn two_colors_iff_rigid_subset() {
        let groups = [
            PermGroup::cyclic(3),
            PermGroup::dihedral(5),
            PermGroup::dihedral(6),
            PermGroup::dihedral(7),
            PermGroup::symmetric(3),
            PermGroup::cyclic(10),
            close_group(6, vec![Permutation::from_cycles("(0 1)(2 3)(4 5)", 6).unwrap()], 10).unwrap(),
        ];
        for g in &groups {
            let n = g.degree();
            let rigid = (0u32..1 << n).any(|mask| {
                let y: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                g.setwise_stabilizer(&y).unwrap().order() == Some(1)
            });
            let two = find_distinguishing_coloring(n, g.elements().unwrap(), 2, None).is_some();
            assert_eq!(rigid, two, "{:?}", g.generators());
        }
    }
}
