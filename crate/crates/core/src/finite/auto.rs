//! Automorphism search by color refinement and individualization.
//!
//! A search state is a pair of vertex colorings of the same graph, one for
//! the source side and one for the target side. Both are refined together
//! so that color ids agree; a discrete pair of colorings spells out a
//! candidate bijection, which is then checked edge by edge.

use crate::finite::FiniteGraph;
use crate::permgrp::{orbits_of, Permutation};

#[derive(Clone)]
struct State {
    a: Vec<u32>,
    b: Vec<u32>,
    classes: usize,
}

fn class_count(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Refines both sides to a common stable coloring. False when the sides
/// become incompatible.
fn refine(g: &FiniteGraph, st: &mut State) -> bool {
    let n = g.order();
    loop {
        let mut sigs: Vec<(Vec<u32>, bool, usize)> = Vec::with_capacity(2 * n);
        for (side, colors) in [(false, &st.a), (true, &st.b)] {
            for v in 0..n {
                let mut sig = Vec::with_capacity(g.degree(v) + 1);
                sig.push(colors[v]);
                let mut around: Vec<u32> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                around.sort_unstable();
                sig.extend(around);
                sigs.push((sig, side, v));
            }
        }
        sigs.sort_unstable();
        let mut next = 0u32;
        let mut i = 0;
        while i < sigs.len() {
            let mut j = i;
            let (mut left, mut right) = (0usize, 0usize);
            while j < sigs.len() && sigs[j].0 == sigs[i].0 {
                if sigs[j].1 {
                    right += 1;
                    st.b[sigs[j].2] = next;
                } else {
                    left += 1;
                    st.a[sigs[j].2] = next;
                }
                j += 1;
            }
            if left != right {
                return false;
            }
            next += 1;
            i = j;
        }
        let classes = next as usize;
        if classes == st.classes {
            return true;
        }
        st.classes = classes;
    }
}

fn start(g: &FiniteGraph, colors: &[u32]) -> Option<State> {
    let mut st = State {
        a: colors.to_vec(),
        b: colors.to_vec(),
        classes: class_count(colors),
    };
    // force one pass even when the initial coloring is already stable
    st.classes = 0;
    refine(g, &mut st).then_some(st)
}

fn individualize(g: &FiniteGraph, st: &State, x: usize, y: usize) -> Option<State> {
    if st.a[x] != st.b[y] {
        return None;
    }
    let mut next = st.clone();
    let fresh = st.classes as u32;
    next.a[x] = fresh;
    next.b[y] = fresh;
    next.classes += 1;
    refine(g, &mut next).then_some(next)
}

/// The least color with more than one vertex, its least source vertex and
/// the target candidates in ascending order.
fn target_cell(st: &State) -> Option<(usize, Vec<usize>)> {
    let n = st.a.len();
    if st.classes == n {
        return None;
    }
    let mut size = vec![0usize; st.classes];
    for &c in &st.a {
        size[c as usize] += 1;
    }
    let color = (0..st.classes).find(|&c| size[c] > 1)? as u32;
    let x = (0..n).find(|&v| st.a[v] == color)?;
    let ys = (0..n).filter(|&v| st.b[v] == color).collect();
    Some((x, ys))
}

fn leaf(g: &FiniteGraph, st: &State) -> Option<Permutation> {
    let n = g.order();
    let mut by_color = vec![usize::MAX; n];
    for (v, &c) in st.b.iter().enumerate() {
        by_color[c as usize] = v;
    }
    let images: Vec<usize> = st.a.iter().map(|&c| by_color[c as usize]).collect();
    let ok = g
        .edges()
        .into_iter()
        .all(|(u, v)| g.has_edge(images[u], images[v]));
    ok.then(|| Permutation::from_images(images).expect("discrete colorings give a bijection"))
}

fn find_from(g: &FiniteGraph, st: &State) -> Option<Permutation> {
    if st.a == st.b {
        // every constraint lives in the colorings, so the identity meets them
        return Some(Permutation::identity(g.order()));
    }
    match target_cell(st) {
        None => leaf(g, st),
        Some((x, ys)) => ys
            .into_iter()
            .filter_map(|y| individualize(g, st, x, y))
            .find_map(|next| find_from(g, &next)),
    }
}

/// Some automorphism preserving `colors` and sending each `x` to its `y`.
pub fn find_automorphism(
    g: &FiniteGraph,
    colors: Option<&[u32]>,
    prescribed: &[(usize, usize)],
) -> Option<Permutation> {
    let zeros = vec![0u32; g.order()];
    let mut st = start(g, colors.unwrap_or(&zeros))?;
    for &(x, y) in prescribed {
        st = individualize(g, &st, x, y)?;
    }
    find_from(g, &st)
}

/// Generators of the color-preserving automorphism group together with its
/// exact order, from the orbits of the successive base-point stabilizers.
pub fn automorphism_generators(g: &FiniteGraph, colors: Option<&[u32]>) -> (Vec<Permutation>, u128) {
    let n = g.order();
    let zeros = vec![0u32; n];
    let Some(mut st) = start(g, colors.unwrap_or(&zeros)) else {
        return (Vec::new(), 1);
    };
    let mut levels = Vec::new();
    while let Some((x, ys)) = target_cell(&st) {
        let next = individualize(g, &st, x, x).expect("the identity always refines");
        levels.push((st, x, ys));
        st = next;
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    for (st, x, ys) in levels.into_iter().rev() {
        let orbit_of_x = |gens: &[Permutation]| -> Vec<usize> {
            orbits_of(n, gens).into_iter().find(|o| o.contains(&x)).unwrap()
        };
        let mut orbit = orbit_of_x(&gens);
        for y in ys {
            if orbit.contains(&y) {
                continue;
            }
            if let Some(p) = individualize(g, &st, x, y).and_then(|s| find_from(g, &s)) {
                gens.push(p);
                orbit = orbit_of_x(&gens);
            }
        }
        order *= orbit.len() as u128;
    }
    (gens, order)
}
