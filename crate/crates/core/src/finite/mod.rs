//! Explicit finite graphs, their automorphism groups and distinguishing
//! numbers.

mod auto;
mod graph;

pub use auto::{automorphism_generators, find_automorphism};
pub use graph::{EdgeList, FiniteGraph};
pub(crate) use graph::palette;

use crate::error::{Error, Result};
use crate::permgrp::{close_group, least_colors, Distinguishing, PermGroup};

fn group_from_search(g: &FiniteGraph, colors: Option<&[u32]>, cap: usize) -> Result<PermGroup> {
    let (gens, order) = automorphism_generators(g, colors);
    if order <= cap as u128 {
        close_group(g.order(), gens, cap)
    } else {
        Ok(PermGroup::from_generators(g.order(), gens, order, cap))
    }
}

/// The full automorphism group. Groups larger than `cap` come back with
/// generators and order only.
pub fn automorphism_group(g: &FiniteGraph, cap: usize) -> Result<PermGroup> {
    group_from_search(g, None, cap)
}

/// Automorphisms preserving every color class of `coloring`.
pub fn color_preserving(g: &FiniteGraph, coloring: &[u8], cap: usize) -> Result<PermGroup> {
    if coloring.len() != g.order() {
        return Err(Error::Coloring(format!(
            "coloring covers {} of {} vertices",
            coloring.len(),
            g.order()
        )));
    }
    let colors: Vec<u32> = coloring.iter().map(|&c| c as u32).collect();
    group_from_search(g, Some(&colors), cap)
}

/// Least number of colors distinguishing `g`, with a witness coloring.
pub fn distinguishing_number_graph(g: &FiniteGraph, max_colors: usize, cap: usize) -> Result<Distinguishing> {
    let aut = automorphism_group(g, cap)?;
    Ok(least_colors(g.order(), aut.elements()?, max_colors, None))
}
