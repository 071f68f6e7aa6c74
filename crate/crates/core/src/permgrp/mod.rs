//! Finite permutation groups on `0..n`.

mod blocks;
mod distinguish;
mod group;
mod perm;

pub use blocks::BlockSystem;
pub use distinguish::{find_distinguishing_coloring, preserving, Distinguishing, MAX_COLORS};
pub use group::{close_group, GroupSummary, PermGroup, ENUMERATION_CAP};
pub use perm::Permutation;

pub(crate) use distinguish::least_colors;
pub(crate) use group::orbits_of;
