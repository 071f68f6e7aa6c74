//! Distinct spheres, distinguishing colorings and the finite group
//! machinery used to check them.

pub mod coloring;
pub mod dsc;
pub mod error;
pub mod finite;
pub mod graph;
pub mod metric;
pub mod permgrp;
pub mod vertex;
pub mod weakprod;

pub use coloring::Coloring;
pub use error::{Error, Result};
pub use graph::{parse_family, GraphHandle};
pub use vertex::VertexId;

pub(crate) mod par {
    /// Maps `f` over `items`, in parallel when the `parallel` feature is on.
    /// Output order always follows input order.
    #[cfg(feature = "parallel")]
    pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }

    #[cfg(not(feature = "parallel"))]
    pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
        items.iter().map(f).collect()
    }
}
