use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::vertex::VertexId;

/// A total map from a sorted vertex list to colors `1..=c`.
///
/// Serializes as a JSON object keyed by vertex strings, in canonical vertex
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    domain: Vec<VertexId>,
    colors: Vec<u8>,
}

impl Coloring {
    pub fn new(domain: Vec<VertexId>, colors: Vec<u8>) -> Result<Self> {
        if domain.len() != colors.len() {
            return Err(Error::Coloring(format!(
                "{} vertices but {} colors",
                domain.len(),
                colors.len()
            )));
        }
        if colors.contains(&0) {
            return Err(Error::Coloring("colors start at 1".into()));
        }
        let mut pairs: Vec<(VertexId, u8)> = domain.into_iter().zip(colors).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Coloring("vertex colored twice".into()));
        }
        let (domain, colors) = pairs.into_iter().unzip();
        Ok(Coloring { domain, colors })
    }

    pub fn domain(&self) -> &[VertexId] {
        &self.domain
    }

    /// Colors aligned with `domain()`.
    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn get(&self, v: &VertexId) -> Option<u8> {
        self.domain.binary_search(v).ok().map(|i| self.colors[i])
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    /// Largest color index in use.
    pub fn num_colors(&self) -> u8 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn class(&self, color: u8) -> Vec<VertexId> {
        self.domain
            .iter()
            .zip(&self.colors)
            .filter(|(_, &c)| c == color)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.domain.len()))?;
        for (v, c) in self.domain.iter().zip(&self.colors) {
            map.serialize_entry(&v.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, u8>::deserialize(d)?;
        let mut domain = Vec::with_capacity(raw.len());
        let mut colors = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            domain.push(k.parse::<VertexId>().map_err(D::Error::custom)?);
            colors.push(c);
        }
        Coloring::new(domain, colors).map_err(D::Error::custom)
    }
}
