use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `0..n`, acting on the right: `x^(gh) = (x^g)^h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Permutation(format!("{images:?} is not a bijection on 0..{n}")));
            }
        }
        Ok(Permutation(images))
    }

    /// Parses cycle notation such as `(0 1 2)(3,4)`; `()` is the identity.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = match (rest.starts_with('('), rest.find(')')) {
                (true, Some(i)) => i,
                _ => return Err(Error::Permutation(format!("malformed cycle notation '{text}'"))),
            };
            let body = &rest[1..body_end];
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Permutation(format!("bad point '{s}' in '{text}'")))
                })
                .collect::<Result<_>>()?;
            for &p in &points {
                if p >= degree {
                    return Err(Error::Permutation(format!("point {p} exceeds degree {degree}")));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::Permutation(format!("point {p} repeated in '{text}'")));
                }
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()];
            }
            rest = rest[body_end + 1..].trim_start();
        }
        Ok(Permutation(images))
    }

    /// Accepts either an image array in JSON (`[1,2,0]`) or cycle notation.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('[') {
            let images: Vec<usize> = serde_json::from_str(t)?;
            if let Some(n) = degree {
                if images.len() != n {
                    return Err(Error::Permutation(format!(
                        "image array has length {}, expected {n}",
                        images.len()
                    )));
                }
            }
            Permutation::from_images(images)
        } else {
            let n = match degree {
                Some(n) => n,
                None => t
                    .split(|c: char| !c.is_ascii_digit())
                    .filter_map(|s| s.parse::<usize>().ok())
                    .max()
                    .map_or(0, |m| m + 1),
            };
            Permutation::from_cycles(t, n)
        }
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&x| self.0[x] != x).collect()
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().enumerate().filter(|(x, &y)| *x != y).count()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}
