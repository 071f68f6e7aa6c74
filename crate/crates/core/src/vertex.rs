//! Canonical vertex encodings.
//!
//! Every graph family names its vertices with a [`VertexId`]. Encodings are
//! canonical (equal iff the same vertex) and totally ordered:
//!
//! * integers compare numerically;
//! * tree words and clique words compare *shortlex*: shorter words first,
//!   words of equal length lexicographically;
//! * product pairs compare lexicographically, first coordinate first.
//!
//! Variants of different kinds never meet inside one graph, but for totality
//! `Int < Word < Clique < Pair`.
//!
//! The string form (used for JSON and the command line) is
//! `-3`, `[0,1,1]`, `{0:1,1:0}` and `(x,y)` respectively.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A path-from-root word in a regular tree. The first letter picks one of the
/// `r` root edges, every later letter one of the `r - 1` non-backtracking
/// children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u32>);

/// A word of `(clique, slot)` steps in a clique tree. Each step enters one of
/// the child cliques of the current vertex and picks one of its `m - 1`
/// non-owner members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CliqueWord(pub Vec<(u32, u32)>);

fn shortlex<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CliqueWord {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for CliqueWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    /// Line, cycle, path, complete and explicit graphs.
    Int(i64),
    /// Regular trees.
    Word(Word),
    /// Clique trees.
    Clique(CliqueWord),
    /// Cartesian and direct products.
    Pair(Box<VertexId>, Box<VertexId>),
}

impl VertexId {
    pub fn pair(a: VertexId, b: VertexId) -> Self {
        VertexId::Pair(Box::new(a), Box::new(b))
    }

    pub fn word(letters: impl Into<Vec<u32>>) -> Self {
        VertexId::Word(Word(letters.into()))
    }

    pub fn clique(steps: impl Into<Vec<(u32, u32)>>) -> Self {
        VertexId::Clique(CliqueWord(steps.into()))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            VertexId::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&VertexId, &VertexId)> {
        match self {
            VertexId::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl From<i64> for VertexId {
    fn from(i: i64) -> Self {
        VertexId::Int(i)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Word(w) => {
                f.write_str("[")?;
                for (k, l) in w.0.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str("]")
            }
            VertexId::Clique(w) => {
                f.write_str("{")?;
                for (k, (c, s)) in w.0.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}:{s}")?;
                }
                f.write_str("}")
            }
            VertexId::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::VertexSyntax {
            offset: self.pos,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), Error> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn unsigned(&mut self) -> Result<u64, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::VertexSyntax {
                offset: start,
                message: "integer out of range".into(),
            })
    }

    fn small(&mut self) -> Result<u32, Error> {
        let at = self.pos;
        let v = self.unsigned()?;
        u32::try_from(v).map_err(|_| Error::VertexSyntax {
            offset: at,
            message: "letter out of range".into(),
        })
    }

    fn vertex(&mut self) -> Result<VertexId, Error> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut letters = Vec::new();
                if self.peek() != Some(b']') {
                    loop {
                        letters.push(self.small()?);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b']')?;
                Ok(VertexId::word(letters))
            }
            Some(b'{') => {
                self.pos += 1;
                let mut steps = Vec::new();
                if self.peek() != Some(b'}') {
                    loop {
                        let c = self.small()?;
                        self.expect(b':')?;
                        let s = self.small()?;
                        steps.push((c, s));
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b'}')?;
                Ok(VertexId::clique(steps))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.vertex()?;
                self.expect(b',')?;
                let b = self.vertex()?;
                self.expect(b')')?;
                Ok(VertexId::pair(a, b))
            }
            Some(b'-') => {
                self.pos += 1;
                let at = self.pos;
                let v = self.unsigned()?;
                let v = i64::try_from(v).map_err(|_| Error::VertexSyntax {
                    offset: at,
                    message: "integer out of range".into(),
                })?;
                Ok(VertexId::Int(-v))
            }
            Some(b'0'..=b'9') => {
                let at = self.pos;
                let v = self.unsigned()?;
                let v = i64::try_from(v).map_err(|_| Error::VertexSyntax {
                    offset: at,
                    message: "integer out of range".into(),
                })?;
                Ok(VertexId::Int(v))
            }
            _ => Err(self.err("expected a vertex")),
        }
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cur = Cursor {
            src: compact.as_bytes(),
            pos: 0,
        };
        let v = cur.vertex()?;
        if cur.pos != compact.len() {
            return Err(cur.err("trailing input"));
        }
        Ok(v)
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
