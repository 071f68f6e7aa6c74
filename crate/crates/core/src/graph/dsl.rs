//! The family expression language.
//!
//! ```text
//! family := name '(' arg (',' arg)* ')' | name
//! arg    := family | integer | integer '-' integer
//! name   := tree | cycle | path | complete | cliquetree | zline | cart | direct | edges
//! ```
//!
//! Whitespace is ignored and integers are decimal. `edges(n, u-v, ...)`
//! describes an explicit finite graph on `0..n`. Rendering a handle with
//! `Display` gives the canonical, whitespace-free form.

use crate::error::{Error, Result};
use crate::finite::FiniteGraph;
use crate::graph::GraphHandle;

#[derive(Debug)]
enum Arg {
    Family(GraphHandle),
    Int(u64, usize),
    Edge(u64, u64, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

/// Parses a family expression into a handle.
pub fn parse_family(expr: &str) -> Result<GraphHandle> {
    let mut p = Parser {
        src: expr.as_bytes(),
        pos: 0,
    };
    let g = p.family()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(g)
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<(u64, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value = text.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: "integer out of range".into(),
        })?;
        Ok((value, start))
    }

    fn name(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_lowercase() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a family name"));
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok((name.to_string(), start))
    }

    fn arg(&mut self) -> Result<Arg> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let (a, at) = self.integer()?;
                if self.eat(b'-') {
                    let (b, _) = self.integer()?;
                    Ok(Arg::Edge(a, b, at))
                } else {
                    Ok(Arg::Int(a, at))
                }
            }
            Some(b'a'..=b'z') => {
                Ok(Arg::Family(self.family()?))
            }
            _ => Err(self.syntax("expected an argument")),
        }
    }

    fn family(&mut self) -> Result<GraphHandle> {
        let (name, at) = self.name()?;
        let mut args = Vec::new();
        if self.eat(b'(') {
            loop {
                args.push(self.arg()?);
                if self.eat(b',') {
                    continue;
                }
                if self.eat(b')') {
                    break;
                }
                return Err(self.syntax("expected ',' or ')'"));
            }
        }
        build(&name, args, at)
    }
}

fn at_offset(err: Error, at: usize) -> Error {
    match err {
        Error::Domain { message, .. } => Error::Domain {
            offset: at,
            message,
        },
        other => other,
    }
}

fn domain(at: usize, message: String) -> Error {
    Error::Domain {
        offset: at,
        message,
    }
}

fn ints<const N: usize>(name: &str, args: &[Arg], at: usize) -> Result<[u32; N]> {
    if args.len() != N {
        return Err(domain(
            at,
            format!("{name} takes {N} integer argument(s), got {}", args.len()),
        ));
    }
    let mut out = [0u32; N];
    for (slot, arg) in out.iter_mut().zip(args) {
        match arg {
            Arg::Int(v, at) => {
                *slot = u32::try_from(*v)
                    .map_err(|_| domain(*at, format!("{name}: argument too large")))?;
            }
            _ => return Err(domain(at, format!("{name} takes integer arguments"))),
        }
    }
    Ok(out)
}

fn families(name: &str, args: Vec<Arg>, at: usize) -> Result<(GraphHandle, GraphHandle)> {
    let mut it = args.into_iter();
    match (it.next(), it.next(), it.next()) {
        (Some(Arg::Family(a)), Some(Arg::Family(b)), None) => Ok((a, b)),
        _ => Err(domain(at, format!("{name} takes two family arguments"))),
    }
}

fn build(name: &str, args: Vec<Arg>, at: usize) -> Result<GraphHandle> {
    let handle = match name {
        "tree" => {
            let [r] = ints(name, &args, at)?;
            GraphHandle::tree(r)
        }
        "cycle" => {
            let [k] = ints(name, &args, at)?;
            GraphHandle::cycle(k)
        }
        "path" => {
            let [n] = ints(name, &args, at)?;
            GraphHandle::path(n)
        }
        "complete" => {
            let [n] = ints(name, &args, at)?;
            GraphHandle::complete(n)
        }
        "cliquetree" => {
            let [m, t] = ints(name, &args, at)?;
            GraphHandle::cliquetree(m, t)
        }
        "zline" => {
            if !args.is_empty() {
                return Err(domain(at, "zline takes no arguments".into()));
            }
            Ok(GraphHandle::zline())
        }
        "cart" => {
            let (a, b) = families(name, args, at)?;
            Ok(GraphHandle::cart(a, b))
        }
        "direct" => {
            let (a, b) = families(name, args, at)?;
            GraphHandle::direct(a, b)
        }
        "edges" => {
            let mut it = args.into_iter();
            let n = match it.next() {
                Some(Arg::Int(n, _)) => n as usize,
                _ => return Err(domain(at, "edges needs the vertex count first".into())),
            };
            let mut edges = Vec::new();
            for arg in it {
                match arg {
                    Arg::Edge(u, v, eat) => {
                        if u as usize >= n || v as usize >= n || u == v {
                            return Err(domain(eat, format!("bad edge {u}-{v} for {n} vertices")));
                        }
                        edges.push((u as usize, v as usize));
                    }
                    _ => return Err(domain(at, "edges takes u-v edge arguments".into())),
                }
            }
            Ok(GraphHandle::explicit(FiniteGraph::new(n, edges)?))
        }
        _ => {
            return Err(Error::Syntax {
                offset: at,
                message: format!("unknown family '{name}'"),
            })
        }
    };
    handle.map_err(|e| at_offset(e, at))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use proptest::prelude::*;

    #[test]
    fn parses_families() {
        assert!(matches!(parse_family("tree(3)").unwrap().family(), Family::Tree { r: 3 }));
        let d = parse_family(" direct( tree(3) , cycle(7) ) ").unwrap();
        assert_eq!(d.to_string(), "direct(tree(3),cycle(7))");
        assert_eq!(parse_family("edges(3, 1-0, 1-2)").unwrap().to_string(), "edges(3,0-1,1-2)");
    }

    #[test]
    fn domain_errors_carry_offsets() {
        match parse_family("cycle(2)") {
            Err(Error::Domain { offset: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_family("cart(zline,tree(1))") {
            Err(Error::Domain { offset: 11, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_family("cliquetree(1,2)"), Err(Error::Domain { .. })));
        assert!(matches!(parse_family("tree(3,4)"), Err(Error::Domain { .. })));
        assert!(matches!(parse_family("edges(2,0-2)"), Err(Error::Domain { offset: 8, .. })));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_family("tree(3") {
            Err(Error::Syntax { offset: 6, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_family("cart(zline;zline)") {
            Err(Error::Syntax { offset: 10, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_family("blob(3)"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_family("tree(0x3)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_family("tree(3) zline"), Err(Error::Syntax { .. })));
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (2u32..6).prop_map(|r| format!("tree({r})")),
            (3u32..9).prop_map(|k| format!("cycle({k})")),
            Just("zline".to_string()),
            (2u32..6).prop_map(|n| format!("path({n})")),
            (2u32..6).prop_map(|n| format!("complete({n})")),
            (2u32..5, 2u32..5).prop_map(|(m, t)| format!("cliquetree({m},{t})")),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("cart({a},{b})")),
                (inner.clone(), inner).prop_map(|(a, b)| format!("direct({a},{b})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(e in arb_expr(), spaces in proptest::collection::vec(0usize..3, 0..64)) {
            // sprinkle whitespace after commas and parentheses
            let mut noisy = String::new();
            let mut k = 0;
            for ch in e.chars() {
                noisy.push(ch);
                if matches!(ch, ',' | '(') {
                    noisy.push_str(&" ".repeat(spaces.get(k).copied().unwrap_or(0)));
                    k += 1;
                }
            }
            let h = parse_family(&noisy).unwrap();
            prop_assert_eq!(h.to_string(), e.clone());
            prop_assert_eq!(parse_family(&h.to_string()).unwrap(), h);
        }
    }
}
