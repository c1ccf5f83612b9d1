//! Text syntax:
//!
//! ```text
//! spec      := "M" | "W" | "Pi" | "Frechet(" rat ")" | "Threshold(" rat ")"
//!            | ("M" | "W") "(" group ("," group)* ")"
//! group     := int | int "-" int | ("M" | "W") "(" group ("," group)* ")"
//! ```
//!
//! Coordinates are one-based; `k-l` expands to `k, k+1, …, l`. Whitespace is
//! ignored.

use super::{Combiner, Component, Composite, CopulaSpec};
use crate::error::{Error, Result};
use crate::rational::parse_rational;

pub fn parse_spec(text: &str) -> Result<CopulaSpec> {
    let mut p = Parser { text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: impl Into<String>) -> Error {
        Error::InvalidCopula {
            offset: self.pos,
            reason: reason.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        self.pos += len;
        &self.text[start..self.pos]
    }

    fn spec(&mut self) -> Result<CopulaSpec> {
        let start = self.pos;
        let name = self.ident().to_string();
        match name.as_str() {
            "M" | "W" => {
                let outer = if name == "M" { Combiner::Min } else { Combiner::FhLower };
                if self.peek() == Some('(') {
                    let c = self.composite_args(outer, start)?;
                    if c.first() != 0 {
                        return Err(Error::InvalidCopula {
                            offset: start,
                            reason: "coordinates must start at 1".into(),
                        });
                    }
                    Ok(CopulaSpec::Composite(c))
                } else if outer == Combiner::Min {
                    Ok(CopulaSpec::Min)
                } else {
                    Ok(CopulaSpec::FhLower)
                }
            }
            "Pi" => Ok(CopulaSpec::Independent),
            "Frechet" | "Threshold" => {
                self.expect('(')?;
                self.skip_ws();
                let arg_start = self.pos;
                let len = self.rest().find(')').ok_or_else(|| self.error("expected `)`"))?;
                let raw = &self.text[arg_start..arg_start + len];
                let value = parse_rational(raw).map_err(|_| Error::InvalidCopula {
                    offset: arg_start,
                    reason: format!("invalid rational `{}`", raw.trim()),
                })?;
                self.pos = arg_start + len + 1;
                let spec = if name == "Frechet" {
                    CopulaSpec::frechet(value)
                } else {
                    CopulaSpec::threshold(value)
                };
                spec.map_err(|e| match e {
                    Error::InvalidCopula { reason, .. } => Error::InvalidCopula {
                        offset: arg_start,
                        reason,
                    },
                    other => other,
                })
            }
            "" => Err(self.error("expected a copula name")),
            other => Err(Error::InvalidCopula {
                offset: start,
                reason: format!("unknown copula `{other}`"),
            }),
        }
    }

    fn composite_args(&mut self, outer: Combiner, start: usize) -> Result<Composite> {
        self.expect('(')?;
        let mut children = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let lo = self.coordinate()?;
                    if self.eat('-') {
                        let hi = self.coordinate()?;
                        if hi < lo {
                            return Err(self.error(format!("empty range {}-{}", lo + 1, hi + 1)));
                        }
                        children.extend((lo..=hi).map(Component::Coord));
                    } else {
                        children.push(Component::Coord(lo));
                    }
                }
                Some('M') | Some('W') => {
                    let inner_start = self.pos;
                    let inner_outer = if self.ident() == "M" { Combiner::Min } else { Combiner::FhLower };
                    if self.peek() != Some('(') {
                        return Err(self.error("nested groups need arguments"));
                    }
                    children.push(Component::Nested(self.composite_args(inner_outer, inner_start)?));
                }
                _ => return Err(self.error("expected a coordinate or a nested group")),
            }
            if self.eat(')') {
                break;
            }
            self.expect(',')?;
        }
        Composite::new(outer, children).map_err(|e| match e {
            Error::InvalidCopula { reason, .. } => Error::InvalidCopula { offset: start, reason },
            other => other,
        })
    }

    fn coordinate(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        self.pos += len;
        let k: usize = self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error("expected a coordinate"))?;
        if k == 0 {
            return Err(Error::InvalidCopula {
                offset: start,
                reason: "coordinates are one-based".into(),
            });
        }
        Ok(k - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    #[test]
    fn named_forms() {
        assert_eq!(parse_spec("M").unwrap(), CopulaSpec::Min);
        assert_eq!(parse_spec(" W ").unwrap(), CopulaSpec::FhLower);
        assert_eq!(parse_spec("Pi").unwrap(), CopulaSpec::Independent);
        assert_eq!(parse_spec("Frechet(1/3)").unwrap(), CopulaSpec::Frechet(ratio(1, 3)));
        assert_eq!(parse_spec("Threshold( 0.5 )").unwrap(), CopulaSpec::Threshold(ratio(1, 2)));
    }

    #[test]
    fn groups_and_ranges() {
        let a = parse_spec("W(M(1-3),M(4,5))").unwrap();
        assert_eq!(a.arity(), Some(5));
        assert_eq!(a.to_string(), "W(M(1,2,3),M(4,5))");
        let b = parse_spec("M(W(1,2),3)").unwrap();
        assert_eq!(b.to_string(), "M(W(1,2),3)");
    }

    #[test]
    fn errors_carry_offsets() {
        let cases = [
            ("Q", 0),
            ("M(1,3)", 0),
            ("M(2,3)", 0),
            ("M(1,W(3,2))", 4),
            ("Frechet(2)", 8),
            ("Frechet(abc)", 8),
            ("M(0)", 2),
            ("M(1", 3),
            ("M x", 2),
            ("M(1,Pi)", 4),
        ];
        for (text, offset) in cases {
            match parse_spec(text) {
                Err(Error::InvalidCopula { offset: got, .. }) => assert_eq!(got, offset, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    fn composite(depth: u32) -> impl Strategy<Value = (bool, Vec<Tree>)> {
        let leaf = Just(Tree::Leaf).boxed();
        let tree = leaf.prop_recursive(depth, 12, 3, |inner| {
            (any::<bool>(), proptest::collection::vec(inner, 1..4)).prop_map(|(m, c)| Tree::Node(m, c))
        });
        (any::<bool>(), proptest::collection::vec(tree, 1..4))
    }

    #[derive(Debug, Clone)]
    enum Tree {
        Leaf,
        Node(bool, Vec<Tree>),
    }

    fn build(min: bool, kids: &[Tree], next: &mut usize) -> Composite {
        let children = kids
            .iter()
            .map(|k| match k {
                Tree::Leaf => {
                    *next += 1;
                    Component::Coord(*next - 1)
                }
                Tree::Node(m, c) => Component::Nested(build(*m, c, next)),
            })
            .collect();
        let outer = if min { Combiner::Min } else { Combiner::FhLower };
        Composite::new(outer, children).unwrap()
    }

    proptest! {
        #[test]
        fn display_parse_round_trip((min, kids) in composite(3), num in 0i64..=8) {
            let mut next = 0;
            let c = CopulaSpec::Composite(build(min, &kids, &mut next));
            prop_assert_eq!(parse_spec(&c.to_string()).unwrap(), c);
            for s in [CopulaSpec::Frechet(ratio(num, 8)), CopulaSpec::Threshold(ratio(num, 8))] {
                prop_assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
            }
        }
    }
}
