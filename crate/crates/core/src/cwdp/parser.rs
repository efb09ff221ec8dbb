//! Recursive-descent parser for k-expressions.
//!
//! ```text
//! expr := "v(" INT ")"
//!       | "u(" expr "," expr ")"
//!       | "e(" INT "," INT "," expr ")"
//!       | "r(" INT "," INT "," expr ")"
//! ```
//! Whitespace is ignored between tokens. Colors are 1-based.

use super::KExpr;
use crate::error::{Error, Result};

const MAX_DEPTH: usize = 512;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => err(self.pos, format!("expected '{}', found '{}'", c as char, got as char)),
            None => err(self.pos, format!("expected '{}', found end of input", c as char)),
        }
    }

    fn color(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            return err(start, "colors must be positive");
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected a color");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<usize>() {
            Ok(0) => err(start, "colors are 1-based"),
            Ok(c) => Ok(c),
            Err(_) => err(start, "color out of range"),
        }
    }

    fn expr(&mut self) -> Result<KExpr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return err(self.pos, format!("nesting deeper than {MAX_DEPTH}"));
        }
        let at = self.pos;
        let op = match self.peek() {
            Some(c) => c,
            None => return err(self.pos, "expected an expression, found end of input"),
        };
        self.pos += 1;
        self.expect(b'(')?;
        let node = match op {
            b'v' => KExpr::Singleton(self.color()?),
            b'u' => {
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                KExpr::Union(Box::new(a), Box::new(b))
            }
            b'e' | b'r' => {
                let i = self.color()?;
                self.expect(b',')?;
                let j = self.color()?;
                self.expect(b',')?;
                let child = Box::new(self.expr()?);
                if op == b'e' {
                    KExpr::AddEdges(i, j, child)
                } else {
                    KExpr::Relabel(i, j, child)
                }
            }
            other => return err(at, format!("unknown operation '{}'", other as char)),
        };
        self.expect(b')')?;
        self.depth -= 1;
        Ok(node)
    }
}

pub fn parse_kexpr(text: &str) -> Result<KExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return err(p.pos, format!("trailing input starting with '{}'", c as char));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos_of(text: &str) -> usize {
        match parse_kexpr(text) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_basic_forms() {
        assert_eq!(parse_kexpr("v(3)").unwrap(), KExpr::Singleton(3));
        assert_eq!(parse_kexpr("v(3)").unwrap().width(), 3);
        let k2 = parse_kexpr(" e( 1 ,2,\n u(v(1), v(2)) ) ").unwrap();
        assert_eq!(
            k2,
            KExpr::AddEdges(1, 2, Box::new(KExpr::Union(Box::new(KExpr::Singleton(1)), Box::new(KExpr::Singleton(2)))))
        );
    }

    #[test]
    fn reports_positions() {
        assert_eq!(pos_of("u(v(1)"), 6);
        assert_eq!(pos_of("v(0)"), 2);
        assert_eq!(pos_of("v(-2)"), 2);
        assert_eq!(pos_of("w(1)"), 0);
        assert_eq!(pos_of("v(1) v(2)"), 5);
        assert_eq!(pos_of(""), 0);
        assert_eq!(pos_of("e(1,v(1))"), 4);
        assert_eq!(pos_of("v(99999999999999999999999)"), 2);
    }

    #[test]
    fn rejects_runaway_nesting() {
        let deep = "r(1,1,".repeat(MAX_DEPTH + 1) + "v(1)" + &")".repeat(MAX_DEPTH + 1);
        assert!(matches!(parse_kexpr(&deep), Err(Error::Parse { .. })));
    }
}
