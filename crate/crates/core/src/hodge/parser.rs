//! Recursive-descent parser for construction expressions.
//!
//! ```text
//! expr    := leaf
//!          | "product" "(" expr "," expr ")"
//!          | "projbundle" "(" expr "," int ")"
//!          | "blowup" "(" expr "," expr "," int ")"
//!          | "flagbundle" "(" expr "," "[" int ("," int)* "]" ")"
//! leaf    := "P" "(" int ")" | "torus" "(" int ")" | "curve" "(" int ")"
//!          | "hopf" | "point"
//!          | "diamond" "(" int (";" int "," int "," int)* ")"
//! ```
//!
//! Whitespace is ignored between tokens.

use super::{ConstructionExpr, Leaf};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    Bad(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("{s:?}"),
            Tok::Int(s) => format!("integer {s}"),
            Tok::Sym(c) | Tok::Bad(c) => format!("{c:?}"),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(src: &str) -> Vec<(usize, Tok)> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it
                .peek()
                .filter(|(_, c)| c.is_ascii_alphanumeric() || *c == '_')
            {
                s.push(c);
                it.next();
            }
            out.push((i, Tok::Ident(s)));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_ascii_digit()) {
                s.push(c);
                it.next();
            }
            out.push((i, Tok::Int(s)));
        } else if "()[],;".contains(c) {
            out.push((i, Tok::Sym(c)));
            it.next();
        } else {
            out.push((i, Tok::Bad(c)));
            it.next();
        }
    }
    out.push((src.len(), Tok::End));
    out
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

const EXPR: &str = "expression";

impl Parser {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.pos]
    }

    fn offset(&self) -> usize {
        self.peek().0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, expected: &[&str]) -> ParseError {
        let (offset, tok) = self.peek();
        ParseError::Syntax {
            offset: *offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        }
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek().1 == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(&[&format!("'{c}'")]))
        }
    }

    /// Separator between arguments `i` and `i + 1` of a call taking
    /// `arity` arguments; a premature `)` is an arity error.
    fn comma(&mut self, name: &str, arity: usize) -> Result<(), ParseError> {
        match self.peek().1 {
            Tok::Sym(',') => {
                self.bump();
                Ok(())
            }
            Tok::Sym(')') => Err(ParseError::Arity {
                offset: self.offset(),
                name: name.into(),
                expected: arity,
            }),
            _ => Err(self.syntax(&["','"])),
        }
    }

    /// Closing parenthesis of a call; an extra argument is an arity error.
    fn close(&mut self, name: &str, arity: usize) -> Result<(), ParseError> {
        match self.peek().1 {
            Tok::Sym(')') => {
                self.bump();
                Ok(())
            }
            Tok::Sym(',') => Err(ParseError::Arity {
                offset: self.offset(),
                name: name.into(),
                expected: arity,
            }),
            _ => Err(self.syntax(&["')'"])),
        }
    }

    fn int<T: std::str::FromStr>(&mut self) -> Result<T, ParseError> {
        match &self.peek().1 {
            Tok::Int(s) => {
                let v = s.parse().map_err(|_| ParseError::Syntax {
                    offset: self.offset(),
                    expected: vec!["integer in range".into()],
                    found: format!("integer {s}"),
                })?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.syntax(&["integer"])),
        }
    }

    fn expr(&mut self) -> Result<ConstructionExpr, ParseError> {
        let (start, tok) = self.peek().clone();
        let Tok::Ident(name) = tok else {
            return Err(self.syntax(&[EXPR]));
        };
        self.bump();
        let e = match name.as_str() {
            "product" => {
                self.sym('(')?;
                let a = self.expr()?;
                self.comma(&name, 2)?;
                let b = self.expr()?;
                self.close(&name, 2)?;
                ConstructionExpr::product(a, b)
            }
            "projbundle" => {
                self.sym('(')?;
                let a = self.expr()?;
                self.comma(&name, 2)?;
                let r = self.int()?;
                self.close(&name, 2)?;
                ConstructionExpr::proj_bundle(a, r)
            }
            "blowup" => {
                self.sym('(')?;
                let a = self.expr()?;
                self.comma(&name, 3)?;
                let z = self.expr()?;
                self.comma(&name, 3)?;
                let r = self.int()?;
                self.close(&name, 3)?;
                ConstructionExpr::blow_up(a, z, r)
            }
            "flagbundle" => {
                self.sym('(')?;
                let a = self.expr()?;
                self.comma(&name, 2)?;
                self.sym('[')?;
                let mut parts = vec![self.int()?];
                while self.peek().1 == Tok::Sym(',') {
                    self.bump();
                    parts.push(self.int()?);
                }
                self.sym(']')?;
                self.close(&name, 2)?;
                ConstructionExpr::flag_bundle(a, parts)
            }
            "P" | "torus" | "curve" => {
                self.sym('(')?;
                let n = self.int()?;
                self.close(&name, 1)?;
                ConstructionExpr::leaf(match name.as_str() {
                    "P" => Leaf::Projective(n),
                    "torus" => Leaf::Torus(n),
                    _ => Leaf::Curve(n),
                })
            }
            "hopf" => ConstructionExpr::leaf(Leaf::Hopf),
            "point" => ConstructionExpr::leaf(Leaf::Point),
            "diamond" => {
                self.sym('(')?;
                let n = self.int()?;
                let mut entries = Vec::new();
                while self.peek().1 == Tok::Sym(';') {
                    self.bump();
                    let p = self.int()?;
                    self.sym(',')?;
                    let q = self.int()?;
                    self.sym(',')?;
                    let h = self.int()?;
                    entries.push((p, q, h));
                }
                if self.peek().1 != Tok::Sym(')') {
                    return Err(self.syntax(&["';'", "')'"]));
                }
                self.bump();
                let leaf = Leaf::diamond(n, entries).map_err(|source| ParseError::Diamond {
                    offset: start,
                    source,
                })?;
                ConstructionExpr::leaf(leaf)
            }
            _ => {
                return Err(ParseError::UnknownLeaf {
                    offset: start,
                    name,
                })
            }
        };
        Ok(e)
    }
}

/// Parses a whole construction expression.
pub fn parse_expr(src: &str) -> Result<ConstructionExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(src),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().1 != Tok::End {
        return Err(p.syntax(&["end of input"]));
    }
    Ok(e)
}
