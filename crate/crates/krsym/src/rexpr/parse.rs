//! Recursive-descent parser for the group-expression grammar.

use super::{AtomExpr, ExprError, Family, GroupExpr};

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

/// Parse an expression. Errors carry the byte position they occurred at.
pub fn parse(text: &str) -> Result<GroupExpr, ExprError> {
    let mut p = Parser {
        input: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(ExprError::Parse {
            position: p.pos,
            message: format!("unexpected trailing input {:?}", p.rest_snippet()),
        });
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn rest_snippet(&self) -> String {
        let rest = &self.input[self.pos.min(self.input.len())..];
        String::from_utf8_lossy(&rest[..rest.len().min(12)]).into_owned()
    }

    // expr := term ("x" term)*
    fn expr(&mut self) -> Result<GroupExpr, ExprError> {
        let first = self.term()?;
        let mut children = vec![first];
        loop {
            self.skip_ws();
            if self.peek() == Some(b'x') {
                self.pos += 1;
                children.push(self.term()?);
            } else {
                break;
            }
        }
        Ok(if children.len() == 1 {
            children.pop().unwrap()
        } else {
            GroupExpr::Prod(children)
        })
    }

    // term := atom ("wr" atom)*, left associative
    fn term(&mut self) -> Result<GroupExpr, ExprError> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.input[self.pos..].starts_with(b"wr") {
                self.pos += 2;
                let top = self.atom()?;
                acc = GroupExpr::wr(acc, top)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    // atom := "Z"INT | "D"INT | "S"INT | "1" | "(" expr ")"
    fn atom(&mut self) -> Result<GroupExpr, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(GroupExpr::Triv)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(ExprError::Parse {
                        position: self.pos,
                        message: "expected ')'".into(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c @ (b'Z' | b'D' | b'S')) => {
                let family = match c {
                    b'Z' => Family::Cyclic,
                    b'D' => Family::Dihedral,
                    _ => Family::Symmetric,
                };
                let number_pos = self.pos + 1;
                self.pos += 1;
                let n = self.integer()?;
                if n == 0 {
                    return Err(ExprError::Degree {
                        position: number_pos,
                    });
                }
                Ok(GroupExpr::Atom(AtomExpr { family, n }))
            }
            _ => Err(ExprError::Parse {
                position: self.pos,
                message: format!("expected an atom, found {:?}", self.rest_snippet()),
            }),
        }
    }

    fn integer(&mut self) -> Result<u64, ExprError> {
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ExprError::Parse {
                position: start,
                message: "expected a degree".into(),
            });
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ExprError::Parse {
                position: start,
                message: "degree out of range".into(),
            })
    }
}
