//! Text input for fields, polynomials and elements.
//!
//! Polynomials are either a comma-separated list of coefficient encodings,
//! constant term first (`"0,1,1"`), or an expression in `x` with integer
//! coefficients read in the prime field: `x^16+x^2`, `-(x^8+x^2)`,
//! `x(x^2+x+1)^2`, `2*x^3 - 1`. A string without `x` is an encoding list.

use kummer_core::{Error, Fe, Field, Poly, Result};

pub fn parse_field(s: &str) -> Result<Field> {
    Field::from_descriptor(s)
}

/// An element encoding, or a negative integer taken modulo `p`.
pub fn parse_element(s: &str, field: &Field) -> Result<Fe> {
    let t = normalize(s);
    let n: i64 = t
        .parse()
        .map_err(|_| Error::Parse(format!("bad element {s:?}")))?;
    if n < 0 {
        Ok(field.from_int(n))
    } else {
        field.element(n as u64)
    }
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect()
}

pub fn parse_poly(s: &str, field: &Field) -> Result<Poly> {
    let t = normalize(s);
    if t.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if !t.contains('x') {
        let encs = t
            .split(',')
            .map(|c| {
                c.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        return Poly::from_encodings(&encs, field);
    }
    let mut parser = Parser {
        src: t.as_bytes(),
        pos: 0,
        field,
    };
    let poly = parser.expr()?;
    if parser.pos != parser.src.len() {
        return Err(parser.error());
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self) -> Error {
        Error::Parse(format!(
            "unexpected input at position {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg(self.field);
        }
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' {
                acc.add(&t, self.field)
            } else {
                acc.sub(&t, self.field)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'x' | b'(') => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = acc.mul(&f, self.field);
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            return Ok(base.pow(e, self.field));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let n = self.number()?;
                let c = self.field.from_int((n % self.field.p() as u64) as i64);
                Ok(Poly::constant(c))
            }
            _ => Err(self.error()),
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error())
    }
}
