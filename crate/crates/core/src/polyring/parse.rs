use num_bigint::BigInt;
use num_rational::BigRational;

use super::{SparsePoly, Stream, VarId};
use crate::error::{Error, Result};

/// Parses a polynomial in `Z[i]`, `Z[i][s]` and `X[i][s]`, with `+ - * /`,
/// integer exponents (`^`, possibly negative) and parentheses. Double-indexed
/// `Z` variables are placed in the model stream.
pub fn parse_poly(text: &str) -> Result<SparsePoly> {
    parse_poly_with(text, &|_, _| Stream::Model)
}

/// As [`parse_poly`], with `jet_stream(i, s)` choosing the stream of `Z[i][s]`.
pub fn parse_poly_with(text: &str, jet_stream: &dyn Fn(u32, u32) -> Stream) -> Result<SparsePoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        jet_stream,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    jet_stream: &'a dyn Fn(u32, u32) -> Stream,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let d = self.factor()?;
                acc = divide(&acc, &d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let k = self.integer()?;
        let k = u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
        let p = base.pow(k);
        if neg {
            divide(&SparsePoly::one(), &p)
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(SparsePoly::constant(BigRational::from_integer(n)))
            }
            Some(b'Z') | Some(b'X') => {
                let aux = self.src[self.pos] == b'X';
                self.pos += 1;
                let i = self.index()?;
                let s = if self.peek() == Some(b'[') {
                    Some(self.index()?)
                } else {
                    None
                };
                let v = match (aux, s) {
                    (false, None) => VarId::base(i),
                    (false, Some(s)) => VarId::new((self.jet_stream)(i, s), i, s),
                    (true, Some(s)) => VarId::aux(i, s),
                    (true, None) => return Err(self.err("X variables need two indices")),
                };
                Ok(SparsePoly::var(v))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }

    fn index(&mut self) -> Result<u32> {
        self.expect(b'[')?;
        let n = self.integer()?;
        self.expect(b']')?;
        u32::try_from(n).map_err(|_| self.err("index too large"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| self.err("bad integer"))
    }
}

/// Division by a single term; the variables of the divisor become invertible.
fn divide(num: &SparsePoly, den: &SparsePoly) -> Result<SparsePoly> {
    if den.len() != 1 {
        return Err(Error::NonMonomialDivision(den.to_string()));
    }
    let vars: Vec<VarId> = den.vars().into_iter().collect();
    let den = den.clone().with_invertible(vars.iter().copied());
    num.clone().with_invertible(vars).div_unit(&den)
}
