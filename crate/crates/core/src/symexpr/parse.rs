use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{Poly, Scalar};
use super::SymError;

/// Parse an expression string into a polynomial with `arity` λ-variables.
///
/// Grammar: `expr := term {(+|-) term}`, `term := factor {* factor}`,
/// `factor := atom [^ uint]`, `atom := rational | D | L<uint> | ( expr ) | - factor`.
pub fn parse(text: &str, arity: usize) -> Result<Poly, SymError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        arity,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("operator or end of input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: usize,
}

impl Parser<'_> {
    fn err(&self, expected: &str) -> SymError {
        SymError::Syntax {
            position: self.pos,
            expected: expected.to_string(),
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

    fn expr(&mut self) -> Result<Poly, SymError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, SymError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, SymError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint().ok_or_else(|| self.err("exponent"))?;
            let e: u32 = e.try_into().map_err(|_| self.err("small exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, SymError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(Poly::partial(self.arity))
            }
            Some(b'L') => {
                self.pos += 1;
                let start = self.pos;
                let i = self.uint().ok_or_else(|| self.err("λ index"))?;
                let i: usize = i.try_into().map_err(|_| self.err("λ index"))?;
                if i == 0 || i > self.arity {
                    self.pos = start;
                    return Err(SymError::VariableOutOfRange {
                        index: i,
                        arity: self.arity,
                    });
                }
                Ok(Poly::lambda(self.arity, i))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint().unwrap();
                let mut q = Scalar::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.uint().ok_or_else(|| self.err("denominator"))?;
                    if d.is_zero() {
                        return Err(self.err("nonzero denominator"));
                    }
                    q /= Scalar::from_integer(d);
                }
                Ok(Poly::constant(self.arity, q))
            }
            _ => Err(self.err("number, D, L<i>, '(' or '-'")),
        }
    }

    fn uint(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::poly::ratio;

    #[test]
    fn examples() {
        assert!(parse("0", 2).unwrap().is_zero());
        let p = parse("D^2*L1 - 3/2", 1).unwrap();
        assert_eq!(p.coeff(&[2, 1]), ratio(1, 1));
        assert_eq!(p.coeff(&[0, 0]), ratio(-3, 2));
        assert_eq!(p.num_terms(), 2);
        let sq = parse("(L1+L2)^2", 2).unwrap();
        let hand = parse("L1*L1 + 2*L1*L2 + L2*L2", 2).unwrap();
        assert_eq!(sq, hand);
    }

    #[test]
    fn unary_minus_binds_a_factor() {
        assert_eq!(parse("-D^2", 0).unwrap(), -Poly::partial(0).pow(2));
        assert_eq!(parse("-3/4*D", 0).unwrap(), Poly::partial(0).scale(&ratio(-3, 4)));
    }

    #[test]
    fn errors_carry_position() {
        match parse("D + * 2", 0) {
            Err(SymError::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("L3", 2),
            Err(SymError::VariableOutOfRange { index: 3, arity: 2 })
        ));
        assert!(parse("(D", 0).is_err());
        assert!(parse("1/0", 0).is_err());
    }
}
