//! Integer polynomial expressions in `T`, e.g. `T^3 + 4*T^2 + 4*T + 3` or
//! `(T+3)^2*(1+T)`. Juxtaposition multiplies: `4T^2` is `4*T^2`.

use iwalab_core::padic_series::{DistinguishedPoly, PowerSeries, Precision};
use iwalab_core::residue::PrimePowerRing;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("unexpected character {found:?} at offset {offset}")]
    UnexpectedChar { found: char, offset: usize },
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("expected {expected} at offset {offset}")]
    Expected { expected: &'static str, offset: usize },
    #[error("integer literal too large at offset {offset}")]
    LiteralTooLarge { offset: usize },
    #[error("exponent {0} is too large")]
    ExponentTooLarge(u64),
}

const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(i128),
    T,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                let v = text.parse::<i128>().map_err(|_| ExprError::LiteralTooLarge { offset: start })?;
                out.push((start, Tok::Num(v)));
                continue;
            }
            'T' | 't' => Tok::T,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            found => return Err(ExprError::UnexpectedChar { found, offset: i }),
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'r> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'r PrimePowerRing,
}

type Poly = Vec<u64>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |(o, _)| *o)
    }

    fn expr(&mut self) -> Result<Poly, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = add(self.ring, &acc, &rhs);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = add(self.ring, &acc, &neg(self.ring, &rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = mul(self.ring, &acc, &rhs);
                }
                Some(Tok::Num(_) | Tok::T | Tok::Open) => {
                    let rhs = self.power()?;
                    acc = mul(self.ring, &acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ExprError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let inner = self.unary()?;
                Ok(neg(self.ring, &inner))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let offset = self.offset();
        match self.toks.get(self.pos) {
            Some((_, Tok::Num(e))) => {
                let e = *e as u64;
                if e > MAX_EXPONENT {
                    return Err(ExprError::ExponentTooLarge(e));
                }
                self.pos += 1;
                Ok((0..e).fold(vec![1], |acc, _| mul(self.ring, &acc, &base)))
            }
            Some(_) => Err(ExprError::Expected { expected: "a nonnegative integer exponent", offset }),
            None => Err(ExprError::UnexpectedEnd),
        }
    }

    fn atom(&mut self) -> Result<Poly, ExprError> {
        let offset = self.offset();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(ExprError::UnexpectedEnd);
        };
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(vec![self.ring.from_i128(v)]),
            Tok::T => Ok(vec![0, 1]),
            Tok::Open => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Close) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(_) => Err(ExprError::Expected { expected: "')'", offset: self.offset() }),
                    None => Err(ExprError::UnexpectedEnd),
                }
            }
            _ => Err(ExprError::Expected { expected: "a number, T or '('", offset }),
        }
    }
}

fn add(ring: &PrimePowerRing, a: &[u64], b: &[u64]) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| ring.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect()
}

fn neg(ring: &PrimePowerRing, a: &[u64]) -> Poly {
    a.iter().map(|&x| ring.neg(x)).collect()
}

fn mul(ring: &PrimePowerRing, a: &[u64], b: &[u64]) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ring.add(out[i + j], ring.mul(x, y));
        }
    }
    out
}

/// Coefficients modulo `p^N`, constant term first, trailing zeros removed.
pub fn parse_poly(src: &str, ring: &PrimePowerRing) -> Result<Vec<u64>, ExprError> {
    let toks = tokenize(src)?;
    let mut parser = Parser { toks, pos: 0, ring };
    let poly = parser.expr()?;
    if parser.pos != parser.toks.len() {
        let offset = parser.offset();
        return Err(match parser.peek() {
            Some(Tok::Close) => ExprError::UnexpectedChar { found: ')', offset },
            _ => ExprError::Expected { expected: "an operator", offset },
        });
    }
    let mut poly = poly;
    while poly.len() > 1 && poly.last() == Some(&0) {
        poly.pop();
    }
    Ok(poly)
}

/// The expression as a power series modulo `(p^N, T^M)`.
pub fn parse_series(src: &str, prec: Precision) -> Result<PowerSeries, ExprError> {
    Ok(PowerSeries::from_residues(prec, &parse_poly(src, prec.ring())?))
}

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Core(#[from] iwalab_core::Error),
}

/// The expression as a distinguished polynomial.
pub fn parse_distinguished(src: &str, prec: Precision) -> Result<DistinguishedPoly, PolyError> {
    Ok(DistinguishedPoly::from_residues(prec, parse_poly(src, prec.ring())?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PrimePowerRing {
        PrimePowerRing::new(3, 4).unwrap()
    }

    #[test]
    fn parses_examples() {
        let r = ring();
        assert_eq!(parse_poly("T^3 + 4*T^2 + 4*T + 3", &r).unwrap(), vec![3, 4, 4, 1]);
        assert_eq!(parse_poly("(T+1)*(T+3)", &r).unwrap(), vec![3, 4, 1]);
        assert_eq!(parse_poly("4T^2 - 1", &r).unwrap(), vec![80, 0, 4]);
        assert_eq!(parse_poly("-(T)", &r).unwrap(), vec![0, 80]);
        assert_eq!(parse_poly("(1+T)^3 - 1", &r).unwrap(), vec![0, 3, 3, 1]);
        assert_eq!(parse_poly("81 T", &r).unwrap(), vec![0]);
    }

    #[test]
    fn reports_errors() {
        let r = ring();
        assert!(matches!(parse_poly("T +", &r), Err(ExprError::UnexpectedEnd)));
        assert!(matches!(parse_poly("T $ 1", &r), Err(ExprError::UnexpectedChar { found: '$', .. })));
        assert!(matches!(parse_poly("(T+1", &r), Err(ExprError::UnexpectedEnd)));
        assert!(matches!(parse_poly("T)", &r), Err(ExprError::UnexpectedChar { found: ')', .. })));
        assert!(matches!(parse_poly("T^T", &r), Err(ExprError::Expected { .. })));
        assert!(matches!(parse_poly("T^99999", &r), Err(ExprError::ExponentTooLarge(99999))));
    }

    #[test]
    fn distinguished_check() {
        let prec = Precision::new(3, 2, 8).unwrap();
        assert_eq!(parse_distinguished("T+3", prec).unwrap().coeffs(), &[3, 1]);
        assert!(parse_distinguished("T+1", prec).is_err());
        assert!(parse_distinguished("2*T+3", prec).is_err());
    }
}
