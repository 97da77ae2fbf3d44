//! Text grammar for Laurent polynomials.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' int)?
//! atom  := number | ident | '(' expr ')'
//! ```
//! Division is only allowed by monomials; negative powers only of monomials.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::Rat;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int: String = chars[start..i].iter().collect();
            let mut value: Rat = if int.is_empty() {
                Rat::zero()
            } else {
                Rat::from_integer(int.parse::<BigInt>().unwrap())
            };
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                let fs = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let frac: String = chars[fs..i].iter().collect();
                if frac.is_empty() && int.is_empty() {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "lone '.'".into(),
                    });
                }
                if !frac.is_empty() {
                    let num = frac.parse::<BigInt>().unwrap();
                    let den = num_traits::pow(BigInt::from(10), frac.len());
                    value += Rat::new(num, den);
                }
            }
            out.push((start, Tok::Num(value)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            let op = match c {
                '\u{2212}' => '-',
                '+' | '-' | '*' | '/' | '^' | '(' | ')' => c,
                _ => {
                    return Err(Error::Parse {
                        pos: i,
                        msg: format!("unexpected character '{}'", c),
                    })
                }
            };
            out.push((i, Tok::Op(op)));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let at = self.here();
            let rhs = self.unary()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                let inv = rhs.monomial_inverse().map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by a non-monomial".into(),
                })?;
                &acc * &inv
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let mut neg = false;
            while let Some(Tok::Op(c @ ('-' | '+'))) = self.peek().cloned() {
                neg ^= c == '-';
                self.pos += 1;
            }
            let at = self.here();
            let k = match self.peek().cloned() {
                Some(Tok::Num(r)) if r.is_integer() => {
                    self.pos += 1;
                    r.to_integer()
                }
                Some(Tok::Op('(')) => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.expect(')')?;
                    match inner.as_constant() {
                        Some(r) if r.is_integer() => r.to_integer(),
                        _ => return self.err("exponent must be an integer"),
                    }
                }
                _ => return self.err("exponent must be an integer"),
            };
            let k: i64 = (if neg { -k } else { k })
                .try_into()
                .map_err(|_| Error::Parse {
                    pos: at,
                    msg: "exponent too large".into(),
                })?;
            if k.unsigned_abs() > u32::MAX as u64 {
                return self.err("exponent too large");
            }
            if k >= 0 {
                Ok(base.pow(k as u32))
            } else {
                let inv = base.monomial_inverse().map_err(|_| Error::Parse {
                    pos: at,
                    msg: "negative power of a non-monomial".into(),
                })?;
                Ok(inv.pow((-k) as u32))
            }
        } else {
            Ok(base)
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Op(d)) if *d == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected '{}'", c)),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.n(), r))
            }
            Some(Tok::Ident(name)) => match self.names.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(MultiPoly::var(self.n(), i))
                }
                None => self.err(format!("unknown variable '{}'", name)),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

/// Parse with an explicit variable list.
pub fn parse_poly(s: &str, names: &[String]) -> Result<MultiPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end: s.chars().count(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Variable names occurring in `s`, in order of first appearance.
pub fn identifiers(s: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for (_, t) in lex(s)? {
        if let Tok::Ident(name) = t {
            if !out.contains(&name) {
                out.push(name);
            }
        }
    }
    Ok(out)
}

/// Default names `x1..xk` where `k` is the largest index used (at least `min`).
pub fn parse_default(s: &str, min: usize) -> Result<MultiPoly> {
    let mut n = min.max(1);
    for id in identifiers(s)? {
        let idx = id
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::Parse {
                pos: s.find(&id).unwrap_or(0),
                msg: format!("variable '{}' is not of the form x<k>", id),
            })?;
        n = n.max(idx);
    }
    parse_poly(s, &super::poly::default_names(n))
}

impl FromStr for MultiPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_default(s, 1)
    }
}

/// Parse a rational literal `p`, `p/q` or a decimal.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let p = parse_poly(s, &[])?;
    p.as_constant().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("'{}' is not a rational constant", s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{rat, ratio};

    #[test]
    fn parses_rationals_and_negative_exponents() {
        let p: MultiPoly = "3/4*x1^-2*x2 - x2 + 1/2".parse().unwrap();
        assert_eq!(p.coeff(&[-2, 1]), ratio(3, 4));
        assert_eq!(p.coeff(&[0, 1]), rat(-1));
        assert_eq!(p.constant_term(), ratio(1, 2));
    }

    #[test]
    fn round_trip() {
        let s = "x1^2*x2 - 7/3*x1*x2^-1 + x3 - 4";
        let p: MultiPoly = s.parse().unwrap();
        let q: MultiPoly = p.to_string().parse().unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parentheses_and_powers() {
        let p: MultiPoly = "(1 - x1)^2".parse().unwrap();
        assert_eq!(p.to_string(), "x1^2 - 2*x1 + 1");
        assert!("(1 - x1)^-1".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn custom_names() {
        let names: Vec<String> = ["x1", "y"].iter().map(|s| s.to_string()).collect();
        let p = parse_poly("y^2 + x1*y - 1", &names).unwrap();
        assert_eq!(p.to_string_with(&["x1", "y"]), "x1*y + y^2 - 1");
    }

    #[test]
    fn errors_carry_positions() {
        match "x1 + * 2".parse::<MultiPoly>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{:?}", other),
        }
        assert_eq!(parse_rat("2/3").unwrap(), ratio(2, 3));
        assert_eq!(parse_rat("-0.25").unwrap(), ratio(-1, 4));
        assert!(parse_rat("x1").is_err());
        let _ = rat(0);
    }
}
