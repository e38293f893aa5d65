use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, MultiPoly, Rational, Var, NVARS};
use crate::{Error, Result};

/// One serialized term: coefficient as `"num/den"` (or `"num"`) and the
/// exponent vector in alphabet order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<u16>,
}

/// Serialized polynomial; terms in descending monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub alphabet: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &MultiPoly) -> Self {
        PolyJson {
            alphabet: Var::ALL.iter().map(|v| v.name().to_string()).collect(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    exp: m.exps().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly> {
        let names: Vec<&str> = Var::ALL.iter().map(|v| v.name()).collect();
        if self.alphabet != names {
            return Err(Error::Parse(format!(
                "unexpected alphabet {:?}",
                self.alphabet
            )));
        }
        let mut p = MultiPoly::zero();
        for t in &self.terms {
            let exps: [u16; NVARS] = t.exp.as_slice().try_into().map_err(|_| {
                Error::Parse(format!("exponent vector of length {}", t.exp.len()))
            })?;
            p.add_term(Monomial::from_exps(exps), &parse_rational(&t.coeff)?);
        }
        Ok(p)
    }
}

impl MultiPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from_poly(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<MultiPoly> {
        let pj: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        pj.to_poly()
    }
}

/// Parse `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses expressions such as `4*B^3 - g2*B - g3` or
    /// `(B - 6*e1)^2 + 75/4*g2`. Integer literals, variable names, `+ - * / ^`
    /// and parentheses are supported; `/` only divides by a constant.
    fn from_str(s: &str) -> Result<MultiPoly> {
        let mut parser = Parser {
            tokens: tokenize(s)?,
            pos: 0,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "trailing input at token {} in {s:?}",
                parser.pos
            )));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            tokens.push(Token::Num(BigInt::from_str(&text).expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            tokens.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            tokens.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let f = self.power()?;
            if op == '*' {
                acc = acc * f;
            } else {
                let c = f
                    .constant_value()
                    .filter(|c| *c != Rational::from_integer(BigInt::from(0)))
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&c.recip());
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse(format!("exponent {n} too large")))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => Ok(MultiPoly::constant(Rational::from_integer(n))),
            Token::Ident(name) => Var::from_name(&name)
                .map(MultiPoly::var)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}"))),
            Token::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::Op('-') => Ok(-self.power()?),
            Token::Op(c) => Err(Error::Parse(format!("unexpected operator {c:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn text_round_trip() {
        let p: MultiPoly = "z^3 - 3*x0*z - y0".parse().unwrap();
        assert_eq!(p.to_string(), "z^3 - 3*x0*z - y0");
        let q: MultiPoly = "(B - 6*e1)^2 + 75/4*g2".parse().unwrap();
        let back: MultiPoly = q.to_string().parse().unwrap();
        assert_eq!(q, back);
        assert_eq!(q.coeff(&Monomial::var(Var::G2, 1)), ratio(75, 4));
    }

    #[test]
    fn json_round_trip() {
        let p: MultiPoly = "-5/4*y0^2 + 27/4*g2*z^2 - 12*x0*y0*z".parse().unwrap();
        let json = p.to_json();
        assert!(json.contains("\"-5/4\""));
        assert_eq!(MultiPoly::from_json(&json).unwrap(), p);
    }

    #[test]
    fn rejects_garbage() {
        assert!("B +".parse::<MultiPoly>().is_err());
        assert!("w^2".parse::<MultiPoly>().is_err());
        assert!("B/x0".parse::<MultiPoly>().is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
