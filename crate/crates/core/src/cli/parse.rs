//! Expressions over declared variables, their derivations `d<var>`, `z`
//! and parameters.

use num_bigint::BigInt;

use crate::coeffs::{ParamFraction, ParamPoly, Rat};
use crate::error::{Error, Result};
use crate::hdo::{Exponent, HOperator};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

/// Declared names of a problem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Names {
    pub params: Vec<String>,
    pub vars: Vec<String>,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(s.parse().expect("digits")),
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Name(chars[start..i].iter().collect()),
                col,
            });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), col });
            i += 1;
        } else {
            return Err(syntax(line, col, format!("unexpected character `{}`", c)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_col: usize,
    names: &'a Names,
    homogenized: bool,
}

type Op = HOperator<ParamFraction>;

impl<'a> Parser<'a> {
    fn n(&self) -> usize {
        self.names.vars.len()
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some(Token { tok: Tok::Op(d), .. }) if *d == c)
    }

    fn expr(&mut self) -> Result<Op> {
        let mut neg = false;
        if self.peek_op('-') {
            neg = true;
            self.pos += 1;
        } else if self.peek_op('+') {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = acc.add(&self.term()?);
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&self, a: &Op, b: &Op) -> Op {
        if self.homogenized {
            a.mul(b)
        } else {
            a.mul_dehomogenized(b)
        }
    }

    fn term(&mut self) -> Result<Op> {
        let mut acc = self.power()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                let rhs = self.power()?;
                acc = self.product(&acc, &rhs);
            } else if self.peek_op('/') {
                let col = self.col();
                self.pos += 1;
                let rhs = self.power()?;
                let scalar = scalar_of(&rhs).ok_or_else(|| syntax(self.line, col, "division by a non-scalar"))?;
                let inv = scalar.inv().ok_or_else(|| syntax(self.line, col, "division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Op> {
        let base = self.atom()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        let k = match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Num(k), .. }) => u32::try_from(k.clone())
                .map_err(|_| syntax(self.line, col, "exponent too large"))?,
            _ => return Err(syntax(self.line, col, "expected a nonnegative integer exponent")),
        };
        self.pos += 1;
        let mut acc = HOperator::one(self.n());
        for _ in 0..k {
            acc = self.product(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Op> {
        let n = self.n();
        let col = self.col();
        let tok = match self.toks.get(self.pos) {
            Some(t) => t.tok.clone(),
            None => return Err(syntax(self.line, col, "unexpected end of expression")),
        };
        self.pos += 1;
        match tok {
            Tok::Num(k) => Ok(HOperator::constant(
                n,
                ParamFraction::from_rat(Rat::from_integer(k)),
            )),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.peek_op(')') {
                    return Err(syntax(self.line, self.col(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(syntax(self.line, col, format!("unexpected `{}`", c))),
            Tok::Name(name) => self.name(&name, col),
        }
    }

    fn name(&self, name: &str, col: usize) -> Result<Op> {
        let n = self.n();
        let one = ParamFraction::one();
        if let Some(i) = self.names.vars.iter().position(|v| v == name) {
            return Ok(HOperator::monomial(Exponent::x(n, i), one));
        }
        if let Some(i) = self.names.params.iter().position(|v| v == name) {
            return Ok(HOperator::constant(n, ParamFraction::from_poly(ParamPoly::var(i))));
        }
        if let Some(i) = name
            .strip_prefix('d')
            .and_then(|rest| self.names.vars.iter().position(|v| v == rest))
        {
            return Ok(HOperator::monomial(Exponent::d(n, i), one));
        }
        if name == "z" {
            return Ok(HOperator::monomial(Exponent::z(n), one));
        }
        Err(Error::UnknownName {
            name: name.to_string(),
            line: self.line,
            col,
        })
    }
}

fn scalar_of(p: &Op) -> Option<ParamFraction> {
    let zero = Exponent::zero(p.n());
    if p.support().all(|e| *e == zero) {
        Some(p.coeff(&zero).cloned().unwrap_or_else(ParamFraction::zero))
    } else {
        None
    }
}

/// True when `text` mentions `z` as a name.
pub fn mentions_z(text: &str) -> bool {
    lex(text, 0, 0).is_ok_and(|t| t.iter().any(|t| t.tok == Tok::Name("z".into())))
}

/// Parses an operator. `col0` is the column of the first character of
/// `text` on line `line`; `homogenized` selects the product with `z`.
pub fn parse_operator(text: &str, names: &Names, homogenized: bool, line: usize, col0: usize) -> Result<Op> {
    let toks = lex(text, line, col0)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col: col0 + text.chars().count(),
        names,
        homogenized,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(line, p.col(), "unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a polynomial in the parameters.
pub fn parse_param_poly(text: &str, params: &[String], line: usize, col0: usize) -> Result<ParamPoly> {
    let names = Names {
        params: params.to_vec(),
        vars: Vec::new(),
    };
    let op = parse_operator(text, &names, false, line, col0)?;
    match scalar_of(&op) {
        Some(c) if c.den().as_constant().is_some() => {
            let d = c.den().as_constant().expect("constant");
            Ok(c.num().scale(&(Rat::from_integer(1.into()) / d)))
        }
        _ => Err(syntax(line, col0, "expected a polynomial in the parameters")),
    }
}

/// Parses a rational such as `-3/4`.
pub fn parse_rational(text: &str) -> Option<Rat> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let r = match body.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Rat::new(a.trim().parse().ok()?, d)
        }
        None => Rat::from_integer(body.parse().ok()?),
    };
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::int;

    fn names() -> Names {
        Names {
            params: vec!["y".into()],
            vars: vec!["x1".into(), "x2".into()],
        }
    }

    #[test]
    fn series_generator() {
        let p = parse_operator("y*x2 - x1*x2 + x1", &names(), false, 1, 1).unwrap();
        assert_eq!(p.num_terms(), 3);
        let c = p.coeff(&Exponent::new(vec![0, 1], vec![0, 0], 0)).unwrap();
        assert_eq!(*c, ParamFraction::from_poly(ParamPoly::var(0)));
    }

    #[test]
    fn commutation_rule() {
        let n = names();
        let a = parse_operator("dx1*x1", &n, false, 1, 1).unwrap();
        let b = parse_operator("x1*dx1 + 1", &n, false, 1, 1).unwrap();
        assert!(a.eq_terms(&b));
        let a = parse_operator("dx1*x1", &n, true, 1, 1).unwrap();
        let b = parse_operator("x1*dx1 + z", &n, true, 1, 1).unwrap();
        assert!(a.eq_terms(&b));
    }

    #[test]
    fn scalars_and_powers() {
        let n = names();
        let a = parse_operator("(x1 + 1)^2/(2*y)", &n, false, 1, 1).unwrap();
        let b = parse_operator("x1^2/(2*y) + x1/y + 1/(2*y)", &n, false, 1, 1).unwrap();
        assert!(a.eq_terms(&b));
        assert!(parse_operator("x1/x2", &n, false, 1, 1).is_err());
        assert!(parse_operator("x1/0", &n, false, 1, 1).is_err());
    }

    #[test]
    fn diagnostics() {
        let n = names();
        assert_eq!(
            parse_operator("x1 + x3", &n, false, 4, 7),
            Err(Error::UnknownName {
                name: "x3".into(),
                line: 4,
                col: 12
            })
        );
        assert!(matches!(
            parse_operator("x1 +", &n, false, 2, 1),
            Err(Error::Syntax { line: 2, col: 5, .. })
        ));
        assert!(matches!(
            parse_operator("x1 $ x2", &n, false, 1, 1),
            Err(Error::Syntax { col: 4, .. })
        ));
    }

    #[test]
    fn param_polys_and_rationals() {
        let p = parse_param_poly("y^2 - 1", &["y".to_string()], 1, 1).unwrap();
        assert_eq!(p.eval(&[int(3)]), int(8));
        assert!(parse_param_poly("1/y", &["y".to_string()], 1, 1).is_err());
        assert_eq!(parse_rational("-3/4"), Some(Rat::new((-3).into(), 4.into())));
        assert_eq!(parse_rational("x"), None);
    }
}
