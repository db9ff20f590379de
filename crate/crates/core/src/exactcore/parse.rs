//! The polynomial text grammar.
//!
//! Variables are `x0..x4` (projective) or `y1..y4` (the affine chart
//! `x0 = 1`, homogenized on input); literals are integers or `p/q`; `i` is
//! the imaginary unit; operators are `+ - * ^` with parentheses for grouping.

use num_bigint::BigInt;
use num_traits::Zero;

use super::multipoly::{Mono, MultiPoly};
use super::scalar::Scalar;
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<Token>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        let (l0, c0) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if ch.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            col += k - start;
            out.push(Token { tok: Tok::Num(s.parse().unwrap()), line: l0, column: c0 });
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            col += k - start;
            out.push(Token { tok: Tok::Ident(s), line: l0, column: c0 });
            continue;
        }
        if "+-*^/()".contains(ch) {
            out.push(Token { tok: Tok::Sym(ch), line: l0, column: c0 });
            col += 1;
            k += 1;
            continue;
        }
        return Err(syntax(l0, c0, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: &'a [String],
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn err(&self, msg: &str) -> Error {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MultiPoly, Error> {
        let mut acc = self.term()?;
        while let Some(Tok::Sym(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, Error> {
        let mut acc = self.unary()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, Error> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, Error> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
                    if e > 1000 {
                        return Err(self.err("exponent too large"));
                    }
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, Error> {
        let (line, column) = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(num)) => {
                self.pos += 1;
                if let Some(Tok::Sym('/')) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(den)) => {
                            if den.is_zero() {
                                return Err(self.err("zero denominator"));
                            }
                            self.pos += 1;
                            let q = Scalar::from_parts(num, BigInt::zero(), den);
                            return Ok(MultiPoly::constant(self.n(), q));
                        }
                        _ => return Err(self.err("expected an integer denominator")),
                    }
                }
                Ok(MultiPoly::constant(self.n(), Scalar::from_bigint(num)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(MultiPoly::constant(self.n(), Scalar::i()));
                }
                match self.names.iter().position(|v| *v == name) {
                    Some(v) => Ok(MultiPoly::var(self.n(), v)),
                    None => Err(Error::UnknownVariable { name, line, column }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(_) => Err(self.err("unexpected token")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse with an explicit list of variable names.
pub fn parse_with_vars(text: &str, names: &[String]) -> Result<MultiPoly, Error> {
    let toks = tokenize(text)?;
    let end = match toks.last() {
        Some(t) => (t.line, t.column + 1),
        None => (1, 1),
    };
    let mut p = Parser { toks, pos: 0, names, end };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

fn projective_names() -> Vec<String> {
    (0..5).map(|i| format!("x{i}")).collect()
}

fn affine_names() -> Vec<String> {
    (1..5).map(|i| format!("y{i}")).collect()
}

/// Parse an equation in `x0..x4`, or in `y1..y4` which is then homogenized
/// with `x0`. The result always has five variables.
pub fn parse_polynomial(text: &str) -> Result<MultiPoly, Error> {
    let toks = tokenize(text)?;
    let mut has_x = None;
    let mut has_y = None;
    for t in &toks {
        if let Tok::Ident(name) = &t.tok {
            if name.starts_with('x') && has_x.is_none() {
                has_x = Some((t.line, t.column));
            }
            if name.starts_with('y') && has_y.is_none() {
                has_y = Some((t.line, t.column));
            }
        }
    }
    if let (Some(_), Some((l, c))) = (has_x, has_y) {
        return Err(syntax(l, c, "mixed projective and affine variables"));
    }
    if has_y.is_some() {
        let f = parse_with_vars(text, &affine_names())?;
        Ok(homogenize(&f))
    } else {
        parse_with_vars(text, &projective_names())
    }
}

/// `x0^d f(x1/x0, ..., xn/x0)` for `f` in `n` variables of degree `d`.
pub fn homogenize(f: &MultiPoly) -> MultiPoly {
    let n = f.nvars() + 1;
    let d = f.total_degree().unwrap_or(0);
    MultiPoly::from_terms(
        n,
        f.terms().map(|(m, c)| {
            let mut e = vec![d - m.degree()];
            e.extend(m.exps(f.nvars()));
            (Mono::from_exps(&e), c.clone())
        }),
    )
}

/// Print in the `x0..x4` grammar; `parse_polynomial` reads it back exactly.
pub fn print_polynomial(f: &MultiPoly) -> String {
    f.to_text(&super::multipoly::default_var_names(f.nvars()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_projective_text() {
        let f = parse_polynomial("x0^3 + x1^3").unwrap();
        let x0 = MultiPoly::var(5, 0);
        let x1 = MultiPoly::var(5, 1);
        assert_eq!(f, &x0.pow(3) + &x1.pow(3));
        let g = parse_polynomial("x4*x0^2 + x0*x1*x2 + x1^2*x3").unwrap();
        assert_eq!(g.total_degree(), Some(3));
        assert!(g.is_homogeneous());
    }

    #[test]
    fn rationals_and_imaginary_unit() {
        let f = parse_polynomial("3/4*x0 - i*x1 + (1+2*i)*x2").unwrap();
        assert_eq!(f.coeff(&Mono::from_exps(&[1, 0, 0, 0, 0])), Scalar::from_ratio(3, 4));
        assert_eq!(f.coeff(&Mono::from_exps(&[0, 1, 0, 0, 0])), -Scalar::i());
        assert_eq!(f.coeff(&Mono::from_exps(&[0, 0, 1, 0, 0])), Scalar::parse("1+2i").unwrap());
    }

    #[test]
    fn affine_input_is_homogenized() {
        let f = parse_polynomial("y4 + y1*y4 - y2^2").unwrap();
        let g = parse_polynomial("x0*x4 + x1*x4 - x2^2").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn errors() {
        match parse_polynomial("x5 + 1") {
            Err(Error::UnknownVariable { name, line, column }) => {
                assert_eq!((name.as_str(), line, column), ("x5", 1, 1));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("x0 +\n  * x1"), Err(Error::Syntax { line: 2, column: 3, .. })));
        assert!(matches!(parse_polynomial("x0 + y1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("(x0 + x1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x0 # x1"), Err(Error::Syntax { column: 4, .. })));
    }

    #[test]
    fn print_round_trip() {
        for t in [
            "x0^3 + x1^3",
            "-x0*x4^2 + 3/7*x1^2*x2 - i*x3^3",
            "(2-3*i)*x0*x1 + 5",
            "-1/2*i*x2 + x4",
            "0",
        ] {
            let f = parse_polynomial(t).unwrap();
            assert_eq!(parse_polynomial(&print_polynomial(&f)).unwrap(), f, "{t}");
        }
    }
}
