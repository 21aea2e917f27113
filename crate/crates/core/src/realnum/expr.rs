//! Mini-language for exact field elements.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | primary
//! primary := integer | 'sqrt' '(' integer ')' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens. `sqrt` only accepts square-free
//! positive integers. Rationals are written as integer division, `p/q`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{FieldElement, FieldSpec};
use super::RealError;

#[derive(Clone, Debug)]
enum Expr {
    Int(BigInt),
    Sqrt(u64),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err(offset: usize, message: impl Into<String>) -> RealError {
    RealError::Parse { offset, message: message.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), RealError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(err(self.pos, format!("expected '{}', found '{}'", c as char, x as char))),
            None => Err(err(self.pos, format!("expected '{}', found end of input", c as char))),
        }
    }

    fn expr(&mut self) -> Result<Expr, RealError> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(c as char, Box::new(lhs), Box::new(rhs), at);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, RealError> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(c as char, Box::new(lhs), Box::new(rhs), at);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, RealError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn integer(&mut self) -> Result<BigInt, RealError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn primary(&mut self) -> Result<Expr, RealError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                if name != b"sqrt" {
                    return Err(err(start, format!("unknown function '{}'", String::from_utf8_lossy(name))));
                }
                self.expect(b'(')?;
                self.skip_ws();
                let arg_at = self.pos;
                let n = self.integer()?;
                let n: u64 = n.try_into().map_err(|_| err(arg_at, "sqrt argument out of range"))?;
                if !super::field::is_square_free(n) {
                    return Err(err(arg_at, format!("sqrt argument {n} must be square-free and positive")));
                }
                self.expect(b')')?;
                Ok(Expr::Sqrt(n))
            }
            Some(c) => Err(err(self.pos, format!("unexpected '{}'", c as char))),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }
}

fn parse_ast(src: &str) -> Result<Expr, RealError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.pos, format!("trailing input starting at '{}'", c as char)));
    }
    Ok(e)
}

fn radicands(e: &Expr, out: &mut Vec<u64>) {
    match e {
        Expr::Int(_) => {}
        Expr::Sqrt(n) => out.push(*n),
        Expr::Neg(x) => radicands(x, out),
        Expr::Bin(_, a, b, _) => {
            radicands(a, out);
            radicands(b, out);
        }
    }
}

fn eval(e: &Expr, field: FieldSpec) -> Result<FieldElement, RealError> {
    Ok(match e {
        Expr::Int(n) => FieldElement::from_rational(field, BigRational::from_integer(n.clone())),
        Expr::Sqrt(n) => FieldElement::sqrt(field, *n)?,
        Expr::Neg(x) => -eval(x, field)?,
        Expr::Bin(op, a, b, at) => {
            let a = eval(a, field)?;
            let b = eval(b, field)?;
            match op {
                '+' => &a + &b,
                '-' => &a - &b,
                '*' => &a * &b,
                _ => a.checked_div(&b).map_err(|_| err(*at, "division by zero"))?,
            }
        }
    })
}

/// Parses one expression in the smallest field that contains it.
pub fn parse_expr(src: &str) -> Result<FieldElement, RealError> {
    let ast = parse_ast(src)?;
    let mut rads = Vec::new();
    radicands(&ast, &mut rads);
    eval(&ast, FieldSpec::containing(&rads)?)
}

/// Parses one expression directly into `field`.
pub fn parse_in(src: &str, field: &FieldSpec) -> Result<FieldElement, RealError> {
    parse_expr(src)?.embed(field)
}

/// Parses several expressions into one common field.
pub fn parse_exprs<S: AsRef<str>>(srcs: &[S]) -> Result<Vec<FieldElement>, RealError> {
    let asts = srcs.iter().map(|s| parse_ast(s.as_ref())).collect::<Result<Vec<_>, _>>()?;
    let mut rads = Vec::new();
    for a in &asts {
        radicands(a, &mut rads);
    }
    let field = FieldSpec::containing(&rads)?;
    asts.iter().map(|a| eval(a, field)).collect()
}
