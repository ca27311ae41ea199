//! Element expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom postfix*
//! postfix:= '^' int | '\'' | '*'        (a '*' not followed by a factor is a star)
//! atom   := scalar | gen | '(' expr ')'
//! gen    := name ['*'] ['[' int ',' int ']']
//! scalar := rational | '(' ['-'] rational ('+' | '-') rational 'i' ')'
//! ```
//!
//! Generator names are `v`, `u`, `z`, `a` (α) and `g` (γ).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use qhopf_core::{AlgebraError, Alphabet, Coefficient, Family, Result, Sym};
use qhopf_core::ncpoly::NCPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Prime,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 0);
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        column += 1;
        let start = column;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 0;
                continue;
            }
            c if c.is_whitespace() => continue,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '\'' => Tok::Prime,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            c if c.is_ascii_digit() => {
                let mut digits = c.to_string();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(d);
                    chars.next();
                    column += 1;
                }
                Tok::Num(digits.parse().expect("ascii digits"))
            }
            c if c.is_alphabetic() => {
                let mut name = c.to_string();
                while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                    name.push(d);
                    chars.next();
                    column += 1;
                }
                Tok::Name(name)
            }
            other => {
                return Err(AlgebraError::Parse { line, column, message: format!("unexpected character `{other}`") })
            }
        };
        out.push(Token { tok, line, column: start });
    }
    out.push(Token { tok: Tok::End, line, column: column + 1 });
    Ok(out)
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Scalar { re: BigRational, im: BigRational },
    Gen { name: String, star: bool, indices: Option<(u32, u32)>, column: usize },
    Star(Box<Expr>),
    Neg(Box<Expr>),
    Power(Box<Expr>, u32),
    Product(Vec<Expr>),
    /// Terms with a flag for subtraction.
    Sum(Vec<(bool, Expr)>),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = self.here();
        Err(AlgebraError::Parse { line: t.line, column: t.column, message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let n = self.int()?;
        match u32::try_from(&n) {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos -= 1;
                self.error(format!("integer {n} is too large"))
            }
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.int()?;
        if *self.peek() == Tok::Slash {
            self.bump();
            let den = self.int()?;
            if den.is_zero() {
                self.pos -= 1;
                return self.error("zero denominator");
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn starts_factor(tok: &Tok) -> bool {
        matches!(tok, Tok::Num(_) | Tok::Name(_) | Tok::LParen)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut negated = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negated = true;
        }
        terms.push((negated, self.term()?));
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push((false, self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    terms.push((true, self.term()?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 { terms.pop().unwrap().1 } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star && Self::starts_factor(self.peek_at(1)) {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Tok::Caret => {
                    self.bump();
                    e = Expr::Power(Box::new(e), self.small_int()?);
                }
                Tok::Prime => {
                    self.bump();
                    e = Expr::Star(Box::new(e));
                }
                Tok::Star if !Self::starts_factor(self.peek_at(1)) => {
                    self.bump();
                    e = Expr::Star(Box::new(e));
                }
                _ => break,
            }
        }
        Ok(e)
    }

    fn complex(&mut self) -> Result<Expr> {
        self.expect(Tok::LParen, "`(`")?;
        let re = match self.peek() {
            Tok::Minus => {
                self.bump();
                -self.rational()?
            }
            _ => self.rational()?,
        };
        let negative = match self.bump().tok {
            Tok::Plus => false,
            Tok::Minus => true,
            _ => return self.error("expected `+` or `-`"),
        };
        let mut im = self.rational()?;
        match self.bump().tok {
            Tok::Name(n) if n == "i" => {}
            _ => return self.error("expected `i`"),
        }
        self.expect(Tok::RParen, "`)`")?;
        if negative {
            im = -im;
        }
        Ok(Expr::Scalar { re, im })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(_) => Ok(Expr::Scalar { re: self.rational()?, im: BigRational::zero() }),
            Tok::LParen => {
                let save = self.pos;
                if let Ok(e) = self.complex() {
                    return Ok(e);
                }
                self.pos = save;
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Name(name) => {
                let column = self.here().column;
                self.bump();
                let mut star = false;
                if *self.peek() == Tok::Star && *self.peek_at(1) == Tok::LBracket {
                    self.bump();
                    star = true;
                }
                let mut indices = None;
                if *self.peek() == Tok::LBracket {
                    self.bump();
                    let i = self.small_int()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let j = self.small_int()?;
                    self.expect(Tok::RBracket, "`]`")?;
                    indices = Some((i, j));
                }
                Ok(Expr::Gen { name, star, indices, column })
            }
            Tok::End => self.error("unexpected end of input"),
            _ => self.error("expected a number, a generator or `(`"),
        }
    }
}

/// Parses an expression without resolving generators.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

fn resolve(name: &str, star: bool, indices: Option<(u32, u32)>, column: usize, alphabet: Alphabet) -> Result<Sym> {
    let unknown = || AlgebraError::UnknownGenerator { name: name.into(), column };
    let mut chars = name.chars();
    let family = match (chars.next(), chars.next()) {
        (Some(c), None) => Family::from_letter(c).ok_or_else(unknown)?,
        _ => return Err(unknown()),
    };
    if !alphabet.has(family) {
        return Err(unknown());
    }
    let sym = match (family.is_indexed(), indices) {
        (true, Some((i, j))) => {
            let n = alphabet.n() as u32;
            if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                return Err(AlgebraError::IndexOutOfRange {
                    column,
                    message: format!("{name}[{i},{j}] needs indices in 1..={n}"),
                });
            }
            Sym { family, i: i as u8, j: j as u8, star: false }
        }
        (true, None) => {
            return Err(AlgebraError::Parse { line: 1, column, message: format!("`{name}` needs indices [i,j]") })
        }
        (false, Some(_)) => {
            return Err(AlgebraError::Parse { line: 1, column, message: format!("`{name}` takes no indices") })
        }
        (false, None) => Sym::plain(family),
    };
    Ok(if star { sym.starred() } else { sym })
}

impl Expr {
    /// The denoted element of the free algebra over `alphabet`.
    pub fn to_poly<S: Coefficient>(&self, alphabet: Alphabet) -> Result<NCPoly<S>> {
        Ok(match self {
            Expr::Scalar { re, im } => {
                let c = S::from_parts(re.clone(), im.clone()).ok_or_else(|| AlgebraError::Parse {
                    line: 1,
                    column: 1,
                    message: "imaginary coefficient in a real field".into(),
                })?;
                NCPoly::constant(alphabet, c)
            }
            Expr::Gen { name, star, indices, column } => {
                NCPoly::sym(alphabet, resolve(name, *star, *indices, *column, alphabet)?)
            }
            Expr::Star(e) => e.to_poly::<S>(alphabet)?.adjoint(),
            Expr::Neg(e) => -&e.to_poly::<S>(alphabet)?,
            Expr::Power(e, k) => e.to_poly::<S>(alphabet)?.pow(*k),
            Expr::Product(fs) => {
                let mut acc = NCPoly::one(alphabet);
                for f in fs {
                    acc = &acc * &f.to_poly(alphabet)?;
                }
                acc
            }
            Expr::Sum(ts) => {
                let mut acc = NCPoly::zero(alphabet);
                for (neg, t) in ts {
                    let p = t.to_poly(alphabet)?;
                    acc = if *neg { &acc - &p } else { &acc + &p };
                }
                acc
            }
        })
    }
}

fn fmt_rational(q: &BigRational) -> String {
    q.to_string()
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar { re, im } if im.is_zero() => {
                if re.is_negative() {
                    write!(f, "({})", fmt_rational(re))
                } else {
                    f.write_str(&fmt_rational(re))
                }
            }
            Expr::Scalar { re, im } => {
                let sign = if im.is_negative() { '-' } else { '+' };
                write!(f, "({}{}{}i)", fmt_rational(re), sign, fmt_rational(&im.abs()))
            }
            Expr::Gen { name, star, indices, .. } => {
                f.write_str(name)?;
                match (indices, star) {
                    (Some((i, j)), true) => write!(f, "*[{i},{j}]"),
                    (Some((i, j)), false) => write!(f, "[{i},{j}]"),
                    (None, true) => f.write_str("'"),
                    (None, false) => Ok(()),
                }
            }
            Expr::Star(e) => write!(f, "({e})'"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Power(e, k) => write!(f, "({e})^{k}"),
            Expr::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|e| format!("({e})")).collect();
                f.write_str(&parts.join("*"))
            }
            Expr::Sum(ts) => {
                for (k, (neg, t)) in ts.iter().enumerate() {
                    match (k, neg) {
                        (0, true) => write!(f, "-({t})")?,
                        (0, false) => write!(f, "({t})")?,
                        (_, true) => write!(f, " - ({t})")?,
                        (_, false) => write!(f, " + ({t})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// Parses `text` into an element of the free algebra over `alphabet`.
pub fn parse_expr<S: Coefficient>(text: &str, alphabet: Alphabet) -> Result<NCPoly<S>> {
    parse(text)?.to_poly(alphabet)
}
