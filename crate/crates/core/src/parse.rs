//! Recursive-descent parser for the text forms printed by this crate.
//!
//! ```text
//! expr    := ["+" | "-"] term (("+" | "-") term)*
//! term    := power (("*" | "/") power)*
//! power   := atom ["^" ["-"] int]
//! atom    := int | "q" | "a" | "w" | "t" | "x" | "y"
//!          | "L(" ["-"] int ")" | "G(" ["-"] int ["/" int] ")"
//!          | "(" expr ")" | ["Pi"] "[" "even" ":" expr "|" "odd" ":" expr "]"
//! ```
//!
//! `a` is α and `w` is √2. Division is only by nonzero constants and by
//! units `c·q^k`. In a vector literal, Ramond components are polynomials in
//! `t`; Neveu-Schwarz components use `x` (even) and `y` (odd). Under `Pi`
//! the labels follow the shifted parity, exactly as printed.

use std::fmt;

use crate::algebra::{AlgebraElement, Family, Generator};
use crate::error::{Error, ParseError, DEGREE_CAP};
use crate::modules::{component_vars, Vector};
use crate::poly::{HalfInt, VarPoly, VarTag};
use crate::scalar::{QuadRat, Scalar};

/// A parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(Scalar),
    Element(AlgebraElement),
    Vector(Vector),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar(s) => s.fmt(f),
            Expr::Element(e) => e.fmt(f),
            Expr::Vector(v) => v.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            column += s.len();
            let n = s.parse::<i64>().map_err(|_| ParseError {
                line: l,
                column: col,
                expected: vec![],
                found: s.clone(),
                message: Some(format!("integer {s} is too large")),
            })?;
            Tok::Int(n)
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                s.push(d);
                chars.next();
            }
            column += s.len();
            Tok::Ident(s)
        } else if "+-*/^()[]:|".contains(c) {
            chars.next();
            column += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                line: l,
                column: col,
                expected: vec![],
                found: format!("'{c}'"),
                message: Some(format!("unexpected character '{c}'")),
            });
        };
        out.push(Spanned { tok, line: l, column: col });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

/// Intermediate values; polynomials carry their variable.
#[derive(Clone, Debug)]
enum Value {
    Scalar(Scalar),
    Poly(VarPoly),
    Element(AlgebraElement),
    Vector(Vector),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Poly(_) => "polynomial",
            Value::Element(_) => "algebra element",
            Value::Vector(_) => "vector",
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    family: Family,
}

const ATOM_START: [&str; 11] = ["integer", "'q'", "'a'", "'w'", "'t'", "'x'", "'y'", "'L'", "'G'", "'('", "'['"];

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, expected: &[&str], message: Option<String>) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: at.tok.to_string(),
            message,
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error_at(self.peek(), &[&format!("'{c}'")], None))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Ident(name.to_string()) {
            self.bump();
            Ok(())
        } else {
            Err(self.error_at(self.peek(), &[&format!("'{name}'")], None))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error_at(self.peek(), &["integer"], None)),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        if self.peek().tok == Tok::Sym('-') {
            self.bump();
            Ok(-self.int()?)
        } else {
            self.int()
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let start = self.peek().clone();
        let negate = match self.peek().tok {
            Tok::Sym('-') => {
                self.bump();
                true
            }
            Tok::Sym('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = self.combine(&start, Value::Scalar(-Scalar::one()), acc, '*')?;
        }
        while let Tok::Sym(op @ ('+' | '-')) = self.peek().tok {
            let at = self.bump();
            let rhs = self.term()?;
            acc = self.combine(&at, acc, rhs, op)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.power()?;
        while let Tok::Sym(op @ ('*' | '/')) = self.peek().tok {
            let at = self.bump();
            let rhs = self.power()?;
            acc = self.combine(&at, acc, rhs, op)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        let at = self.bump();
        let exp = self.signed_int()?;
        let fail = |msg: String| Err(self.error_at(&at, &[], Some(msg)));
        match base {
            Value::Scalar(s) if exp >= 0 => match u32::try_from(exp) {
                Ok(e) => Ok(Value::Scalar(s.pow(e))),
                Err(_) => fail(format!("exponent {exp} is too large")),
            },
            Value::Scalar(s) => match s.as_unit() {
                Some(u) => Ok(Value::Scalar(u.pow(exp).to_scalar())),
                None => fail(format!("negative power of {s}, which is not a unit")),
            },
            Value::Poly(p) if (0..=DEGREE_CAP as i64).contains(&exp) => {
                let mut out = VarPoly::one(p.var());
                for _ in 0..exp {
                    out = &out * &p;
                }
                if out.degree().is_some_and(|d| d > DEGREE_CAP) {
                    return fail(format!("degree exceeds the cap of {DEGREE_CAP}"));
                }
                Ok(Value::Poly(out))
            }
            Value::Poly(_) => fail(format!("polynomial exponent must be in 0..={DEGREE_CAP}")),
            other => fail(format!("cannot raise a {} to a power", other.kind())),
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let at = self.peek().clone();
        match &at.tok {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(Value::Scalar(Scalar::from_int(n)))
            }
            Tok::Sym('(') => {
                self.bump();
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Sym('[') => self.vector(false),
            Tok::Ident(id) => match id.as_str() {
                "q" => {
                    self.bump();
                    Ok(Value::Scalar(Scalar::q_power(1)))
                }
                "a" => {
                    self.bump();
                    Ok(Value::Scalar(Scalar::alpha()))
                }
                "w" => {
                    self.bump();
                    Ok(Value::Scalar(Scalar::sqrt2()))
                }
                "t" | "x" | "y" => {
                    let tag = match id.as_str() {
                        "t" => VarTag::T,
                        "x" => VarTag::X,
                        _ => VarTag::Y,
                    };
                    self.bump();
                    Ok(Value::Poly(VarPoly::var_power(tag, 1)))
                }
                "L" | "G" => self.generator(),
                "Pi" => {
                    self.bump();
                    if self.peek().tok != Tok::Sym('[') {
                        return Err(self.error_at(self.peek(), &["'['"], None));
                    }
                    self.vector(true)
                }
                _ => Err(self.error_at(&at, &ATOM_START, None)),
            },
            _ => Err(self.error_at(&at, &ATOM_START, None)),
        }
    }

    fn generator(&mut self) -> Result<Value, ParseError> {
        let at = self.bump();
        let is_l = at.tok == Tok::Ident("L".into());
        self.expect_sym('(')?;
        let num = self.signed_int()?;
        let index = if !is_l && self.peek().tok == Tok::Sym('/') {
            self.bump();
            let den_at = self.peek().clone();
            if self.int()? != 2 || num % 2 == 0 {
                return Err(self.error_at(
                    &den_at,
                    &[],
                    Some("a G-index must be an integer or an odd multiple of 1/2".into()),
                ));
            }
            HalfInt::from_twice(num)
        } else {
            HalfInt::from_int(num)
        };
        self.expect_sym(')')?;
        let g = if is_l { Ok(Generator::l(self.family, num)) } else { Generator::g(self.family, index) };
        g.map(|g| Value::Element(g.to_element())).map_err(|e| self.error_at(&at, &[], Some(e.to_string())))
    }

    fn vector(&mut self, pi: bool) -> Result<Value, ParseError> {
        let open = self.bump();
        self.expect_ident("even")?;
        self.expect_sym(':')?;
        let first_at = self.peek().clone();
        let first = self.expr()?;
        self.expect_sym('|')?;
        self.expect_ident("odd")?;
        self.expect_sym(':')?;
        let second_at = self.peek().clone();
        let second = self.expr()?;
        self.expect_sym(']')?;
        let (even_tag, odd_tag) = component_vars(self.family);
        // Under Π the printed "even" slot holds the odd carrier component.
        let (even_src, odd_src) =
            if pi { ((second, &second_at), (first, &first_at)) } else { ((first, &first_at), (second, &second_at)) };
        let even = self.component(even_src.0, even_tag, even_src.1)?;
        let odd = self.component(odd_src.0, odd_tag, odd_src.1)?;
        let v = Vector::new(self.family, even, odd).map_err(|e| self.error_at(&open, &[], Some(e.to_string())))?;
        Ok(Value::Vector(if pi { v.parity_flip() } else { v }))
    }

    fn component(&self, v: Value, tag: VarTag, at: &Spanned) -> Result<VarPoly, ParseError> {
        match v {
            Value::Scalar(s) => Ok(VarPoly::constant(tag, s)),
            Value::Poly(p) if p.var() == tag => Ok(p),
            Value::Poly(p) => Err(self.error_at(
                at,
                &[&format!("polynomial in '{tag}'")],
                Some(format!("this component is a polynomial in {tag}, found one in {}", p.var())),
            )),
            other => Err(self.error_at(
                at,
                &["polynomial"],
                Some(format!("a vector component cannot be a {}", other.kind())),
            )),
        }
    }

    fn combine(&self, at: &Spanned, lhs: Value, rhs: Value, op: char) -> Result<Value, ParseError> {
        use Value as V;
        let fail = |msg: String| Err(self.error_at(at, &[], Some(msg)));
        let kinds = format!("{} {op} {}", lhs.kind(), rhs.kind());
        if op == '/' {
            let V::Scalar(d) = rhs else {
                return fail(format!("cannot divide by a {}", rhs.kind()));
            };
            let Some(inv) = d.as_unit().map(|u| u.inv().to_scalar()) else {
                return fail(format!("cannot divide by {d}: only nonzero constants times powers of q are invertible"));
            };
            return self.combine(at, lhs, V::Scalar(inv), '*');
        }
        Ok(match (lhs, rhs) {
            (V::Scalar(a), V::Scalar(b)) => V::Scalar(match op {
                '+' => &a + &b,
                '-' => &a - &b,
                _ => &a * &b,
            }),
            (V::Scalar(a), V::Poly(p)) => V::Poly(match op {
                '+' => &VarPoly::constant(p.var(), a) + &p,
                '-' => &VarPoly::constant(p.var(), a) - &p,
                _ => p.scale(&a),
            }),
            (V::Poly(p), V::Scalar(b)) => V::Poly(match op {
                '+' => &p + &VarPoly::constant(p.var(), b),
                '-' => &p - &VarPoly::constant(p.var(), b),
                _ => p.scale(&b),
            }),
            (V::Poly(p), V::Poly(r)) if p.var() == r.var() => {
                let out = match op {
                    '+' => &p + &r,
                    '-' => &p - &r,
                    _ => &p * &r,
                };
                if out.degree().is_some_and(|d| d > DEGREE_CAP) {
                    return fail(format!("degree exceeds the cap of {DEGREE_CAP}"));
                }
                V::Poly(out)
            }
            (V::Poly(p), V::Poly(r)) => {
                return fail(format!("cannot combine polynomials in {} and {}", p.var(), r.var()))
            }
            (V::Scalar(c), V::Element(e)) | (V::Element(e), V::Scalar(c)) if op == '*' => V::Element(e.scale(&c)),
            (V::Element(a), V::Element(b)) if op != '*' => {
                let r = if op == '+' { a.try_add(&b) } else { a.try_sub(&b) };
                V::Element(r.map_err(|e| self.error_at(at, &[], Some(e.to_string())))?)
            }
            (V::Scalar(c), V::Vector(v)) | (V::Vector(v), V::Scalar(c)) if op == '*' => V::Vector(v.scale(&c)),
            (V::Vector(a), V::Vector(b)) if op != '*' => {
                let r = if op == '+' { a.try_add(&b) } else { a.try_sub(&b) };
                V::Vector(r.map_err(|e| self.error_at(at, &[], Some(e.to_string())))?)
            }
            _ => return fail(format!("unsupported operation: {kinds}")),
        })
    }
}

/// Guesses the family from the raw tokens: half-integer G-indices or the
/// variables `x`, `y` mean Neveu-Schwarz, anything else Ramond.
fn infer_family(toks: &[Spanned]) -> Family {
    for (i, t) in toks.iter().enumerate() {
        match &t.tok {
            Tok::Ident(s) if s == "x" || s == "y" => return Family::NeveuSchwarz,
            Tok::Ident(s) if s == "G" => {
                let rest: Vec<&Tok> = toks[i + 1..].iter().take(5).map(|s| &s.tok).collect();
                let slash = matches!(
                    rest.as_slice(),
                    [Tok::Sym('('), Tok::Sym('-'), Tok::Int(_), Tok::Sym('/'), ..]
                        | [Tok::Sym('('), Tok::Int(_), Tok::Sym('/'), ..]
                );
                if slash {
                    return Family::NeveuSchwarz;
                }
            }
            _ => {}
        }
    }
    Family::Ramond
}

/// Parses `text` with generators and vectors read in `family`. With no
/// family the family is inferred from the text.
pub fn parse_expression(text: &str, family: Option<Family>) -> Result<Expr, Error> {
    let toks = tokenize(text)?;
    let family = family.unwrap_or_else(|| infer_family(&toks));
    let mut p = Parser { toks, pos: 0, family };
    let v = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error_at(p.peek(), &["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"], None).into());
    }
    match v {
        Value::Scalar(s) => Ok(Expr::Scalar(s)),
        Value::Element(e) => Ok(Expr::Element(e)),
        Value::Vector(v) => Ok(Expr::Vector(v)),
        Value::Poly(_) => Err(p
            .error_at(
                &p.toks[0],
                &[],
                Some("a bare polynomial is not an expression; wrap it in a vector literal".into()),
            )
            .into()),
    }
}

fn mismatch(text: &str, want: &str, got: &Expr) -> Error {
    Error::InvalidArgument(format!(
        "expected {want}, but {text:?} is a {}",
        match got {
            Expr::Scalar(_) => "scalar",
            Expr::Element(_) => "algebra element",
            Expr::Vector(_) => "vector",
        }
    ))
}

pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    match parse_expression(text, None)? {
        Expr::Scalar(s) => Ok(s),
        other => Err(mismatch(text, "a scalar", &other)),
    }
}

/// A scalar that must not involve `q` or `a`.
pub fn parse_constant(text: &str) -> Result<QuadRat, Error> {
    let s = parse_scalar(text)?;
    s.as_constant().ok_or_else(|| Error::InvalidArgument(format!("{text:?} is not a number in Q(w)")))
}

pub fn parse_element(text: &str, family: Option<Family>) -> Result<AlgebraElement, Error> {
    match parse_expression(text, family)? {
        Expr::Element(e) => Ok(e),
        Expr::Scalar(s) if s.is_zero() => Ok(AlgebraElement::zero(family.unwrap_or(Family::Ramond))),
        other => Err(mismatch(text, "an algebra element", &other)),
    }
}

pub fn parse_vector(text: &str, family: Option<Family>) -> Result<Vector, Error> {
    match parse_expression(text, family)? {
        Expr::Vector(v) => Ok(v),
        other => Err(mismatch(text, "a vector", &other)),
    }
}
