//! Form and multivector expressions.
//!
//! ```text
//! sum     := signed (('+' | '-') signed)*
//! signed  := '-' signed | wedge
//! wedge   := product ('^' product)*
//! product := atom ('*' atom)*
//! atom    := rational | 'x'i | 'dx'i | 'e'i | 'd'i | '(' sum ')'
//! ```
//!
//! `*` needs a scalar (polynomial) on one side; `^` is the wedge product.
//! Rationals are `p` or `p/q`. `#` starts a comment running to end of line.

use std::fmt;

use msym_core::{Error as CoreError, KForm, KVector, Polynomial, Rational};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symbol {
    Coordinate,
    Covector,
    Vector,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Ident(Symbol, usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Token) -> String {
    match t {
        Token::Number(r) => format!("number {r}"),
        Token::Ident(..) => "identifier".into(),
        Token::Plus => "'+'".into(),
        Token::Minus => "'-'".into(),
        Token::Star => "'*'".into(),
        Token::Caret => "'^'".into(),
        Token::LParen => "'('".into(),
        Token::RParen => "')'".into(),
        Token::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Token, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let digits = |i: &mut usize, col: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
            *col += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((
                    match c {
                        '+' => Token::Plus,
                        '-' => Token::Minus,
                        '*' => Token::Star,
                        '^' => Token::Caret,
                        '(' => Token::LParen,
                        _ => Token::RParen,
                    },
                    pos,
                ));
                i += 1;
                col += 1;
            }
            c if c.is_ascii_digit() => {
                let num: BigInt = digits(&mut i, &mut col).parse().expect("digits");
                let mut den = BigInt::from(1);
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    col += 1;
                    let d = digits(&mut i, &mut col);
                    if d.is_empty() {
                        return Err(Pos { line, column: col }.error("expected a denominator after '/'"));
                    }
                    den = d.parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(pos.error("zero denominator"));
                    }
                }
                if i < chars.len() && chars[i] == '.' {
                    return Err(Pos { line, column: col }.error("decimal literals are not accepted; write p/q"));
                }
                out.push((Token::Number(Rational::new(num, den)), pos));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                    col += 1;
                }
                let name: String = chars[start..i].iter().collect();
                let symbol = match name.as_str() {
                    "x" => Symbol::Coordinate,
                    "dx" => Symbol::Covector,
                    "e" | "d" => Symbol::Vector,
                    _ => return Err(pos.error(format!("unknown identifier '{name}'"))),
                };
                let idx = digits(&mut i, &mut col);
                if idx.is_empty() {
                    return Err(pos.error(format!("identifier '{name}' needs an index")));
                }
                let idx: usize = idx
                    .parse()
                    .map_err(|_| pos.error("index too large"))?;
                if idx == 0 {
                    return Err(pos.error("indices start at 1"));
                }
                out.push((Token::Ident(symbol, idx), pos));
            }
            other => return Err(pos.error(format!("unexpected character '{other}'"))),
        }
    }
    out.push((Token::End, Pos { line, column: col }));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Number(Rational),
    Ident(Symbol, usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>, Pos),
    Sub(Box<Node>, Box<Node>, Pos),
    Mul(Box<Node>, Box<Node>, Pos),
    Wedge(Box<Node>, Box<Node>, Pos),
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> (Token, Pos) {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Node, ParseError> {
        let mut left = self.signed()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    let (_, p) = self.bump();
                    left = Node::Add(Box::new(left), Box::new(self.signed()?), p);
                }
                Token::Minus => {
                    let (_, p) = self.bump();
                    left = Node::Sub(Box::new(left), Box::new(self.signed()?), p);
                }
                _ => return Ok(left),
            }
        }
    }

    fn signed(&mut self) -> Result<Node, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(Node::Neg(Box::new(self.signed()?)));
        }
        self.wedge()
    }

    fn wedge(&mut self) -> Result<Node, ParseError> {
        let mut left = self.product()?;
        while *self.peek() == Token::Caret {
            let (_, p) = self.bump();
            left = Node::Wedge(Box::new(left), Box::new(self.product()?), p);
        }
        Ok(left)
    }

    fn product(&mut self) -> Result<Node, ParseError> {
        let mut left = self.atom()?;
        while *self.peek() == Token::Star {
            let (_, p) = self.bump();
            left = Node::Mul(Box::new(left), Box::new(self.atom()?), p);
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let (t, p) = self.bump();
        match t {
            Token::Number(r) => Ok(Node::Number(r)),
            Token::Ident(s, i) => Ok(Node::Ident(s, i)),
            Token::LParen => {
                let inner = self.sum()?;
                match self.bump() {
                    (Token::RParen, _) => Ok(inner),
                    (other, q) => Err(q.error(format!("expected ')', found {}", describe(&other)))),
                }
            }
            other => Err(p.error(format!("expected an operand, found {}", describe(&other)))),
        }
    }
}

/// A parsed expression: a polynomial, a form or a multivector field.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Polynomial),
    Form(KForm),
    Vector(KVector),
}

impl Value {
    pub fn dim(&self) -> usize {
        match self {
            Value::Scalar(p) => p.dim(),
            Value::Form(f) => f.dim(),
            Value::Vector(v) => v.dim(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(p) => p.fmt(f),
            Value::Form(a) => a.fmt(f),
            Value::Vector(v) => v.fmt(f),
        }
    }
}

fn tokens_with_positions(tokens: &[(Token, Pos)]) -> impl Iterator<Item = (usize, Pos)> + '_ {
    tokens.iter().filter_map(|(t, p)| match t {
        Token::Ident(_, i) => Some((*i, *p)),
        _ => None,
    })
}

fn core(pos: Pos, e: CoreError) -> ParseError {
    pos.error(e.to_string())
}

struct Eval {
    dim: usize,
}

impl Eval {
    fn value(&self, node: &Node) -> Result<Value, ParseError> {
        let n = self.dim;
        Ok(match node {
            Node::Number(r) => Value::Scalar(Polynomial::constant(n, r.clone())),
            Node::Ident(Symbol::Coordinate, i) => Value::Scalar(Polynomial::var(n, i - 1)),
            Node::Ident(Symbol::Covector, i) => {
                Value::Form(KForm::basis(n, msym_core::MultiIndex::single(i - 1)))
            }
            Node::Ident(Symbol::Vector, i) => {
                Value::Vector(KVector::basis(n, msym_core::MultiIndex::single(i - 1)))
            }
            Node::Neg(a) => match self.value(a)? {
                Value::Scalar(p) => Value::Scalar(-p),
                Value::Form(f) => Value::Form(-f),
                Value::Vector(v) => Value::Vector(-v),
            },
            Node::Add(a, b, p) => self.add(self.value(a)?, self.value(b)?, *p)?,
            Node::Sub(a, b, p) => {
                let neg = match self.value(b)? {
                    Value::Scalar(x) => Value::Scalar(-x),
                    Value::Form(x) => Value::Form(-x),
                    Value::Vector(x) => Value::Vector(-x),
                };
                self.add(self.value(a)?, neg, *p)?
            }
            Node::Mul(a, b, p) => match (self.value(a)?, self.value(b)?) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
                (Value::Scalar(s), Value::Form(f)) | (Value::Form(f), Value::Scalar(s)) => {
                    Value::Form(f.mul_coefficient(&s))
                }
                (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s)) => {
                    Value::Vector(v.mul_coefficient(&s))
                }
                _ => return Err(p.error("'*' needs a scalar factor on one side; use '^' for the wedge product")),
            },
            Node::Wedge(a, b, p) => match (self.value(a)?, self.value(b)?) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
                (Value::Scalar(s), Value::Form(f)) | (Value::Form(f), Value::Scalar(s)) => {
                    Value::Form(f.mul_coefficient(&s))
                }
                (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s)) => {
                    Value::Vector(v.mul_coefficient(&s))
                }
                (Value::Form(x), Value::Form(y)) => Value::Form(x.wedge(&y).map_err(|e| core(*p, e))?),
                (Value::Vector(x), Value::Vector(y)) => {
                    Value::Vector(x.wedge(&y).map_err(|e| core(*p, e))?)
                }
                _ => return Err(p.error("cannot mix forms (dx) and multivectors (e) in one expression")),
            },
        })
    }

    fn add(&self, a: Value, b: Value, p: Pos) -> Result<Value, ParseError> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (Value::Form(x), Value::Form(y)) => Value::Form(x.checked_add(&y).map_err(|_| {
                p.error(format!("cannot add forms of degrees {} and {}", x.degree(), y.degree()))
            })?),
            (Value::Vector(x), Value::Vector(y)) => Value::Vector(x.checked_add(&y).map_err(|_| {
                p.error(format!(
                    "cannot add multivectors of degrees {} and {}",
                    x.degree(),
                    y.degree()
                ))
            })?),
            (Value::Scalar(s), Value::Form(f)) | (Value::Form(f), Value::Scalar(s)) => {
                self.add(Value::Form(KForm::function(s)), Value::Form(f), p)?
            }
            (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s)) => {
                self.add(Value::Vector(KVector::function(s)), Value::Vector(v), p)?
            }
            _ => return Err(p.error("cannot mix forms (dx) and multivectors (e) in one expression")),
        })
    }
}

/// Parses an expression in dimension `dim`, or in the largest index used
/// when `dim` is `None`.
pub fn parse(text: &str, dim: Option<usize>) -> Result<Value, ParseError> {
    let tokens = lex(text)?;
    let dim = match dim {
        Some(n) => {
            if n == 0 {
                return Err(Pos { line: 1, column: 1 }.error("dimension must be at least 1"));
            }
            if let Some((i, p)) = tokens_with_positions(&tokens).find(|(i, _)| *i > n) {
                return Err(p.error(format!("index {i} out of range for dimension {n}")));
            }
            n
        }
        None => tokens_with_positions(&tokens).map(|(i, _)| i).max().unwrap_or(1),
    };
    let mut parser = Parser { tokens, at: 0 };
    let node = parser.sum()?;
    if *parser.peek() != Token::End {
        let t = parser.peek().clone();
        return Err(parser.pos().error(format!("unexpected {}", describe(&t))));
    }
    Eval { dim }.value(&node)
}

/// Parses a differential form; a bare polynomial is read as a 0-form.
pub fn parse_form(text: &str, dim: Option<usize>) -> Result<KForm, ParseError> {
    match parse(text, dim)? {
        Value::Scalar(p) => Ok(KForm::function(p)),
        Value::Form(f) => Ok(f),
        Value::Vector(_) => Err(Pos { line: 1, column: 1 }.error("expected a form (dx symbols), found a multivector")),
    }
}

/// Parses a multivector field; a bare polynomial is read as a 0-vector.
pub fn parse_vector(text: &str, dim: Option<usize>) -> Result<KVector, ParseError> {
    match parse(text, dim)? {
        Value::Scalar(p) => Ok(KVector::function(p)),
        Value::Vector(v) => Ok(v),
        Value::Form(_) => Err(Pos { line: 1, column: 1 }.error("expected a multivector (e symbols), found a form")),
    }
}
