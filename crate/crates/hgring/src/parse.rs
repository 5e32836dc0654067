//! Text form of HG polynomials: sums of products of integer coefficients,
//! powers of t and L, Tate classes Q(m) with multiplicities, and irreducible
//! labels s[lambda]. Multiplication is written with '·', '*', or by
//! juxtaposition.

use std::fmt;
use std::str::FromStr;

use symrep::Partition;

use crate::HGPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    msg: String,
}

impl ParseError {
    fn new(msg: impl Into<String>) -> ParseError {
        ParseError { msg: msg.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Caret(i64),
    Int(i64),
    T,
    L,
    Q(i64),
    Rep(Partition),
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;

    let read_int = |i: &mut usize| -> Result<i64, ParseError> {
        let neg = chars.get(*i) == Some(&'-');
        if neg {
            *i += 1;
        }
        let start = *i;
        while matches!(chars.get(*i), Some(c) if c.is_ascii_digit()) {
            *i += 1;
        }
        if *i == start {
            return Err(ParseError::new("expected an integer"));
        }
        let digits: String = chars[start..*i].iter().collect();
        let value: i64 = digits
            .parse()
            .map_err(|_| ParseError::new(format!("integer out of range: {digits}")))?;
        Ok(if neg { -value } else { value })
    };

    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' | '·' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '^' => {
                i += 1;
                let exp = read_int(&mut i)
                    .map_err(|_| ParseError::new("expected an exponent after ^"))?;
                tokens.push(Token::Caret(exp));
            }
            '0'..='9' => {
                let value = read_int(&mut i)?;
                tokens.push(Token::Int(value));
            }
            't' => {
                tokens.push(Token::T);
                i += 1;
            }
            'L' => {
                tokens.push(Token::L);
                i += 1;
            }
            'Q' => {
                i += 1;
                // Q(m) when parentheses wrap a bare integer, else Q alone.
                let mut j = i;
                while matches!(chars.get(j), Some(c) if c.is_whitespace()) {
                    j += 1;
                }
                let mut twist = 0;
                if chars.get(j) == Some(&'(') {
                    let mut cursor = j + 1;
                    while matches!(chars.get(cursor), Some(c) if c.is_whitespace()) {
                        cursor += 1;
                    }
                    if let Ok(m) = read_int(&mut cursor) {
                        while matches!(chars.get(cursor), Some(c) if c.is_whitespace()) {
                            cursor += 1;
                        }
                        if chars.get(cursor) == Some(&')') {
                            twist = m;
                            i = cursor + 1;
                        }
                    }
                }
                tokens.push(Token::Q(twist));
            }
            's' => {
                i += 1;
                if chars.get(i) != Some(&'[') {
                    return Err(ParseError::new("expected [ after s"));
                }
                i += 1;
                let mut parts: Vec<u8> = Vec::new();
                loop {
                    while matches!(chars.get(i), Some(c) if c.is_whitespace()) {
                        i += 1;
                    }
                    match chars.get(i) {
                        Some(']') => {
                            i += 1;
                            break;
                        }
                        Some(c) if c.is_ascii_digit() => {
                            let part = read_int(&mut i)?;
                            if !(1..=255).contains(&part) {
                                return Err(ParseError::new(format!(
                                    "partition part out of range: {part}"
                                )));
                            }
                            parts.push(part as u8);
                            while matches!(chars.get(i), Some(c) if c.is_whitespace()) {
                                i += 1;
                            }
                            if chars.get(i) == Some(&',') {
                                i += 1;
                            }
                        }
                        _ => return Err(ParseError::new("unterminated partition label")),
                    }
                }
                if parts.is_empty() {
                    return Err(ParseError::new("empty partition label s[]"));
                }
                let lambda = Partition::new(&parts)
                    .map_err(|e| ParseError::new(format!("bad partition label: {e}")))?;
                tokens.push(Token::Rep(lambda));
            }
            other => {
                return Err(ParseError::new(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_expr(&mut self) -> Result<HGPoly, ParseError> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        }
        let mut acc = self.parse_product()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let rhs = self.parse_product()?;
                    acc = acc.add(&rhs).map_err(|e| ParseError::new(e.to_string()))?;
                }
                Some(Token::Minus) => {
                    self.next();
                    let rhs = self.parse_product()?;
                    acc = acc.sub(&rhs).map_err(|e| ParseError::new(e.to_string()))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_product(&mut self) -> Result<HGPoly, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    let rhs = self.parse_factor()?;
                    acc = acc.mul(&rhs).map_err(|e| ParseError::new(e.to_string()))?;
                }
                Some(
                    Token::Int(_)
                    | Token::T
                    | Token::L
                    | Token::Q(_)
                    | Token::Rep(_)
                    | Token::LParen,
                ) => {
                    let rhs = self.parse_factor()?;
                    acc = acc.mul(&rhs).map_err(|e| ParseError::new(e.to_string()))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<HGPoly, ParseError> {
        enum Atom {
            T,
            L,
            Q(i64),
            Poly(HGPoly),
        }
        let atom = match self.next() {
            Some(Token::T) => Atom::T,
            Some(Token::L) => Atom::L,
            Some(Token::Q(m)) => Atom::Q(m),
            Some(Token::Int(c)) => Atom::Poly(HGPoly::plain_term(0, 0, c)),
            Some(Token::Rep(lambda)) => Atom::Poly(HGPoly::equivariant_term(0, 0, &lambda, 1)),
            Some(Token::LParen) => {
                let inner = self.parse_expr()?;
                match self.next() {
                    Some(Token::RParen) => Atom::Poly(inner),
                    _ => return Err(ParseError::new("missing closing parenthesis")),
                }
            }
            Some(tok) => {
                return Err(ParseError::new(format!("expected a value, found {tok:?}")))
            }
            None => return Err(ParseError::new("expected a value, found end of input")),
        };
        let caret = match self.peek() {
            Some(&Token::Caret(k)) => {
                self.next();
                Some(k)
            }
            _ => None,
        };
        Ok(match atom {
            Atom::T => HGPoly::plain_term(caret.unwrap_or(1), 0, 1),
            Atom::L => HGPoly::plain_term(0, caret.unwrap_or(1), 1),
            // Q(m)^k is a multiplicity: k copies of the twist L^-m.
            Atom::Q(m) => HGPoly::plain_term(0, -m, caret.unwrap_or(1)),
            Atom::Poly(base) => match caret {
                None => base,
                Some(k) if k >= 0 => {
                    let mut acc = HGPoly::one();
                    for _ in 0..k {
                        acc = acc.mul(&base).map_err(|e| ParseError::new(e.to_string()))?;
                    }
                    acc
                }
                Some(k) => {
                    return Err(ParseError::new(format!(
                        "negative power {k} of a compound expression"
                    )))
                }
            },
        })
    }
}

impl FromStr for HGPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<HGPoly, ParseError> {
        let tokens = lex(s)?;
        if tokens.is_empty() {
            return Err(ParseError::new("empty expression"));
        }
        let mut parser = Parser { tokens, pos: 0 };
        let poly = parser.parse_expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(ParseError::new(format!(
                "unexpected trailing input at token {}",
                parser.pos
            )));
        }
        Ok(poly)
    }
}
