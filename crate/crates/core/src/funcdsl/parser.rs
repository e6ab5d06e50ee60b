use std::fmt;

use thiserror::Error;

use super::ast::{BinaryOp, Expr, UnaryOp, VectorExpr};
use super::lexer::{tokenize, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    Syntax {
        expected: Vec<String>,
        found: String,
    },
    IndexOutOfRange {
        index: usize,
        dim: usize,
    },
    UnknownFunction(String),
    InvalidDimension(usize),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { expected, found } => {
                write!(
                    f,
                    "expected one of {{{}}}, found {found}",
                    expected.join(", ")
                )
            }
            ParseErrorKind::IndexOutOfRange { index, dim } => {
                write!(
                    f,
                    "component index {index} out of range for dimension {dim}"
                )
            }
            ParseErrorKind::UnknownFunction(name) => write!(f, "unknown function `{name}`"),
            ParseErrorKind::InvalidDimension(d) => {
                write!(f, "domain dimension must be ≥ 1, got {d}")
            }
        }
    }
}

const FUNCTIONS: [(&str, UnaryOp); 4] = [
    ("abs", UnaryOp::Abs),
    ("sin", UnaryOp::Sin),
    ("cos", UnaryOp::Cos),
    ("exp", UnaryOp::Exp),
];

const ATOM_START: &[&str] = &["number", "`x`", "`norm`", "`dot`", "function", "`(`", "`-`"];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError {
            offset: t.offset,
            kind: ParseErrorKind::Syntax {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: t.kind.describe(),
            },
        })
    }

    fn expect(&mut self, kind: TokenKind, label: &str) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            self.fail(&[label])
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), ParseError> {
        match &self.peek().kind {
            TokenKind::Ident(s) if s == name => {
                self.bump();
                Ok(())
            }
            _ => self.fail(&[&format!("`{name}`")]),
        }
    }

    fn vector(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut components = vec![self.expr()?];
        loop {
            match self.peek().kind {
                TokenKind::Semicolon => {
                    self.bump();
                    components.push(self.expr()?);
                }
                TokenKind::Eof => return Ok(components),
                _ => return self.fail(&["`+`", "`-`", "`*`", "`/`", "`^`", "`;`", "end of input"]),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinaryOp::Add,
                TokenKind::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Star => BinaryOp::Mul,
                TokenKind::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(Expr::Unary(UnaryOp::Neg, Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().kind == TokenKind::Caret {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::Binary(
                BinaryOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let token = self.peek().clone();
        match token.kind {
            TokenKind::Number(text) => {
                self.bump();
                let value: f64 = text.parse().map_err(|_| ParseError {
                    offset: token.offset,
                    kind: ParseErrorKind::Syntax {
                        expected: vec!["number".into()],
                        found: format!("`{text}`"),
                    },
                })?;
                if !value.is_finite() {
                    return Err(ParseError {
                        offset: token.offset,
                        kind: ParseErrorKind::Syntax {
                            expected: vec!["finite number".into()],
                            found: format!("`{text}`"),
                        },
                    });
                }
                Ok(Expr::Number(value))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "x" => {
                        self.expect(TokenKind::LBracket, "`[`")?;
                        let index = self.index()?;
                        self.expect(TokenKind::RBracket, "`]`")?;
                        Ok(Expr::Component(index))
                    }
                    "norm" => {
                        self.expect(TokenKind::LParen, "`(`")?;
                        self.expect_ident("x")?;
                        self.expect(TokenKind::RParen, "`)`")?;
                        Ok(Expr::Norm)
                    }
                    "dot" => {
                        self.expect(TokenKind::LParen, "`(`")?;
                        self.expect_ident("x")?;
                        self.expect(TokenKind::Comma, "`,`")?;
                        self.expect_ident("x")?;
                        self.expect(TokenKind::RParen, "`)`")?;
                        Ok(Expr::Dot)
                    }
                    other => {
                        let op = FUNCTIONS
                            .iter()
                            .find(|(n, _)| *n == other)
                            .map(|(_, op)| *op)
                            .ok_or_else(|| ParseError {
                                offset: token.offset,
                                kind: ParseErrorKind::UnknownFunction(other.to_string()),
                            })?;
                        self.expect(TokenKind::LParen, "`(`")?;
                        let inner = self.expr()?;
                        self.expect(TokenKind::RParen, "`)`")?;
                        Ok(Expr::Unary(op, Box::new(inner)))
                    }
                }
            }
            _ => self.fail(ATOM_START),
        }
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let token = self.peek().clone();
        let parsed = match &token.kind {
            TokenKind::Number(text) if text.bytes().all(|b| b.is_ascii_digit()) => {
                text.parse::<usize>().ok()
            }
            _ => None,
        };
        let Some(index) = parsed else {
            return self.fail(&["integer index"]);
        };
        if index >= self.dim {
            return Err(ParseError {
                offset: token.offset,
                kind: ParseErrorKind::IndexOutOfRange {
                    index,
                    dim: self.dim,
                },
            });
        }
        self.bump();
        Ok(index)
    }
}

fn parser_for(text: &str, domain_dim: usize) -> Result<Parser, ParseError> {
    if domain_dim == 0 {
        return Err(ParseError {
            offset: 0,
            kind: ParseErrorKind::InvalidDimension(domain_dim),
        });
    }
    Ok(Parser {
        tokens: tokenize(text)?,
        pos: 0,
        dim: domain_dim,
    })
}

/// Parses a `;`-separated list of component expressions over ℝ^`domain_dim`.
pub fn parse(text: &str, domain_dim: usize) -> Result<VectorExpr, ParseError> {
    let mut p = parser_for(text, domain_dim)?;
    let components = p.vector()?;
    Ok(VectorExpr::new(domain_dim, components))
}

/// Parses a single scalar expression.
pub fn parse_expr(text: &str, domain_dim: usize) -> Result<Expr, ParseError> {
    let mut p = parser_for(text, domain_dim)?;
    let e = p.expr()?;
    if p.peek().kind != TokenKind::Eof {
        return p.fail(&["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"]);
    }
    Ok(e)
}
