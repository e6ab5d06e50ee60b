//! A small expression language for maps ℝⁿ → ℝᵐ.
//!
//! ```text
//! vector  := expr (';' expr)*
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?
//! atom    := number | 'x' '[' int ']' | 'norm' '(' 'x' ')' | 'dot' '(' 'x' ',' 'x' ')'
//!          | fn '(' expr ')' | '(' expr ')'
//! fn      := 'abs' | 'sin' | 'cos' | 'exp'
//! ```
//!
//! `^` is right associative and binds tighter than a leading minus, so
//! `-2^2` is `-(2^2)` and `2^3^2` is `2^(3^2)`. The exponent may carry its
//! own sign (`2^-1`). `norm(x)` is evaluated under the norm of the domain
//! space. Whitespace is insignificant.

mod ast;
mod lexer;
mod parser;

pub use ast::{BinaryOp, EvalError, Expr, UnaryOp, VectorExpr};
pub use parser::{parse, parse_expr, ParseError, ParseErrorKind};
