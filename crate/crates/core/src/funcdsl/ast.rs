use std::fmt;

use thiserror::Error;

use crate::normed_space::Space;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Abs,
    Sin,
    Cos,
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

/// Scalar-valued expression over a vector argument `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    /// `x[i]`
    Component(usize),
    /// `norm(x)` under the domain norm
    Norm,
    /// `dot(x,x)`
    Dot,
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite intermediate value in `{0}`")]
    NonFinite(String),
    #[error("expression expects a {expected}-dimensional argument, got {actual}")]
    Dimension { expected: usize, actual: usize },
}

fn finite(v: f64, e: &Expr) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite(e.to_string()))
    }
}

impl Expr {
    /// Evaluates at `x`; `norm(x)` uses `space`. The caller has checked the
    /// dimension of `x`.
    pub fn eval(&self, x: &[f64], space: &Space) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Number(v) => *v,
            Expr::Component(i) => x[*i],
            Expr::Norm => space.norm_spec().norm_unchecked(x),
            Expr::Dot => x.iter().map(|c| c * c).sum(),
            Expr::Unary(op, inner) => {
                let a = inner.eval(x, space)?;
                match op {
                    UnaryOp::Neg => -a,
                    UnaryOp::Abs => a.abs(),
                    UnaryOp::Sin => a.sin(),
                    UnaryOp::Cos => a.cos(),
                    UnaryOp::Exp => a.exp(),
                }
            }
            Expr::Binary(op, lhs, rhs) => {
                let a = lhs.eval(x, space)?;
                let b = rhs.eval(x, space)?;
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div if b == 0.0 => return Err(EvalError::DivisionByZero),
                    BinaryOp::Div => a / b,
                    BinaryOp::Pow => pow(a, b),
                }
            }
        };
        finite(v, self)
    }

    /// Largest component index referenced, if any.
    pub fn max_index(&self) -> Option<usize> {
        match self {
            Expr::Component(i) => Some(*i),
            Expr::Number(_) | Expr::Norm | Expr::Dot => None,
            Expr::Unary(_, e) => e.max_index(),
            Expr::Binary(_, a, b) => a.max_index().max(b.max_index()),
        }
    }
}

/// `powi` for small integer exponents keeps `t^2` exact on representable squares.
fn pow(a: f64, b: f64) -> f64 {
    if b.fract() == 0.0 && b.abs() <= 64.0 {
        a.powi(b as i32)
    } else {
        a.powf(b)
    }
}

/// Fully parenthesised; reparses to a structurally identical tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) => write!(f, "{v:?}"),
            Expr::Component(i) => write!(f, "x[{i}]"),
            Expr::Norm => f.write_str("norm(x)"),
            Expr::Dot => f.write_str("dot(x,x)"),
            Expr::Unary(UnaryOp::Neg, e) => write!(f, "(-{e})"),
            Expr::Unary(op, e) => {
                let name = match op {
                    UnaryOp::Abs => "abs",
                    UnaryOp::Sin => "sin",
                    UnaryOp::Cos => "cos",
                    UnaryOp::Exp => "exp",
                    UnaryOp::Neg => unreachable!(),
                };
                write!(f, "{name}({e})")
            }
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

/// One expression per output coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorExpr {
    domain_dim: usize,
    components: Vec<Expr>,
}

impl VectorExpr {
    pub(crate) fn new(domain_dim: usize, components: Vec<Expr>) -> Self {
        debug_assert!(!components.is_empty());
        Self {
            domain_dim,
            components,
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn output_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    pub fn eval(&self, x: &[f64], space: &Space) -> Result<Vec<f64>, EvalError> {
        if x.len() != self.domain_dim {
            return Err(EvalError::Dimension {
                expected: self.domain_dim,
                actual: x.len(),
            });
        }
        self.components.iter().map(|e| e.eval(x, space)).collect()
    }
}

impl fmt::Display for VectorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
