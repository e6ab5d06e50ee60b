use isostab::funcdsl::{BinaryOp, Expr, UnaryOp};
use proptest::prelude::*;

/// Input and its fully parenthesised rendering.
pub const SHAPES: &[(&str, &str)] = &[
    ("1+2*3", "(1.0 + (2.0 * 3.0))"),
    ("(1+2)*3", "((1.0 + 2.0) * 3.0)"),
    ("1-2-3", "((1.0 - 2.0) - 3.0)"),
    ("8/4/2", "((8.0 / 4.0) / 2.0)"),
    ("2^3^2", "(2.0 ^ (3.0 ^ 2.0))"),
    ("-2^2", "(-(2.0 ^ 2.0))"),
    ("2^-1", "(2.0 ^ (-1.0))"),
    ("--x[0]", "(-(-x[0]))"),
    ("-x[0]*x[1]", "((-x[0]) * x[1])"),
    ("x[0]*-x[1]", "(x[0] * (-x[1]))"),
    ("1-x[0]^2", "(1.0 - (x[0] ^ 2.0))"),
    ("2*x[0]^2", "(2.0 * (x[0] ^ 2.0))"),
    ("norm(x)^2", "(norm(x) ^ 2.0)"),
    ("dot(x,x)/2", "(dot(x,x) / 2.0)"),
    ("sin(x[0])+cos(x[1])", "(sin(x[0]) + cos(x[1]))"),
    ("exp(-norm(x))", "exp((-norm(x)))"),
    ("abs(x[0]-x[1])", "abs((x[0] - x[1]))"),
    ("  1.5e2 *\tx[1] ", "(150.0 * x[1])"),
    ("0.25", "0.25"),
    ("3e-2", "0.03"),
    ("(((x[0])))", "x[0]"),
    ("1+2-3+4", "(((1.0 + 2.0) - 3.0) + 4.0)"),
    ("2*3/4*5", "(((2.0 * 3.0) / 4.0) * 5.0)"),
];

/// Input and the byte offset of the reported error.
pub const ERRORS: &[(&str, usize)] = &[
    ("x[0]+", 5),
    ("", 0),
    ("1 +* 2", 3),
    ("(1+2", 4),
    ("1+2)", 3),
    ("x[0", 3),
    ("norm(y)", 5),
    ("dot(x)", 5),
    ("sin x[0]", 4),
    ("2 $ 3", 2),
    ("x[0] x[1]", 5),
];

/// Random trees with non-negative literals, so that every `Number` prints
/// without a sign and reparses as itself.
pub fn arb_expr(dim: usize) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0.0f64..1e6).prop_map(Expr::Number),
        (0usize..dim).prop_map(Expr::Component),
        Just(Expr::Norm),
        Just(Expr::Dot),
    ];
    leaf.prop_recursive(6, 48, 2, |inner| {
        let unary = prop_oneof![
            Just(UnaryOp::Neg),
            Just(UnaryOp::Abs),
            Just(UnaryOp::Sin),
            Just(UnaryOp::Cos),
            Just(UnaryOp::Exp),
        ];
        let binary = prop_oneof![
            Just(BinaryOp::Add),
            Just(BinaryOp::Sub),
            Just(BinaryOp::Mul),
            Just(BinaryOp::Div),
            Just(BinaryOp::Pow),
        ];
        prop_oneof![
            (unary, inner.clone()).prop_map(|(op, e)| Expr::Unary(op, Box::new(e))),
            (binary, inner.clone(), inner).prop_map(|(op, a, b)| Expr::Binary(
                op,
                Box::new(a),
                Box::new(b)
            )),
        ]
    })
}
