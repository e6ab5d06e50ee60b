#[path = "support/parser_cases.rs"]
mod parser_cases;

use isostab::funcdsl::{parse, parse_expr, ParseErrorKind};
use isostab::{NormSpec, Space};
use parser_cases::{arb_expr, ERRORS, SHAPES};
use proptest::prelude::*;

fn l2(dim: usize) -> Space {
    Space::new(dim, NormSpec::l2()).unwrap()
}

#[test]
fn golden_shapes() {
    for (input, expected) in SHAPES {
        let e = parse_expr(input, 2).unwrap_or_else(|err| panic!("{input:?}: {err}"));
        assert_eq!(e.to_string(), *expected, "input {input:?}");
    }
}

#[test]
fn golden_syntax_errors() {
    for (input, offset) in ERRORS {
        let err = parse_expr(input, 2).expect_err(input);
        assert_eq!(err.offset, *offset, "input {input:?}: {err}");
    }
}

#[test]
fn component_index_out_of_range() {
    let err = parse("x[0] + x[2]", 2).unwrap_err();
    assert_eq!(err.offset, 9);
    assert_eq!(
        err.kind,
        ParseErrorKind::IndexOutOfRange { index: 2, dim: 2 }
    );
}

#[test]
fn unknown_function_reports_its_offset() {
    let err = parse_expr("1 + tan(x[0])", 1).unwrap_err();
    assert_eq!(err.offset, 4);
    assert_eq!(err.kind, ParseErrorKind::UnknownFunction("tan".into()));
}

#[test]
fn vector_components_and_their_values() {
    let v = parse("x[0]*x[1]; -2^2; 2^3^2", 2).unwrap();
    assert_eq!(v.output_dim(), 3);
    assert_eq!(
        v.eval(&[3.0, 4.0], &l2(2)).unwrap(),
        vec![12.0, -4.0, 512.0]
    );
}

#[test]
fn error_in_second_component_counts_bytes_from_the_start() {
    let err = parse("x[0]; x[1] *", 2).unwrap_err();
    assert_eq!(err.offset, 12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pretty_print_reparses_to_the_same_tree(e in arb_expr(3)) {
        let text = e.to_string();
        let back = parse_expr(&text, 3).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e);
    }
}
