mod common;

use common::*;
use holonomy_core::dsl::*;
use holonomy_core::form::KForm;
use holonomy_core::g2::phi0_form;
use holonomy_core::golden::BUNDLED;
use holonomy_core::scalar::{ratio, Rational};
use holonomy_core::spin7::psi0_form;
use proptest::prelude::*;

type Q = Rational;

const PHI0: &str = "e123 + e145 + e167 + e246 - e257 - e347 - e356";

#[test]
fn parse_examples() {
    assert_eq!(parse_form(PHI0, 7).unwrap(), phi0_form());
    let f = parse_form("3/2 e16 - e25", 7).unwrap();
    assert_eq!(f.coeff_of(&[1, 6]), ratio(3, 2));
    assert_eq!(f.coeff_of(&[2, 5]), ratio(-1, 1));
    assert_eq!(f.nnz(), 2);
    let err = parse_form("e12 + e345", 7).unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::GradeMismatch { expected: 2, found: 3 }));
}

#[test]
fn print_examples() {
    assert_eq!(print_form(&phi0_form()), PHI0);
    assert_eq!(print_form(&KForm::<Q>::zero(7, 3)), "0");
    assert_eq!(print_form(&parse_form("-e25 + 3/2 e16", 7).unwrap()), "3/2 e16 - e25");
}

#[test]
fn error_positions() {
    let e = parse_form("e12 + e19", 7).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::IndexOutOfRange { index: 9, n: 7 });
    assert_eq!(e.pos, 8);
    let e = parse_form("e1 + e242", 7).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::RepeatedIndex(2));
    let e = parse_form("e12 + + x", 7).unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    assert!(e.pos <= 9);
    assert!(matches!(parse_form("e1", 10).unwrap_err().kind, ParseErrorKind::Dimension(10)));
}

#[test]
fn wedge_by_juxtaposition_and_caret() {
    let a = parse_form("(e1 + e2)(e3 - e4)", 7).unwrap();
    let b = parse_form("(e1 + e2) ^ (e3 - e4)", 7).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, wedge_oracle(&f(7, "e1 + e2"), &f(7, "e3 - e4")));
    assert_eq!(parse_form("e2 e1", 7).unwrap(), parse_form("-e12", 7).unwrap());
    assert_eq!(parse_form("e21", 7).unwrap(), parse_form("-e12", 7).unwrap());
}

#[test]
fn bundled_structure_literals_are_exact() {
    let (_, src) = BUNDLED.iter().find(|(n, _)| *n == "structures.forms").unwrap();
    let entries = parse_golden(src).unwrap();
    let get = |k: &str| entries.iter().find(|e| e.key == k).unwrap();
    let phi = get("phi0");
    assert_eq!(parse_form(&phi.text, phi.dim).unwrap(), phi0_form());
    let psi = get("psi0");
    assert_eq!(parse_form(&psi.text, psi.dim).unwrap(), psi0_form());
}

#[test]
fn golden_reader_reports_bad_lines() {
    let err = parse_golden("dim = 7\nno equals sign here\n").unwrap_err();
    assert_eq!(err.line, 2);
    let ok = parse_golden("# comment\ndim = 8\nx = e1234\n").unwrap();
    assert_eq!(ok.len(), 1);
    assert_eq!(ok[0].dim, 8);
    assert_eq!(ok[0].line, 3);
}

/// Random expression text together with its value computed by the oracles.
fn expr(n: usize, k: usize) -> impl Strategy<Value = (String, KForm<Q>)> {
    let leaf = (prop::collection::btree_set(1..=n, k), 1i64..=5, 1i64..=3, any::<bool>()).prop_map(move |(ix, p, q, neg)| {
        let ix: Vec<usize> = ix.into_iter().collect();
        let mut shuffled = ix.clone();
        shuffled.reverse();
        let c = ratio(if neg { -p } else { p }, q);
        let mono: String = shuffled.iter().map(|i| i.to_string()).collect();
        let text = format!("{}{}/{} e{}", if neg { "-" } else { "" }, p, q, mono);
        let value = KForm::basis(n, &shuffled).scale(&c);
        (text, value)
    });
    prop::collection::vec(leaf, 1..5).prop_map(move |terms| {
        let mut text = String::new();
        let mut value = KForm::zero(n, k);
        for (i, (t, v)) in terms.into_iter().enumerate() {
            if i > 0 {
                text.push_str(" + (");
                text.push_str(&t);
                text.push(')');
            } else {
                text.push_str(&t);
            }
            value = value + v;
        }
        (text, value)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_parse_round_trip(a in (7usize..=8).prop_flat_map(|n| any_form(n, 8))) {
        let text = print_form(&a);
        let back = if a.is_zero() { parse_form_graded(&text, a.n(), a.grade()) } else { parse_form(&text, a.n()) };
        prop_assert_eq!(back.unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parser_agrees_with_oracle((text, value) in (1usize..=4).prop_flat_map(|k| expr(7, k))) {
        prop_assert_eq!(parse_form(&text, 7).unwrap(), value);
    }

    #[test]
    fn parser_is_total(s in "[e0-9+\\-^/() ]{0,24}") {
        match parse_form(&s, 8) {
            Ok(_) => {}
            Err(e) => prop_assert!(e.pos <= s.len()),
        }
    }

    #[test]
    fn product_of_parsed_factors(a in form(7, 1, 3), b in form(7, 2, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let text = format!("({}) ^ ({})", print_form(&a), print_form(&b));
        prop_assert_eq!(parse_form(&text, 7).unwrap(), wedge_oracle(&a, &b));
    }
}
