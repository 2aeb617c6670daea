use extkoszul::{rational, ExtElement, Monomial};
use extkoszul_cli::parse::parse_element;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn element(n: usize) -> impl Strategy<Value = ExtElement> {
    prop::collection::vec((0..1u64 << n, -20i64..=20, 1i64..=6), 0..8).prop_map(move |terms| {
        ExtElement::from_terms(n, terms.into_iter().map(|(b, p, q)| (Monomial::from_bits(b), rational(p, q))))
    })
}

proptest! {
    #![proptest_config(Config { cases: 500, rng_seed: RngSeed::Fixed(41), failure_persistence: None, ..Config::default() })]

    #[test]
    fn printing_then_parsing_is_the_identity(f in element(7)) {
        let text = f.to_string();
        let back = parse_element(&text, 7).unwrap();
        prop_assert_eq!(back.value, f);
        prop_assert!(back.warnings.is_empty());
    }
}
