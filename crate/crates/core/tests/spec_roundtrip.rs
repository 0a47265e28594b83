use proptest::prelude::*;
use ringline::harness::{parse_ring_spec, RingSpec};

fn field() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        prop::sample::select(vec![2u32, 3, 5, 7, 11]).prop_map(RingSpec::Zmod),
        (prop::sample::select(vec![2u32, 3, 5, 7]), 1u32..4).prop_map(|(p, k)| RingSpec::Gf { p, k }),
    ]
}

fn atom() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        (2u32..30).prop_map(RingSpec::Zmod),
        field(),
        (1usize..4, field()).prop_map(|(n, b)| RingSpec::Matrix(n, Box::new(b))),
        field().prop_map(|b| RingSpec::Dual(Box::new(b))),
    ]
}

fn expr() -> impl Strategy<Value = RingSpec> {
    prop::collection::vec(atom(), 1..4).prop_map(|mut v| if v.len() == 1 { v.pop().unwrap() } else { RingSpec::Product(v) })
}

fn spaced(text: &str, pad: &[bool]) -> String {
    let mut out = String::new();
    for (i, c) in text.chars().enumerate() {
        if pad.get(i % pad.len().max(1)).copied().unwrap_or(false) && "(),^x".contains(c) {
            out.push_str(&format!(" {c} "));
        } else {
            out.push(c);
        }
    }
    out
}

proptest! {
    #[test]
    fn parse_print_parse(spec in expr(), pad in prop::collection::vec(any::<bool>(), 1..8)) {
        let text = spaced(&spec.to_string(), &pad);
        let first = parse_ring_spec(&text);
        match &first {
            Ok(parsed) => {
                prop_assert_eq!(parsed, &spec);
                prop_assert_eq!(&parse_ring_spec(&parsed.to_string()), &first);
            }
            Err(ringline::Error::OrderCap { .. }) => prop_assert!(spec.order().map_or(true, |o| o > ringline::ring::order_cap())),
            Err(e) => prop_assert!(false, "{}: {}", text, e),
        }
    }

    #[test]
    fn garbage_never_panics(text in "[ZGFMdualx0-9(),^ ]{0,24}") {
        let _ = parse_ring_spec(&text);
    }
}
