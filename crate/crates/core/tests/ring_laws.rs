use proptest::prelude::*;
use ringline::harness::parse_ring_spec;
use ringline::ring::FiniteRing;
use ringline::{MapKind, RingMapTable};

const SMALL: &[&str] = &[
    "Z2", "Z4", "Z6", "Z8", "Z9", "Z12", "GF(2^2)", "GF(2^3)", "GF(3^2)", "GF(5)", "dual(GF(2))", "dual(GF(3))",
    "dual(GF(2^2))", "M(2,GF(2))", "GF(2) x GF(2)", "GF(2) x Z4", "Z2 x Z3", "GF(2) x dual(GF(2))", "Z3 x Z3 x Z2",
];

const LARGE: &[&str] = &["M(2,GF(3))", "GF(2) x M(2,GF(2))", "M(2,GF(2)) x Z4", "dual(GF(3^2))", "M(2,GF(2^2))"];

fn ring(spec: &str) -> FiniteRing {
    parse_ring_spec(spec).unwrap().build().unwrap()
}

fn all_rings() -> Vec<FiniteRing> {
    SMALL.iter().chain(LARGE).map(|s| ring(s)).collect()
}

fn axioms_hold(r: &FiniteRing, a: u32, b: u32, c: u32) -> bool {
    r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c))
        && r.add(r.add(a, b), c) == r.add(a, r.add(b, c))
        && r.add(a, b) == r.add(b, a)
        && r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c))
        && r.mul(r.add(a, b), c) == r.add(r.mul(a, c), r.mul(b, c))
        && r.add(a, r.neg(a)) == 0
        && r.mul(r.one(), a) == a
        && r.mul(a, r.one()) == a
}

#[test]
fn axioms_exhaustive_on_small_rings() {
    for spec in SMALL {
        let r = ring(spec);
        if r.order() > 64 {
            continue;
        }
        for a in r.elements() {
            for b in r.elements() {
                for c in r.elements() {
                    assert!(axioms_hold(&r, a, b, c), "{spec}: {a} {b} {c}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn axioms_on_random_triples(idx in 0..LARGE.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        thread_local!(static RINGS: Vec<FiniteRing> = LARGE.iter().map(|s| ring(s)).collect());
        RINGS.with(|rs| {
            let r = &rs[idx];
            let n = r.order() as u32;
            prop_assert!(axioms_hold(r, a % n, b % n, c % n));
            Ok(())
        })?;
    }
}

#[test]
fn radical_of_radical_quotient_is_zero() {
    for r in all_rings() {
        let (q, pi) = r.radical_quotient();
        assert!(q.jacobson_radical().is_zero(), "{}", r.tag());
        assert_eq!(pi.kind(), MapKind::Homomorphism);
        assert_eq!(q.order() * r.jacobson_radical().order(), r.order());
    }
}

#[test]
fn radical_of_product_is_product_of_radicals() {
    let parts = ["Z4", "GF(2)", "dual(GF(2))", "M(2,GF(2))", "Z9"];
    for x in parts {
        for y in parts {
            let (a, b) = (ring(x), ring(y));
            let p = FiniteRing::product(&[a.clone(), b.clone()]).unwrap();
            let rad = p.jacobson_radical();
            let (ra, rb) = (a.jacobson_radical(), b.jacobson_radical());
            assert_eq!(rad.order(), ra.order() * rb.order(), "{x} x {y}");
            for e in p.elements() {
                assert_eq!(rad.contains(e), ra.contains(p.component(e, 0)) && rb.contains(p.component(e, 1)));
            }
        }
    }
}

#[test]
fn units_map_to_units_in_radical_quotient() {
    for r in all_rings() {
        let (q, pi) = r.radical_quotient();
        for a in r.elements() {
            if r.is_unit(a) {
                assert!(q.is_unit(pi.apply(a)), "{}: {a}", r.tag());
            }
        }
        // over finite rings the converse holds as well
        let units = r.elements().filter(|&a| q.is_unit(pi.apply(a))).count();
        assert_eq!(units, r.units().len());
    }
}

#[test]
fn inverses_match_brute_force() {
    for r in all_rings() {
        for a in r.elements() {
            assert_eq!(r.inverse(a), r.inverse_bruteforce(a), "{}: {a}", r.tag());
        }
    }
}

#[test]
fn double_transpose_is_identity() {
    for spec in ["M(2,GF(2))", "M(2,GF(3))", "M(3,GF(2))", "M(2,GF(2^2))"] {
        let r = ring(spec);
        let t = RingMapTable::transpose(&r).unwrap();
        let tt = t.then(&t).unwrap();
        assert_eq!(tt.kind(), MapKind::Homomorphism);
        assert_eq!(tt, RingMapTable::identity(&r));
    }
}

#[test]
fn literals_round_trip_everywhere() {
    for r in all_rings() {
        for a in r.elements() {
            assert_eq!(r.parse_elem(&r.format_elem(a)).unwrap(), a, "{}", r.format_elem(a));
        }
    }
}
