use ringline::harness::parse_ring_spec;
use ringline::projline::{completion_search, is_unimodular};
use ringline::ProjectiveLine;

const LINES: &[&str] = &[
    "GF(2)", "GF(3)", "GF(2^2)", "Z4", "Z6", "Z8", "Z9", "dual(GF(2))", "dual(GF(3))", "GF(2) x GF(2)",
    "GF(2) x Z4", "M(2,GF(2))", "M(2,GF(3))",
];

fn line(spec: &str) -> ProjectiveLine {
    ProjectiveLine::new(&parse_ring_spec(spec).unwrap().build().unwrap())
}

#[test]
fn distant_is_symmetric_and_irreflexive() {
    for spec in LINES {
        let l = line(spec);
        for p in l.ids() {
            assert!(!l.distant(p, p), "{spec}");
            for q in l.ids() {
                assert_eq!(l.distant(p, q), l.distant(q, p), "{spec}");
            }
        }
        assert_eq!(*l.distant_matrix(), l.distant_matrix_generic(), "{spec}");
    }
}

#[test]
fn parallel_is_an_equivalence_with_radical_sized_classes() {
    for spec in LINES {
        let l = line(spec);
        let rad = l.ring().jacobson_radical().order();
        for p in l.ids() {
            assert!(l.parallel(p, p));
            for q in l.ids() {
                assert_eq!(l.parallel(p, q), l.parallel(q, p));
                assert_eq!(l.parallel_definitional(p, q), l.parallel_via_quotient(p, q), "{spec}");
                if l.parallel(p, q) {
                    for r in l.ids() {
                        if l.parallel(q, r) {
                            assert!(l.parallel(p, r));
                        }
                    }
                }
            }
        }
        assert!(l.parallel_classes().iter().all(|c| c.len() == rad), "{spec}");
    }
}

#[test]
fn parallel_excludes_distant_and_adjacent_excludes_parallel() {
    for spec in LINES {
        let l = line(spec);
        for p in l.ids() {
            for q in l.ids() {
                if l.parallel(p, q) {
                    assert!(!l.distant(p, q));
                }
                if l.adjacent(p, q) {
                    assert!(!l.parallel(p, q), "{spec}");
                }
            }
        }
    }
}

#[test]
fn adjacency_fast_path_matches_definition() {
    for spec in LINES {
        let l = line(spec);
        assert_eq!(*l.adjacency_matrix(), l.adjacency_definitional(), "{spec}");
    }
}

#[test]
fn relations_are_invariant_under_parallel_transport() {
    for spec in ["Z4", "dual(GF(2))", "Z9"] {
        let l = line(spec);
        let classes = l.parallel_classes();
        let n = l.len();
        for p1 in 0..n {
            for q1 in 0..n {
                for r1 in 0..n {
                    let [cp, cq, cr] = [p1, q1, r1].map(|x| &classes[l.parallel_class_of(x)]);
                    for &p2 in cp {
                        for &q2 in cq {
                            assert_eq!(l.distant(p1, q1), l.distant(p2, q2));
                            for &r2 in cr {
                                assert_eq!(l.adjacent_via(p1, q1, r1), l.adjacent_via(p2, q2, r2), "{spec}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn relations_descend_to_the_quotient_line() {
    for spec in ["Z4", "dual(GF(2))", "Z9", "Z8", "GF(2) x Z4"] {
        let l = line(spec);
        let bar = l.quotient_line().expect("nonzero radical").clone();
        let pr = |p| l.project_point(p);
        for p in l.ids() {
            for q in l.ids() {
                assert_eq!(l.distant(p, q), bar.distant(pr(p), pr(q)), "{spec}");
                for r in l.ids() {
                    assert_eq!(l.adjacent_via(p, q, r), bar.adjacent_via(pr(p), pr(q), pr(r)), "{spec}");
                }
            }
        }
    }
}

#[test]
fn product_laws() {
    for spec in ["GF(2) x GF(2)", "GF(2) x GF(3)", "GF(2) x Z4"] {
        let l = line(spec);
        let view = l.product_view().expect("decomposable");
        let m = view.factors.len();
        let parts: Vec<Vec<usize>> = l.ids().map(|p| view.split(p).to_vec()).collect();
        for p in l.ids() {
            for q in l.ids() {
                let (pp, qq) = (&parts[p], &parts[q]);
                let f = &view.factors;
                assert_eq!(l.distant(p, q), (0..m).all(|i| f[i].distant(pp[i], qq[i])), "{spec}");
                assert_eq!(l.parallel(p, q), (0..m).all(|i| f[i].parallel(pp[i], qq[i])), "{spec}");
                for r in l.ids() {
                    let rr = &parts[r];
                    let expected = (0..m).any(|j| {
                        f[j].adjacent_via(pp[j], qq[j], rr[j])
                            && (0..m).filter(|&i| i != j).all(|i| f[i].parallel(pp[i], qq[i]) && f[i].parallel(qq[i], rr[i]))
                    });
                    assert_eq!(l.adjacent_via(p, q, r), expected, "{spec}");
                }
            }
        }
    }
}

#[test]
fn unimodular_iff_completable() {
    for spec in LINES {
        let r = parse_ring_spec(spec).unwrap().build().unwrap();
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(is_unimodular(&r, a, b), completion_search(&r, a, b).is_some(), "{spec}: ({a}, {b})");
            }
        }
    }
}

#[test]
fn canonical_order_and_json() {
    let l = line("Z4");
    let reps: Vec<_> = l.points().iter().map(|p| p.rep()).collect();
    let mut sorted = reps.clone();
    sorted.sort();
    assert_eq!(reps, sorted);
    let v = serde_json::to_value(l.to_json()).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["points"].as_array().unwrap().len(), 6);
    assert_eq!(v["parallel_classes"].as_array().unwrap().len(), 3);
    for p in l.ids() {
        assert_eq!(l.parse_point(&l.format_point(p)).unwrap(), p);
    }
}
