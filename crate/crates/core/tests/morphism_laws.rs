use std::sync::Arc;

use proptest::prelude::*;
use ringline::grassmann::{Collineation, PsiModel};
use ringline::harness::parse_ring_spec;
use ringline::morphisms::*;
use ringline::ring::{FiniteRing, Mat2};
use ringline::{MapKind, ProjectiveLine, RingMapTable};

fn line(spec: &str) -> Arc<ProjectiveLine> {
    Arc::new(ProjectiveLine::new(&parse_ring_spec(spec).unwrap().build().unwrap()))
}

fn invertible(r: &FiniteRing, seed: &[u32]) -> Mat2 {
    let n = r.order() as u32;
    seed.chunks(4)
        .map(|c| [c[0] % n, c[1] % n, c[2] % n, c[3] % n])
        .find(|m| r.mat2_is_invertible(m))
        .unwrap_or_else(|| r.mat2_identity())
}

fn entrywise(r: &FiniteRing, beta: &[u32]) -> RingMapTable {
    let table = r
        .elements()
        .map(|x| r.matrix_from_entries(&r.matrix_entries(x).iter().map(|&e| beta[e as usize]).collect::<Vec<_>>()))
        .collect();
    RingMapTable::classify(r, r, table)
}

#[test]
fn constructed_maps_are_dis_morphisms() {
    for spec in ["GF(2)", "Z4", "Z6", "Z9", "dual(GF(2))", "GF(2) x GF(2)", "M(2,GF(2))", "M(2,GF(3))"] {
        let l = line(spec);
        let r = l.ring().clone();
        let seed: Vec<u32> = (0..400).map(|i| (i * 7919 + 13) % 1009).collect();
        assert!(PointMap::projectivity(&l, &invertible(&r, &seed)).unwrap().is_dis_morphism(), "{spec}");
        for omega in enumerate_jordan_isomorphisms(&r, &r).unwrap() {
            let j = PointMap::induced_by_jordan(&l, &l, &omega).unwrap();
            assert!(j.is_dis_morphism() && j.is_dis_isomorphism(), "{spec}");
            if omega.kind() == MapKind::Homomorphism {
                assert_eq!(PointMap::induced_by_hom(&l, &l, &omega).unwrap(), j, "{spec}");
            }
            if omega.kind() == MapKind::AntiHomomorphism || omega.also_anti() {
                assert_eq!(PointMap::induced_by_antihom(&l, &l, &omega).unwrap(), j, "{spec}");
            }
        }
        if let (Some(bar), Some(pi)) = (l.quotient_line(), l.quotient_map()) {
            assert!(PointMap::induced_by_hom(&l, bar, pi).unwrap().is_dis_morphism(), "{spec}");
        }
    }
}

#[test]
fn hom_into_a_larger_ring_is_a_dis_morphism() {
    let (f2, m) = (line("GF(2)"), line("M(2,GF(2))"));
    let r = m.ring();
    let scalars = RingMapTable::classify(f2.ring(), r, vec![0, r.one()]);
    assert_eq!(scalars.kind(), MapKind::Homomorphism);
    let f = PointMap::induced_by_hom(&f2, &m, &scalars).unwrap();
    assert!(f.is_dis_morphism() && !f.is_bijective());
}

#[test]
fn composites_and_inverses_stay_dis_isomorphisms() {
    for spec in ["Z4", "GF(2) x GF(2)"] {
        let l = line(spec);
        let all = enumerate_dis_isomorphisms(&l, &l, 64).unwrap();
        for f in all.iter().step_by(5) {
            assert!(f.inverse().unwrap().is_dis_isomorphism());
            for g in all.iter().step_by(7) {
                let fg = f.then(g).unwrap();
                assert!(fg.is_dis_isomorphism());
                assert!(all.binary_search_by(|x| x.table().cmp(fg.table())).is_ok());
            }
        }
    }
}

#[test]
fn group_orders() {
    let gl4: u128 = (0..4).map(|i| 16 - (1u128 << i)).product();
    for (spec, expected) in [("Z4", 48), ("dual(GF(2))", 48), ("GF(2) x GF(2)", 72), ("Z6", 144), ("M(2,GF(2))", 2 * gl4)] {
        let c = count_dis_automorphisms(&line(spec), 64, 256).unwrap();
        assert_eq!(c.count, expected, "{spec}");
        if spec != "M(2,GF(2))" {
            assert_eq!(orbit_stabilizer_count(line(spec).distant_matrix()), expected, "{spec}");
        }
    }
    let z6 = line("Z6");
    for f in enumerate_dis_isomorphisms(&z6, &z6, 64).unwrap() {
        assert_eq!(decompose_product_dis_iso(&f).unwrap().sigma, [0, 1]);
    }
}

#[test]
fn orbit_stabilizer_beyond_listing() {
    // |Aut P(GF(q))| = |S_{q+1}| since every pair of points is distant
    let c = count_dis_automorphisms(&line("GF(7)"), 4, 256).unwrap();
    assert_eq!((c.count, c.method), (40320, CountMethod::OrbitStabilizer));
    let z8 = count_dis_automorphisms(&line("Z8"), 4, 256).unwrap();
    let z8_listed = count_dis_automorphisms(&line("Z8"), 64, 256).unwrap();
    assert_eq!(z8.count, z8_listed.count);
}

struct Lines {
    m2f3: (Arc<ProjectiveLine>, Factorizer),
    m2f4: (Arc<ProjectiveLine>, Factorizer),
}

fn lines() -> &'static Lines {
    static CELL: std::sync::OnceLock<Lines> = std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        let build = |s: &str| {
            let l = line(s);
            let f = Factorizer::new(&l).unwrap();
            (l, f)
        };
        Lines { m2f3: build("M(2,GF(3))"), m2f4: build("M(2,GF(2^2))") }
    })
}

/// `τ^t ∘ β̃ ∘ γ̃` for random `γ`, Frobenius power and transpose flag.
fn random_automorphism(l: &Arc<ProjectiveLine>, seed: &[u32], power: usize, transpose: bool) -> (PointMap, CertKind) {
    let r = l.ring();
    let (_, field) = r.matrix_params().unwrap();
    let autos = field.field_automorphisms();
    let beta = entrywise(r, &autos[power % autos.len()]);
    let mut f = PointMap::induced_by_hom(l, l, &beta).unwrap();
    if transpose {
        let tau = PointMap::induced_by_antihom(l, l, &RingMapTable::transpose(r).unwrap()).unwrap();
        f = tau.then(&f).unwrap();
    }
    f = f.then(&PointMap::projectivity(l, &invertible(r, seed)).unwrap()).unwrap();
    (f, if transpose { CertKind::AntiIsomorphism } else { CertKind::Isomorphism })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn certificates_recompose_exactly(
        seed in prop::collection::vec(any::<u32>(), 400),
        power in 0usize..2,
        transpose in any::<bool>(),
        big in any::<bool>(),
    ) {
        let (l, fz) = if big { &lines().m2f4 } else { &lines().m2f3 };
        let (f, kind) = random_automorphism(l, &seed, power, transpose);
        let cert = fz.factorize(&f).unwrap();
        prop_assert_eq!(cert.kind, kind);
        prop_assert_eq!(cert.recompose(l).unwrap(), f);
    }

    #[test]
    fn predicates_agree_with_grassmann_collineations(
        seed in prop::collection::vec(any::<u32>(), 400),
        power in 0usize..2,
        transpose in any::<bool>(),
        swap in any::<(u8, u8)>(),
        perturb in any::<bool>(),
    ) {
        let (l, _) = &lines().m2f4;
        let (f, _) = random_automorphism(l, &seed, power, transpose);
        let mut table = f.table().to_vec();
        if perturb {
            let n = table.len();
            table.swap(swap.0 as usize % n, (swap.1 as usize + 1 + swap.0 as usize) % n);
        }
        let g = PointMap::raw(l, l, table).unwrap();
        let psi = PsiModel::new(l).unwrap();
        let space = psi.space();
        let col = (0..l.len()).map(|x| psi.to_space(g.apply(psi.to_line(x)))).collect();
        let is_col = Collineation::new(space, space, col).is_ok();
        prop_assert_eq!(g.is_dis_isomorphism(), is_col);
        prop_assert_eq!(g.is_adj_isomorphism(), is_col);
        prop_assert_eq!(is_col, !perturb);
    }
}

#[test]
fn factorization_on_three_by_three_matrices() {
    let l = line("M(3,GF(2))");
    assert_eq!(l.len(), 1395);
    let fz = Factorizer::new(&l).unwrap();
    for (i, transpose) in [false, true].into_iter().enumerate() {
        let seed: Vec<u32> = (0..4000u32).map(|k| k.wrapping_mul(2654435761u32).rotate_left(i as u32 + 3)).collect();
        let (f, kind) = random_automorphism(&l, &seed, 0, transpose);
        let cert = fz.factorize(&f).unwrap();
        assert_eq!(cert.kind, kind);
        assert_eq!(cert.recompose(&l).unwrap(), f);
    }
}

#[test]
fn factorize_rejects_non_automorphisms() {
    let l = line("M(2,GF(2))");
    let mut table: Vec<usize> = l.ids().collect();
    table.swap(0, 1);
    let f = PointMap::raw(&l, &l, table).unwrap();
    assert!(matches!(factorize_dis_automorphism(&f), Err(ringline::Error::InvalidMap(_))));
    assert!(matches!(Factorizer::new(&line("Z4")), Err(ringline::Error::WrongRingFamily(_))));
    assert!(PointMap::raw(&l, &l, vec![0; 3]).is_err());
    assert!(PointMap::raw(&l, &l, vec![99; 35]).is_err());
}

#[test]
fn jordan_classification_on_products() {
    let r = parse_ring_spec("M(2,GF(2)) x M(2,GF(2))").unwrap().build().unwrap();
    let t = RingMapTable::transpose(r.factors().unwrap().first().unwrap()).unwrap();
    // identity on one factor, transpose on the other, then swap
    let table = r.elements().map(|x| r.join(&[t.apply(r.component(x, 1)), r.component(x, 0)])).collect();
    let omega = RingMapTable::classify(&r, &r, table);
    assert_eq!(omega.kind(), MapKind::Jordan);
    match classify_jordan(&omega).unwrap() {
        JordanCertificate::Product { sigma, components } => {
            assert_eq!(sigma, [1, 0]);
            let kinds: Vec<_> = components.iter().map(|c| c.matrix_kind().unwrap()).collect();
            assert_eq!(kinds, [CertKind::Isomorphism, CertKind::AntiIsomorphism]);
        }
        other => panic!("{other:?}"),
    }
    let l = Arc::new(ProjectiveLine::new(&r));
    let f = PointMap::induced_by_jordan(&l, &l, &omega).unwrap();
    assert!(f.is_dis_isomorphism());
    let d = decompose_product_dis_iso(&f).unwrap();
    assert_eq!(d.sigma, [1, 0]);
}

#[test]
fn jordan_maps_of_fields_are_automorphisms() {
    let r = FiniteRing::gf(2, 3).unwrap();
    let all = enumerate_jordan_isomorphisms(&r, &r).unwrap();
    assert_eq!(all.len(), 3);
    assert!(all.iter().all(|m| m.kind() == MapKind::Homomorphism));
}

#[test]
fn semilocal_corollary_on_listed_maps() {
    for spec in ["Z4", "dual(GF(2))", "GF(2) x Z4"] {
        let l = line(spec);
        for f in enumerate_dis_isomorphisms(&l, &l, 64).unwrap() {
            assert!(check_semilocal_corollary(&f).unwrap(), "{spec}");
        }
        // a bijection inside one parallel class is a par-isomorphism but no dis-isomorphism when classes are shared
        let class = &l.parallel_classes()[0];
        let mut table: Vec<usize> = l.ids().collect();
        table.swap(class[0], class[1]);
        let f = PointMap::raw(&l, &l, table).unwrap();
        assert_eq!(check_semilocal_corollary(&f).unwrap(), f.is_dis_isomorphism());
    }
}

#[test]
fn point_map_json() {
    let l = line("Z4");
    let f = PointMap::projectivity(&l, &[0, 1, 1, 0]).unwrap();
    let v = serde_json::to_value(f.to_json()).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["provenance"]["kind"], "projectivity");
    assert_eq!(v["table"].as_array().unwrap().len(), 6);
    let cert = factorize_dis_automorphism(&PointMap::identity(&line("M(2,GF(2))"))).unwrap();
    let v = serde_json::to_value(&cert).unwrap();
    assert_eq!(v["kind"], "isomorphism");
    assert_eq!(v["alpha"]["table"].as_array().unwrap().len(), 16);
}
