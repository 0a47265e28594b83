use std::collections::VecDeque;
use std::sync::Arc;

use proptest::prelude::*;
use ringline::grassmann::*;
use ringline::linalg::FieldMatrix;
use ringline::ring::FiniteRing;

fn gf(p: u32) -> FiniteRing {
    FiniteRing::gf(p, 1).unwrap()
}

proptest! {
    #[test]
    fn echelon_form_is_idempotent_and_keeps_row_space(
        p in prop::sample::select(vec![2u32, 3]),
        rows in 1usize..5,
        seed in prop::collection::vec(any::<u32>(), 16),
    ) {
        let field = gf(p);
        let data: Vec<u32> = seed[..rows * 4].iter().map(|x| x % p).collect();
        let m = FieldMatrix::from_rows(rows, 4, data);
        let s = Subspace::span(&field, &m);
        prop_assert_eq!(&Subspace::span(&field, s.basis()), &s);
        prop_assert_eq!(s.dim(), m.rank(&field));
        for r in 0..rows {
            prop_assert!(s.contains_vector(m.row(r)));
        }
        let mut again = s.basis().clone();
        again.rref(&field);
        prop_assert_eq!(&again, s.basis());
    }
}

#[test]
fn grassmann_distance_is_graph_distance() {
    for p in [2, 3] {
        let field = gf(p);
        let pts = all_subspaces(&field, 4, 2);
        let n = pts.len();
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in 0..n {
                    if dist[y] == usize::MAX && adjacent_subspaces(&pts[x], &pts[y]) {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            for t in 0..n {
                assert_eq!(grassmann_distance(&pts[s], &pts[t]).unwrap(), dist[t], "q = {p}");
            }
        }
    }
}

fn three_point_line() -> Arc<PartialLinearSpace> {
    Arc::new(PartialLinearSpace::new(3, vec![vec![0, 1, 2]]).unwrap())
}

#[test]
fn segre_lines_vary_in_one_coordinate() {
    let g = GrassmannSpace::new(&gf(2), 2).unwrap();
    let s = PartialLinearSpace::segre_product(&[g.space().clone(), three_point_line()]).unwrap();
    assert_eq!(s.num_points(), 35 * 3);
    assert_eq!(s.lines().len(), 105 * 3 + 35);
    for (i, line) in s.lines().iter().enumerate() {
        let k = s.direction(i).unwrap();
        let base = s.coordinates(line[0]);
        for &x in line {
            let c = s.coordinates(x);
            for j in 0..2 {
                if j != k {
                    assert_eq!(c[j], base[j]);
                }
            }
        }
        let varying: std::collections::HashSet<usize> = line.iter().map(|&x| s.coordinates(x)[k]).collect();
        assert_eq!(varying.len(), line.len());
    }
}

fn linear_collineation(g: &GrassmannSpace, a: &FieldMatrix, dual: bool) -> Collineation {
    let field = g.field();
    let table = g
        .points()
        .iter()
        .map(|x| {
            let y = Subspace::span(field, &x.basis().mul(field, a));
            g.index_of(&if dual { annihilator(&y) } else { y }).unwrap()
        })
        .collect();
    Collineation::new(g.space(), g.space(), table).unwrap()
}

fn gl4(data: &[u32]) -> Option<FieldMatrix> {
    let m = FieldMatrix::from_rows(4, 4, data.iter().map(|x| x % 2).collect());
    m.inverse(&gf(2)).map(|_| m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn collineation_decomposition_round_trips(
        a in prop::collection::vec(any::<u32>(), 16),
        b in prop::collection::vec(any::<u32>(), 16),
        duals in any::<(bool, bool)>(),
        swap in any::<bool>(),
    ) {
        let (Some(a), Some(b)) = (gl4(&a), gl4(&b)) else { return Ok(()) };
        let g = GrassmannSpace::new(&gf(2), 2).unwrap();
        let s = PartialLinearSpace::segre_product(&[g.space().clone(), g.space().clone()]).unwrap();
        let parts = ProductCollineationParts {
            sigma: if swap { vec![1, 0] } else { vec![0, 1] },
            components: vec![linear_collineation(&g, &a, duals.0), linear_collineation(&g, &b, duals.1)],
        };
        let f = compose_product_collineation(&s, &s, &parts).unwrap();
        prop_assert_eq!(decompose_product_collineation(&s, &s, &f).unwrap(), parts);
    }
}

#[test]
fn mixed_factors_force_identity_permutation() {
    let g = GrassmannSpace::new(&gf(2), 2).unwrap();
    let s = PartialLinearSpace::segre_product(&[g.space().clone(), three_point_line()]).unwrap();
    let a = gl4(&[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1]).unwrap();
    let parts = ProductCollineationParts {
        sigma: vec![0, 1],
        components: vec![linear_collineation(&g, &a, true), Collineation::new(&three_point_line(), &three_point_line(), vec![2, 0, 1]).unwrap()],
    };
    let f = compose_product_collineation(&s, &s, &parts).unwrap();
    assert_eq!(decompose_product_collineation(&s, &s, &f).unwrap(), parts);
    assert_eq!(s.approx_classes_at(0), 2);
}

#[test]
fn psi_is_a_bijection_onto_the_grassmannian() {
    for p in [2, 3] {
        let m = FiniteRing::matrix(2, &gf(p)).unwrap();
        let line = ringline::ProjectiveLine::new(&m);
        let model = PsiModel::new(&line).unwrap();
        assert_eq!(model.grassmann.points().len(), line.len());
        for x in line.ids() {
            assert_eq!(model.to_line(model.to_space(x)), x);
            assert_eq!(psi_inverse(&line, &psi(&line, x).unwrap()).unwrap(), x);
        }
    }
}
