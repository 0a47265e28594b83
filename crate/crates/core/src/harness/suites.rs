use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{parse_ring_spec, Report};
use crate::error::{Error, Result};
use crate::grassmann::{
    annihilator, annihilator_formula, compose_product_collineation, decompose_product_collineation, psi, Collineation,
    GrassmannSpace, PartialLinearSpace, ProductCollineationParts, Subspace,
};
use crate::linalg::FieldMatrix;
use crate::morphisms::{
    classify_jordan, count_dis_automorphisms, enumerate_dis_isomorphisms, enumerate_jordan_isomorphisms,
    verify_wreath_structure, CertKind, Factorizer, JordanCertificate, PointMap, ProductDecomposer, DEFAULT_COUNT_CAP,
    DEFAULT_LIST_CAP,
};
use crate::projline::{is_admissible, ProjectiveLine};
use crate::ring::FiniteRing;
use crate::ringmap::{MapKind, RingMapTable};

pub const SUITES: &[&str] = &[
    "cardinalities",
    "parallel-classes",
    "local-ring-laws",
    "psi-model",
    "annihilator",
    "automorphism-counts",
    "factorization",
    "product-theorem",
    "wreath",
    "jordan",
    "bartolone",
    "appendix",
    "all",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub list_cap: usize,
    pub count_cap: usize,
    pub seed: u64,
    /// Round trips in the `appendix` suite.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { list_cap: DEFAULT_LIST_CAP, count_cap: DEFAULT_COUNT_CAP, seed: 0, samples: 100 }
    }
}

const BASIC_RINGS: &[(&str, usize)] =
    &[("GF(2)", 3), ("Z4", 6), ("dual(GF(2))", 6), ("Z6", 12), ("M(2,GF(2))", 35), ("M(2,GF(3))", 130)];

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new(name);
    match name {
        "cardinalities" => cardinalities(&mut report),
        "parallel-classes" => parallel_classes(&mut report),
        "local-ring-laws" => local_ring_laws(&mut report),
        "psi-model" => psi_model(&mut report),
        "annihilator" => annihilator_suite(&mut report),
        "automorphism-counts" => automorphism_counts(&mut report, config),
        "factorization" => factorization(&mut report, config),
        "product-theorem" => product_theorem(&mut report, config),
        "wreath" => wreath(&mut report, config),
        "jordan" => jordan(&mut report),
        "bartolone" => bartolone(&mut report),
        "appendix" => appendix(&mut report, config),
        "all" => {
            for suite in SUITES.iter().filter(|&&s| s != "all") {
                report.merge(run_suite(suite, config)?);
            }
            Ok(())
        }
        _ => {
            return Err(Error::InvalidParameter(format!("unknown suite '{name}' (one of {})", SUITES.join(", "))));
        }
    }
    .or_else(|e| {
        report.error("suite aborted", "completion", &e);
        Ok::<(), Error>(())
    })?;
    Ok(report)
}

fn line_of(spec: &str) -> Result<Arc<ProjectiveLine>> {
    Ok(Arc::new(ProjectiveLine::new(&parse_ring_spec(spec)?.build()?)))
}

/// `[m choose k]_q`.
fn gaussian_binomial(q: u128, m: u32, k: u32) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow(m - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

fn cardinalities(report: &mut Report) -> Result<()> {
    for &(spec, expected) in BASIC_RINGS {
        let line = line_of(spec)?;
        let r = line.ring();
        report.check_eq(format!("|P({spec})|"), expected, line.len());
        let pairs = r.elements().flat_map(|a| r.elements().map(move |b| (a, b))).filter(|&(a, b)| is_admissible(r, a, b)).count();
        report.check_eq(format!("admissible pairs of {spec} / units"), expected, pairs / r.units().len());
        if let Some((n, k)) = r.matrix_params() {
            let q = k.order() as u128;
            report.check_eq(format!("Gaussian binomial [{}, {n}]_{q}", 2 * n), expected as u128, gaussian_binomial(q, 2 * n as u32, n as u32));
        }
    }
    Ok(())
}

fn parallel_classes(report: &mut Report) -> Result<()> {
    for &(spec, _) in BASIC_RINGS {
        let line = line_of(spec)?;
        let rad = line.ring().jacobson_radical().order();
        let sizes: Vec<usize> = line.parallel_classes().iter().map(|c| c.len()).collect();
        let bad = sizes.iter().filter(|&&s| s != rad).count();
        report.check_eq(format!("classes of {spec} with size != |rad R| = {rad}"), 0, bad);
        report.check_eq(format!("class count of {spec} = |P(R/rad R)|"), line.quotient_len(), sizes.len());
    }
    Ok(())
}

fn local_ring_laws(report: &mut Report) -> Result<()> {
    for spec in ["Z4", "Z9", "GF(2^2)", "dual(GF(2))"] {
        let line = line_of(spec)?;
        let (mut par_bad, mut adj_bad) = (0, 0);
        for p in line.ids() {
            for q in line.ids() {
                par_bad += usize::from(!line.distant(p, q) != line.parallel(p, q));
                if p != q {
                    adj_bad += usize::from(line.distant(p, q) != line.adjacent(p, q));
                }
            }
        }
        report.check_eq(format!("{spec}: pairs where non-distant != parallel"), 0, par_bad);
        report.check_eq(format!("{spec}: pairs where distant != adjacent"), 0, adj_bad);
    }
    let line = line_of("Z6")?;
    let near = |p, q| !line.distant(p, q);
    let witness = line.ids().find_map(|p| {
        line.ids().find_map(|q| line.ids().find(|&r| near(p, q) && near(q, r) && !near(p, r)).map(|r| (p, q, r)))
    });
    match witness {
        Some((p, q, r)) => report.check(
            "Z6: non-distant is not transitive",
            "a counterexample",
            format!("{}, {}, {}", line.format_point(p), line.format_point(q), line.format_point(r)),
            true,
        ),
        None => report.check("Z6: non-distant is not transitive", "a counterexample", "transitive", false),
    }
    Ok(())
}

fn psi_model(report: &mut Report) -> Result<()> {
    for spec in ["M(2,GF(2))", "M(2,GF(3))"] {
        let line = line_of(spec)?;
        let n = line.ring().matrix_params().map(|(n, _)| n).unwrap_or(1);
        let images: Vec<Subspace> = line.ids().map(|p| psi(&line, p)).collect::<Result<_>>()?;
        let (mut dis_bad, mut adj_bad) = (0, 0);
        for p in line.ids() {
            for q in p + 1..line.len() {
                let meet = images[p].dim_intersection(&images[q]);
                dis_bad += usize::from(line.distant(p, q) != (meet == 0));
                adj_bad += usize::from(line.adjacent(p, q) != (meet + 1 == n));
            }
        }
        report.check_eq(format!("{spec}: pairs where distant != complementary"), 0, dis_bad);
        report.check_eq(format!("{spec}: pairs where adjacent != dim meet = n - 1"), 0, adj_bad);
    }
    Ok(())
}

fn annihilator_suite(report: &mut Report) -> Result<()> {
    let line = line_of("M(2,GF(2))")?;
    let mut agree = 0;
    for p in line.ids() {
        agree += usize::from(annihilator_formula(&line, p)? == annihilator(&psi(&line, p)?));
    }
    report.check_eq("M(2,GF(2)): points where formula = kernel", line.len(), agree);
    Ok(())
}

fn automorphism_counts(report: &mut Report, config: &SuiteConfig) -> Result<()> {
    let gl4: u128 = (0..4).map(|i| 16 - (1u128 << i)).product();
    let cases: [(&str, u128); 6] = [
        ("GF(2)", 6),
        ("Z4", 48),
        ("dual(GF(2))", 48),
        ("GF(2) x GF(2)", 72),
        ("Z6", 144),
        ("M(2,GF(2))", 2 * gl4),
    ];
    for (spec, expected) in cases {
        let line = line_of(spec)?;
        match count_dis_automorphisms(&line, config.list_cap, config.count_cap) {
            Ok(c) => report.check_eq(format!("|Aut P({spec})| by {}", c.method), expected, c.count),
            Err(e) => report.error(format!("|Aut P({spec})|"), expected.to_string(), &e),
        }
    }
    Ok(())
}

fn factorization(report: &mut Report, config: &SuiteConfig) -> Result<()> {
    let line = line_of("M(2,GF(2))")?;
    let all = enumerate_dis_isomorphisms(&line, &line, config.list_cap)?;
    let fz = Factorizer::new(&line)?;
    let (mut exact, mut anti, mut first_err) = (0usize, 0usize, None);
    for f in &all {
        match fz.factorize(f) {
            Ok(cert) => {
                exact += usize::from(cert.recompose(&line)? == *f);
                anti += usize::from(cert.kind == CertKind::AntiIsomorphism);
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    if let Some(e) = first_err {
        report.error("M(2,GF(2)): factorization", "a certificate for every map", &e);
    }
    report.check_eq("M(2,GF(2)): certificates recomposing exactly", all.len(), exact);
    report.check_eq("M(2,GF(2)): anti-isomorphism certificates", all.len() / 2, anti);
    Ok(())
}

fn product_theorem(report: &mut Report, config: &SuiteConfig) -> Result<()> {
    for (spec, total, swaps) in [("GF(2) x GF(2)", 72, Some(36)), ("Z6", 144, Some(0))] {
        let line = line_of(spec)?;
        let all = enumerate_dis_isomorphisms(&line, &line, config.list_cap)?;
        let dec = ProductDecomposer::new(&line, &line)?;
        let (mut ok, mut nontrivial, mut first_err) = (0usize, 0usize, None);
        for f in &all {
            let res = dec.decompose(f).and_then(|d| Ok((dec.compose(&d.sigma, &d.components)?, d.sigma)));
            match res {
                Ok((g, sigma)) => {
                    ok += usize::from(g == *f);
                    nontrivial += usize::from(sigma.iter().enumerate().any(|(i, &s)| i != s));
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        if let Some(e) = first_err {
            report.error(format!("{spec}: decomposition"), "every map decomposes", &e);
        }
        report.check_eq(format!("{spec}: maps decomposing exactly"), total, ok);
        if let Some(s) = swaps {
            report.check_eq(format!("{spec}: maps with nontrivial sigma"), s, nontrivial);
        }
    }
    Ok(())
}

fn wreath(report: &mut Report, config: &SuiteConfig) -> Result<()> {
    for spec in ["Z4", "dual(GF(2))"] {
        let line = line_of(spec)?;
        match verify_wreath_structure(&line, config.list_cap, config.count_cap) {
            Ok(w) => {
                report.check_eq(
                    format!("{spec}: (|rad|!)^{} * {} = |Aut|", w.quotient_points, w.quotient_count.count),
                    w.predicted,
                    w.count.count,
                );
                report.check_eq(format!("{spec}: automorphisms inducing quotient automorphisms"), w.count.count as usize, w.induced_maps_checked);
            }
            Err(e) => report.error(format!("{spec}: wreath structure"), "48", &e),
        }
    }
    Ok(())
}

/// Rebuilds `ω` from a matrix certificate and compares tables.
fn matrix_cert_recomposes(omega: &RingMapTable, cert: &JordanCertificate) -> bool {
    let JordanCertificate::Matrix { kind, beta, g, .. } = cert else {
        return false;
    };
    let ring = omega.source();
    let model = ring.matrix_model().expect("matrix ring");
    let field = &model.field;
    let g = FieldMatrix::from_rows(g.len(), g.len(), g.concat());
    let Some(g_inv) = g.inverse(field) else {
        return false;
    };
    ring.elements().all(|x| {
        let mut y = model.to_matrix(x).map(|e| beta[e as usize]);
        if *kind == CertKind::AntiIsomorphism {
            y = y.transpose();
        }
        model.from_matrix(&g_inv.mul(field, &y).mul(field, &g)) == omega.apply(x)
    })
}

fn jordan(report: &mut Report) -> Result<()> {
    let m = parse_ring_spec("M(2,GF(2))")?.build()?;
    let all = enumerate_jordan_isomorphisms(&m, &m)?;
    report.check_eq("M(2,GF(2)): Jordan automorphisms", 12, all.len());
    let (mut iso, mut anti, mut exact) = (0, 0, 0);
    for omega in &all {
        match classify_jordan(omega) {
            Ok(cert) => {
                match cert.matrix_kind() {
                    Some(CertKind::Isomorphism) => iso += 1,
                    Some(CertKind::AntiIsomorphism) => anti += 1,
                    None => {}
                }
                exact += usize::from(matrix_cert_recomposes(omega, &cert));
            }
            Err(e) => report.error("M(2,GF(2)): Jordan classification", "a certificate", &e),
        }
    }
    report.check_eq("M(2,GF(2)): inner-semilinear (iso) certificates", 6, iso);
    report.check_eq("M(2,GF(2)): transposed (anti) certificates", 6, anti);
    report.check_eq("M(2,GF(2)): certificates recomposing exactly", all.len(), exact);

    let p = parse_ring_spec("GF(2) x GF(2)")?.build()?;
    let all = enumerate_jordan_isomorphisms(&p, &p)?;
    report.check_eq("GF(2) x GF(2): Jordan automorphisms", 2, all.len());
    let mut products = 0;
    for omega in &all {
        match classify_jordan(omega) {
            Ok(JordanCertificate::Product { sigma, .. }) => {
                let rebuilt: Vec<u32> = p
                    .elements()
                    .map(|x| {
                        let mut parts = vec![0; sigma.len()];
                        for (k, &s) in sigma.iter().enumerate() {
                            parts[s] = p.component(x, k);
                        }
                        p.join(&parts)
                    })
                    .collect();
                products += usize::from(rebuilt == omega.table());
            }
            Ok(_) => {}
            Err(e) => report.error("GF(2) x GF(2): Jordan classification", "a certificate", &e),
        }
    }
    report.check_eq("GF(2) x GF(2): product certificates recomposing exactly", 2, products);
    Ok(())
}

fn bartolone(report: &mut Report) -> Result<()> {
    for &(spec, _) in BASIC_RINGS {
        let line = line_of(spec)?;
        let covered = line.ids().filter(|&p| line.bartolone_repr(p).is_ok()).count();
        report.check_eq(format!("{spec}: points of the form R(ab-1, a)"), line.len(), covered);
    }
    let mut maps: Vec<(String, Arc<ProjectiveLine>, RingMapTable)> = Vec::new();
    for &(spec, _) in BASIC_RINGS {
        let line = line_of(spec)?;
        let id = RingMapTable::identity(line.ring());
        maps.push((format!("{spec}: identity"), line, id));
    }
    let gf4 = line_of("GF(2^2)")?;
    let frob = gf4.ring().field_automorphisms()[1].iter().map(|&x| x as u32).collect();
    maps.push(("GF(2^2): Frobenius".into(), gf4.clone(), RingMapTable::classify(gf4.ring(), gf4.ring(), frob)));
    let m = line_of("M(2,GF(2))")?;
    for (i, omega) in enumerate_jordan_isomorphisms(m.ring(), m.ring())?.into_iter().enumerate() {
        maps.push((format!("M(2,GF(2)): Jordan automorphism {i}"), m.clone(), omega));
    }
    let m3 = line_of("M(2,GF(3))")?;
    maps.push(("M(2,GF(3)): transpose".into(), m3.clone(), RingMapTable::transpose(m3.ring())?));
    for (label, line, omega) in maps {
        let jordan = PointMap::induced_by_jordan(&line, &line, &omega)?;
        let flags = omega.flags();
        let mut compared = 0;
        let mut agree = true;
        if omega.kind() == MapKind::Homomorphism {
            agree &= PointMap::induced_by_hom(&line, &line, &omega)? == jordan;
            compared += 1;
        }
        if flags.additive && flags.unital && flags.anti_multiplicative {
            agree &= PointMap::induced_by_antihom(&line, &line, &omega)? == jordan;
            compared += 1;
        }
        report.check(format!("{label}: Jordan-induced map agrees"), "agreement", format!("{compared} comparisons"), agree && compared > 0);
    }
    Ok(())
}

fn random_gl(field: &FiniteRing, n: usize, rng: &mut StdRng) -> FieldMatrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..field.order() as u32)).collect();
        let m = FieldMatrix::from_rows(n, n, data);
        if m.inverse(field).is_some() {
            return m;
        }
    }
}

/// A random collineation of `G(n, 2n)`: a linear map, followed by the
/// annihilator duality with probability one half.
fn random_grassmann_collineation(g: &GrassmannSpace, rng: &mut StdRng) -> Result<Collineation> {
    let field = g.field();
    let a = random_gl(field, 2 * g.n(), rng);
    let dual = rng.gen_bool(0.5);
    let table = g
        .points()
        .iter()
        .map(|x| {
            let mut y = Subspace::span(field, &x.basis().mul(field, &a));
            if dual {
                y = annihilator(&y);
            }
            g.index_of(&y).expect("image is an n-space")
        })
        .collect();
    Collineation::new(g.space(), g.space(), table)
}

fn appendix(report: &mut Report, config: &SuiteConfig) -> Result<()> {
    let field = FiniteRing::gf(2, 1)?;
    let g = GrassmannSpace::new(&field, 2)?;
    let factor = g.space().clone();
    let segre = PartialLinearSpace::segre_product(&[factor.clone(), factor.clone()])?;
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut exact = 0;
    for _ in 0..config.samples {
        let sigma = if rng.gen_bool(0.5) { vec![1, 0] } else { vec![0, 1] };
        let components = vec![random_grassmann_collineation(&g, &mut rng)?, random_grassmann_collineation(&g, &mut rng)?];
        let parts = ProductCollineationParts { sigma, components };
        let f = compose_product_collineation(&segre, &segre, &parts)?;
        match decompose_product_collineation(&segre, &segre, &f) {
            Ok(back) => exact += usize::from(back == parts),
            Err(e) => report.error("Segre decomposition", "sigma and components", &e),
        }
    }
    report.check_eq(format!("G(2,4)xG(2,4): round trips recovering (sigma, components), seed {}", config.seed), config.samples, exact);
    let sampled: Vec<usize> = (0..20).map(|_| rng.gen_range(0..segre.num_points())).collect();
    let twos = sampled.iter().filter(|&&p| segre.approx_classes_at(p) == 2).count();
    report.check_eq("G(2,4)xG(2,4): sampled points with 2 classes", sampled.len(), twos);
    let ones = (0..factor.num_points()).filter(|&p| factor.approx_classes_at(p) == 1).count();
    report.check_eq("G(2,4): points with 1 class", factor.num_points(), ones);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian() {
        assert_eq!(gaussian_binomial(2, 4, 2), 35);
        assert_eq!(gaussian_binomial(3, 4, 2), 130);
        assert_eq!(gaussian_binomial(2, 2, 1), 3);
    }

    #[test]
    fn fast_suites_pass() {
        let config = SuiteConfig { samples: 3, ..SuiteConfig::default() };
        for suite in ["cardinalities", "local-ring-laws", "annihilator", "wreath", "jordan"] {
            let r = run_suite(suite, &config).unwrap();
            assert!(r.passed, "{r}");
        }
        assert!(run_suite("nope", &config).is_err());
    }
}
