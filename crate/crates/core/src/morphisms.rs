//! Distant-preserving maps between projective lines: constructions,
//! predicates, exhaustive search, and factorization certificates.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::{
    decompose_product_collineation, Collineation, ProductPsiModel, PsiModel, Subspace,
};
use crate::linalg::FieldMatrix;
use crate::projline::{BitMatrix, PointId, ProjectiveLine};
use crate::ring::{Elem, FiniteRing, Mat2, RingMeta};
use crate::ringmap::{MapKind, RingMapTable};

/// Default point-count limit for listing every isomorphism.
pub const DEFAULT_LIST_CAP: usize = 64;
/// Default point-count limit for counting automorphisms.
pub const DEFAULT_COUNT_CAP: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Projectivity { gamma: Mat2 },
    HomInduced,
    AntihomInduced,
    JordanInduced,
    Composite,
    Raw,
}

/// A total map between the point sets of two lines.
#[derive(Clone, Debug)]
pub struct PointMap {
    source: Arc<ProjectiveLine>,
    target: Arc<ProjectiveLine>,
    table: Vec<PointId>,
    provenance: Provenance,
}

impl PartialEq for PointMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && self.source.ring() == other.source.ring()
            && self.target.ring() == other.target.ring()
    }
}

impl Eq for PointMap {}

#[derive(Serialize)]
pub struct PointMapJson<'a> {
    pub format: u32,
    pub source: RingMeta,
    pub target: RingMeta,
    pub table: &'a [PointId],
    pub provenance: &'a Provenance,
}

fn same_line(a: &Arc<ProjectiveLine>, b: &Arc<ProjectiveLine>) -> bool {
    Arc::ptr_eq(a, b) || a.ring() == b.ring()
}

impl PointMap {
    pub fn raw(source: &Arc<ProjectiveLine>, target: &Arc<ProjectiveLine>, table: Vec<PointId>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::InvalidMap(format!("expected {} entries, found {}", source.len(), table.len())));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= target.len()) {
            return Err(Error::InvalidMap(format!("index {bad} out of range for {} target points", target.len())));
        }
        Ok(PointMap { source: source.clone(), target: target.clone(), table, provenance: Provenance::Raw })
    }

    pub fn identity(line: &Arc<ProjectiveLine>) -> Self {
        let gamma = line.ring().mat2_identity();
        PointMap { source: line.clone(), target: line.clone(), table: line.ids().collect(), provenance: Provenance::Projectivity { gamma } }
    }

    /// `R(a, b) -> R((a, b) γ)`.
    pub fn projectivity(line: &Arc<ProjectiveLine>, gamma: &Mat2) -> Result<Self> {
        let r = line.ring();
        if !r.mat2_is_invertible(gamma) {
            return Err(Error::NotInvertible(format!("2x2 matrix {gamma:?}")));
        }
        let table = line
            .points()
            .iter()
            .map(|pt| {
                let (x, y) = r.row_times_mat2(pt.a, pt.b, gamma);
                line.index_of_pair(x, y).expect("invertible matrices keep pairs admissible")
            })
            .collect();
        Ok(PointMap { source: line.clone(), target: line.clone(), table, provenance: Provenance::Projectivity { gamma: *gamma } })
    }

    fn check_rings(source: &ProjectiveLine, target: &ProjectiveLine, alpha: &RingMapTable) -> Result<()> {
        if alpha.source() != source.ring() || alpha.target() != target.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// `R(a, b) -> R'(a^α, b^α)` for a unital homomorphism `α`.
    pub fn induced_by_hom(source: &Arc<ProjectiveLine>, target: &Arc<ProjectiveLine>, alpha: &RingMapTable) -> Result<Self> {
        Self::check_rings(source, target, alpha)?;
        if alpha.kind() != MapKind::Homomorphism {
            return Err(Error::KindMismatch { expected: MapKind::Homomorphism.to_string(), found: alpha.kind().to_string() });
        }
        let table = source
            .points()
            .iter()
            .map(|pt| {
                target.index_of_pair(alpha.apply(pt.a), alpha.apply(pt.b)).ok_or_else(|| {
                    Error::TheoremViolation(format!("homomorphic image of {} is inadmissible", source.format_point(0)))
                })
            })
            .collect::<Result<_>>()?;
        Ok(PointMap { source: source.clone(), target: target.clone(), table, provenance: Provenance::HomInduced })
    }

    fn antihom_image(target: &ProjectiveLine, alpha: &RingMapTable, m: &Mat2) -> Result<PointId> {
        let r = alpha.source();
        let inv = r.mat2_inverse(m).ok_or_else(|| Error::TheoremViolation("completion is not invertible".into()))?;
        let (v, w) = (inv[1], inv[3]);
        let t = target.ring();
        target
            .index_of_pair(t.neg(alpha.apply(w)), alpha.apply(v))
            .ok_or_else(|| Error::TheoremViolation("anti-homomorphic image is inadmissible".into()))
    }

    /// `p -> R'(-w^α, v^α)` where `(v, w)^T` is the second column of the inverse
    /// of a completion of `p`, for a unital anti-homomorphism `α`. Each point
    /// is also computed from a second completion of a rescaled representative.
    pub fn induced_by_antihom(source: &Arc<ProjectiveLine>, target: &Arc<ProjectiveLine>, alpha: &RingMapTable) -> Result<Self> {
        Self::check_rings(source, target, alpha)?;
        let f = alpha.flags();
        if !(f.additive && f.unital && f.anti_multiplicative) {
            return Err(Error::KindMismatch { expected: MapKind::AntiHomomorphism.to_string(), found: alpha.kind().to_string() });
        }
        let r = source.ring();
        let u = *r.units().last().expect("1 is a unit");
        let mut table = Vec::with_capacity(source.len());
        for (p, pt) in source.points().iter().enumerate() {
            let first = Self::antihom_image(target, alpha, &pt.completion())?;
            let (c, d) = pt.witness;
            let other = [r.mul(u, pt.a), r.mul(u, pt.b), r.add(c, pt.a), r.add(d, pt.b)];
            if Self::antihom_image(target, alpha, &other)? != first {
                return Err(Error::TheoremViolation(format!("image of {} depends on the completion", source.format_point(p))));
            }
            table.push(first);
        }
        Ok(PointMap { source: source.clone(), target: target.clone(), table, provenance: Provenance::AntihomInduced })
    }

    /// `R(ab - 1, a) -> R'(a^α b^α - 1, a^α)` for a unital Jordan homomorphism,
    /// checked against every representation of every point.
    pub fn induced_by_jordan(source: &Arc<ProjectiveLine>, target: &Arc<ProjectiveLine>, alpha: &RingMapTable) -> Result<Self> {
        Self::check_rings(source, target, alpha)?;
        if !alpha.is_jordan() {
            return Err(Error::KindMismatch { expected: MapKind::Jordan.to_string(), found: alpha.kind().to_string() });
        }
        let (r, t) = (source.ring(), target.ring());
        let mut table = vec![usize::MAX; source.len()];
        for a in r.elements() {
            for b in r.elements() {
                let Some(p) = source.index_of_pair(r.sub(r.mul(a, b), r.one()), a) else {
                    return Err(Error::TheoremViolation("a pair (ab-1, a) is inadmissible".into()));
                };
                let (x, y) = (alpha.apply(a), alpha.apply(b));
                let img = target
                    .index_of_pair(t.sub(t.mul(x, y), t.one()), x)
                    .ok_or_else(|| Error::TheoremViolation("a pair (ab-1, a) is inadmissible in the target".into()))?;
                if table[p] == usize::MAX {
                    table[p] = img;
                } else if table[p] != img {
                    return Err(Error::TheoremViolation(format!("image of {} depends on its representation", source.format_point(p))));
                }
            }
        }
        if let Some(p) = table.iter().position(|&x| x == usize::MAX) {
            return Err(Error::TheoremViolation(format!("{} has no representation R(ab-1, a)", source.format_point(p))));
        }
        Ok(PointMap { source: source.clone(), target: target.clone(), table, provenance: Provenance::JordanInduced })
    }

    pub fn source(&self) -> &Arc<ProjectiveLine> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ProjectiveLine> {
        &self.target
    }

    pub fn table(&self) -> &[PointId] {
        &self.table
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    #[inline]
    pub fn apply(&self, p: PointId) -> PointId {
        self.table[p]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &PointMap) -> Result<PointMap> {
        if !same_line(&self.target, &next.source) {
            return Err(Error::RingMismatch);
        }
        let table = self.table.iter().map(|&p| next.table[p]).collect();
        Ok(PointMap { source: self.source.clone(), target: next.target.clone(), table, provenance: Provenance::Composite })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = vec![false; self.target.len()];
        self.table.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn inverse(&self) -> Option<PointMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.table.len()];
        for (p, &q) in self.table.iter().enumerate() {
            inv[q] = p;
        }
        Some(PointMap { source: self.target.clone(), target: self.source.clone(), table: inv, provenance: Provenance::Composite })
    }

    fn preserves(&self, src: &BitMatrix, dst: &BitMatrix, both_ways: bool) -> bool {
        let n = self.source.len();
        for p in 0..n {
            for q in p + 1..n {
                let before = src.get(p, q);
                let after = dst.get(self.table[p], self.table[q]);
                if (before && !after) || (both_ways && before != after) {
                    return false;
                }
            }
        }
        true
    }

    /// `p △ q ⇒ p^φ △ q^φ`.
    pub fn is_dis_morphism(&self) -> bool {
        self.preserves(self.source.distant_matrix(), self.target.distant_matrix(), false)
    }

    pub fn is_dis_isomorphism(&self) -> bool {
        self.is_bijective() && self.preserves(self.source.distant_matrix(), self.target.distant_matrix(), true)
    }

    pub fn is_par_isomorphism(&self) -> bool {
        if !self.is_bijective() {
            return false;
        }
        let n = self.source.len();
        (0..n).all(|p| {
            (p + 1..n).all(|q| self.source.parallel(p, q) == self.target.parallel(self.table[p], self.table[q]))
        })
    }

    pub fn is_adj_isomorphism(&self) -> bool {
        self.is_bijective() && self.preserves(self.source.adjacency_matrix(), self.target.adjacency_matrix(), true)
    }

    /// `φ̄ : p̄ -> (p^φ)‾` when well defined.
    pub fn quotient_map(&self) -> Option<PointMap> {
        let src_q = self.source.quotient_line().cloned().unwrap_or_else(|| self.source.clone());
        let dst_q = self.target.quotient_line().cloned().unwrap_or_else(|| self.target.clone());
        let mut table = vec![usize::MAX; src_q.len()];
        for p in self.source.ids() {
            let (from, to) = (self.source.project_point(p), self.target.project_point(self.table[p]));
            if table[from] == usize::MAX {
                table[from] = to;
            } else if table[from] != to {
                return None;
            }
        }
        Some(PointMap { source: src_q, target: dst_q, table, provenance: Provenance::Composite })
    }

    pub fn to_json(&self) -> PointMapJson<'_> {
        PointMapJson {
            format: 1,
            source: self.source.ring().meta(),
            target: self.target.ring().meta(),
            table: &self.table,
            provenance: &self.provenance,
        }
    }
}

/// Backtracking search for isomorphisms between two graphs on bit matrices.
struct IsoSearch<'a> {
    src: &'a BitMatrix,
    dst: &'a BitMatrix,
    same_degree: Vec<FixedBitSet>,
}

impl<'a> IsoSearch<'a> {
    fn new(src: &'a BitMatrix, dst: &'a BitMatrix) -> Option<Self> {
        if src.len() != dst.len() {
            return None;
        }
        let n = src.len();
        let mut sd: Vec<usize> = (0..n).map(|i| src.degree(i)).collect();
        let mut dd: Vec<usize> = (0..n).map(|i| dst.degree(i)).collect();
        let same_degree = (0..n)
            .map(|v| {
                let mut set = FixedBitSet::with_capacity(n);
                (0..n).filter(|&w| dd[w] == sd[v]).for_each(|w| set.insert(w));
                set
            })
            .collect();
        sd.sort_unstable();
        dd.sort_unstable();
        (sd == dd).then_some(IsoSearch { src, dst, same_degree })
    }

    /// Fixed vertices first, then greedily the vertex with the most
    /// already-ordered neighbours.
    fn vertex_order(&self, fixed: &[usize]) -> Vec<usize> {
        let n = self.src.len();
        let mut order: Vec<usize> = fixed.to_vec();
        let mut placed = FixedBitSet::with_capacity(n);
        fixed.iter().for_each(|&v| placed.insert(v));
        let mut score = vec![0usize; n];
        for &v in fixed {
            self.src.row(v).ones().for_each(|w| score[w] += 1);
        }
        while order.len() < n {
            let v = (0..n).filter(|&v| !placed.contains(v)).max_by_key(|&v| (score[v], std::cmp::Reverse(v))).unwrap();
            placed.insert(v);
            order.push(v);
            self.src.row(v).ones().for_each(|w| score[w] += 1);
        }
        order
    }

    /// Calls `visit` on every isomorphism extending `forced` (pairs of
    /// source/target vertices) until it returns `false`.
    fn run(&self, forced: &[(usize, usize)], visit: &mut dyn FnMut(&[usize]) -> bool) {
        let n = self.src.len();
        let fixed: Vec<usize> = forced.iter().map(|&(v, _)| v).collect();
        let order = self.vertex_order(&fixed);
        let mut map = vec![usize::MAX; n];
        let mut used = FixedBitSet::with_capacity(n);
        self.rec(0, &order, forced, &mut map, &mut used, visit);
    }

    fn rec(
        &self,
        depth: usize,
        order: &[usize],
        forced: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut FixedBitSet,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(map);
        }
        let v = order[depth];
        let mut cand = self.same_degree[v].clone();
        cand.difference_with(used);
        for &u in &order[..depth] {
            let row = self.dst.row(map[u]);
            if self.src.get(v, u) {
                cand.intersect_with(row);
            } else {
                cand.difference_with(row);
            }
        }
        if depth < forced.len() {
            let w = forced[depth].1;
            if !cand.contains(w) {
                return true;
            }
            cand.clear();
            cand.insert(w);
        }
        for w in cand.ones() {
            map[v] = w;
            used.insert(w);
            let go_on = self.rec(depth + 1, order, forced, map, used, visit);
            used.set(w, false);
            map[v] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn find_one(&self, forced: &[(usize, usize)]) -> Option<Vec<usize>> {
        let mut found = None;
        self.run(forced, &mut |m| {
            found = Some(m.to_vec());
            false
        });
        found
    }
}

/// All distant-isomorphisms `L -> L'`, sorted by table.
pub fn enumerate_dis_isomorphisms(source: &Arc<ProjectiveLine>, target: &Arc<ProjectiveLine>, list_cap: usize) -> Result<Vec<PointMap>> {
    if source.len() > list_cap {
        return Err(Error::CapExceeded { what: "isomorphism listing".into(), size: source.len(), cap: list_cap });
    }
    let Some(search) = IsoSearch::new(source.distant_matrix(), target.distant_matrix()) else {
        return Ok(Vec::new());
    };
    let mut tables = Vec::new();
    search.run(&[], &mut |m| {
        tables.push(m.to_vec());
        true
    });
    tables.sort();
    Ok(tables
        .into_iter()
        .map(|table| PointMap { source: source.clone(), target: target.clone(), table, provenance: Provenance::Raw })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    Listing,
    OrbitStabilizer,
}

impl std::fmt::Display for CountMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CountMethod::Listing => "listing",
            CountMethod::OrbitStabilizer => "orbit-stabilizer",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AutCount {
    pub count: u128,
    pub method: CountMethod,
}

/// Order of the distant-automorphism group: full listing up to `list_cap`
/// points, orbit-stabilizer up to `count_cap`.
pub fn count_dis_automorphisms(line: &Arc<ProjectiveLine>, list_cap: usize, count_cap: usize) -> Result<AutCount> {
    if line.len() <= list_cap {
        let count = enumerate_dis_isomorphisms(line, line, list_cap)?.len() as u128;
        return Ok(AutCount { count, method: CountMethod::Listing });
    }
    if line.len() > count_cap {
        return Err(Error::CapExceeded { what: "automorphism counting".into(), size: line.len(), cap: count_cap });
    }
    Ok(AutCount { count: orbit_stabilizer_count(line.distant_matrix()), method: CountMethod::OrbitStabilizer })
}

/// `|Aut|` as the product of orbit lengths along a base, each orbit found by
/// closing under automorphisms discovered so far and searching only the rest.
pub fn orbit_stabilizer_count(graph: &BitMatrix) -> u128 {
    let search = IsoSearch::new(graph, graph).expect("a graph is isomorphic to itself");
    let n = graph.len();
    let order = search.vertex_order(&[]);
    let mut base: Vec<(usize, usize)> = Vec::new();
    let mut total: u128 = 1;
    for &v in &order {
        let mut gens: Vec<Vec<usize>> = Vec::new();
        let mut orbit = FixedBitSet::with_capacity(n);
        orbit.insert(v);
        let fixed: FixedBitSet = base.iter().map(|&(b, _)| b).collect::<Vec<_>>().iter().fold(
            FixedBitSet::with_capacity(n),
            |mut s, &b| {
                s.insert(b);
                s
            },
        );
        for w in search.same_degree[v].ones() {
            if orbit.contains(w) || fixed.contains(w) {
                continue;
            }
            let mut forced = base.clone();
            forced.push((v, w));
            if let Some(g) = search.find_one(&forced) {
                gens.push(g);
                let mut frontier: Vec<usize> = orbit.ones().collect();
                while let Some(x) = frontier.pop() {
                    for g in &gens {
                        if !orbit.contains(g[x]) {
                            orbit.insert(g[x]);
                            frontier.push(g[x]);
                        }
                    }
                }
            }
        }
        total *= orbit.count_ones(..) as u128;
        base.push((v, v));
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    Isomorphism,
    AntiIsomorphism,
}

impl std::fmt::Display for CertKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CertKind::Isomorphism => "isomorphism",
            CertKind::AntiIsomorphism => "anti-isomorphism",
        })
    }
}

/// `φ = α̃ γ̃`: first the map induced by `α`, then the projectivity of `γ`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCertificate {
    pub kind: CertKind,
    pub alpha: RingMapTable,
    pub gamma: Mat2,
    /// Index of `β` among the field automorphisms (Frobenius powers).
    pub frobenius_power: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub component_certs: Vec<DecompositionCertificate>,
}

impl DecompositionCertificate {
    /// The composite `α̃ γ̃` on `line`.
    pub fn recompose(&self, line: &Arc<ProjectiveLine>) -> Result<PointMap> {
        let induced = match self.kind {
            CertKind::Isomorphism => PointMap::induced_by_hom(line, line, &self.alpha)?,
            CertKind::AntiIsomorphism => PointMap::induced_by_antihom(line, line, &self.alpha)?,
        };
        induced.then(&PointMap::projectivity(line, &self.gamma)?)
    }
}

struct InducedCandidate {
    kind: CertKind,
    power: usize,
    alpha: RingMapTable,
    induced: PointMap,
}

/// Factorization of distant-automorphisms of a line over `M_n(K)`, `n > 1`,
/// with the per-line data computed once.
pub struct Factorizer {
    line: Arc<ProjectiveLine>,
    n: usize,
    field: FiniteRing,
    psi: PsiModel,
    star: Vec<usize>,
    frame: Vec<Vec<usize>>,
    transpose_inverse: Vec<PointId>,
    candidates: Vec<InducedCandidate>,
}

impl Factorizer {
    pub fn new(line: &Arc<ProjectiveLine>) -> Result<Self> {
        let ring = line.ring();
        let (n, field) = match ring.matrix_params() {
            Some((n, f)) if n > 1 => (n, f.clone()),
            _ => return Err(Error::WrongRingFamily("factorization needs M_n(K) with n > 1".into())),
        };
        let psi = PsiModel::new(line)?;
        let g = &psi.grassmann;
        let dim = 2 * n;
        let unit_rows = |rows: &[usize]| {
            let mut m = FieldMatrix::zeros(rows.len(), dim);
            for (i, &r) in rows.iter().enumerate() {
                m.set(i, r, field.one());
            }
            Subspace::span(&field, &m)
        };
        let star = g.star(&unit_rows(&(0..n - 1).collect::<Vec<_>>()));
        let mut frame_points: Vec<Subspace> = (0..dim).map(|i| unit_rows(&[i])).collect();
        frame_points.push(Subspace::span(&field, &FieldMatrix::from_rows(1, dim, vec![field.one(); dim])));
        let frame = frame_points.iter().map(|p| (0..g.points().len()).filter(|&x| g.points()[x].contains(p)).collect()).collect();
        let transpose = RingMapTable::transpose(ring)?;
        let tau = PointMap::induced_by_antihom(line, line, &transpose)?;
        let transpose_inverse = tau.inverse().ok_or_else(|| Error::TheoremViolation("transpose-induced map is not bijective".into()))?.table;
        let mut candidates = Vec::new();
        for (power, beta) in field.field_automorphisms().iter().enumerate() {
            let entrywise: Vec<Elem> = ring
                .elements()
                .map(|x| ring.matrix_from_entries(&ring.matrix_entries(x).iter().map(|&e| beta[e as usize]).collect::<Vec<_>>()))
                .collect();
            let hom = RingMapTable::classify(ring, ring, entrywise.clone());
            let induced = PointMap::induced_by_hom(line, line, &hom)?;
            candidates.push(InducedCandidate { kind: CertKind::Isomorphism, power, alpha: hom, induced });
            let anti_table: Vec<Elem> = ring.elements().map(|x| entrywise[transpose.apply(x) as usize]).collect();
            let anti = RingMapTable::classify(ring, ring, anti_table);
            let induced = PointMap::induced_by_antihom(line, line, &anti)?;
            candidates.push(InducedCandidate { kind: CertKind::AntiIsomorphism, power, alpha: anti, induced });
        }
        Ok(Factorizer { line: line.clone(), n, field, psi, star, frame, transpose_inverse, candidates })
    }

    fn collineation_of(&self, table: &[PointId]) -> Result<Collineation> {
        let g: Vec<usize> = (0..table.len()).map(|x| self.psi.to_space(table[self.psi.to_line(x)])).collect();
        let space = self.psi.space();
        Collineation::new(space, space, g)
            .map_err(|e| Error::TheoremViolation(format!("distant-automorphism is not a collineation: {e}")))
    }

    pub fn factorize(&self, f: &PointMap) -> Result<DecompositionCertificate> {
        if !same_line(f.source(), &self.line) || !same_line(f.target(), &self.line) {
            return Err(Error::RingMismatch);
        }
        if !f.is_dis_isomorphism() {
            return Err(Error::InvalidMap("not a distant-automorphism".into()));
        }
        let g = self.collineation_of(f.table())?;
        let grass = &self.psi.grassmann;
        let image: Vec<usize> = self.star.iter().map(|&x| g.apply(x)).collect();
        let kind = if grass.is_star_like(&image) {
            CertKind::Isomorphism
        } else if grass.is_top_like(&image) {
            CertKind::AntiIsomorphism
        } else {
            return Err(Error::TheoremViolation("a star maps to neither a star nor a top".into()));
        };
        // an anti-type map becomes iso-type after undoing the transpose-induced map
        let iso_table: Vec<PointId> = match kind {
            CertKind::Isomorphism => f.table().to_vec(),
            CertKind::AntiIsomorphism => self.transpose_inverse.iter().map(|&p| f.apply(p)).collect(),
        };
        let g = self.collineation_of(&iso_table)?;
        let t = self.semilinear_matrix(&g)?;
        let ring = self.line.ring();
        let model = ring.matrix_model().expect("matrix ring");
        let n = self.n;
        let gamma: Mat2 = [
            model.from_matrix(&t.block(0, 0, n, n)),
            model.from_matrix(&t.block(0, n, n, n)),
            model.from_matrix(&t.block(n, 0, n, n)),
            model.from_matrix(&t.block(n, n, n, n)),
        ];
        let proj = PointMap::projectivity(&self.line, &gamma)
            .map_err(|_| Error::TheoremViolation("reconstructed matrix is singular".into()))?;
        for c in self.candidates.iter().filter(|c| c.kind == kind) {
            let composite: Vec<PointId> = c.induced.table().iter().map(|&p| proj.apply(p)).collect();
            if composite == f.table() {
                return Ok(DecompositionCertificate {
                    kind,
                    alpha: c.alpha.clone(),
                    gamma,
                    frobenius_power: c.power,
                    sigma: None,
                    component_certs: Vec::new(),
                });
            }
        }
        Err(Error::TheoremViolation("no field automorphism recomposes the map".into()))
    }

    /// The matrix `T` of a semilinear map inducing `g`, normalized so that its
    /// first nonzero entry is 1, from the images of the standard frame.
    fn semilinear_matrix(&self, g: &Collineation) -> Result<FieldMatrix> {
        let grass = &self.psi.grassmann;
        let field = &self.field;
        let dim = 2 * self.n;
        let mut images = Vec::with_capacity(self.frame.len());
        for through in &self.frame {
            let mut it = through.iter().map(|&x| grass.points()[g.apply(x)].clone());
            let first = it.next().ok_or_else(|| Error::TheoremViolation("frame point lies on no subspace".into()))?;
            let meet = it.fold(first, |acc, x| acc.intersection(&x));
            if meet.dim() != 1 {
                return Err(Error::TheoremViolation("frame point image is not a point".into()));
            }
            images.push(meet.basis().row(0).to_vec());
        }
        let unit = images.pop().expect("frame has 2n + 1 points");
        let u = FieldMatrix::from_rows(dim, dim, images.concat());
        let u_inv = u.inverse(field).ok_or_else(|| Error::TheoremViolation("frame images are dependent".into()))?;
        let lambda = FieldMatrix::from_rows(1, dim, unit).mul(field, &u_inv);
        let mut t = u;
        for i in 0..dim {
            let l = lambda.get(0, i);
            if l == 0 {
                return Err(Error::TheoremViolation("frame images are not in general position".into()));
            }
            for j in 0..dim {
                t.set(i, j, field.mul(l, t.get(i, j)));
            }
        }
        let lead = t.data().iter().copied().find(|&x| x != 0).expect("invertible");
        let s = field.inverse(lead).expect("field");
        Ok(t.map(|x| field.mul(s, x)))
    }
}

/// One-shot factorization of a distant-automorphism of a line over `M_n(K)`, `n > 1`.
pub fn factorize_dis_automorphism(f: &PointMap) -> Result<DecompositionCertificate> {
    Factorizer::new(f.source())?.factorize(f)
}

/// `σ` and component distant-isomorphisms with `(p^φ)_{σ(k)} = (p_k)^{φ_k}`.
#[derive(Clone, Debug)]
pub struct ProductDecomposition {
    pub sigma: Vec<usize>,
    pub components: Vec<PointMap>,
}

/// Decomposes distant-isomorphisms between lines over products of matrix
/// rings over fields, through the Segre product of their Grassmann spaces.
pub struct ProductDecomposer {
    source: Arc<ProjectiveLine>,
    target: Arc<ProjectiveLine>,
    src_model: ProductPsiModel,
    dst_model: ProductPsiModel,
}

impl ProductDecomposer {
    pub fn new(source: &Arc<ProjectiveLine>, target: &Arc<ProjectiveLine>) -> Result<Self> {
        let src_model = ProductPsiModel::new(source)?;
        let dst_model = if same_line(source, target) { ProductPsiModel::new(source)? } else { ProductPsiModel::new(target)? };
        Ok(ProductDecomposer { source: source.clone(), target: target.clone(), src_model, dst_model })
    }

    pub fn decompose(&self, f: &PointMap) -> Result<ProductDecomposition> {
        if !same_line(f.source(), &self.source) || !same_line(f.target(), &self.target) {
            return Err(Error::RingMismatch);
        }
        if !f.is_dis_isomorphism() {
            return Err(Error::InvalidMap("not a distant-isomorphism".into()));
        }
        let (sm, dm) = (&self.src_model, &self.dst_model);
        let table: Vec<usize> = (0..sm.segre.num_points()).map(|x| dm.to_space(f.apply(sm.to_line(x)))).collect();
        let col = Collineation::new(&sm.segre, &dm.segre, table)
            .map_err(|e| Error::TheoremViolation(format!("distant-isomorphism is not a collineation: {e}")))?;
        let parts = decompose_product_collineation(&sm.segre, &dm.segre, &col)?;
        let mut components = Vec::with_capacity(parts.sigma.len());
        for (k, comp) in parts.components.iter().enumerate() {
            let j = parts.sigma[k];
            let (src_line, dst_line) = (&sm.view.factors[k], &dm.view.factors[j]);
            let table = src_line.ids().map(|x| dm.components[j].to_line(comp.apply(sm.components[k].to_space(x)))).collect();
            let map = PointMap::raw(src_line, dst_line, table)?;
            if !map.is_dis_isomorphism() {
                return Err(Error::TheoremViolation(format!("component {k} is not a distant-isomorphism")));
            }
            components.push(map);
        }
        for p in self.source.ids() {
            let parts_p = sm.view.split(p);
            let img = dm.view.split(f.apply(p));
            for (k, comp) in components.iter().enumerate() {
                if img[parts.sigma[k]] != comp.apply(parts_p[k]) {
                    return Err(Error::TheoremViolation("map does not factor through its components".into()));
                }
            }
        }
        Ok(ProductDecomposition { sigma: parts.sigma, components })
    }

    /// Rebuilds the map from `σ` and components.
    pub fn compose(&self, sigma: &[usize], components: &[PointMap]) -> Result<PointMap> {
        let (sm, dm) = (&self.src_model, &self.dst_model);
        let table = self
            .source
            .ids()
            .map(|p| {
                let parts = sm.view.split(p);
                let mut out = vec![0; parts.len()];
                for (k, comp) in components.iter().enumerate() {
                    out[sigma[k]] = comp.apply(parts[k]);
                }
                dm.view.join(&out)
            })
            .collect();
        PointMap::raw(&self.source, &self.target, table)
    }

    pub fn factor_lines(&self) -> &[Arc<ProjectiveLine>] {
        &self.src_model.view.factors
    }
}

pub fn decompose_product_dis_iso(f: &PointMap) -> Result<ProductDecomposition> {
    ProductDecomposer::new(f.source(), f.target())?.decompose(f)
}

/// All additive bijections `R -> R'` fixing 1 and satisfying
/// `(aba)^ω = a^ω b^ω a^ω`, sorted by table.
pub fn enumerate_jordan_isomorphisms(source: &FiniteRing, target: &FiniteRing) -> Result<Vec<RingMapTable>> {
    const CAP: usize = 256;
    if source.order() > CAP {
        return Err(Error::CapExceeded { what: "Jordan enumeration".into(), size: source.order(), cap: CAP });
    }
    if source.order() != target.order() {
        return Ok(Vec::new());
    }
    let n = source.order();
    // additive generators, 1 first
    let mut gens = vec![source.one()];
    let mut span = additive_span(source, &gens);
    while span.len() < n {
        let next = source.elements().find(|x| !span.contains(x)).unwrap();
        gens.push(next);
        span = additive_span(source, &gens);
    }
    let add_order = |r: &FiniteRing, x: Elem| {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = r.add(acc, x);
            k += 1;
        }
        k
    };
    let mut results = Vec::new();
    let mut table = vec![Elem::MAX; n];
    table[0] = 0;
    let mut used = vec![false; n];
    used[0] = true;
    let ctx = JordanCtx { source, target, gens: &gens, add_order: &add_order };
    ctx.extend(0, &mut table, &mut used, &mut results);
    results.sort_by(|a: &RingMapTable, b| a.table().cmp(b.table()));
    Ok(results)
}

fn additive_span(r: &FiniteRing, gens: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; r.order()];
    seen[0] = true;
    let mut out = vec![0];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &g in gens {
            let y = r.add(x, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

struct JordanCtx<'a> {
    source: &'a FiniteRing,
    target: &'a FiniteRing,
    gens: &'a [Elem],
    add_order: &'a dyn Fn(&FiniteRing, Elem) -> usize,
}

impl JordanCtx<'_> {
    fn extend(&self, k: usize, table: &mut Vec<Elem>, used: &mut Vec<bool>, out: &mut Vec<RingMapTable>) {
        let (s, t) = (self.source, self.target);
        if k == self.gens.len() {
            let m = RingMapTable::classify(s, t, table.clone());
            if m.is_jordan() && m.is_bijective() {
                out.push(m);
            }
            return;
        }
        let g = self.gens[k];
        let candidates: Vec<Elem> = if k == 0 {
            vec![t.one()]
        } else {
            t.elements().filter(|&y| !used[y as usize]).collect()
        };
        let order_g = (self.add_order)(s, g);
        for y in candidates {
            if (self.add_order)(t, y) != order_g {
                continue;
            }
            let snapshot: Vec<Elem> = table.iter().enumerate().filter(|(_, &v)| v != Elem::MAX).map(|(i, _)| i as Elem).collect();
            let mut added = Vec::new();
            if self.add_generator(g, y, table, used, &mut added) && self.partial_jordan_ok(table) {
                self.extend(k + 1, table, used, out);
            }
            for x in added {
                used[table[x as usize] as usize] = false;
                table[x as usize] = Elem::MAX;
            }
            debug_assert_eq!(table.iter().filter(|&&v| v != Elem::MAX).count(), snapshot.len());
        }
    }

    /// Extends the additive map from its current domain `D` to `D + <g>` with
    /// `g -> y`; fails on a clash or a collision of images.
    fn add_generator(&self, g: Elem, y: Elem, table: &mut [Elem], used: &mut [bool], added: &mut Vec<Elem>) -> bool {
        let (s, t) = (self.source, self.target);
        let domain: Vec<Elem> = (0..table.len() as Elem).filter(|&x| table[x as usize] != Elem::MAX).collect();
        let mut layer: Vec<Elem> = domain;
        loop {
            let mut next = Vec::new();
            for &x in &layer {
                let z = s.add(x, g);
                let img = t.add(table[x as usize], y);
                let cur = table[z as usize];
                if cur == Elem::MAX {
                    if used[img as usize] {
                        return false;
                    }
                    table[z as usize] = img;
                    used[img as usize] = true;
                    added.push(z);
                    next.push(z);
                } else if cur != img {
                    return false;
                }
            }
            if next.is_empty() {
                return true;
            }
            layer = next;
        }
    }

    fn partial_jordan_ok(&self, table: &[Elem]) -> bool {
        let (s, t) = (self.source, self.target);
        let dom: Vec<Elem> = (0..table.len() as Elem).filter(|&x| table[x as usize] != Elem::MAX).collect();
        for &a in &dom {
            for &b in &dom {
                let aba = s.mul(s.mul(a, b), a);
                let img = table[aba as usize];
                if img != Elem::MAX {
                    let (x, y) = (table[a as usize], table[b as usize]);
                    if img != t.mul(t.mul(x, y), x) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Structure of a Jordan isomorphism.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum JordanCertificate {
    /// `X^ω = G^{-1} X^β G` (iso) or `G^{-1} (X^β)^T G` (anti) on `M_n(K)`.
    Matrix { kind: CertKind, frobenius_power: usize, beta: Vec<Elem>, g: Vec<Vec<Elem>> },
    /// `(x^ω)_{σ(k)} = (x_k)^{ω_k}`.
    Product { sigma: Vec<usize>, components: Vec<JordanCertificate> },
    /// Maps on rings without matrix or product structure (fields and
    /// commutative rings), labelled by their classification.
    Scalar { kind: MapKind },
}

impl JordanCertificate {
    /// Iso/anti label for matrix certificates.
    pub fn matrix_kind(&self) -> Option<CertKind> {
        match self {
            JordanCertificate::Matrix { kind, .. } => Some(*kind),
            _ => None,
        }
    }
}

pub fn classify_jordan(omega: &RingMapTable) -> Result<JordanCertificate> {
    if !omega.is_jordan() {
        return Err(Error::KindMismatch { expected: MapKind::Jordan.to_string(), found: omega.kind().to_string() });
    }
    if !omega.is_bijective() {
        return Err(Error::InvalidMap("Jordan map is not bijective".into()));
    }
    let (src, dst) = (omega.source(), omega.target());
    if let Some((n, field)) = src.matrix_params().filter(|(n, _)| *n > 1) {
        if src != dst {
            return Err(Error::WrongRingFamily("source and target matrix rings differ".into()));
        }
        let model = src.matrix_model().expect("matrix ring");
        for (power, beta) in field.field_automorphisms().iter().enumerate() {
            for kind in [CertKind::Isomorphism, CertKind::AntiIsomorphism] {
                if let Some(g) = solve_conjugator(&model, omega, beta, kind == CertKind::AntiIsomorphism) {
                    return Ok(JordanCertificate::Matrix { kind, frobenius_power: power, beta: beta.clone(), g: g.row_vecs() });
                }
            }
        }
        let _ = n;
        return Err(Error::TheoremViolation("Jordan automorphism is neither inner-semilinear nor its transpose".into()));
    }
    if let (Some(ds), Some(dt)) = (src.simple_components(), dst.simple_components()) {
        if ds.len() > 1 {
            if dt.len() != ds.len() {
                return Err(Error::TheoremViolation("Jordan isomorphism between products with different factor counts".into()));
            }
            let m = ds.len();
            let idempotent = |d: &crate::ring::Decomposition, k: usize| {
                let parts: Vec<Elem> = (0..m).map(|i| if i == k { d.factors[i].one() } else { 0 }).collect();
                d.join(&parts)
            };
            let mut sigma = Vec::with_capacity(m);
            for k in 0..m {
                let img = omega.apply(idempotent(&ds, k));
                let j = (0..m)
                    .find(|&j| idempotent(&dt, j) == img)
                    .ok_or_else(|| Error::TheoremViolation(format!("idempotent {k} does not map to a primitive central idempotent")))?;
                sigma.push(j);
            }
            let mut components = Vec::with_capacity(m);
            for k in 0..m {
                let j = sigma[k];
                let fk = &ds.factors[k];
                let table: Vec<Elem> = fk
                    .elements()
                    .map(|x| {
                        let parts: Vec<Elem> = (0..m).map(|i| if i == k { x } else { 0 }).collect();
                        dt.project(omega.apply(ds.join(&parts)), j)
                    })
                    .collect();
                for x in src.elements() {
                    if dt.project(omega.apply(x), j) != table[ds.project(x, k) as usize] {
                        return Err(Error::TheoremViolation("Jordan isomorphism does not act componentwise".into()));
                    }
                }
                let comp = RingMapTable::classify(fk, &dt.factors[j], table);
                components.push(classify_jordan(&comp)?);
            }
            return Ok(JordanCertificate::Product { sigma, components });
        }
    }
    let kind = omega.kind();
    if src.is_field() && kind != MapKind::Homomorphism {
        return Err(Error::TheoremViolation("Jordan automorphism of a field is not an automorphism".into()));
    }
    Ok(JordanCertificate::Scalar { kind })
}

/// Solves `G X^ω = Y G` with `Y = X^β` (or its transpose) for an invertible
/// `G`, normalized so its first nonzero entry is 1, and verifies it on all `X`.
fn solve_conjugator(model: &crate::ring::MatrixModel, omega: &RingMapTable, beta: &[Elem], transpose: bool) -> Option<FieldMatrix> {
    let (n, field, ring) = (model.n, &model.field, &model.ring);
    let target_of = |x: Elem| {
        let m = model.to_matrix(x).map(|e| beta[e as usize]);
        if transpose {
            m.transpose()
        } else {
            m
        }
    };
    // additive generators c E_ij with c running over powers of the characteristic
    let p = field.characteristic() as Elem;
    let mut scalars = Vec::new();
    let mut c: Elem = 1;
    while (c as usize) < field.order() {
        scalars.push(c);
        c *= p;
    }
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for &s in &scalars {
                let mut e = FieldMatrix::zeros(n, n);
                e.set(i, j, s);
                let x = model.from_matrix(&e);
                let w = model.to_matrix(omega.apply(x));
                let y = target_of(x);
                for r in 0..n {
                    for col in 0..n {
                        let mut eq = vec![0; n * n];
                        for t in 0..n {
                            eq[r * n + t] = field.add(eq[r * n + t], w.get(t, col));
                            eq[t * n + col] = field.sub(eq[t * n + col], y.get(r, t));
                        }
                        rows.push(eq);
                    }
                }
            }
        }
    }
    let system = FieldMatrix::from_rows(rows.len(), n * n, rows.concat());
    let kernel = system.right_kernel(field);
    let d = kernel.rows();
    if d == 0 {
        return None;
    }
    let q = field.order();
    let total = q.checked_pow(d as u32)?;
    let g = (1..total).find_map(|code| {
        let coeffs = crate::ring::mixed_radix_digits(code, &vec![q; d]);
        let mut v = vec![0; n * n];
        for (r, &cf) in coeffs.iter().enumerate() {
            for (slot, &k) in v.iter_mut().zip(kernel.row(r)) {
                *slot = field.add(*slot, field.mul(cf as Elem, k));
            }
        }
        let g = FieldMatrix::from_rows(n, n, v);
        g.inverse(field).map(|_| g)
    })?;
    let lead = g.data().iter().copied().find(|&x| x != 0)?;
    let s = field.inverse(lead)?;
    let g = g.map(|x| field.mul(s, x));
    let g_inv = g.inverse(field)?;
    let ok = ring.elements().all(|x| {
        let expect = g_inv.mul(field, &target_of(x)).mul(field, &g);
        model.to_matrix(omega.apply(x)) == expect
    });
    ok.then_some(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct WreathCheck {
    pub points: usize,
    pub radical_order: usize,
    pub quotient_points: usize,
    pub count: AutCount,
    pub quotient_count: AutCount,
    pub predicted: u128,
    pub induced_maps_checked: usize,
}

/// Checks `|Aut(ℙ(R))| = (|rad R|!)^{|ℙ(R̄)|} |Aut(ℙ(R̄))|` and, when the
/// automorphisms can be listed, that each induces a map of the quotient line.
pub fn verify_wreath_structure(line: &Arc<ProjectiveLine>, list_cap: usize, count_cap: usize) -> Result<WreathCheck> {
    let radical_order = line.ring().jacobson_radical().order();
    let quotient = line.quotient_line().cloned().unwrap_or_else(|| line.clone());
    let count = count_dis_automorphisms(line, list_cap, count_cap)?;
    let quotient_count = count_dis_automorphisms(&quotient, list_cap, count_cap)?;
    let fact: u128 = (1..=radical_order as u128).product();
    let predicted = fact
        .checked_pow(quotient.len() as u32)
        .and_then(|x| x.checked_mul(quotient_count.count))
        .ok_or_else(|| Error::CapExceeded { what: "wreath product order".into(), size: usize::MAX, cap: u128::MAX as usize })?;
    let mut induced_maps_checked = 0;
    if line.len() <= list_cap {
        for f in enumerate_dis_isomorphisms(line, line, list_cap)? {
            let bar = f
                .quotient_map()
                .ok_or_else(|| Error::TheoremViolation("a distant-automorphism does not respect parallel classes".into()))?;
            if !bar.is_dis_isomorphism() {
                return Err(Error::TheoremViolation("induced quotient map is not a distant-automorphism".into()));
            }
            induced_maps_checked += 1;
        }
    }
    if count.count != predicted {
        return Err(Error::TheoremViolation(format!("automorphism count {} differs from the wreath order {predicted}", count.count)));
    }
    Ok(WreathCheck {
        points: line.len(),
        radical_order,
        quotient_points: quotient.len(),
        count,
        quotient_count,
        predicted,
        induced_maps_checked,
    })
}

/// For a bijection between lines over semilocal rings: whether it is a
/// parallel-isomorphism inducing a distant-isomorphism of the quotient lines,
/// which must coincide with being a distant-isomorphism.
pub fn check_semilocal_corollary(f: &PointMap) -> Result<bool> {
    if !f.is_bijective() {
        return Err(Error::InvalidMap("map is not a bijection".into()));
    }
    let par = f.is_par_isomorphism();
    let bar_dis = par && f.quotient_map().map(|b| b.is_dis_isomorphism()).unwrap_or(false);
    let dis = f.is_dis_isomorphism();
    if dis && !par {
        return Err(Error::TheoremViolation("distant-isomorphism that is not a parallel-isomorphism".into()));
    }
    if bar_dis != dis {
        return Err(Error::TheoremViolation("quotient criterion disagrees with the distant relation".into()));
    }
    Ok(par && bar_dis && dis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(r: &FiniteRing) -> Arc<ProjectiveLine> {
        Arc::new(ProjectiveLine::new(r))
    }

    fn f2() -> FiniteRing {
        FiniteRing::gf(2, 1).unwrap()
    }

    #[test]
    fn projectivities() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let l = line(&z4);
        assert_eq!(PointMap::projectivity(&l, &[1, 0, 0, 1]).unwrap(), PointMap::identity(&l));
        let swap = PointMap::projectivity(&l, &[0, 1, 1, 0]).unwrap();
        let (p10, p01) = (l.point_of(1, 0).unwrap(), l.point_of(0, 1).unwrap());
        assert_eq!((swap.apply(p10), swap.apply(p01)), (p01, p10));
        assert!(swap.is_dis_isomorphism() && swap.is_par_isomorphism() && swap.is_adj_isomorphism());
        assert!(PointMap::projectivity(&l, &[2, 0, 0, 1]).is_err());
    }

    #[test]
    fn quotient_map_is_morphism_only() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let l = line(&z4);
        let pi = PointMap::induced_by_hom(&l, l.quotient_line().unwrap(), l.quotient_map().unwrap()).unwrap();
        assert!(pi.is_dis_morphism());
        assert!(!pi.is_dis_isomorphism());
    }

    #[test]
    fn transpose_induced_on_m2f2() {
        let m = FiniteRing::matrix(2, &f2()).unwrap();
        let l = line(&m);
        let t = RingMapTable::transpose(&m).unwrap();
        let tau = PointMap::induced_by_antihom(&l, &l, &t).unwrap();
        let one = m.one();
        assert_eq!(tau.apply(l.point_of(one, 0).unwrap()), l.point_of(one, 0).unwrap());
        for x in m.elements() {
            let p = l.point_of(x, one).unwrap();
            assert_eq!(tau.apply(p), l.point_of(t.apply(x), one).unwrap());
        }
        assert_eq!(PointMap::induced_by_jordan(&l, &l, &t).unwrap(), tau);
        let cert = factorize_dis_automorphism(&tau).unwrap();
        assert_eq!(cert.kind, CertKind::AntiIsomorphism);
        assert_eq!(cert.recompose(&l).unwrap(), tau);
    }

    #[test]
    fn identity_factorization() {
        let m = FiniteRing::matrix(2, &f2()).unwrap();
        let l = line(&m);
        let cert = factorize_dis_automorphism(&PointMap::identity(&l)).unwrap();
        assert_eq!(cert.kind, CertKind::Isomorphism);
        assert_eq!(cert.alpha, RingMapTable::identity(&m));
        assert_eq!(cert.gamma, m.mat2_identity());
    }

    #[test]
    fn small_counts() {
        let l = line(&f2());
        assert_eq!(count_dis_automorphisms(&l, 64, 256).unwrap().count, 6);
        let z4 = line(&FiniteRing::zmod(4).unwrap());
        assert_eq!(count_dis_automorphisms(&z4, 64, 256).unwrap().count, 48);
        assert_eq!(orbit_stabilizer_count(z4.distant_matrix()), 48);
        let z6 = line(&FiniteRing::zmod(6).unwrap());
        assert_eq!(orbit_stabilizer_count(z6.distant_matrix()), 144);
        assert!(count_dis_automorphisms(&z6, 4, 8).is_err());
    }

    #[test]
    fn product_swap_has_transposition() {
        let r = FiniteRing::product(&[f2(), f2()]).unwrap();
        let l = line(&r);
        let swap_ring = RingMapTable::classify(&r, &r, r.elements().map(|x| r.join(&[r.component(x, 1), r.component(x, 0)])).collect());
        let swap = PointMap::induced_by_hom(&l, &l, &swap_ring).unwrap();
        let d = decompose_product_dis_iso(&swap).unwrap();
        assert_eq!(d.sigma, [1, 0]);
    }

    #[test]
    fn jordan_on_small_rings() {
        let r = FiniteRing::product(&[f2(), f2()]).unwrap();
        let all = enumerate_jordan_isomorphisms(&r, &r).unwrap();
        assert_eq!(all.len(), 2);
        let m = FiniteRing::matrix(2, &f2()).unwrap();
        let id = classify_jordan(&RingMapTable::identity(&m)).unwrap();
        match id {
            JordanCertificate::Matrix { kind, frobenius_power, g, .. } => {
                assert_eq!(kind, CertKind::Isomorphism);
                assert_eq!(frobenius_power, 0);
                assert_eq!(g, vec![vec![1, 0], vec![0, 1]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn semilocal_corollary_examples() {
        let l = line(&FiniteRing::zmod(4).unwrap());
        assert!(check_semilocal_corollary(&PointMap::identity(&l)).unwrap());
        let (p, q) = (l.point_of(1, 0).unwrap(), l.point_of(0, 1).unwrap());
        let mut table: Vec<PointId> = l.ids().collect();
        table.swap(p, q);
        assert!(!check_semilocal_corollary(&PointMap::raw(&l, &l, table).unwrap()).unwrap());
    }

    #[test]
    fn wreath_z4() {
        let l = line(&FiniteRing::zmod(4).unwrap());
        let w = verify_wreath_structure(&l, 64, 256).unwrap();
        assert_eq!((w.count.count, w.predicted), (48, 48));
    }
}
