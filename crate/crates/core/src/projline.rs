//! The projective line over a finite ring and its point relations.

use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::FieldMatrix;
use crate::ring::{mixed_radix_digits, Decomposition, Elem, FiniteRing, Mat2, RingMeta};
use crate::ringmap::RingMapTable;

/// Index of a point in the canonical order of its line.
pub type PointId = usize;

const NOT_A_POINT: u32 = u32::MAX;

/// A point `R(a, b)` held by its orbit-minimal representative and a completion
/// `(c, d)` making `[[a, b], [c, d]]` invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    pub a: Elem,
    pub b: Elem,
    pub witness: (Elem, Elem),
}

impl ProjPoint {
    pub fn rep(&self) -> (Elem, Elem) {
        (self.a, self.b)
    }

    pub fn completion(&self) -> Mat2 {
        [self.a, self.b, self.witness.0, self.witness.1]
    }
}

/// Square bit matrix indexed by point ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<FixedBitSet>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        BitMatrix { rows: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.rows[i].set(j, v);
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count_ones(..)
    }

    /// Common degree when every row has the same number of ones.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.rows.first().map(|r| r.count_ones(..))?;
        self.rows.iter().all(|r| r.count_ones(..) == d).then_some(d)
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            out.extend(r.ones().filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }
}

/// `π̃` data: identity when the radical is zero.
pub enum QuotientLine {
    Identity,
    Proper { line: Arc<ProjectiveLine>, map: RingMapTable, image: Vec<PointId> },
}

/// Componentwise view of a line over a ring `R ≅ R_1 x ... x R_m`.
pub struct ProductView {
    pub decomposition: Decomposition,
    pub factors: Vec<Arc<ProjectiveLine>>,
    split: Vec<Vec<PointId>>,
    join: Vec<PointId>,
}

impl ProductView {
    pub fn split(&self, p: PointId) -> &[PointId] {
        &self.split[p]
    }

    pub fn join(&self, parts: &[PointId]) -> PointId {
        let mut idx = 0;
        for (f, &x) in self.factors.iter().zip(parts) {
            idx = idx * f.len() + x;
        }
        self.join[idx]
    }

    pub fn factor_sizes(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.len()).collect()
    }
}

pub struct ProjectiveLine {
    ring: FiniteRing,
    points: Vec<ProjPoint>,
    pair_index: Vec<u32>,
    distant: OnceLock<BitMatrix>,
    parallel: OnceLock<(Vec<Vec<PointId>>, Vec<usize>)>,
    adjacency: OnceLock<BitMatrix>,
    quotient: OnceLock<QuotientLine>,
    bartolone: OnceLock<Vec<Option<(Elem, Elem)>>>,
    product: OnceLock<Option<ProductView>>,
}

impl std::fmt::Debug for ProjectiveLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ProjectiveLine({:?}, {} points)", self.ring, self.points.len())
    }
}

/// `∃ x, y : a x + b y = 1`.
pub fn is_unimodular(ring: &FiniteRing, a: Elem, b: Elem) -> bool {
    let a_r = right_ideal(ring, a);
    ring.elements().any(|y| a_r.contains(ring.sub(ring.one(), ring.mul(b, y)) as usize))
}

fn right_ideal(ring: &FiniteRing, a: Elem) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(ring.order());
    for x in ring.elements() {
        set.insert(ring.mul(a, x) as usize);
    }
    set
}

/// Exhaustive search for `(c, d)` with `[[a, b], [c, d]]` invertible.
pub fn completion_search(ring: &FiniteRing, a: Elem, b: Elem) -> Option<(Elem, Elem)> {
    ring.elements()
        .flat_map(|c| ring.elements().map(move |d| (c, d)))
        .find(|&(c, d)| ring.mat2_is_invertible(&[a, b, c, d]))
}

/// A completion of `(a, b)`, or `None` when the pair is not admissible.
/// Tries `(c, d) = (-t, 1)` with `a + b t` a unit before a full search.
pub fn admissible_witness(ring: &FiniteRing, a: Elem, b: Elem) -> Option<(Elem, Elem)> {
    for t in ring.elements() {
        if ring.is_unit(ring.add(a, ring.mul(b, t))) {
            let w = (ring.neg(t), ring.one());
            debug_assert!(ring.mat2_is_invertible(&[a, b, w.0, w.1]));
            return Some(w);
        }
    }
    completion_search(ring, a, b)
}

pub fn is_admissible(ring: &FiniteRing, a: Elem, b: Elem) -> bool {
    admissible_witness(ring, a, b).is_some()
}

impl ProjectiveLine {
    /// Enumerates all points. Pairs are scanned in lexicographic order, so the
    /// first pair met in each unit orbit is its minimum.
    pub fn new(ring: &FiniteRing) -> Self {
        let n = ring.order();
        let units = ring.units();
        let right_ideals: Vec<FixedBitSet> = ring.elements().map(|a| right_ideal(ring, a)).collect();
        let mut pair_index = vec![NOT_A_POINT; n * n];
        let mut points = Vec::new();
        for a in ring.elements() {
            let a_r = &right_ideals[a as usize];
            for b in ring.elements() {
                if pair_index[a as usize * n + b as usize] != NOT_A_POINT {
                    continue;
                }
                // a x + b y = 1 is necessary for admissibility, so a failure here is final
                let unimodular = right_ideals[b as usize].ones().any(|by| a_r.contains(ring.sub(ring.one(), by as Elem) as usize));
                if !unimodular {
                    continue;
                }
                let witness = admissible_witness(ring, a, b)
                    .unwrap_or_else(|| panic!("unimodular pair ({a}, {b}) has no completion over {ring:?}"));
                let id = points.len() as u32;
                for &u in units {
                    pair_index[ring.mul(u, a) as usize * n + ring.mul(u, b) as usize] = id;
                }
                points.push(ProjPoint { a, b, witness });
            }
        }
        ProjectiveLine {
            ring: ring.clone(),
            points,
            pair_index,
            distant: OnceLock::new(),
            parallel: OnceLock::new(),
            adjacency: OnceLock::new(),
            quotient: OnceLock::new(),
            bartolone: OnceLock::new(),
            product: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, p: PointId) -> &ProjPoint {
        &self.points[p]
    }

    pub fn ids(&self) -> std::ops::Range<PointId> {
        0..self.points.len()
    }

    /// Point through an admissible pair; `None` for inadmissible pairs.
    pub fn index_of_pair(&self, a: Elem, b: Elem) -> Option<PointId> {
        let n = self.ring.order();
        let idx = self.pair_index[a as usize * n + b as usize];
        (idx != NOT_A_POINT).then_some(idx as PointId)
    }

    pub fn point_of(&self, a: Elem, b: Elem) -> Result<PointId> {
        self.index_of_pair(a, b)
            .ok_or_else(|| Error::Inadmissible(self.ring.format_elem(a), self.ring.format_elem(b)))
    }

    /// `R(a,b)` with element literals.
    pub fn format_point(&self, p: PointId) -> String {
        let pt = &self.points[p];
        format!("R({},{})", self.ring.format_elem(pt.a), self.ring.format_elem(pt.b))
    }

    pub fn parse_point(&self, text: &str) -> Result<PointId> {
        let t = text.trim();
        let inner = t
            .strip_prefix("R(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse { offset: 0, message: format!("expected R(a, b): {t:?}") })?;
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in inner.char_indices() {
            match c {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                ',' if depth == 0 => {
                    if split.is_some() {
                        return Err(Error::Parse { offset: i + 2, message: "too many coordinates".into() });
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(|| Error::Parse { offset: 0, message: "expected two coordinates".into() })?;
        let a = self.ring.parse_elem(&inner[..i])?;
        let b = self.ring.parse_elem(&inner[i + 1..])?;
        self.point_of(a, b)
    }

    fn stacked(&self, p: PointId, q: PointId) -> Mat2 {
        let (x, y) = (&self.points[p], &self.points[q]);
        [x.a, x.b, y.a, y.b]
    }

    /// Distant matrix, cached.
    pub fn distant_matrix(&self) -> &BitMatrix {
        self.distant.get_or_init(|| self.build_distant(|m| self.ring.mat2_is_invertible(m)))
    }

    /// Distant matrix recomputed with the constructor-agnostic invertibility test.
    pub fn distant_matrix_generic(&self) -> BitMatrix {
        self.build_distant(|m| self.ring.mat2_inverse_generic(m).is_some())
    }

    fn build_distant(&self, invertible: impl Fn(&Mat2) -> bool) -> BitMatrix {
        let n = self.len();
        let mut m = BitMatrix::new(n);
        for p in 0..n {
            for q in p + 1..n {
                if invertible(&self.stacked(p, q)) {
                    m.set(p, q, true);
                    m.set(q, p, true);
                }
            }
        }
        m
    }

    pub fn distant(&self, p: PointId, q: PointId) -> bool {
        self.distant_matrix().get(p, q)
    }

    /// `△(p)`.
    pub fn distant_neighborhood(&self, p: PointId) -> &FixedBitSet {
        self.distant_matrix().row(p)
    }

    /// `△(p) ⊆ △(q)`.
    pub fn parallel_definitional(&self, p: PointId, q: PointId) -> bool {
        let d = self.distant_matrix();
        d.row(p).is_subset(d.row(q))
    }

    /// Equal images in the line over `R / rad R`.
    pub fn parallel_via_quotient(&self, p: PointId, q: PointId) -> bool {
        self.project_point(p) == self.project_point(q)
    }

    fn parallel_data(&self) -> &(Vec<Vec<PointId>>, Vec<usize>) {
        self.parallel.get_or_init(|| {
            let n = self.len();
            let mut class_of = vec![usize::MAX; n];
            let mut classes: Vec<Vec<PointId>> = Vec::new();
            for p in 0..n {
                if class_of[p] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut members = Vec::new();
                for q in p..n {
                    let def = self.parallel_definitional(p, q);
                    let quo = self.parallel_via_quotient(p, q);
                    assert_eq!(def, quo, "parallelism implementations disagree on {} and {}", self.format_point(p), self.format_point(q));
                    if def {
                        class_of[q] = id;
                        members.push(q);
                    }
                }
                classes.push(members);
            }
            // symmetry of the definitional relation within classes
            for c in &classes {
                for &p in c {
                    for &q in c {
                        assert!(self.parallel_definitional(p, q), "parallelism is not symmetric");
                    }
                }
            }
            (classes, class_of)
        })
    }

    pub fn parallel(&self, p: PointId, q: PointId) -> bool {
        let (_, class_of) = self.parallel_data();
        class_of[p] == class_of[q]
    }

    /// Parallel classes ordered by their least member.
    pub fn parallel_classes(&self) -> &[Vec<PointId>] {
        &self.parallel_data().0
    }

    pub fn parallel_class_of(&self, p: PointId) -> usize {
        self.parallel_data().1[p]
    }

    /// `r ∦ p, q` and `△(r) ⊆ △(p) ∪ △(q)`.
    pub fn adjacent_via(&self, p: PointId, q: PointId, r: PointId) -> bool {
        if self.parallel(r, p) || self.parallel(r, q) {
            return false;
        }
        let d = self.distant_matrix();
        let mut union = d.row(p).clone();
        union.union_with(d.row(q));
        d.row(r).is_subset(&union)
    }

    /// Adjacency computed from the definition for every pair.
    pub fn adjacency_definitional(&self) -> BitMatrix {
        let n = self.len();
        let d = self.distant_matrix();
        let class_of = &self.parallel_data().1;
        let mut m = BitMatrix::new(n);
        for p in 0..n {
            for q in p + 1..n {
                let mut union = d.row(p).clone();
                union.union_with(d.row(q));
                let adj = (0..n).any(|r| {
                    class_of[r] != class_of[p] && class_of[r] != class_of[q] && d.row(r).is_subset(&union)
                });
                if adj {
                    m.set(p, q, true);
                    m.set(q, p, true);
                }
            }
        }
        m
    }

    /// Adjacency matrix, cached. Matrix rings over fields use the rank of the
    /// stacked representatives; everything else uses the definition.
    pub fn adjacency_matrix(&self) -> &BitMatrix {
        self.adjacency.get_or_init(|| match self.ring.matrix_model() {
            Some(model) => {
                let n = self.len();
                let blocks: Vec<FieldMatrix> = self.points.iter().map(|pt| model.to_matrix(pt.a).hstack(&model.to_matrix(pt.b))).collect();
                let mut m = BitMatrix::new(n);
                for p in 0..n {
                    for q in p + 1..n {
                        if blocks[p].vstack(&blocks[q]).rank(&model.field) == model.n + 1 {
                            m.set(p, q, true);
                            m.set(q, p, true);
                        }
                    }
                }
                m
            }
            None => self.adjacency_definitional(),
        })
    }

    pub fn adjacent(&self, p: PointId, q: PointId) -> bool {
        self.adjacency_matrix().get(p, q)
    }

    fn quotient_data(&self) -> &QuotientLine {
        self.quotient.get_or_init(|| {
            let (qr, map) = self.ring.radical_quotient();
            if qr == self.ring {
                return QuotientLine::Identity;
            }
            let line = Arc::new(ProjectiveLine::new(&qr));
            let image = self
                .points
                .iter()
                .map(|pt| {
                    line.index_of_pair(map.apply(pt.a), map.apply(pt.b))
                        .expect("ring epimorphisms carry admissible pairs to admissible pairs")
                })
                .collect();
            QuotientLine::Proper { line, map, image }
        })
    }

    /// Line over `R / rad R`; `None` when the radical is zero.
    pub fn quotient_line(&self) -> Option<&Arc<ProjectiveLine>> {
        match self.quotient_data() {
            QuotientLine::Identity => None,
            QuotientLine::Proper { line, .. } => Some(line),
        }
    }

    /// The canonical epimorphism onto `R / rad R`; `None` when the radical is zero.
    pub fn quotient_map(&self) -> Option<&RingMapTable> {
        match self.quotient_data() {
            QuotientLine::Identity => None,
            QuotientLine::Proper { map, .. } => Some(map),
        }
    }

    /// `π̃(p)`, as an index into [`ProjectiveLine::quotient_line`] (or into this
    /// line when the radical is zero).
    pub fn project_point(&self, p: PointId) -> PointId {
        match self.quotient_data() {
            QuotientLine::Identity => p,
            QuotientLine::Proper { image, .. } => image[p],
        }
    }

    pub fn quotient_len(&self) -> usize {
        self.quotient_line().map(|l| l.len()).unwrap_or(self.len())
    }

    fn bartolone_table(&self) -> &[Option<(Elem, Elem)>] {
        self.bartolone.get_or_init(|| {
            let r = &self.ring;
            let mut table = vec![None; self.len()];
            for a in r.elements() {
                for b in r.elements() {
                    let first = r.sub(r.mul(a, b), r.one());
                    if let Some(p) = self.index_of_pair(first, a) {
                        table[p].get_or_insert((a, b));
                    }
                }
            }
            table
        })
    }

    /// Some `(a, b)` with `p = R(ab - 1, a)`.
    pub fn bartolone_repr(&self, p: PointId) -> Result<(Elem, Elem)> {
        self.bartolone_table()[p].ok_or_else(|| {
            Error::TheoremViolation(format!("{} has no representation R(ab-1, a)", self.format_point(p)))
        })
    }

    /// Every `(a, b)` whose pair `(ab - 1, a)` represents `p`.
    pub fn bartolone_witnesses(&self, p: PointId) -> Vec<(Elem, Elem)> {
        let r = &self.ring;
        let mut out = Vec::new();
        for a in r.elements() {
            for b in r.elements() {
                if self.index_of_pair(r.sub(r.mul(a, b), r.one()), a) == Some(p) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// View through a ring decomposition `R ≅ R_1 x ... x R_m`.
    pub fn product_view_for(&self, decomposition: Decomposition) -> ProductView {
        let factors: Vec<Arc<ProjectiveLine>> =
            decomposition.factors.iter().map(|f| Arc::new(ProjectiveLine::new(f))).collect();
        let split: Vec<Vec<PointId>> = self
            .points
            .iter()
            .map(|pt| {
                factors
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        l.index_of_pair(decomposition.project(pt.a, i), decomposition.project(pt.b, i))
                            .expect("projections of admissible pairs are admissible")
                    })
                    .collect()
            })
            .collect();
        let sizes: Vec<usize> = factors.iter().map(|l| l.len()).collect();
        let total: usize = sizes.iter().product();
        assert_eq!(total, self.len(), "a line over a product is the product of the component lines");
        let join = (0..total)
            .map(|idx| {
                let parts = mixed_radix_digits(idx, &sizes);
                let a: Vec<Elem> = parts.iter().zip(&factors).map(|(&x, l)| l.point(x).a).collect();
                let b: Vec<Elem> = parts.iter().zip(&factors).map(|(&x, l)| l.point(x).b).collect();
                self.index_of_pair(decomposition.join(&a), decomposition.join(&b)).expect("joined pairs are admissible")
            })
            .collect();
        ProductView { decomposition, factors, split, join }
    }

    /// Componentwise view for product rings (and commutative rings that split).
    pub fn product_view(&self) -> Option<&ProductView> {
        self.product
            .get_or_init(|| self.ring.direct_factors().map(|d| self.product_view_for(d)))
            .as_ref()
    }

    pub fn split_product_point(&self, p: PointId) -> Result<Vec<PointId>> {
        let view = self.product_view().ok_or_else(|| Error::WrongRingFamily("ring is not a product".into()))?;
        Ok(view.split(p).to_vec())
    }

    pub fn join_product_point(&self, parts: &[PointId]) -> Result<PointId> {
        let view = self.product_view().ok_or_else(|| Error::WrongRingFamily("ring is not a product".into()))?;
        if parts.len() != view.factors.len() {
            return Err(Error::DimensionMismatch { expected: view.factors.len(), found: parts.len() });
        }
        if let Some((i, _)) = parts.iter().enumerate().find(|(i, &x)| x >= view.factors[*i].len()) {
            return Err(Error::InvalidParameter(format!("component {i} out of range")));
        }
        Ok(view.join(parts))
    }

    pub fn to_json(&self) -> LineJson {
        LineJson {
            format: 1,
            ring: self.ring.meta(),
            points: self
                .points
                .iter()
                .map(|pt| PointJson { rep_a: self.ring.format_elem(pt.a), rep_b: self.ring.format_elem(pt.b) })
                .collect(),
            distant_edges: self.distant_matrix().edges(),
            parallel_classes: self.parallel_classes().to_vec(),
            adjacency_edges: self.adjacency_matrix().edges(),
        }
    }
}

#[derive(Serialize)]
pub struct PointJson {
    pub rep_a: String,
    pub rep_b: String,
}

#[derive(Serialize)]
pub struct LineJson {
    pub format: u32,
    pub ring: RingMeta,
    pub points: Vec<PointJson>,
    pub distant_edges: Vec<(usize, usize)>,
    pub parallel_classes: Vec<Vec<PointId>>,
    pub adjacency_edges: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(r: &FiniteRing) -> ProjectiveLine {
        ProjectiveLine::new(r)
    }

    #[test]
    fn small_lines() {
        let f2 = FiniteRing::gf(2, 1).unwrap();
        let l = line(&f2);
        assert_eq!(l.points().iter().map(|p| p.rep()).collect::<Vec<_>>(), [(0, 1), (1, 0), (1, 1)]);
        assert_eq!(l.distant_matrix().regular_degree(), Some(2));
        let z4 = FiniteRing::zmod(4).unwrap();
        let l4 = line(&z4);
        assert_eq!(l4.len(), 6);
        assert_eq!(l4.point_of(3, 0).unwrap(), l4.point_of(1, 0).unwrap());
        assert_eq!(l4.point_of(1, 2).unwrap(), l4.point_of(3, 2).unwrap());
        assert!(l4.point_of(2, 2).is_err());
        assert_eq!(l4.distant_matrix().regular_degree(), Some(4));
    }

    #[test]
    fn admissibility_examples() {
        let z4 = FiniteRing::zmod(4).unwrap();
        assert!(is_admissible(&z4, 1, 2));
        assert!(!is_admissible(&z4, 2, 2));
        assert!(completion_search(&z4, 2, 2).is_none());
        let m = FiniteRing::matrix(2, &FiniteRing::gf(2, 1).unwrap()).unwrap();
        let w = admissible_witness(&m, m.one(), 0).unwrap();
        assert!(m.mat2_is_invertible(&[m.one(), 0, w.0, w.1]));
    }

    #[test]
    fn parallel_classes_of_z4() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let l = line(&z4);
        let p = l.point_of(1, 0).unwrap();
        let q = l.point_of(1, 2).unwrap();
        assert!(l.parallel(p, q));
        assert!(!l.distant(p, q));
        assert_eq!(l.parallel_classes().iter().map(|c| c.len()).collect::<Vec<_>>(), [2, 2, 2]);
        let f2_line = l.quotient_line().unwrap();
        assert_eq!(f2_line.len(), 3);
        assert_eq!(l.project_point(q), f2_line.point_of(1, 0).unwrap());
    }

    #[test]
    fn adjacency_on_local_and_matrix_rings() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let l = line(&z4);
        assert_eq!(l.adjacency_matrix(), l.distant_matrix());
        let m = FiniteRing::matrix(2, &FiniteRing::gf(2, 1).unwrap()).unwrap();
        let lm = line(&m);
        assert_eq!(lm.len(), 35);
        assert_eq!(lm.adjacency_matrix().regular_degree(), Some(18));
        assert_eq!(lm.distant_matrix().regular_degree(), Some(16));
        assert_eq!(*lm.adjacency_matrix(), lm.adjacency_definitional());
    }

    #[test]
    fn bartolone_examples() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let l = line(&z6);
        for p in l.ids() {
            let (a, b) = l.bartolone_repr(p).unwrap();
            assert_eq!(l.index_of_pair(z6.sub(z6.mul(a, b), 1), a), Some(p));
        }
        let p01 = l.point_of(0, 1).unwrap();
        assert!(l.bartolone_witnesses(p01).contains(&(1, 1)));
    }

    #[test]
    fn product_split_and_join() {
        let f2 = FiniteRing::gf(2, 1).unwrap();
        let r = FiniteRing::product(&[f2.clone(), f2]).unwrap();
        let l = line(&r);
        assert_eq!(l.len(), 9);
        for p in l.ids() {
            let parts = l.split_product_point(p).unwrap();
            assert_eq!(l.join_product_point(&parts).unwrap(), p);
        }
        let z6 = FiniteRing::zmod(6).unwrap();
        let l6 = line(&z6);
        assert_eq!(l6.product_view().unwrap().factor_sizes(), [3, 4]);
        assert!(line(&FiniteRing::zmod(4).unwrap()).split_product_point(0).is_err());
    }

    #[test]
    fn point_literals() {
        let m = FiniteRing::matrix(2, &FiniteRing::gf(2, 1).unwrap()).unwrap();
        let l = line(&m);
        for p in l.ids() {
            assert_eq!(l.parse_point(&l.format_point(p)).unwrap(), p);
        }
    }
}
