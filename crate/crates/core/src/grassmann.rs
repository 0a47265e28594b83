//! Subspaces over finite fields, the Grassmann model of lines over matrix
//! rings, partial linear spaces and their Segre products.

use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::FieldMatrix;
use crate::projline::{PointId, ProductView, ProjectiveLine};
use crate::ring::{mixed_radix_digits, Elem, FiniteRing, MatrixModel};

/// Default upper bound on the point count for strong-subspace enumeration.
pub const STRONG_SUBSPACE_CAP: usize = 200;

/// A subspace of `K^m`, held by its reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: FiniteRing,
    ambient: usize,
    basis: FieldMatrix,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, &self.basis).cmp(&(other.ambient, &other.basis))
    }
}

#[derive(Serialize)]
pub struct SubspaceJson {
    pub q: usize,
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Elem>>,
}

impl Subspace {
    /// Row space of `rows` (any spanning set).
    pub fn span(field: &FiniteRing, rows: &FieldMatrix) -> Self {
        let mut basis = rows.clone();
        basis.rref(field);
        Subspace { field: field.clone(), ambient: rows.cols(), basis }
    }

    pub fn zero(field: &FiniteRing, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: FieldMatrix::zeros(0, ambient) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> &FiniteRing {
        &self.field
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.field, &self.basis.vstack(&other.basis))
    }

    /// All vectors `y` with `x · y = 0` for every `x` in the subspace.
    pub fn orthogonal(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::span(&self.field, &FieldMatrix::identity(&self.field, self.ambient));
        }
        let k = self.basis.right_kernel(&self.field);
        Subspace { field: self.field.clone(), ambient: self.ambient, basis: k }
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let perp = self.orthogonal().sum(&other.orthogonal());
        perp.orthogonal()
    }

    pub fn dim_intersection(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        let row = FieldMatrix::from_rows(1, self.ambient, v.to_vec());
        self.basis.vstack(&row).rank(&self.field) == self.dim()
    }

    /// Every vector of the subspace, in coefficient order.
    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        let q = self.field.order();
        let d = self.dim();
        let count = q.pow(d as u32);
        (0..count)
            .map(|code| {
                let coeffs = mixed_radix_digits(code, &vec![q; d]);
                let mut v = vec![0; self.ambient];
                for (r, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (slot, &x) in v.iter_mut().zip(self.basis.row(r)) {
                        *slot = self.field.add(*slot, self.field.mul(c as Elem, x));
                    }
                }
                v
            })
            .collect()
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson { q: self.field.order(), ambient_dim: self.ambient, basis: self.basis.row_vecs() }
    }
}

/// `n - dim(P ∩ Q)`.
pub fn grassmann_distance(p: &Subspace, q: &Subspace) -> Result<usize> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    Ok(p.dim() - p.dim_intersection(q))
}

/// `dim(P ∩ Q) = n - 1`.
pub fn adjacent_subspaces(p: &Subspace, q: &Subspace) -> bool {
    p.dim() == q.dim() && p.dim_intersection(q) + 1 == p.dim()
}

/// All `k`-dimensional subspaces of `K^m`, sorted.
pub fn all_subspaces(field: &FiniteRing, m: usize, k: usize) -> Vec<Subspace> {
    let q = field.order();
    let mut out = Vec::new();
    for pivots in combinations(m, k) {
        // free slots: (row i, column j) with j > pivot_i and j not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| ((pivots[i] + 1)..m).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        let count = q.pow(free.len() as u32);
        for code in 0..count {
            let digits = mixed_radix_digits(code, &vec![q; free.len()]);
            let mut b = FieldMatrix::zeros(k, m);
            for (i, &p) in pivots.iter().enumerate() {
                b.set(i, p, field.one());
            }
            for (&(i, j), &d) in free.iter().zip(&digits) {
                b.set(i, j, d as Elem);
            }
            out.push(Subspace { field: field.clone(), ambient: m, basis: b });
        }
    }
    out.sort();
    out
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// A finite point-line geometry in which two points share at most one line.
#[derive(Debug)]
pub struct PartialLinearSpace {
    num_points: usize,
    lines: Vec<Vec<usize>>,
    lines_through: Vec<Vec<usize>>,
    line_of: HashMap<(usize, usize), usize>,
    factors: Vec<Arc<PartialLinearSpace>>,
    directions: Vec<usize>,
    components: OnceLock<Vec<usize>>,
}

#[derive(Serialize)]
pub struct SpaceJson<'a> {
    pub format: u32,
    pub points: usize,
    pub lines: &'a [Vec<usize>],
}

impl PartialLinearSpace {
    pub fn new(num_points: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut lines: Vec<Vec<usize>> = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        lines.sort();
        lines.dedup();
        Self::build(num_points, lines, Vec::new(), Vec::new())
    }

    fn build(num_points: usize, lines: Vec<Vec<usize>>, factors: Vec<Arc<PartialLinearSpace>>, directions: Vec<usize>) -> Result<Self> {
        let mut lines_through = vec![Vec::new(); num_points];
        let mut line_of = HashMap::new();
        for (li, l) in lines.iter().enumerate() {
            if l.len() < 2 {
                return Err(Error::InvalidParameter(format!("line {li} has fewer than two points")));
            }
            for (i, &p) in l.iter().enumerate() {
                if p >= num_points {
                    return Err(Error::InvalidParameter(format!("line {li} mentions point {p}")));
                }
                lines_through[p].push(li);
                for &q in &l[i + 1..] {
                    if line_of.insert((p, q), li).is_some() {
                        return Err(Error::InvalidParameter(format!("points {p} and {q} share two lines")));
                    }
                }
            }
        }
        Ok(PartialLinearSpace { num_points, lines, lines_through, line_of, factors, directions, components: OnceLock::new() })
    }

    /// Segre product: points are tuples (first factor most significant) and
    /// each line varies in exactly one coordinate along a line of that factor.
    pub fn segre_product(spaces: &[Arc<PartialLinearSpace>]) -> Result<Self> {
        if spaces.is_empty() {
            return Err(Error::EmptyProduct);
        }
        let sizes: Vec<usize> = spaces.iter().map(|s| s.num_points).collect();
        let total: usize = sizes.iter().product();
        let mut strides = vec![1usize; sizes.len()];
        for i in (0..sizes.len() - 1).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        let mut lines = Vec::new();
        let mut directions = Vec::new();
        for base in 0..total {
            let digits = mixed_radix_digits(base, &sizes);
            for (j, space) in spaces.iter().enumerate() {
                // one representative per line: the tuple with coordinate j = 0
                if digits[j] != 0 {
                    continue;
                }
                for l in &space.lines {
                    let mut pts: Vec<usize> = l.iter().map(|&x| base + x * strides[j]).collect();
                    pts.sort_unstable();
                    lines.push(pts);
                    directions.push(j);
                }
            }
        }
        let mut order: Vec<usize> = (0..lines.len()).collect();
        order.sort_by(|&a, &b| lines[a].cmp(&lines[b]));
        let lines_sorted = order.iter().map(|&i| lines[i].clone()).collect();
        let directions = order.iter().map(|&i| directions[i]).collect();
        Self::build(total, lines_sorted, spaces.to_vec(), directions)
    }

    /// Disjoint union, second copy shifted past the first.
    pub fn disjoint_union(a: &PartialLinearSpace, b: &PartialLinearSpace) -> Result<Self> {
        let mut lines = a.lines.clone();
        lines.extend(b.lines.iter().map(|l| l.iter().map(|&x| x + a.num_points).collect()));
        Self::new(a.num_points + b.num_points, lines)
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.lines_through[p]
    }

    pub fn line_through(&self, p: usize, q: usize) -> Option<usize> {
        let key = if p < q { (p, q) } else { (q, p) };
        self.line_of.get(&key).copied()
    }

    pub fn collinear(&self, p: usize, q: usize) -> bool {
        p != q && self.line_through(p, q).is_some()
    }

    pub fn line_index(&self, points: &[usize]) -> Option<usize> {
        if points.len() < 2 {
            return None;
        }
        let li = self.line_through(points[0], points[1])?;
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        (self.lines[li] == sorted).then_some(li)
    }

    /// Segre factors; empty for spaces not built as products.
    pub fn factors(&self) -> &[Arc<PartialLinearSpace>] {
        &self.factors
    }

    pub fn factor_sizes(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.num_points).collect()
    }

    /// Coordinate a product line varies in.
    pub fn direction(&self, line: usize) -> Option<usize> {
        self.directions.get(line).copied()
    }

    pub fn coordinates(&self, p: usize) -> Vec<usize> {
        mixed_radix_digits(p, &self.factor_sizes())
    }

    pub fn point_from_coordinates(&self, coords: &[usize]) -> usize {
        coords.iter().zip(self.factor_sizes()).fold(0, |acc, (&c, s)| acc * s + c)
    }

    pub fn to_json(&self) -> SpaceJson<'_> {
        SpaceJson { format: 1, points: self.num_points, lines: &self.lines }
    }

    /// Smallest superset of `seed` closed under lines, if it stays a set of
    /// mutually collinear points.
    fn strong_closure(&self, seed: &[usize]) -> Option<Vec<usize>> {
        let mut set: Vec<usize> = seed.to_vec();
        set.sort_unstable();
        set.dedup();
        let mut members: HashSet<usize> = set.iter().copied().collect();
        let mut i = 0;
        while i < set.len() {
            for j in 0..i {
                let (p, q) = (set[i], set[j]);
                let li = self.line_through(p, q)?;
                for &x in &self.lines[li] {
                    if members.insert(x) {
                        set.push(x);
                    }
                }
            }
            i += 1;
        }
        set.sort_unstable();
        Some(set)
    }

    /// Inclusion-maximal strong subspaces (points on no line count as singletons).
    pub fn strong_subspaces(&self) -> Result<Vec<Vec<usize>>> {
        self.strong_subspaces_capped(STRONG_SUBSPACE_CAP)
    }

    pub fn strong_subspaces_capped(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        if self.num_points > cap {
            return Err(Error::CapExceeded { what: "strong subspace enumeration".into(), size: self.num_points, cap });
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut stack: Vec<Vec<usize>> = Vec::new();
        let mut maximal = Vec::new();
        for l in &self.lines {
            if seen.insert(l.clone()) {
                stack.push(l.clone());
            }
        }
        while let Some(s) = stack.pop() {
            let mut inside = FixedBitSet::with_capacity(self.num_points);
            s.iter().for_each(|&x| inside.insert(x));
            let mut extended = false;
            for c in 0..self.num_points {
                if inside.contains(c) || !s.iter().all(|&x| self.collinear(x, c)) {
                    continue;
                }
                let mut seed = s.clone();
                seed.push(c);
                if let Some(t) = self.strong_closure(&seed) {
                    extended = true;
                    if seen.insert(t.clone()) {
                        stack.push(t);
                    }
                }
            }
            if !extended {
                maximal.push(s);
            }
        }
        for p in 0..self.num_points {
            if self.lines_through[p].is_empty() {
                maximal.push(vec![p]);
            }
        }
        maximal.sort();
        Ok(maximal)
    }

    /// Union-find labels of lines: two lines share a label when a chain of
    /// strong subspaces overlapping in at least two points links them.
    fn line_components(&self) -> &[usize] {
        self.components.get_or_init(|| {
            let mut parent: Vec<usize> = (0..self.lines.len()).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for p in 0..self.num_points {
                let through = &self.lines_through[p];
                for (i, &l1) in through.iter().enumerate() {
                    for &l2 in &through[i + 1..] {
                        if find(&mut parent, l1) == find(&mut parent, l2) {
                            continue;
                        }
                        let cross = self.lines[l1]
                            .iter()
                            .all(|&x| self.lines[l2].iter().all(|&y| x == y || self.collinear(x, y)));
                        if !cross {
                            continue;
                        }
                        let seed: Vec<usize> = self.lines[l1].iter().chain(&self.lines[l2]).copied().collect();
                        if self.strong_closure(&seed).is_some() {
                            let (a, b) = (find(&mut parent, l1), find(&mut parent, l2));
                            parent[a] = b;
                        }
                    }
                }
            }
            (0..self.lines.len()).map(|l| find(&mut parent, l)).collect()
        })
    }

    /// Number of `≈`-classes among strong subspaces through `p` with at least two points.
    pub fn approx_classes_at(&self, p: usize) -> usize {
        let comps = self.line_components();
        let mut labels: Vec<usize> = self.lines_through[p].iter().map(|&l| comps[l]).collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.lines.is_empty() {
            return self.num_points <= 1;
        }
        if self.lines_through.iter().any(|l| l.is_empty()) {
            return false;
        }
        let comps = self.line_components();
        comps.iter().all(|&c| c == comps[0])
    }
}

/// A point bijection carrying lines onto lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collineation {
    table: Vec<usize>,
}

impl Collineation {
    pub fn new(source: &PartialLinearSpace, target: &PartialLinearSpace, table: Vec<usize>) -> Result<Self> {
        if source.num_points != target.num_points || table.len() != source.num_points {
            return Err(Error::NotACollineation("point counts differ".into()));
        }
        let mut seen = vec![false; table.len()];
        for &x in &table {
            if x >= table.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotACollineation("not a bijection".into()));
            }
        }
        if source.lines.len() != target.lines.len() {
            return Err(Error::NotACollineation("line counts differ".into()));
        }
        let mut hit = vec![false; target.lines.len()];
        for l in &source.lines {
            let img: Vec<usize> = l.iter().map(|&x| table[x]).collect();
            match target.line_index(&img) {
                Some(li) if !std::mem::replace(&mut hit[li], true) => {}
                _ => return Err(Error::NotACollineation("a line is not mapped onto a line".into())),
            }
        }
        Ok(Collineation { table })
    }

    pub fn identity(space: &PartialLinearSpace) -> Self {
        Collineation { table: (0..space.num_points).collect() }
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, p: usize) -> usize {
        self.table[p]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Collineation) -> Collineation {
        Collineation { table: self.table.iter().map(|&x| next.table[x]).collect() }
    }

    pub fn inverse(&self) -> Collineation {
        let mut inv = vec![0; self.table.len()];
        for (a, &b) in self.table.iter().enumerate() {
            inv[b] = a;
        }
        Collineation { table: inv }
    }
}

/// `(σ, f_1, ..., f_m)` with `f(c)_{σ(k)} = f_k(c_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCollineationParts {
    pub sigma: Vec<usize>,
    pub components: Vec<Collineation>,
}

/// Assembles a collineation of Segre products from a permutation and
/// component collineations `f_k : source_k -> target_{σ(k)}`.
pub fn compose_product_collineation(
    source: &PartialLinearSpace,
    target: &PartialLinearSpace,
    parts: &ProductCollineationParts,
) -> Result<Collineation> {
    let m = source.factors.len();
    if m == 0 || target.factors.len() != m || parts.sigma.len() != m || parts.components.len() != m {
        return Err(Error::InvalidParameter("factor counts do not match".into()));
    }
    let table = (0..source.num_points)
        .map(|p| {
            let c = source.coordinates(p);
            let mut out = vec![0; m];
            for k in 0..m {
                out[parts.sigma[k]] = parts.components[k].apply(c[k]);
            }
            target.point_from_coordinates(&out)
        })
        .collect();
    Collineation::new(source, target, table)
}

/// Recovers `σ` and the component collineations of a collineation between
/// Segre products of strongly connected spaces with at least one line.
pub fn decompose_product_collineation(
    source: &PartialLinearSpace,
    target: &PartialLinearSpace,
    f: &Collineation,
) -> Result<ProductCollineationParts> {
    let m = source.factors.len();
    if m == 0 || target.factors.is_empty() {
        return Err(Error::InvalidParameter("both spaces must be Segre products".into()));
    }
    for space in source.factors.iter().chain(&target.factors) {
        if space.lines.is_empty() || !space.is_strongly_connected() {
            return Err(Error::InvalidParameter("factors must be strongly connected with a line".into()));
        }
    }
    let f = Collineation::new(source, target, f.table.clone())?;
    if target.factors.len() != m {
        return Err(Error::TheoremViolation(format!("{m} source factors but {} target factors", target.factors.len())));
    }
    let mut sigma = vec![usize::MAX; m];
    for &l in source.lines_through(0) {
        let img: Vec<usize> = source.lines[l].iter().map(|&x| f.apply(x)).collect();
        let tl = target.line_index(&img).expect("validated collineation");
        let (k, j) = (source.directions[l], target.directions[tl]);
        if sigma[k] != usize::MAX && sigma[k] != j {
            return Err(Error::TheoremViolation("lines of one direction map to several directions".into()));
        }
        sigma[k] = j;
    }
    let mut hit = vec![false; m];
    for &s in &sigma {
        if s == usize::MAX || std::mem::replace(&mut hit[s], true) {
            return Err(Error::TheoremViolation("directions at the base point do not form a permutation".into()));
        }
    }
    for (l, pts) in source.lines.iter().enumerate() {
        let img: Vec<usize> = pts.iter().map(|&x| f.apply(x)).collect();
        let tl = target.line_index(&img).expect("validated collineation");
        if target.directions[tl] != sigma[source.directions[l]] {
            return Err(Error::TheoremViolation(format!("line {l} changes direction inconsistently")));
        }
    }
    let base = source.coordinates(0);
    let mut components = Vec::with_capacity(m);
    for k in 0..m {
        let sk = source.factors[k].num_points;
        let tk = target.factors[sigma[k]].num_points;
        if sk != tk {
            return Err(Error::TheoremViolation(format!("factor {k} and its image differ in size")));
        }
        let table: Vec<usize> = (0..sk)
            .map(|c| {
                let mut coords = base.clone();
                coords[k] = c;
                target.coordinates(f.apply(source.point_from_coordinates(&coords)))[sigma[k]]
            })
            .collect();
        let comp = Collineation::new(&source.factors[k], &target.factors[sigma[k]], table)
            .map_err(|e| Error::TheoremViolation(format!("component {k} is not a collineation: {e}")))?;
        components.push(comp);
    }
    for p in 0..source.num_points {
        let c = source.coordinates(p);
        let img = target.coordinates(f.apply(p));
        for k in 0..m {
            if img[sigma[k]] != components[k].apply(c[k]) {
                return Err(Error::TheoremViolation(format!("point {p} does not factor through the components")));
            }
        }
    }
    Ok(ProductCollineationParts { sigma, components })
}

/// The Grassmann space of `n`-subspaces of `K^{2n}` with pencils as lines.
#[derive(Debug)]
pub struct GrassmannSpace {
    field: FiniteRing,
    n: usize,
    points: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    space: Arc<PartialLinearSpace>,
}

impl GrassmannSpace {
    pub fn new(field: &FiniteRing, n: usize) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::NotAField);
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let points = all_subspaces(field, 2 * n, n);
        let index: HashMap<Subspace, usize> = points.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut lines = Vec::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if seen.contains(&(i, j)) || !adjacent_subspaces(&points[i], &points[j]) {
                    continue;
                }
                let lower = points[i].intersection(&points[j]);
                let upper = points[i].sum(&points[j]);
                let mut members: Vec<usize> = upper
                    .vectors()
                    .into_iter()
                    .filter(|v| !lower.contains_vector(v))
                    .map(|v| {
                        let z = lower.sum(&Subspace::span(field, &FieldMatrix::from_rows(1, 2 * n, v)));
                        index[&z]
                    })
                    .collect();
                members.sort_unstable();
                members.dedup();
                for (a, &x) in members.iter().enumerate() {
                    for &y in &members[a + 1..] {
                        seen.insert((x, y));
                    }
                }
                lines.push(members);
            }
        }
        let space = Arc::new(PartialLinearSpace::new(points.len(), lines)?);
        Ok(GrassmannSpace { field: field.clone(), n, points, index, space })
    }

    pub fn field(&self) -> &FiniteRing {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Subspace] {
        &self.points
    }

    pub fn index_of(&self, x: &Subspace) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn space(&self) -> &Arc<PartialLinearSpace> {
        &self.space
    }

    /// `{X : X ⊇ M}` for an `(n-1)`-space `M`.
    pub fn star(&self, m: &Subspace) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.points[i].contains(m)).collect()
    }

    /// `{X : X ⊆ N}` for an `(n+1)`-space `N`.
    pub fn top(&self, upper: &Subspace) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| upper.contains(&self.points[i])).collect()
    }

    /// A set of at least two points is (contained in) a star when the
    /// intersection of its members still has dimension `n - 1`.
    pub fn is_star_like(&self, set: &[usize]) -> bool {
        let common = set.iter().skip(1).fold(self.points[set[0]].clone(), |acc, &i| acc.intersection(&self.points[i]));
        common.dim() + 1 == self.n
    }

    pub fn is_top_like(&self, set: &[usize]) -> bool {
        let span = set.iter().skip(1).fold(self.points[set[0]].clone(), |acc, &i| acc.sum(&self.points[i]));
        span.dim() == self.n + 1
    }
}

fn matrix_model_of(line: &ProjectiveLine) -> Result<MatrixModel> {
    line.ring()
        .matrix_model()
        .ok_or_else(|| Error::WrongRingFamily("the Grassmann model needs a matrix ring over a field".into()))
}

/// Row space of `[A | B]` for the representative `(A, B)` of `p`.
pub fn psi(line: &ProjectiveLine, p: PointId) -> Result<Subspace> {
    let model = matrix_model_of(line)?;
    let pt = line.point(p);
    Ok(Subspace::span(&model.field, &model.to_matrix(pt.a).hstack(&model.to_matrix(pt.b))))
}

/// The point whose image under [`psi`] is `x`.
pub fn psi_inverse(line: &ProjectiveLine, x: &Subspace) -> Result<PointId> {
    let model = matrix_model_of(line)?;
    let n = model.n;
    if x.ambient_dim() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, found: x.ambient_dim() });
    }
    if x.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.dim() });
    }
    let a = model.from_matrix(&x.basis().block(0, 0, n, n));
    let b = model.from_matrix(&x.basis().block(0, n, n, n));
    line.point_of(a, b).map_err(|_| Error::TheoremViolation("an n-subspace gave an inadmissible pair".into()))
}

/// `X^⊥` under the pairing `((v, w), (v', w')) -> v·v' + w·w'`.
pub fn annihilator(x: &Subspace) -> Subspace {
    x.orthogonal()
}

/// `X^⊥` for `X = psi(p)`, read off the second column `(V, W)` of the inverse
/// of the stored completion of `p`: the row space of `[V^T | W^T]`.
pub fn annihilator_formula(line: &ProjectiveLine, p: PointId) -> Result<Subspace> {
    let model = matrix_model_of(line)?;
    let pt = line.point(p);
    let inv = line
        .ring()
        .mat2_inverse(&pt.completion())
        .ok_or_else(|| Error::TheoremViolation("stored completion is not invertible".into()))?;
    let v = model.to_matrix(inv[1]).transpose();
    let w = model.to_matrix(inv[3]).transpose();
    Ok(Subspace::span(&model.field, &v.hstack(&w)))
}

/// `psi` tabulated over a whole line.
#[derive(Debug)]
pub struct PsiModel {
    pub grassmann: GrassmannSpace,
    to_space: Vec<usize>,
    to_line: Vec<PointId>,
}

impl PsiModel {
    pub fn new(line: &ProjectiveLine) -> Result<Self> {
        let model = matrix_model_of(line)?;
        let grassmann = GrassmannSpace::new(&model.field, model.n)?;
        let mut to_line = vec![usize::MAX; grassmann.points.len()];
        let mut to_space = Vec::with_capacity(line.len());
        for p in line.ids() {
            let idx = grassmann
                .index_of(&psi(line, p)?)
                .ok_or_else(|| Error::TheoremViolation("psi left the Grassmann space".into()))?;
            if to_line[idx] != usize::MAX {
                return Err(Error::TheoremViolation("psi is not injective".into()));
            }
            to_line[idx] = p;
            to_space.push(idx);
        }
        if to_line.contains(&usize::MAX) {
            return Err(Error::TheoremViolation("psi is not surjective".into()));
        }
        Ok(PsiModel { grassmann, to_space, to_line })
    }

    pub fn to_space(&self, p: PointId) -> usize {
        self.to_space[p]
    }

    pub fn to_line(&self, x: usize) -> PointId {
        self.to_line[x]
    }

    pub fn space(&self) -> &Arc<PartialLinearSpace> {
        self.grassmann.space()
    }
}

/// `p -> (psi_i(p_i))_i` for lines over products of matrix rings over fields.
pub struct ProductPsiModel {
    pub view: ProductView,
    pub components: Vec<PsiModel>,
    pub segre: PartialLinearSpace,
    to_space: Vec<usize>,
    to_line: Vec<PointId>,
}

impl ProductPsiModel {
    /// Uses the simple-component decomposition of the line's ring.
    pub fn new(line: &ProjectiveLine) -> Result<Self> {
        let decomposition = line
            .ring()
            .simple_components()
            .ok_or_else(|| Error::WrongRingFamily("ring is not a product of matrix rings over fields".into()))?;
        let view = line.product_view_for(decomposition);
        let components: Vec<PsiModel> = view.factors.iter().map(|l| PsiModel::new(l)).collect::<Result<_>>()?;
        let spaces: Vec<Arc<PartialLinearSpace>> = components.iter().map(|c| c.space().clone()).collect();
        let segre = PartialLinearSpace::segre_product(&spaces)?;
        let mut to_line = vec![usize::MAX; segre.num_points()];
        let to_space: Vec<usize> = line
            .ids()
            .map(|p| {
                let coords: Vec<usize> = view.split(p).iter().zip(&components).map(|(&x, c)| c.to_space(x)).collect();
                let s = segre.point_from_coordinates(&coords);
                to_line[s] = p;
                s
            })
            .collect();
        Ok(ProductPsiModel { view, components, segre, to_space, to_line })
    }

    pub fn to_space(&self, p: PointId) -> usize {
        self.to_space[p]
    }

    pub fn to_line(&self, x: usize) -> PointId {
        self.to_line[x]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FiniteRing {
        FiniteRing::gf(2, 1).unwrap()
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(all_subspaces(&f2(), 4, 2).len(), 35);
        assert_eq!(all_subspaces(&FiniteRing::gf(3, 1).unwrap(), 4, 2).len(), 130);
        assert_eq!(all_subspaces(&f2(), 4, 1).len(), 15);
        assert_eq!(all_subspaces(&f2(), 3, 0).len(), 1);
    }

    #[test]
    fn intersections_and_sums() {
        let f = f2();
        let x = Subspace::span(&f, &FieldMatrix::from_rows(2, 4, vec![1, 0, 0, 0, 0, 1, 0, 0]));
        let y = Subspace::span(&f, &FieldMatrix::from_rows(2, 4, vec![0, 1, 0, 0, 0, 0, 1, 0]));
        assert_eq!(x.dim_intersection(&y), 1);
        assert_eq!(x.intersection(&y).dim(), 1);
        assert!(adjacent_subspaces(&x, &y));
        assert_eq!(grassmann_distance(&x, &y).unwrap(), 1);
        assert_eq!(grassmann_distance(&x, &x).unwrap(), 0);
        assert_eq!(annihilator(&annihilator(&x)), x);
    }

    #[test]
    fn grassmann_lines() {
        let g = GrassmannSpace::new(&f2(), 2).unwrap();
        assert_eq!(g.space().lines().len(), 105);
        assert!(g.space().lines().iter().all(|l| l.len() == 3));
        let g1 = GrassmannSpace::new(&f2(), 1).unwrap();
        assert_eq!(g1.space().lines(), &[vec![0, 1, 2]]);
        assert!(g1.space().is_strongly_connected());
    }

    #[test]
    fn stars_and_tops() {
        let g = GrassmannSpace::new(&f2(), 2).unwrap();
        let maximal = g.space().strong_subspaces().unwrap();
        assert_eq!(maximal.len(), 30);
        assert!(maximal.iter().all(|s| s.len() == 7));
        let stars = maximal.iter().filter(|s| g.is_star_like(s)).count();
        let tops = maximal.iter().filter(|s| g.is_top_like(s)).count();
        assert_eq!((stars, tops), (15, 15));
        assert!(g.space().is_strongly_connected());
        assert_eq!(g.space().approx_classes_at(0), 1);
    }

    #[test]
    fn segre_of_two_lines() {
        let l = Arc::new(PartialLinearSpace::new(3, vec![vec![0, 1, 2]]).unwrap());
        let s = PartialLinearSpace::segre_product(&[l.clone(), l.clone()]).unwrap();
        assert_eq!((s.num_points(), s.lines().len()), (9, 6));
        assert_eq!(s.approx_classes_at(4), 2);
        let single = PartialLinearSpace::segre_product(&[l.clone()]).unwrap();
        assert_eq!(single.lines(), l.lines());
        let u = PartialLinearSpace::disjoint_union(&l, &l).unwrap();
        assert!(!u.is_strongly_connected());
        assert!(PartialLinearSpace::segre_product(&[]).is_err());
    }

    #[test]
    fn swap_decomposes_to_transposition() {
        let l = Arc::new(PartialLinearSpace::new(3, vec![vec![0, 1, 2]]).unwrap());
        let s = PartialLinearSpace::segre_product(&[l.clone(), l.clone()]).unwrap();
        let swap: Vec<usize> = (0..9).map(|p| (p % 3) * 3 + p / 3).collect();
        let f = Collineation::new(&s, &s, swap).unwrap();
        let parts = decompose_product_collineation(&s, &s, &f).unwrap();
        assert_eq!(parts.sigma, [1, 0]);
        assert_eq!(compose_product_collineation(&s, &s, &parts).unwrap(), f);
    }

    #[test]
    fn rejects_non_collineations() {
        let l = PartialLinearSpace::new(4, vec![vec![0, 1, 2]]).unwrap();
        assert!(Collineation::new(&l, &l, vec![3, 1, 2, 0]).is_err());
        assert!(Collineation::new(&l, &l, vec![0, 0, 2, 3]).is_err());
        assert!(Collineation::new(&l, &l, vec![1, 0, 2, 3]).is_ok());
    }
}
