//! Finite associative unital rings with dense element encodings.
//!
//! Every ring has elements `0..order`, with `0` the zero element. Encodings
//! are constructor specific and fixed:
//!
//! * `Z/n`: the residue itself.
//! * `GF(p^k)`: coefficient vector of the residue polynomial, `c0 + c1 p + ...`,
//!   modulo the lexicographically least monic irreducible of degree `k`.
//! * `M_n(K)`: row-major entries read as base-`|K|` digits, first entry most
//!   significant.
//! * `K[e]`: `a + b e` is encoded as `a + b |K|`.
//! * products: mixed radix over the factors, first factor most significant.
//!
//! Quotients and corner rings are derived from a parent ring and carry their
//! own coset (resp. corner) indexing.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::FieldMatrix;
use crate::ringmap::{MapKind, RingMapTable};

/// Dense encoding of a ring element.
pub type Elem = u32;

/// A 2x2 matrix over a ring, row-major: `[a, b, c, d]` is `[[a, b], [c, d]]`.
pub type Mat2 = [Elem; 4];

/// Default upper bound on ring orders accepted by the constructors.
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Rings up to this order get materialized operation tables on first use.
pub const TABLE_THRESHOLD: usize = 256;

const NO_INVERSE: Elem = Elem::MAX;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

/// Changes the order cap for subsequently constructed rings.
pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap, Ordering::Relaxed);
}

fn check_cap(order: u128) -> Result<usize> {
    let cap = order_cap();
    if order > cap as u128 {
        return Err(Error::OrderCap { order: order.min(usize::MAX as u128) as usize, cap });
    }
    Ok(order as usize)
}

/// Constructor descriptor of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StructureTag {
    ZMod { n: u32 },
    Gf { p: u32, k: u32 },
    Matrix { n: u32, base: Box<StructureTag> },
    Dual { base: Box<StructureTag> },
    Product { factors: Vec<StructureTag> },
    Quotient { parent: Box<StructureTag>, ideal: Vec<Elem> },
    Corner { parent: Box<StructureTag>, idempotent: Elem },
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureTag::ZMod { n } => write!(f, "zmod {n}"),
            StructureTag::Gf { p, k } => write!(f, "gf {}", p.pow(*k)),
            StructureTag::Matrix { n, base } => write!(f, "matrix {n} over {base}"),
            StructureTag::Dual { base } => write!(f, "dual over {base}"),
            StructureTag::Product { factors } => {
                write!(f, "product of [")?;
                for (i, t) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
            StructureTag::Quotient { parent, ideal } => {
                write!(f, "quotient of {parent} by an ideal of order {}", ideal.len())
            }
            StructureTag::Corner { parent, idempotent } => {
                write!(f, "corner of {parent} at idempotent {idempotent}")
            }
        }
    }
}

/// JSON-facing ring metadata.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RingMeta {
    pub order: usize,
    pub structure_tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus_poly: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<RingMeta>>,
}

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

enum Arith {
    ZMod { n: u32 },
    Gf { p: u32, k: u32, modulus: Vec<u32> },
    Matrix { n: usize, base: FiniteRing },
    Dual { base: FiniteRing },
    Product { factors: Vec<FiniteRing>, strides: Vec<usize> },
    Derived { parent: FiniteRing, reps: Vec<Elem>, reindex: Vec<Elem> },
}

struct RingInner {
    order: usize,
    one: Elem,
    tag: StructureTag,
    arith: Arith,
    tables: OnceLock<Option<Tables>>,
    inverses: OnceLock<Vec<Elem>>,
    units: OnceLock<Vec<Elem>>,
    commutative: OnceLock<bool>,
}

/// A finite associative ring with `1 != 0`. Cheap to clone; immutable.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingInner>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.0.tag, self.0.order)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.tag == other.0.tag
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    fn from_parts(order: usize, one: Elem, tag: StructureTag, arith: Arith) -> Self {
        FiniteRing(Arc::new(RingInner {
            order,
            one,
            tag,
            arith,
            tables: OnceLock::new(),
            inverses: OnceLock::new(),
            units: OnceLock::new(),
            commutative: OnceLock::new(),
        }))
    }

    /// The ring of integers modulo `n`.
    pub fn zmod(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("Z/{n} needs n >= 2")));
        }
        let order = check_cap(n as u128)?;
        Ok(Self::from_parts(order, 1, StructureTag::ZMod { n }, Arith::ZMod { n }))
    }

    /// The field with `p^k` elements.
    pub fn gf(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("GF(p^k) needs k >= 1".into()));
        }
        let order = check_cap((p as u128).checked_pow(k).unwrap_or(u128::MAX))?;
        let modulus = least_irreducible(p, k);
        Ok(Self::from_parts(order, 1, StructureTag::Gf { p, k }, Arith::Gf { p, k, modulus }))
    }

    /// The ring of `n x n` matrices over a field.
    pub fn matrix(n: usize, base: &FiniteRing) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix size must be at least 1".into()));
        }
        if !base.is_field() {
            return Err(Error::NotAField);
        }
        let order = check_cap((base.order() as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX))?;
        // identity: digits at positions i*n+i, first entry most significant
        let q = base.order() as u64;
        let mut one: u64 = 0;
        for k in 0..n * n {
            one *= q;
            if k % (n + 1) == 0 {
                one += base.one() as u64;
            }
        }
        let tag = StructureTag::Matrix { n: n as u32, base: Box::new(base.tag().clone()) };
        Ok(Self::from_parts(order, one as Elem, tag, Arith::Matrix { n, base: base.clone() }))
    }

    /// Dual numbers `K[e]` with `e^2 = 0` over a field.
    pub fn dual_numbers(base: &FiniteRing) -> Result<Self> {
        if !base.is_field() {
            return Err(Error::NotAField);
        }
        let order = check_cap((base.order() as u128) * (base.order() as u128))?;
        let tag = StructureTag::Dual { base: Box::new(base.tag().clone()) };
        Ok(Self::from_parts(order, base.one(), tag, Arith::Dual { base: base.clone() }))
    }

    /// Direct product with componentwise operations.
    pub fn product(factors: &[FiniteRing]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyProduct);
        }
        let total: u128 = factors.iter().try_fold(1u128, |acc, f| acc.checked_mul(f.order() as u128)).unwrap_or(u128::MAX);
        let order = check_cap(total)?;
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].order();
        }
        let one = factors.iter().zip(&strides).map(|(f, s)| f.one() as usize * s).sum::<usize>() as Elem;
        let tag = StructureTag::Product { factors: factors.iter().map(|f| f.tag().clone()).collect() };
        Ok(Self::from_parts(order, one, tag, Arith::Product { factors: factors.to_vec(), strides }))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn tag(&self) -> &StructureTag {
        &self.0.tag
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.order as Elem
    }

    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        self == other
    }

    pub fn meta(&self) -> RingMeta {
        let (modulus_poly, factors) = match &self.0.arith {
            Arith::Gf { modulus, .. } => (Some(modulus.clone()), None),
            Arith::Product { factors, .. } => (None, Some(factors.iter().map(|f| f.meta()).collect())),
            _ => (None, None),
        };
        RingMeta { order: self.order(), structure_tag: self.tag().to_string(), modulus_poly, factors }
    }

    /// Modulus of a `GF(p^k)` constructor, low coefficient first.
    pub fn modulus_poly(&self) -> Option<&[u32]> {
        match &self.0.arith {
            Arith::Gf { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    /// Characteristic prime and degree for fields built with [`FiniteRing::gf`].
    pub fn gf_params(&self) -> Option<(u32, u32)> {
        match &self.0.arith {
            Arith::Gf { p, k, .. } => Some((*p, *k)),
            _ => None,
        }
    }

    fn tables(&self) -> Option<&Tables> {
        self.0
            .tables
            .get_or_init(|| {
                let n = self.0.order;
                if n > TABLE_THRESHOLD {
                    return None;
                }
                let mut add = vec![0u8; n * n];
                let mut mul = vec![0u8; n * n];
                for a in 0..n {
                    for b in 0..n {
                        add[a * n + b] = self.raw_add(a as Elem, b as Elem) as u8;
                        mul[a * n + b] = self.raw_mul(a as Elem, b as Elem) as u8;
                    }
                }
                let neg = (0..n).map(|a| self.raw_neg(a as Elem) as u8).collect();
                Some(Tables { add, mul, neg })
            })
            .as_ref()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match self.tables() {
            Some(t) => t.add[a as usize * self.0.order + b as usize] as Elem,
            None => self.raw_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match self.tables() {
            Some(t) => t.mul[a as usize * self.0.order + b as usize] as Elem,
            None => self.raw_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match self.tables() {
            Some(t) => t.neg[a as usize] as Elem,
            None => self.raw_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of the integer `k` under `Z -> R`.
    pub fn from_int(&self, k: i64) -> Elem {
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.add(acc, self.one());
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    fn raw_add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::ZMod { n } => ((a as u64 + b as u64) % *n as u64) as Elem,
            Arith::Gf { p, .. } => digitwise(a, b, *p, |x, y| (x + y) % p),
            Arith::Matrix { base, .. } => {
                let q = base.order() as Elem;
                let len = self.matrix_len();
                combine_digits(a, b, q, len, |x, y| base.add(x, y))
            }
            Arith::Dual { base } => {
                let q = base.order() as Elem;
                combine_digits(a, b, q, 2, |x, y| base.add(x, y))
            }
            Arith::Product { factors, strides } => {
                let mut out = 0usize;
                for (f, s) in factors.iter().zip(strides) {
                    let x = (a as usize / s) % f.order();
                    let y = (b as usize / s) % f.order();
                    out += f.add(x as Elem, y as Elem) as usize * s;
                }
                out as Elem
            }
            Arith::Derived { parent, reps, reindex } => {
                reindex[parent.add(reps[a as usize], reps[b as usize]) as usize]
            }
        }
    }

    fn raw_neg(&self, a: Elem) -> Elem {
        match &self.0.arith {
            Arith::ZMod { n } => (*n - a) % *n,
            Arith::Gf { p, .. } => digitwise(a, 0, *p, |x, _| (p - x) % p),
            Arith::Matrix { base, .. } => {
                let q = base.order() as Elem;
                let len = self.matrix_len();
                combine_digits(a, 0, q, len, |x, _| base.neg(x))
            }
            Arith::Dual { base } => {
                let q = base.order() as Elem;
                combine_digits(a, 0, q, 2, |x, _| base.neg(x))
            }
            Arith::Product { factors, strides } => {
                let mut out = 0usize;
                for (f, s) in factors.iter().zip(strides) {
                    let x = (a as usize / s) % f.order();
                    out += f.neg(x as Elem) as usize * s;
                }
                out as Elem
            }
            Arith::Derived { parent, reps, reindex } => reindex[parent.neg(reps[a as usize]) as usize],
        }
    }

    fn raw_mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::ZMod { n } => ((a as u64 * b as u64) % *n as u64) as Elem,
            Arith::Gf { p, k, modulus } => gf_mul(a, b, *p, *k as usize, modulus),
            Arith::Matrix { n, base } => {
                let x = self.matrix_entries(a);
                let y = self.matrix_entries(b);
                let mut out = vec![0; n * n];
                for i in 0..*n {
                    for j in 0..*n {
                        let mut acc = 0;
                        for t in 0..*n {
                            acc = base.add(acc, base.mul(x[i * n + t], y[t * n + j]));
                        }
                        out[i * n + j] = acc;
                    }
                }
                self.matrix_from_entries(&out)
            }
            Arith::Dual { base } => {
                let q = base.order() as Elem;
                let (a0, a1) = (a % q, a / q);
                let (b0, b1) = (b % q, b / q);
                let lo = base.mul(a0, b0);
                let hi = base.add(base.mul(a0, b1), base.mul(a1, b0));
                lo + hi * q
            }
            Arith::Product { factors, strides } => {
                let mut out = 0usize;
                for (f, s) in factors.iter().zip(strides) {
                    let x = (a as usize / s) % f.order();
                    let y = (b as usize / s) % f.order();
                    out += f.mul(x as Elem, y as Elem) as usize * s;
                }
                out as Elem
            }
            Arith::Derived { parent, reps, reindex } => {
                reindex[parent.mul(reps[a as usize], reps[b as usize]) as usize]
            }
        }
    }

    fn matrix_len(&self) -> usize {
        match &self.0.arith {
            Arith::Matrix { n, .. } => n * n,
            _ => 0,
        }
    }

    /// Row-major entries of a matrix-ring element.
    pub fn matrix_entries(&self, a: Elem) -> Vec<Elem> {
        let Arith::Matrix { n, base } = &self.0.arith else {
            panic!("matrix_entries on a non-matrix ring");
        };
        let q = base.order() as Elem;
        let mut out = vec![0; n * n];
        let mut x = a;
        for slot in out.iter_mut().rev() {
            *slot = x % q;
            x /= q;
        }
        out
    }

    pub fn matrix_from_entries(&self, entries: &[Elem]) -> Elem {
        let Arith::Matrix { base, .. } = &self.0.arith else {
            panic!("matrix_from_entries on a non-matrix ring");
        };
        let q = base.order() as Elem;
        entries.iter().fold(0, |acc, &e| acc * q + e)
    }

    /// `(n, base field)` when this ring was built as a matrix ring.
    pub fn matrix_params(&self) -> Option<(usize, &FiniteRing)> {
        match &self.0.arith {
            Arith::Matrix { n, base } => Some((*n, base)),
            _ => None,
        }
    }

    /// `M_n(K)` view of this ring: matrix rings directly, fields as `n = 1`.
    pub fn matrix_model(&self) -> Option<MatrixModel> {
        match &self.0.arith {
            Arith::Matrix { n, base } => Some(MatrixModel { ring: self.clone(), n: *n, field: base.clone() }),
            _ if self.is_field() => Some(MatrixModel { ring: self.clone(), n: 1, field: self.clone() }),
            _ => None,
        }
    }

    /// Factors of a product ring.
    pub fn factors(&self) -> Option<&[FiniteRing]> {
        match &self.0.arith {
            Arith::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Component `i` of a product-ring element.
    pub fn component(&self, a: Elem, i: usize) -> Elem {
        let Arith::Product { factors, strides } = &self.0.arith else {
            panic!("component on a non-product ring");
        };
        ((a as usize / strides[i]) % factors[i].order()) as Elem
    }

    /// Inverse of [`FiniteRing::component`] over all factors.
    pub fn join(&self, parts: &[Elem]) -> Elem {
        let Arith::Product { strides, .. } = &self.0.arith else {
            panic!("join on a non-product ring");
        };
        parts.iter().zip(strides).map(|(&x, s)| x as usize * s).sum::<usize>() as Elem
    }

    /// Element with `x` in slot `i` and zero elsewhere.
    pub fn inject(&self, i: usize, x: Elem) -> Elem {
        let Arith::Product { strides, .. } = &self.0.arith else {
            panic!("inject on a non-product ring");
        };
        (x as usize * strides[i]) as Elem
    }

    fn inverse_table(&self) -> &[Elem] {
        self.0.inverses.get_or_init(|| {
            (0..self.0.order as Elem).map(|a| self.raw_inverse(a).unwrap_or(NO_INVERSE)).collect()
        })
    }

    fn raw_inverse(&self, a: Elem) -> Option<Elem> {
        match &self.0.arith {
            Arith::ZMod { n } => inverse_mod(a, *n),
            Arith::Gf { p, k, .. } => {
                if a == 0 {
                    None
                } else {
                    Some(self.raw_pow(a, (*p as u64).pow(*k) - 2))
                }
            }
            Arith::Matrix { n, base } => {
                let m = FieldMatrix::from_rows(*n, *n, self.matrix_entries(a));
                m.inverse(base).map(|inv| self.matrix_from_entries(inv.data()))
            }
            Arith::Dual { base } => {
                let q = base.order() as Elem;
                let (a0, a1) = (a % q, a / q);
                let i0 = base.inverse(a0)?;
                let i1 = base.neg(base.mul(a1, base.mul(i0, i0)));
                Some(i0 + i1 * q)
            }
            Arith::Product { factors, strides } => {
                let mut out = 0usize;
                for (f, s) in factors.iter().zip(strides) {
                    let x = (a as usize / s) % f.order();
                    out += f.inverse(x as Elem)? as usize * s;
                }
                Some(out as Elem)
            }
            Arith::Derived { .. } => self.inverse_bruteforce(a),
        }
    }

    fn raw_pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by exhaustive search; the reference for structural inverses.
    pub fn inverse_bruteforce(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == self.one() && self.mul(b, a) == self.one())
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        let inv = self.inverse_table()[a as usize];
        (inv != NO_INVERSE).then_some(inv)
    }

    pub fn try_inverse(&self, a: Elem) -> Result<Elem> {
        self.inverse(a).ok_or_else(|| Error::NotInvertible(self.format_elem(a)))
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// The unit group, ascending.
    pub fn units(&self) -> &[Elem] {
        self.0.units.get_or_init(|| self.elements().filter(|&a| self.is_unit(a)).collect())
    }

    /// Every nonzero element is a unit (finite division rings are fields).
    pub fn is_field(&self) -> bool {
        self.units().len() == self.order() - 1
    }

    pub fn is_commutative(&self) -> bool {
        *self.0.commutative.get_or_init(|| match &self.0.arith {
            Arith::ZMod { .. } | Arith::Gf { .. } => true,
            Arith::Dual { base } => base.is_commutative(),
            Arith::Matrix { n, base } => *n == 1 && base.is_commutative(),
            Arith::Product { factors, .. } => factors.iter().all(|f| f.is_commutative()),
            Arith::Derived { .. } => {
                self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
            }
        })
    }

    /// `rad R = { x : 1 - r x is a unit for every r }`.
    pub fn jacobson_radical(&self) -> Ideal {
        let members = self
            .elements()
            .filter(|&x| self.elements().all(|r| self.is_unit(self.sub(self.one(), self.mul(r, x)))))
            .collect();
        Ideal { ring: self.clone(), members }
    }

    /// Quotient by a two-sided ideal together with the canonical epimorphism.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(FiniteRing, RingMapTable)> {
        if ideal.ring != *self {
            return Err(Error::RingMismatch);
        }
        if !ideal.is_two_sided_ideal() {
            return Err(Error::NotAnIdeal);
        }
        if ideal.members.len() == 1 {
            let pi = RingMapTable::identity(self);
            return Ok((self.clone(), pi));
        }
        let n = self.order();
        let mut reindex = vec![NO_INVERSE; n];
        let mut reps = Vec::new();
        for a in self.elements() {
            if reindex[a as usize] != NO_INVERSE {
                continue;
            }
            let idx = reps.len() as Elem;
            reps.push(a);
            for &i in &ideal.members {
                reindex[self.add(a, i) as usize] = idx;
            }
        }
        let one = reindex[self.one() as usize];
        let order = reps.len();
        let tag = StructureTag::Quotient { parent: Box::new(self.tag().clone()), ideal: ideal.members.clone() };
        let q = FiniteRing::from_parts(order, one, tag, Arith::Derived { parent: self.clone(), reps, reindex: reindex.clone() });
        let pi = RingMapTable::with_kind(self, &q, reindex, MapKind::Homomorphism);
        Ok((q, pi))
    }

    /// `R / rad R` and the canonical epimorphism.
    pub fn radical_quotient(&self) -> (FiniteRing, RingMapTable) {
        let rad = self.jacobson_radical();
        self.quotient(&rad).expect("the radical is a two-sided ideal")
    }

    /// The corner ring `eR` for a nonzero central idempotent `e`, with `x -> ex`.
    pub fn corner(&self, e: Elem) -> Result<(FiniteRing, RingMapTable)> {
        if e == 0 || self.mul(e, e) != e || !self.elements().all(|x| self.mul(e, x) == self.mul(x, e)) {
            return Err(Error::InvalidParameter(format!("{} is not a nonzero central idempotent", self.format_elem(e))));
        }
        let mut reps: Vec<Elem> = self.elements().map(|x| self.mul(e, x)).collect();
        reps.sort_unstable();
        reps.dedup();
        let mut local = vec![NO_INVERSE; self.order()];
        for (i, &r) in reps.iter().enumerate() {
            local[r as usize] = i as Elem;
        }
        let reindex: Vec<Elem> = self.elements().map(|x| local[self.mul(e, x) as usize]).collect();
        let one = local[e as usize];
        let tag = StructureTag::Corner { parent: Box::new(self.tag().clone()), idempotent: e };
        let c = FiniteRing::from_parts(reps.len(), one, tag, Arith::Derived { parent: self.clone(), reps, reindex: reindex.clone() });
        // x -> ex is unital onto eR and multiplicative because e is central
        let proj = RingMapTable::with_kind(self, &c, reindex, MapKind::Homomorphism);
        Ok((c, proj))
    }

    /// Parent element representing a derived-ring element.
    pub fn derived_rep(&self, a: Elem) -> Option<Elem> {
        match &self.0.arith {
            Arith::Derived { reps, .. } => Some(reps[a as usize]),
            _ => None,
        }
    }

    /// Direct factors: product constructors, and commutative rings that split
    /// along their primitive idempotents.
    pub fn direct_factors(&self) -> Option<Decomposition> {
        match &self.0.arith {
            Arith::Product { factors, .. } => Some(Decomposition {
                factors: factors.clone(),
                projections: (0..factors.len()).map(|i| self.elements().map(|a| self.component(a, i)).collect()).collect(),
                join: self.elements().collect(),
            }),
            _ if self.is_commutative() => {
                let d = self.idempotent_split()?;
                (d.factors.len() > 1).then_some(d)
            }
            _ => None,
        }
    }

    /// Decomposition into rings of the form `M_n(K)` (fields count as `n = 1`),
    /// or `None` when the ring is not recognizably semisimple.
    pub fn simple_components(&self) -> Option<Decomposition> {
        match &self.0.arith {
            Arith::Matrix { .. } => Some(Decomposition::trivial(self)),
            Arith::Product { .. } => {
                let top = self.direct_factors()?;
                let parts: Vec<Decomposition> = top.factors.iter().map(|f| f.simple_components()).collect::<Option<_>>()?;
                Some(top.flatten(self, parts))
            }
            _ if self.is_field() => Some(Decomposition::trivial(self)),
            _ if self.is_commutative() => {
                let d = self.idempotent_split()?;
                if d.factors.len() > 1 && d.factors.iter().all(|f| f.is_field()) {
                    Some(d)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn idempotent_split(&self) -> Option<Decomposition> {
        let idem: Vec<Elem> = self.elements().filter(|&e| e != 0 && self.mul(e, e) == e).collect();
        let primitive: Vec<Elem> = idem
            .iter()
            .copied()
            .filter(|&e| !idem.iter().any(|&f| f != e && self.mul(f, e) == f))
            .collect();
        if primitive.len() < 2 {
            return None;
        }
        let mut factors = Vec::new();
        let mut projections = Vec::new();
        let mut reps_per = Vec::new();
        for &e in &primitive {
            let (c, proj) = self.corner(e).ok()?;
            reps_per.push((0..c.order() as Elem).map(|x| c.derived_rep(x).unwrap()).collect::<Vec<_>>());
            factors.push(c);
            projections.push(proj.table().to_vec());
        }
        let radices: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let total: usize = radices.iter().product();
        if total != self.order() {
            return None;
        }
        let join = (0..total)
            .map(|idx| {
                let parts = mixed_radix_digits(idx, &radices);
                parts.iter().enumerate().fold(0, |acc, (i, &x)| self.add(acc, reps_per[i][x]))
            })
            .collect();
        Some(Decomposition { factors, projections, join })
    }

    /// Product of two 2x2 matrices over this ring.
    pub fn mat2_mul(&self, m: &Mat2, n: &Mat2) -> Mat2 {
        let dot = |x: Elem, y: Elem, z: Elem, w: Elem| self.add(self.mul(x, y), self.mul(z, w));
        [
            dot(m[0], n[0], m[1], n[2]),
            dot(m[0], n[1], m[1], n[3]),
            dot(m[2], n[0], m[3], n[2]),
            dot(m[2], n[1], m[3], n[3]),
        ]
    }

    pub fn mat2_identity(&self) -> Mat2 {
        [self.one(), 0, 0, self.one()]
    }

    /// Row vector times matrix: `(x, y) M`.
    pub fn row_times_mat2(&self, x: Elem, y: Elem, m: &Mat2) -> (Elem, Elem) {
        (
            self.add(self.mul(x, m[0]), self.mul(y, m[2])),
            self.add(self.mul(x, m[1]), self.mul(y, m[3])),
        )
    }

    /// Two-sided inverse in `M_2(R)`, using the ring's structure where possible.
    pub fn mat2_inverse(&self, m: &Mat2) -> Option<Mat2> {
        match &self.0.arith {
            Arith::Matrix { n, base } => {
                let n = *n;
                let blocks: Vec<Vec<Elem>> = m.iter().map(|&x| self.matrix_entries(x)).collect();
                let mut big = FieldMatrix::zeros(2 * n, 2 * n);
                for (bi, blk) in blocks.iter().enumerate() {
                    let (r0, c0) = ((bi / 2) * n, (bi % 2) * n);
                    for i in 0..n {
                        for j in 0..n {
                            big.set(r0 + i, c0 + j, blk[i * n + j]);
                        }
                    }
                }
                let inv = big.inverse(base)?;
                let mut out = [0; 4];
                for (bi, slot) in out.iter_mut().enumerate() {
                    let (r0, c0) = ((bi / 2) * n, (bi % 2) * n);
                    *slot = self.matrix_from_entries(inv.block(r0, c0, n, n).data());
                }
                Some(out)
            }
            Arith::Product { factors, .. } => {
                let mut parts = vec![[0; 4]; factors.len()];
                for (i, f) in factors.iter().enumerate() {
                    let local = m.map(|x| self.component(x, i));
                    parts[i] = f.mat2_inverse(&local)?;
                }
                let mut out = [0; 4];
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot = self.join(&parts.iter().map(|p| p[k]).collect::<Vec<_>>());
                }
                Some(out)
            }
            _ if self.is_commutative() => {
                let det = self.sub(self.mul(m[0], m[3]), self.mul(m[1], m[2]));
                let di = self.inverse(det)?;
                Some([
                    self.mul(di, m[3]),
                    self.neg(self.mul(di, m[1])),
                    self.neg(self.mul(di, m[2])),
                    self.mul(di, m[0]),
                ])
            }
            _ => self.mat2_inverse_generic(m),
        }
    }

    /// Constructor-agnostic inverse: the left module map `(x, y) -> (x, y) M`
    /// of `R^2` is bijective iff `(1,0)` and `(0,1)` have preimages; those
    /// preimages are the rows of the inverse.
    pub fn mat2_inverse_generic(&self, m: &Mat2) -> Option<Mat2> {
        let mut first = None;
        let mut second = None;
        'scan: for x in self.elements() {
            for y in self.elements() {
                let img = self.row_times_mat2(x, y, m);
                if img == (self.one(), 0) {
                    first = Some((x, y));
                } else if img == (0, self.one()) {
                    second = Some((x, y));
                }
                if first.is_some() && second.is_some() {
                    break 'scan;
                }
            }
        }
        let (r1, r2) = (first?, second?);
        let inv = [r1.0, r1.1, r2.0, r2.1];
        debug_assert_eq!(self.mat2_mul(m, &inv), self.mat2_identity());
        Some(inv)
    }

    pub fn mat2_is_invertible(&self, m: &Mat2) -> bool {
        match &self.0.arith {
            Arith::Matrix { n, base } => {
                let n = *n;
                let mut big = FieldMatrix::zeros(2 * n, 2 * n);
                for (bi, &x) in m.iter().enumerate() {
                    let blk = self.matrix_entries(x);
                    let (r0, c0) = ((bi / 2) * n, (bi % 2) * n);
                    for i in 0..n {
                        for j in 0..n {
                            big.set(r0 + i, c0 + j, blk[i * n + j]);
                        }
                    }
                }
                big.rank(base) == 2 * n
            }
            Arith::Product { factors, .. } => factors
                .iter()
                .enumerate()
                .all(|(i, f)| f.mat2_is_invertible(&m.map(|x| self.component(x, i)))),
            _ if self.is_commutative() => self.is_unit(self.sub(self.mul(m[0], m[3]), self.mul(m[1], m[2]))),
            _ => self.mat2_inverse_generic(m).is_some(),
        }
    }

    /// Field automorphisms of a `GF(p^k)` or `Z/p`, as element tables
    /// (Frobenius powers, identity first).
    pub fn field_automorphisms(&self) -> Vec<Vec<Elem>> {
        let (p, k) = match &self.0.arith {
            Arith::Gf { p, k, .. } => (*p, *k),
            _ if self.is_field() => {
                // prime fields and derived fields: only Frobenius powers
                let p = self.characteristic();
                let mut k = 0;
                let mut q = 1usize;
                while q < self.order() {
                    q *= p as usize;
                    k += 1;
                }
                (p, k)
            }
            _ => return Vec::new(),
        };
        let mut out: Vec<Vec<Elem>> = Vec::new();
        for j in 0..k {
            let e = (p as u64).pow(j);
            let table: Vec<Elem> = self.elements().map(|x| self.pow(x, e)).collect();
            if !out.contains(&table) {
                out.push(table);
            }
        }
        out
    }

    /// Additive order of `1`.
    pub fn characteristic(&self) -> u32 {
        let mut acc = self.one();
        let mut c = 1;
        while acc != 0 {
            acc = self.add(acc, self.one());
            c += 1;
        }
        c
    }

    /// Human-readable literal for an element.
    pub fn format_elem(&self, a: Elem) -> String {
        match &self.0.arith {
            Arith::ZMod { .. } => a.to_string(),
            Arith::Gf { p, k, .. } => format_poly(a, *p, *k),
            Arith::Matrix { n, base } => {
                let e = self.matrix_entries(a);
                let rows: Vec<String> = (0..*n)
                    .map(|i| {
                        let cells: Vec<String> = (0..*n).map(|j| base.format_elem(e[i * n + j])).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Arith::Dual { base } => {
                let q = base.order() as Elem;
                let (a0, a1) = (a % q, a / q);
                let lit0 = base.format_elem(a0);
                if a1 == 0 {
                    return lit0;
                }
                let lit1 = base.format_elem(a1);
                let eps = if a1 == base.one() {
                    "e".to_string()
                } else if lit1.chars().all(|c| c.is_ascii_digit()) {
                    format!("{lit1}e")
                } else {
                    format!("({lit1})e")
                };
                if a0 == 0 {
                    eps
                } else {
                    format!("{lit0}+{eps}")
                }
            }
            Arith::Product { factors, .. } => {
                let parts: Vec<String> =
                    factors.iter().enumerate().map(|(i, f)| f.format_elem(self.component(a, i))).collect();
                format!("({})", parts.join(", "))
            }
            Arith::Derived { parent, reps, .. } => match &self.0.tag {
                StructureTag::Quotient { .. } => format!("{}+I", parent.format_elem(reps[a as usize])),
                _ => parent.format_elem(reps[a as usize]),
            },
        }
    }

    /// Parses an element literal in the syntax produced by [`FiniteRing::format_elem`].
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::Parse { offset: 0, message: format!("{msg}: {text:?}") };
        match &self.0.arith {
            Arith::ZMod { n } => {
                let v: i64 = s.parse().map_err(|_| bad("expected an integer"))?;
                Ok(v.rem_euclid(*n as i64) as Elem)
            }
            Arith::Gf { p, k, .. } => parse_poly(&s, *p, *k).ok_or_else(|| bad("expected a polynomial in x")),
            Arith::Matrix { n, base } => {
                let inner = strip_delims(&s, '[', ']').ok_or_else(|| bad("expected [[..],..]"))?;
                let rows = split_top_level(inner);
                if rows.len() != *n {
                    return Err(bad("wrong number of rows"));
                }
                let mut entries = Vec::with_capacity(n * n);
                for r in rows {
                    let cells = split_top_level(strip_delims(r, '[', ']').ok_or_else(|| bad("expected a row"))?);
                    if cells.len() != *n {
                        return Err(bad("wrong number of columns"));
                    }
                    for c in cells {
                        entries.push(base.parse_elem(c)?);
                    }
                }
                Ok(self.matrix_from_entries(&entries))
            }
            Arith::Dual { base } => {
                let q = base.order() as Elem;
                let Some(rest) = s.strip_suffix('e') else {
                    return base.parse_elem(&s);
                };
                let (head, b) = if let Some(body) = rest.strip_suffix(')') {
                    let open = rest.rfind('(').ok_or_else(|| bad("unbalanced parenthesis"))?;
                    (&rest[..open], base.parse_elem(&body[open + 1..])?)
                } else {
                    let start = rest.rfind(|c: char| !c.is_ascii_digit()).map(|i| i + 1).unwrap_or(0);
                    let digits = &rest[start..];
                    let b = if digits.is_empty() { base.one() } else { base.parse_elem(digits)? };
                    (&rest[..start], b)
                };
                let a = if head.is_empty() {
                    0
                } else {
                    base.parse_elem(head.strip_suffix('+').ok_or_else(|| bad("expected a+be"))?)?
                };
                Ok(a + b * q)
            }
            Arith::Product { factors, .. } => {
                let inner = strip_delims(&s, '(', ')').ok_or_else(|| bad("expected (..)"))?;
                let parts = split_top_level(inner);
                if parts.len() != factors.len() {
                    return Err(bad("wrong number of components"));
                }
                let elems = factors.iter().zip(parts).map(|(f, p)| f.parse_elem(p)).collect::<Result<Vec<_>>>()?;
                Ok(self.join(&elems))
            }
            Arith::Derived { .. } => {
                let v: usize = s.parse().map_err(|_| bad("derived rings take raw encodings"))?;
                if v >= self.order() {
                    return Err(bad("encoding out of range"));
                }
                Ok(v as Elem)
            }
        }
    }
}

/// A two-sided ideal, stored as its sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: FiniteRing,
    members: Vec<Elem>,
}

impl Ideal {
    pub fn new(ring: &FiniteRing, mut members: Vec<Elem>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let ideal = Ideal { ring: ring.clone(), members };
        if !ideal.is_two_sided_ideal() {
            return Err(Error::NotAnIdeal);
        }
        Ok(ideal)
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Ideal { ring: ring.clone(), members: vec![0] }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.members == [0]
    }

    fn is_two_sided_ideal(&self) -> bool {
        let r = &self.ring;
        if !self.contains(0) {
            return false;
        }
        let closed_add = self.members.iter().all(|&x| self.members.iter().all(|&y| self.contains(r.add(x, y))));
        closed_add
            && self.members.iter().all(|&x| {
                self.contains(r.neg(x)) && r.elements().all(|s| self.contains(r.mul(s, x)) && self.contains(r.mul(x, s)))
            })
    }
}

/// `M_n(K)` presentation of a ring (fields are `n = 1`).
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub ring: FiniteRing,
    pub n: usize,
    pub field: FiniteRing,
}

impl MatrixModel {
    pub fn to_matrix(&self, a: Elem) -> FieldMatrix {
        if self.ring.matrix_params().is_some() {
            FieldMatrix::from_rows(self.n, self.n, self.ring.matrix_entries(a))
        } else {
            FieldMatrix::from_rows(1, 1, vec![a])
        }
    }

    pub fn from_matrix(&self, m: &FieldMatrix) -> Elem {
        if self.ring.matrix_params().is_some() {
            self.ring.matrix_from_entries(m.data())
        } else {
            m.get(0, 0)
        }
    }
}

/// A ring isomorphism `R -> R_1 x ... x R_m` given by tables.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<FiniteRing>,
    projections: Vec<Vec<Elem>>,
    join: Vec<Elem>,
}

impl Decomposition {
    fn trivial(ring: &FiniteRing) -> Self {
        Decomposition {
            factors: vec![ring.clone()],
            projections: vec![ring.elements().collect()],
            join: ring.elements().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn project(&self, a: Elem, i: usize) -> Elem {
        self.projections[i][a as usize]
    }

    pub fn join(&self, parts: &[Elem]) -> Elem {
        let mut idx = 0usize;
        for (f, &x) in self.factors.iter().zip(parts) {
            idx = idx * f.order() + x as usize;
        }
        self.join[idx]
    }

    fn flatten(&self, ring: &FiniteRing, parts: Vec<Decomposition>) -> Decomposition {
        let mut factors = Vec::new();
        let mut projections = Vec::new();
        for (i, d) in parts.iter().enumerate() {
            for (j, f) in d.factors.iter().enumerate() {
                factors.push(f.clone());
                projections.push(ring.elements().map(|a| d.project(self.project(a, i), j)).collect());
            }
        }
        let radices: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let total: usize = radices.iter().product();
        let join = (0..total)
            .map(|idx| {
                let digits = mixed_radix_digits(idx, &radices);
                let mut offset = 0;
                let top: Vec<Elem> = parts
                    .iter()
                    .map(|d| {
                        let slice: Vec<Elem> = digits[offset..offset + d.len()].iter().map(|&x| x as Elem).collect();
                        offset += d.len();
                        d.join(&slice)
                    })
                    .collect();
                self.join(&top)
            })
            .collect();
        Decomposition { factors, projections, join }
    }
}

/// Digits of `idx` in the mixed radix `radices`, first digit most significant.
pub fn mixed_radix_digits(mut idx: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = idx % r;
        idx /= r;
    }
    out
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d * d <= p).all(|d| p % d != 0)
}

fn inverse_mod(a: Elem, n: u32) -> Option<Elem> {
    let (mut r0, mut r1) = (n as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i64) as Elem)
}

fn digitwise(a: Elem, b: Elem, p: u32, op: impl Fn(u32, u32) -> u32) -> Elem {
    if p == 2 {
        return op(0, 0) ^ a ^ b;
    }
    let (mut x, mut y) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    while x > 0 || y > 0 {
        out += op(x % p, y % p) * scale;
        scale *= p;
        x /= p;
        y /= p;
    }
    out
}

fn combine_digits(a: Elem, b: Elem, q: Elem, len: usize, op: impl Fn(Elem, Elem) -> Elem) -> Elem {
    let (mut x, mut y) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..len {
        out += op(x % q, y % q) * scale;
        scale *= q;
        x /= q;
        y /= q;
    }
    out
}

fn poly_coeffs(a: Elem, p: u32, k: usize) -> Vec<u32> {
    let mut out = vec![0; k];
    let mut x = a;
    for c in out.iter_mut() {
        *c = x % p;
        x /= p;
    }
    out
}

fn gf_mul(a: Elem, b: Elem, p: u32, k: usize, modulus: &[u32]) -> Elem {
    if k == 1 {
        return ((a as u64 * b as u64) % p as u64) as Elem;
    }
    let x = poly_coeffs(a, p, k);
    let y = poly_coeffs(b, p, k);
    let mut prod = vec![0u32; 2 * k - 1];
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + xi * yj) % p;
        }
    }
    // modulus is monic of degree k
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (t, &m) in modulus.iter().enumerate().take(k) {
            let idx = d - k + t;
            prod[idx] = (prod[idx] + (p - c) * m % p) % p;
        }
        prod[d] = 0;
    }
    prod[..k].iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Lexicographically least monic irreducible polynomial of degree `k` over
/// `GF(p)`, comparing non-leading coefficients from the top down. Returned
/// low coefficient first, including the leading 1.
pub fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k as u32);
    for code in 0..count {
        let mut poly = poly_coeffs(code as Elem, p, k);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..(p as u64).pow(d as u32) {
            let mut divisor = poly_coeffs(code as Elem, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    for i in (dd..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for (j, &dj) in den.iter().enumerate() {
            let idx = i - dd + j;
            r[idx] = (r[idx] + (p - c) * dj % p) % p;
        }
    }
    r.truncate(dd);
    r
}

fn format_poly(a: Elem, p: u32, k: u32) -> String {
    if k == 1 {
        return a.to_string();
    }
    let coeffs = poly_coeffs(a, p, k as usize);
    let mut terms = Vec::new();
    for (d, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (d, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (d, 1) => format!("x^{d}"),
            (d, c) => format!("{c}x^{d}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn parse_poly(s: &str, p: u32, k: u32) -> Option<Elem> {
    if k == 1 {
        let v: i64 = s.parse().ok()?;
        return Some(v.rem_euclid(p as i64) as Elem);
    }
    let mut coeffs = vec![0u32; k as usize];
    for term in s.split('+') {
        let (c, d) = match term.find('x') {
            None => (term.parse::<u32>().ok()?, 0usize),
            Some(i) => {
                let c = if i == 0 { 1 } else { term[..i].parse::<u32>().ok()? };
                let rest = &term[i + 1..];
                let d = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse::<usize>().ok()? };
                (c, d)
            }
        };
        if d >= k as usize {
            return None;
        }
        coeffs[d] = (coeffs[d] + c) % p;
    }
    Some(coeffs.iter().rev().fold(0, |acc, &c| acc * p + c))
}

fn strip_delims(s: &str, open: char, close: char) -> Option<&str> {
    s.strip_prefix(open)?.strip_suffix(close)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FiniteRing {
        FiniteRing::gf(2, 1).unwrap()
    }

    #[test]
    fn zmod_basics() {
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.units(), &[1, 3]);
        assert_eq!(z4.inverse(3), Some(3));
        assert!(!z4.is_unit(2));
        let z6 = FiniteRing::zmod(6).unwrap();
        assert_eq!(z6.units(), &[1, 5]);
        assert!(FiniteRing::zmod(2).unwrap().is_field());
        assert!(matches!(FiniteRing::zmod(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn gf_fields() {
        let gf4 = FiniteRing::gf(2, 2).unwrap();
        assert!(gf4.is_field());
        assert_eq!(gf4.modulus_poly(), Some(&[1, 1, 1][..]));
        assert_eq!(FiniteRing::gf(3, 2).unwrap().modulus_poly(), Some(&[1, 0, 1][..]));
        assert_eq!(FiniteRing::gf(2, 3).unwrap().modulus_poly(), Some(&[1, 1, 0, 1][..]));
        assert!(FiniteRing::gf(3, 1).unwrap().is_field());
        assert!(FiniteRing::gf(4, 1).is_err());
        for q in [FiniteRing::gf(2, 3).unwrap(), FiniteRing::gf(3, 2).unwrap(), FiniteRing::gf(5, 1).unwrap()] {
            assert!(q.is_field(), "{q:?}");
        }
    }

    #[test]
    fn matrix_ring_units() {
        let m = FiniteRing::matrix(2, &f2()).unwrap();
        assert_eq!(m.order(), 16);
        let a = m.parse_elem("[[1,1],[0,1]]").unwrap();
        assert_eq!(m.inverse(a), Some(a));
        assert_eq!(m.units().len(), 6);
        assert_eq!(m.format_elem(m.one()), "[[1,0],[0,1]]");
        let m1 = FiniteRing::matrix(1, &FiniteRing::gf(3, 1).unwrap()).unwrap();
        assert_eq!(m1.order(), 3);
        assert!(m1.is_field());
        assert_eq!(FiniteRing::matrix(2, &FiniteRing::zmod(4).unwrap()).unwrap_err(), Error::NotAField);
    }

    #[test]
    fn dual_numbers() {
        let d = FiniteRing::dual_numbers(&f2()).unwrap();
        assert_eq!(d.order(), 4);
        let e = d.parse_elem("e").unwrap();
        assert_eq!(d.mul(e, e), 0);
        assert_eq!(d.units().iter().map(|&u| d.format_elem(u)).collect::<Vec<_>>(), ["1", "1+e"]);
        assert_eq!(FiniteRing::dual_numbers(&FiniteRing::gf(3, 1).unwrap()).unwrap().order(), 9);
    }

    #[test]
    fn products() {
        let p = FiniteRing::product(&[f2(), f2()]).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.units().len(), 1);
        let m = FiniteRing::matrix(2, &f2()).unwrap();
        assert_eq!(FiniteRing::product(&[f2(), m.clone()]).unwrap().order(), 32);
        assert_eq!(FiniteRing::product(&[]).unwrap_err(), Error::EmptyProduct);
        let pm = FiniteRing::product(&[f2(), m]).unwrap();
        let x = pm.parse_elem("(1, [[0,1],[1,0]])").unwrap();
        assert_eq!(pm.format_elem(x), "(1, [[0,1],[1,0]])");
    }

    #[test]
    fn radicals() {
        let z4 = FiniteRing::zmod(4).unwrap();
        assert_eq!(z4.jacobson_radical().members(), &[0, 2]);
        let m = FiniteRing::matrix(2, &f2()).unwrap();
        assert!(m.jacobson_radical().is_zero());
        assert!(FiniteRing::zmod(6).unwrap().jacobson_radical().is_zero());
        let z8 = FiniteRing::zmod(8).unwrap();
        assert_eq!(z8.jacobson_radical().members(), &[0, 2, 4, 6]);
    }

    #[test]
    fn quotients() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let (q, pi) = z4.radical_quotient();
        assert_eq!(q.order(), 2);
        assert!(q.is_field());
        assert_eq!(pi.kind(), MapKind::Homomorphism);
        let d = FiniteRing::dual_numbers(&f2()).unwrap();
        let (qd, pid) = d.radical_quotient();
        assert_eq!(qd.order(), 2);
        assert_eq!(pid.apply(d.parse_elem("e").unwrap()), 0);
        let m = FiniteRing::matrix(2, &f2()).unwrap();
        let (qm, pim) = m.quotient(&Ideal::zero(&m)).unwrap();
        assert_eq!(qm, m);
        assert!(pim.is_bijective());
        assert_eq!(Ideal::new(&z4, vec![0, 1]).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn idempotent_split_of_z6() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let d = z6.simple_components().unwrap();
        assert_eq!(d.factors.iter().map(|f| f.order()).collect::<Vec<_>>(), [2, 3]);
        for a in z6.elements() {
            let parts: Vec<Elem> = (0..2).map(|i| d.project(a, i)).collect();
            assert_eq!(d.join(&parts), a);
        }
        assert!(FiniteRing::zmod(4).unwrap().simple_components().is_none());
    }

    #[test]
    fn mat2_inverse_routes_agree() {
        for r in [FiniteRing::zmod(4).unwrap(), FiniteRing::matrix(2, &f2()).unwrap(), FiniteRing::product(&[f2(), FiniteRing::zmod(3).unwrap()]).unwrap()] {
            let n = r.order() as Elem;
            for code in (0..n.pow(4)).step_by(7) {
                let m = [code % n, (code / n) % n, (code / n / n) % n, (code / n / n / n) % n];
                let fast = r.mat2_inverse(&m);
                let slow = r.mat2_inverse_generic(&m);
                assert_eq!(fast, slow, "{r:?} {m:?}");
                assert_eq!(r.mat2_is_invertible(&m), slow.is_some());
            }
        }
    }

    #[test]
    fn literals_round_trip() {
        let gf9 = FiniteRing::gf(3, 2).unwrap();
        for a in gf9.elements() {
            assert_eq!(gf9.parse_elem(&gf9.format_elem(a)).unwrap(), a);
        }
        let d = FiniteRing::dual_numbers(&FiniteRing::gf(2, 2).unwrap()).unwrap();
        for a in d.elements() {
            assert_eq!(d.parse_elem(&d.format_elem(a)).unwrap(), a, "{}", d.format_elem(a));
        }
    }
}
