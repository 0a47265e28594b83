//! Tabulated maps between finite rings and their algebraic classification.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, RingMeta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Homomorphism,
    AntiHomomorphism,
    Jordan,
    AdditiveOnly,
    None,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapKind::Homomorphism => "homomorphism",
            MapKind::AntiHomomorphism => "anti-homomorphism",
            MapKind::Jordan => "jordan",
            MapKind::AdditiveOnly => "additive-only",
            MapKind::None => "none",
        };
        f.write_str(s)
    }
}

/// Which defining identities a table satisfies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MapFlags {
    pub additive: bool,
    pub unital: bool,
    pub multiplicative: bool,
    pub anti_multiplicative: bool,
    pub jordan: bool,
}

impl MapFlags {
    fn kind(&self) -> MapKind {
        let base = self.additive && self.unital;
        if base && self.multiplicative {
            MapKind::Homomorphism
        } else if base && self.anti_multiplicative {
            MapKind::AntiHomomorphism
        } else if base && self.jordan {
            MapKind::Jordan
        } else if self.additive {
            MapKind::AdditiveOnly
        } else {
            MapKind::None
        }
    }

    fn all_ring_like() -> Self {
        MapFlags { additive: true, unital: true, multiplicative: true, anti_multiplicative: false, jordan: true }
    }
}

/// A total map `source -> target` on element encodings.
#[derive(Clone, Debug)]
pub struct RingMapTable {
    source: FiniteRing,
    target: FiniteRing,
    table: Vec<Elem>,
    flags: MapFlags,
    kind: MapKind,
}

#[derive(Serialize)]
struct RingMapJson<'a> {
    source: RingMeta,
    target: RingMeta,
    table: &'a [Elem],
    kind: MapKind,
    also_anti: bool,
}

impl Serialize for RingMapTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingMapJson {
            source: self.source.meta(),
            target: self.target.meta(),
            table: &self.table,
            kind: self.kind,
            also_anti: self.also_anti(),
        }
        .serialize(s)
    }
}

impl PartialEq for RingMapTable {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.table == other.table
    }
}

impl Eq for RingMapTable {}

impl RingMapTable {
    /// Checks every defining identity exhaustively and labels the map with
    /// the strongest class it belongs to.
    pub fn classify(source: &FiniteRing, target: &FiniteRing, table: Vec<Elem>) -> Self {
        assert_eq!(table.len(), source.order(), "map table must be total on the source");
        let flags = classify_flags(source, target, &table);
        RingMapTable { source: source.clone(), target: target.clone(), table, kind: flags.kind(), flags }
    }

    /// Like [`RingMapTable::classify`] but rejects out-of-range entries.
    pub fn try_classify(source: &FiniteRing, target: &FiniteRing, table: Vec<Elem>) -> Result<Self> {
        if table.len() != source.order() {
            return Err(Error::DimensionMismatch { expected: source.order(), found: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= target.order()) {
            return Err(Error::InvalidMap(format!("entry {bad} outside the target ring")));
        }
        Ok(Self::classify(source, target, table))
    }

    /// For tables known by construction to be unital homomorphisms.
    pub(crate) fn with_kind(source: &FiniteRing, target: &FiniteRing, table: Vec<Elem>, kind: MapKind) -> Self {
        debug_assert_eq!(kind, MapKind::Homomorphism);
        RingMapTable { source: source.clone(), target: target.clone(), table, flags: MapFlags::all_ring_like(), kind }
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        let mut m = Self::with_kind(ring, ring, ring.elements().collect(), MapKind::Homomorphism);
        m.flags.anti_multiplicative = ring.is_commutative();
        m
    }

    /// Transposition on a matrix ring.
    pub fn transpose(ring: &FiniteRing) -> Result<Self> {
        let (n, _) = ring.matrix_params().ok_or_else(|| Error::WrongRingFamily("transpose needs a matrix ring".into()))?;
        let table = ring
            .elements()
            .map(|a| {
                let e = ring.matrix_entries(a);
                let t: Vec<Elem> = (0..n * n).map(|k| e[(k % n) * n + k / n]).collect();
                ring.matrix_from_entries(&t)
            })
            .collect();
        Ok(Self::classify(ring, ring, table))
    }

    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteRing {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn flags(&self) -> MapFlags {
        self.flags
    }

    /// A homomorphism that is also an anti-homomorphism.
    pub fn also_anti(&self) -> bool {
        self.kind == MapKind::Homomorphism && self.flags.anti_multiplicative
    }

    pub fn is_jordan(&self) -> bool {
        self.flags.additive && self.flags.unital && self.flags.jordan
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a as usize]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.table.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RingMapTable) -> Result<RingMapTable> {
        if self.target != next.source {
            return Err(Error::RingMismatch);
        }
        let table = self.table.iter().map(|&x| next.apply(x)).collect();
        Ok(Self::classify(&self.source, &next.target, table))
    }

    pub fn inverse(&self) -> Option<RingMapTable> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.table.len()];
        for (a, &b) in self.table.iter().enumerate() {
            inv[b as usize] = a as Elem;
        }
        Some(Self::classify(&self.target, &self.source, inv))
    }
}

fn classify_flags(source: &FiniteRing, target: &FiniteRing, t: &[Elem]) -> MapFlags {
    let f = |a: Elem| t[a as usize];
    let els: Vec<Elem> = source.elements().collect();
    let additive = f(0) == 0 && els.iter().all(|&a| els.iter().all(|&b| f(source.add(a, b)) == target.add(f(a), f(b))));
    let unital = f(source.one()) == target.one();
    let mut multiplicative = true;
    let mut anti = true;
    let mut jordan = true;
    'outer: for &a in &els {
        for &b in &els {
            let ab = f(source.mul(a, b));
            if multiplicative && ab != target.mul(f(a), f(b)) {
                multiplicative = false;
            }
            if anti && ab != target.mul(f(b), f(a)) {
                anti = false;
            }
            if jordan {
                let lhs = f(source.mul(source.mul(a, b), a));
                let rhs = target.mul(target.mul(f(a), f(b)), f(a));
                if lhs != rhs {
                    jordan = false;
                }
            }
            if !multiplicative && !anti && !jordan {
                break 'outer;
            }
        }
    }
    MapFlags { additive, unital, multiplicative, anti_multiplicative: anti, jordan }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2f2() -> FiniteRing {
        FiniteRing::matrix(2, &FiniteRing::gf(2, 1).unwrap()).unwrap()
    }

    #[test]
    fn transpose_is_anti() {
        let t = RingMapTable::transpose(&m2f2()).unwrap();
        assert_eq!(t.kind(), MapKind::AntiHomomorphism);
        assert!(t.is_jordan());
        let tt = t.then(&t).unwrap();
        assert_eq!(tt.kind(), MapKind::Homomorphism);
        assert_eq!(tt, RingMapTable::identity(&m2f2()));
    }

    #[test]
    fn identity_on_commutative_ring_is_both() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let id = RingMapTable::classify(&z4, &z4, z4.elements().collect());
        assert_eq!(id.kind(), MapKind::Homomorphism);
        assert!(id.also_anti());
        let m = m2f2();
        assert!(!RingMapTable::classify(&m, &m, m.elements().collect()).also_anti());
    }

    #[test]
    fn mixed_transpose_on_square_is_jordan() {
        let m = m2f2();
        let p = FiniteRing::product(&[m.clone(), m.clone()]).unwrap();
        let t = RingMapTable::transpose(&m).unwrap();
        let table = p.elements().map(|x| p.join(&[p.component(x, 0), t.apply(p.component(x, 1))])).collect();
        let j = RingMapTable::classify(&p, &p, table);
        assert_eq!(j.kind(), MapKind::Jordan);
        assert!(!j.flags().multiplicative && !j.flags().anti_multiplicative);
    }

    #[test]
    fn weaker_kinds() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let doubling = RingMapTable::classify(&z4, &z4, z4.elements().map(|a| z4.add(a, a)).collect());
        assert_eq!(doubling.kind(), MapKind::AdditiveOnly);
        let shift = RingMapTable::classify(&z4, &z4, z4.elements().map(|a| z4.add(a, 1)).collect());
        assert_eq!(shift.kind(), MapKind::None);
        assert!(RingMapTable::try_classify(&z4, &z4, vec![0, 1, 2, 9]).is_err());
    }
}
