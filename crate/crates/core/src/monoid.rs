//! Finite commutative monoids given by Cayley tables, and their morphisms.

use std::fmt;
use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::filter::{generate, Filter};
use crate::limits::Limits;

pub type ElementId = usize;

struct Table {
    size: usize,
    mul: Vec<ElementId>,
    one: ElementId,
    zero: Option<ElementId>,
    /// `divisors[f]` is the set of all `g` with `g | f`.
    divisors: Vec<ElementSet>,
}

/// A finite commutative monoid, optionally with a declared zero.
///
/// Cloning is cheap; the table is shared.
#[derive(Clone)]
pub struct FiniteMonoid {
    inner: Arc<Table>,
}

/// Validates a raw Cayley table. See [`FiniteMonoid::validate`].
pub fn validate_monoid(table: &[Vec<ElementId>], one: ElementId, zero: Option<ElementId>) -> Result<FiniteMonoid> {
    FiniteMonoid::validate(table, one, zero)
}

impl FiniteMonoid {
    /// Checks shape, then associativity, commutativity, the identity and the
    /// zero law, reporting the first violation found in that order.
    pub fn validate(table: &[Vec<ElementId>], one: ElementId, zero: Option<ElementId>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Shape("a monoid needs at least one element".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::Shape(format!("row {i} contains {bad}, outside 0..{n}")));
            }
        }
        if one >= n {
            return Err(Error::Shape(format!("neutral element {one} outside 0..{n}")));
        }
        if let Some(z) = zero.filter(|&z| z >= n) {
            return Err(Error::Shape(format!("zero element {z} outside 0..{n}")));
        }
        let flat: Vec<ElementId> = table.iter().flatten().copied().collect();
        Self::from_flat(n, flat, one, zero)
    }

    /// Builds and validates a monoid from a multiplication function on `0..size`.
    pub fn from_fn(
        size: usize,
        one: ElementId,
        zero: Option<ElementId>,
        mul: impl Fn(ElementId, ElementId) -> ElementId,
    ) -> Result<Self> {
        let table: Vec<Vec<ElementId>> = (0..size).map(|a| (0..size).map(|b| mul(a, b)).collect()).collect();
        Self::validate(&table, one, zero)
    }

    fn from_flat(n: usize, mul: Vec<ElementId>, one: ElementId, zero: Option<ElementId>) -> Result<Self> {
        let at = |a: usize, b: usize| mul[a * n + b];
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for z in 0..n {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(Error::NonAssociative { x, y, z });
                    }
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if at(x, y) != at(y, x) {
                    return Err(Error::NonCommutative { x, y });
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| at(one, x) != x) {
            return Err(Error::BadIdentity {
                one,
                x,
                got: at(one, x),
            });
        }
        if let Some(z) = zero {
            if let Some(x) = (0..n).find(|&x| at(z, x) != z) {
                return Err(Error::BadZero {
                    zero: z,
                    x,
                    got: at(z, x),
                });
            }
        }
        Ok(Self::from_flat_unchecked(n, mul, one, zero))
    }

    /// For constructions that are lawful by design (products, quotients).
    pub(crate) fn from_flat_unchecked(n: usize, mul: Vec<ElementId>, one: ElementId, zero: Option<ElementId>) -> Self {
        debug_assert_eq!(mul.len(), n * n);
        let mut divisors = vec![ElementSet::new(); n];
        for g in 0..n {
            for a in 0..n {
                divisors[mul[g * n + a]].insert(g);
            }
        }
        FiniteMonoid {
            inner: Arc::new(Table {
                size: n,
                mul,
                one,
                zero,
                divisors,
            }),
        }
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0], 0, Some(0))
    }

    /// `(ℤ/n, ·)` with element `k` standing for the residue `k`; zero declared.
    pub fn integers_mod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("modulus must be positive".into()));
        }
        Self::from_fn(n, 1 % n, Some(0), |a, b| a * b % n)
    }

    /// The cyclic group of order `n` (no zero).
    pub fn cyclic_group(n: usize) -> Result<Self> {
        Self::cyclic_monoid(0, n)
    }

    /// The monogenic monoid `{1, x, ..., x^(index+period-1)}` with
    /// `x^(index+period) = x^index`. A zero is declared when `period == 1`.
    pub fn cyclic_monoid(index: usize, period: usize) -> Result<Self> {
        if period == 0 {
            return Err(Error::Shape("period must be positive".into()));
        }
        let n = index + period;
        let reduce = |m: usize| if m < n { m } else { index + (m - index) % period };
        let zero = (period == 1).then_some(index);
        Self::from_fn(n, 0, zero, |a, b| reduce(a + b))
    }

    /// The chain `0 < 1 < ... < n-1` under `min`: a ∩-semilattice with
    /// neutral element `n-1` and zero `0`.
    pub fn chain(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("a chain needs at least one element".into()));
        }
        Self::from_fn(n, n - 1, Some(0), |a, b| a.min(b))
    }

    pub fn size(&self) -> usize {
        self.inner.size
    }

    pub fn one(&self) -> ElementId {
        self.inner.one
    }

    pub fn zero(&self) -> Option<ElementId> {
        self.inner.zero
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.inner.size
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.inner.mul[a * self.inner.size + b]
    }

    pub fn pow(&self, x: ElementId, n: usize) -> ElementId {
        (0..n).fold(self.one(), |acc, _| self.mul(acc, x))
    }

    pub fn table(&self) -> Vec<Vec<ElementId>> {
        self.inner.mul.chunks(self.size()).map(<[_]>::to_vec).collect()
    }

    pub fn check_index(&self, x: ElementId) -> Result<()> {
        if x >= self.size() {
            return Err(Error::IndexOutOfRange {
                index: x,
                size: self.size(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_set(&self, s: &ElementSet) -> Result<()> {
        if s.bound() > self.size() {
            return Err(Error::IndexOutOfRange {
                index: s.bound() - 1,
                size: self.size(),
            });
        }
        Ok(())
    }

    /// Whether `g` divides `f`, i.e. `g·a = f` for some `a`.
    pub fn divides(&self, g: ElementId, f: ElementId) -> Result<bool> {
        self.check_index(g)?;
        self.check_index(f)?;
        Ok(self.inner.divisors[f].contains(g))
    }

    /// All divisors of `f`.
    pub fn divisors(&self, f: ElementId) -> &ElementSet {
        &self.inner.divisors[f]
    }

    pub fn is_unit(&self, x: ElementId) -> bool {
        self.inner.divisors[self.one()].contains(x)
    }

    /// The unit group; it is the set of divisors of the neutral element.
    pub fn units(&self) -> ElementSet {
        self.inner.divisors[self.one()].clone()
    }

    /// `{f : f·g = 0 ⇒ g = 0}`.
    pub fn nonzerodivisors(&self) -> Result<ElementSet> {
        let z = self.zero().ok_or(Error::NoZeroElement)?;
        Ok(self
            .elements()
            .filter(|&f| self.elements().all(|g| self.mul(f, g) != z || g == z))
            .collect())
    }

    /// `x^n = 0` for some `n ≤ |M|`. Always false without a declared zero.
    pub fn is_nilpotent(&self, x: ElementId) -> bool {
        let Some(z) = self.zero() else { return false };
        let mut p = self.one();
        for _ in 0..=self.size() {
            if p == z {
                return true;
            }
            p = self.mul(p, x);
        }
        false
    }

    pub fn nilpotents(&self) -> ElementSet {
        self.elements().filter(|&x| self.is_nilpotent(x)).collect()
    }

    /// No nilpotents besides the zero itself.
    pub fn is_reduced(&self) -> bool {
        self.nilpotents().len() <= 1
    }

    pub fn idempotents(&self) -> ElementSet {
        self.elements().filter(|&x| self.mul(x, x) == x).collect()
    }

    /// An absorbing element that was not declared as zero, if any.
    pub fn undeclared_annihilator(&self) -> Option<ElementId> {
        if self.zero().is_some() {
            return None;
        }
        self.elements().find(|&z| self.elements().all(|x| self.mul(z, x) == z))
    }

    /// The same table with a different zero declaration, re-validated.
    pub fn with_zero(&self, zero: Option<ElementId>) -> Result<Self> {
        Self::validate(&self.table(), self.one(), zero)
    }
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.size == other.inner.size
                && self.inner.one == other.inner.one
                && self.inner.zero == other.inner.zero
                && self.inner.mul == other.inner.mul)
    }
}

impl Eq for FiniteMonoid {}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMonoid")
            .field("size", &self.size())
            .field("one", &self.one())
            .field("zero", &self.zero())
            .finish_non_exhaustive()
    }
}

/// A monoid homomorphism, stored as the image of every source element.
#[derive(Clone, PartialEq, Eq)]
pub struct MonoidHom {
    source: FiniteMonoid,
    target: FiniteMonoid,
    map: Vec<ElementId>,
}

impl MonoidHom {
    pub fn new(source: FiniteMonoid, target: FiniteMonoid, map: Vec<ElementId>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::NotAHom(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some((x, &y)) = map.iter().enumerate().find(|(_, &y)| y >= target.size()) {
            return Err(Error::NotAHom(format!("{x} maps to {y}, outside the target")));
        }
        if map[source.one()] != target.one() {
            return Err(Error::NotAHom("the neutral element is not preserved".into()));
        }
        for x in source.elements() {
            for y in x..source.size() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotAHom(format!("the product {x}·{y} is not preserved")));
                }
            }
        }
        Ok(MonoidHom { source, target, map })
    }

    pub(crate) fn new_unchecked(source: FiniteMonoid, target: FiniteMonoid, map: Vec<ElementId>) -> Self {
        MonoidHom { source, target, map }
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        MonoidHom::new_unchecked(m.clone(), m.clone(), m.elements().collect())
    }

    /// The unique homomorphism into the trivial monoid.
    pub fn to_trivial(m: &FiniteMonoid) -> Self {
        MonoidHom::new_unchecked(m.clone(), FiniteMonoid::trivial(), vec![0; m.size()])
    }

    /// The unique homomorphism out of the trivial monoid.
    pub fn from_trivial(m: &FiniteMonoid) -> Self {
        MonoidHom::new_unchecked(FiniteMonoid::trivial(), m.clone(), vec![m.one()])
    }

    /// `x ↦ x^k`, a homomorphism because the monoid is commutative.
    pub fn power(m: &FiniteMonoid, k: usize) -> Self {
        MonoidHom::new_unchecked(m.clone(), m.clone(), m.elements().map(|x| m.pow(x, k)).collect())
    }

    pub fn source(&self) -> &FiniteMonoid {
        &self.source
    }

    pub fn target(&self) -> &FiniteMonoid {
        &self.target
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.map[x]
    }

    pub fn image(&self, s: &ElementSet) -> ElementSet {
        s.iter().map(|x| self.map[x]).collect()
    }

    pub fn preimage(&self, t: &ElementSet) -> ElementSet {
        self.source.elements().filter(|&x| t.contains(self.map[x])).collect()
    }

    /// Whether declared zeros exist on both sides and correspond.
    pub fn preserves_zero(&self) -> bool {
        match (self.source.zero(), self.target.zero()) {
            (Some(a), Some(b)) => self.map[a] == b,
            _ => false,
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&self.source.all()) == self.target.all()
    }

    pub fn is_injective(&self) -> bool {
        self.image(&self.source.all()).len() == self.source.size()
    }

    /// A bijective homomorphism is an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.source.size() == self.target.size() && self.is_injective()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &MonoidHom) -> Result<MonoidHom> {
        if self.target != then.source {
            return Err(Error::CarrierMismatch);
        }
        Ok(MonoidHom::new_unchecked(
            self.source.clone(),
            then.target.clone(),
            self.map.iter().map(|&y| then.map[y]).collect(),
        ))
    }
}

impl fmt::Debug for MonoidHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonoidHom")
            .field("map", &self.map)
            .finish_non_exhaustive()
    }
}

/// `M1 × M2` with its projections. Element `(i1, i2)` has id `i1·|M2| + i2`.
#[derive(Clone, Debug)]
pub struct Product {
    pub monoid: FiniteMonoid,
    pub first: MonoidHom,
    pub second: MonoidHom,
}

impl Product {
    pub fn pair(&self, i1: ElementId, i2: ElementId) -> ElementId {
        i1 * self.second.target.size() + i2
    }

    pub fn split(&self, id: ElementId) -> (ElementId, ElementId) {
        let n2 = self.second.target.size();
        (id / n2, id % n2)
    }
}

pub fn product_monoid(m1: &FiniteMonoid, m2: &FiniteMonoid, limits: &Limits) -> Result<Product> {
    let (n1, n2) = (m1.size(), m2.size());
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= limits.max_product)
        .ok_or(Error::cap("product monoid", n1.saturating_mul(n2), limits.max_product))?;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(m1.mul(a / n2, b / n2) * n2 + m2.mul(a % n2, b % n2));
        }
    }
    let one = m1.one() * n2 + m2.one();
    let zero = match (m1.zero(), m2.zero()) {
        (Some(z1), Some(z2)) => Some(z1 * n2 + z2),
        _ => None,
    };
    let monoid = FiniteMonoid::from_flat_unchecked(n, mul, one, zero);
    let first = MonoidHom::new_unchecked(monoid.clone(), m1.clone(), (0..n).map(|a| a / n2).collect());
    let second = MonoidHom::new_unchecked(monoid.clone(), m2.clone(), (0..n).map(|a| a % n2).collect());
    Ok(Product { monoid, first, second })
}

/// The fraction monoid `M_F` together with the canonical map `a ↦ a/1`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub monoid: FiniteMonoid,
    pub hom: MonoidHom,
    /// For each class, its lexicographically smallest pair `(a, f)`.
    pub representatives: Vec<(ElementId, ElementId)>,
}

/// Localises `M` at the filter `F`: pairs `(a, f)` with `f ∈ F`, identified
/// when `a·g·h = b·f·h` for some `h ∈ F`.
pub fn fraction_monoid(m: &FiniteMonoid, filter: &Filter) -> Result<Localization> {
    if filter.carrier() != m {
        return Err(Error::CarrierMismatch);
    }
    let n = m.size();
    let dens: Vec<ElementId> = filter.members().to_vec();
    let equivalent = |(a, f): (usize, usize), (b, g): (usize, usize)| {
        let (ag, bf) = (m.mul(a, g), m.mul(b, f));
        dens.iter().any(|&h| m.mul(ag, h) == m.mul(bf, h))
    };
    // Pairs visited in lexicographic order, so each class is numbered by its
    // smallest pair and the class ids come out sorted by representative.
    let mut class_of = vec![usize::MAX; n * n];
    let mut representatives = Vec::new();
    for a in 0..n {
        for &f in &dens {
            if class_of[a * n + f] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push((a, f));
            for b in a..n {
                for &g in &dens {
                    if class_of[b * n + g] == usize::MAX && equivalent((a, f), (b, g)) {
                        class_of[b * n + g] = id;
                    }
                }
            }
        }
    }
    let k = representatives.len();
    let mut mul = Vec::with_capacity(k * k);
    for &(a, f) in &representatives {
        for &(b, g) in &representatives {
            mul.push(class_of[m.mul(a, b) * n + m.mul(f, g)]);
        }
    }
    let one = class_of[m.one() * n + m.one()];
    let zero = m.zero().map(|z| class_of[z * n + m.one()]);
    let monoid = FiniteMonoid::from_flat_unchecked(k, mul, one, zero);
    let hom = MonoidHom::new_unchecked(
        m.clone(),
        monoid.clone(),
        (0..n).map(|a| class_of[a * n + m.one()]).collect(),
    );
    Ok(Localization {
        monoid,
        hom,
        representatives,
    })
}

/// `M/∼` where `f ∼ g` iff `F(f) = F(g)`, with the quotient map.
#[derive(Clone, Debug)]
pub struct PrincipalQuotient {
    pub monoid: FiniteMonoid,
    pub hom: MonoidHom,
    /// Classes in order of their smallest element.
    pub classes: Vec<ElementSet>,
}

pub fn principal_quotient(m: &FiniteMonoid) -> Result<PrincipalQuotient> {
    let principal: Vec<ElementSet> = m
        .elements()
        .map(|f| generate(m, &ElementSet::singleton(f)).into_members())
        .collect();
    let mut class_of = vec![usize::MAX; m.size()];
    let mut classes: Vec<ElementSet> = Vec::new();
    for f in m.elements() {
        if class_of[f] != usize::MAX {
            continue;
        }
        let class: ElementSet = (f..m.size()).filter(|&g| principal[g] == principal[f]).collect();
        for g in &class {
            class_of[g] = classes.len();
        }
        classes.push(class);
    }
    let k = classes.len();
    let mut mul = vec![usize::MAX; k * k];
    for x in m.elements() {
        for y in m.elements() {
            let (cx, cy, cxy) = (class_of[x], class_of[y], class_of[m.mul(x, y)]);
            let slot = &mut mul[cx * k + cy];
            if *slot != usize::MAX && *slot != cxy {
                return Err(Error::violation(
                    "principal quotient well-defined",
                    format!("the class of {x}·{y} depends on representatives"),
                ));
            }
            *slot = cxy;
        }
    }
    let monoid = FiniteMonoid::from_flat_unchecked(k, mul, class_of[m.one()], m.zero().map(|z| class_of[z]));
    let hom = MonoidHom::new_unchecked(m.clone(), monoid.clone(), class_of);
    Ok(PrincipalQuotient { monoid, hom, classes })
}

/// Searches for an isomorphism `a → b`, returned as an element map.
pub fn find_isomorphism(a: &FiniteMonoid, b: &FiniteMonoid) -> Option<Vec<ElementId>> {
    let n = a.size();
    if n != b.size() || a.zero().is_some() != b.zero().is_some() {
        return None;
    }
    // Isomorphism invariants used to prune candidate images.
    let signature = |m: &FiniteMonoid, x: ElementId| {
        (
            m.divisors(x).len(),
            m.elements().filter(|&y| m.divisors(y).contains(x)).count(),
            m.is_unit(x),
            m.mul(x, x) == x,
            Some(x) == m.zero(),
            x == m.one(),
        )
    };
    let sig_a: Vec<_> = a.elements().map(|x| signature(a, x)).collect();
    let sig_b: Vec<_> = b.elements().map(|x| signature(b, x)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        x: usize,
        a: &FiniteMonoid,
        b: &FiniteMonoid,
        sig_ok: &dyn Fn(usize, usize) -> bool,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == a.size() {
            return true;
        }
        for y in b.elements() {
            if used[y] || !sig_ok(x, y) {
                continue;
            }
            map[x] = y;
            let consistent = (0..=x).all(|u| {
                let p = a.mul(x, u);
                p > x || map[p] == b.mul(y, map[u])
            });
            if consistent {
                used[y] = true;
                if extend(x + 1, a, b, sig_ok, map, used) {
                    return true;
                }
                used[y] = false;
            }
            map[x] = usize::MAX;
        }
        false
    }

    let sig_ok = |x: usize, y: usize| sig_a[x] == sig_b[y];
    if !extend(0, a, b, &sig_ok, &mut map, &mut used) {
        return None;
    }
    // Products landing on later elements were skipped above; confirm in full.
    let full = a
        .elements()
        .all(|x| a.elements().all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
    full.then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z6() -> FiniteMonoid {
        FiniteMonoid::integers_mod(6).unwrap()
    }

    #[test]
    fn trivial_table_validates() {
        let m = validate_monoid(&[vec![0]], 0, None).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.units().to_vec(), vec![0]);
    }

    #[test]
    fn validation_reports_first_violation() {
        let err = validate_monoid(&[vec![0, 1], vec![0, 1]], 0, None).unwrap_err();
        assert_eq!(err.code(), "NonCommutative");
        let err = validate_monoid(&[vec![0, 1], vec![1, 0]], 1, None).unwrap_err();
        assert!(matches!(err, Error::BadIdentity { one: 1, .. }));
        let err = validate_monoid(&[vec![0, 1], vec![1, 0]], 0, Some(1)).unwrap_err();
        assert!(matches!(err, Error::BadZero { zero: 1, .. }));
        let err = validate_monoid(&[vec![0, 1]], 0, None).unwrap_err();
        assert_eq!(err.code(), "ShapeError");
        let err = validate_monoid(&[vec![0, 2], vec![2, 1]], 0, None).unwrap_err();
        assert_eq!(err.code(), "ShapeError");
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // Commutative with identity 0, but (1·1)·2 = 0·2 = 2 while 1·(1·2) = 1·1 = 0.
        let t = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 2]];
        let err = validate_monoid(&t, 0, None).unwrap_err();
        assert!(matches!(err, Error::NonAssociative { .. }), "{err:?}");
    }

    #[test]
    fn divisibility_in_z6() {
        let m = z6();
        assert!(m.divides(4, 2).unwrap());
        assert!(!m.divides(3, 2).unwrap());
        for f in m.elements() {
            assert!(m.divides(m.one(), f).unwrap());
            assert!(m.divides(f, 0).unwrap());
        }
        assert!(m.divides(6, 0).is_err());
    }

    #[test]
    fn distinguished_subsets() {
        let m = z6();
        assert_eq!(m.units().to_vec(), vec![1, 5]);
        assert_eq!(m.nonzerodivisors().unwrap().to_vec(), vec![1, 5]);
        let z5 = FiniteMonoid::integers_mod(5).unwrap();
        assert_eq!(z5.nonzerodivisors().unwrap().to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(FiniteMonoid::trivial().nonzerodivisors().unwrap().to_vec(), vec![0]);
        assert_eq!(
            FiniteMonoid::cyclic_group(3).unwrap().nonzerodivisors(),
            Err(Error::NoZeroElement)
        );
        let z4 = FiniteMonoid::integers_mod(4).unwrap();
        assert_eq!(z4.nilpotents().to_vec(), vec![0, 2]);
        assert!(!z4.is_reduced());
        assert!(m.is_reduced());
    }

    #[test]
    fn undeclared_zero_is_detected() {
        let m = FiniteMonoid::integers_mod(6).unwrap().with_zero(None).unwrap();
        assert_eq!(m.undeclared_annihilator(), Some(0));
        assert_eq!(z6().undeclared_annihilator(), None);
        assert_eq!(FiniteMonoid::cyclic_group(4).unwrap().undeclared_annihilator(), None);
    }

    #[test]
    fn cyclic_monoid_shapes() {
        let nil = FiniteMonoid::cyclic_monoid(2, 1).unwrap();
        assert_eq!(nil.zero(), Some(2));
        assert_eq!(nil.mul(1, 1), 2);
        let m = FiniteMonoid::cyclic_monoid(2, 2).unwrap();
        assert_eq!(m.mul(3, 1), 2);
        assert_eq!(m.zero(), None);
        assert_eq!(FiniteMonoid::cyclic_group(5).unwrap().units().len(), 5);
    }

    #[test]
    fn product_of_two_bits() {
        let z2 = FiniteMonoid::integers_mod(2).unwrap();
        let p = product_monoid(&z2, &z2, &Limits::default()).unwrap();
        assert_eq!(p.monoid.size(), 4);
        assert_eq!(p.monoid.idempotents().len(), 4);
        // The three idempotents other than one; with one this is all four.
        assert_eq!(
            p.monoid
                .idempotents()
                .difference(&ElementSet::singleton(p.monoid.one()))
                .len(),
            3
        );
        assert_eq!(p.pair(1, 0), 2);
        assert_eq!(p.split(3), (1, 1));
        MonoidHom::new(p.monoid.clone(), z2.clone(), p.first.map().to_vec()).unwrap();
        MonoidHom::new(p.monoid.clone(), z2, p.second.map().to_vec()).unwrap();
    }

    #[test]
    fn trivial_times_m_is_m() {
        let m = z6();
        let p = product_monoid(&FiniteMonoid::trivial(), &m, &Limits::default()).unwrap();
        assert_eq!(p.monoid, m);
    }

    #[test]
    fn product_respects_cap() {
        let m = z6();
        let limits = Limits {
            max_product: 30,
            ..Limits::default()
        };
        assert!(product_monoid(&m, &m, &limits).unwrap_err().is_cap());
    }

    #[test]
    fn localising_at_units_changes_nothing() {
        let m = z6();
        let units = generate(&m, &ElementSet::new());
        let loc = fraction_monoid(&m, &units).unwrap();
        assert!(loc.hom.is_isomorphism());
        assert!(find_isomorphism(&m, &loc.monoid).is_some());
    }

    #[test]
    fn localising_at_everything_collapses() {
        let m = z6();
        let all = generate(&m, &ElementSet::singleton(0));
        let loc = fraction_monoid(&m, &all).unwrap();
        assert_eq!(loc.monoid.size(), 1);
    }

    #[test]
    fn localisation_inverts_the_filter() {
        let m = z6();
        let f = generate(&m, &ElementSet::singleton(2));
        let loc = fraction_monoid(&m, &f).unwrap();
        for x in f.members() {
            assert!(loc.monoid.is_unit(loc.hom.apply(x)));
        }
        // ℤ/6 at {1,2,4,5} is ℤ/3: residues 0, 1, 2.
        assert_eq!(loc.monoid.size(), 3);
        assert_eq!(loc.representatives[0], (0, 1));
    }

    #[test]
    fn principal_quotient_of_z6() {
        let q = principal_quotient(&z6()).unwrap();
        let classes: Vec<Vec<usize>> = q.classes.iter().map(ElementSet::to_vec).collect();
        assert_eq!(classes, vec![vec![0], vec![1, 5], vec![2, 4], vec![3]]);
        assert!(q.hom.is_surjective());
    }

    #[test]
    fn principal_quotient_of_group_and_chain() {
        let g = FiniteMonoid::cyclic_group(4).unwrap();
        assert_eq!(principal_quotient(&g).unwrap().monoid.size(), 1);
        let c = FiniteMonoid::chain(4).unwrap();
        let q = principal_quotient(&c).unwrap();
        assert!(q.hom.is_isomorphism());
    }

    #[test]
    fn isomorphism_search() {
        let a = FiniteMonoid::cyclic_group(4).unwrap();
        let b = FiniteMonoid::integers_mod(5).unwrap().with_zero(None).unwrap();
        assert!(find_isomorphism(&a, &b).is_none());
        let z5_units = FiniteMonoid::from_fn(4, 0, None, |x, y| {
            let r = [1, 2, 4, 3];
            let v = r[x] * r[y] % 5;
            r.iter().position(|&t| t == v).unwrap()
        })
        .unwrap();
        let map = find_isomorphism(&a, &z5_units).unwrap();
        MonoidHom::new(a, z5_units, map).unwrap();
    }

    #[test]
    fn hom_validation() {
        let m = z6();
        let z3 = FiniteMonoid::integers_mod(3).unwrap();
        let h = MonoidHom::new(m.clone(), z3.clone(), (0..6).map(|x| x % 3).collect()).unwrap();
        assert!(h.preserves_zero());
        assert!(h.is_surjective());
        assert!(MonoidHom::new(m.clone(), z3.clone(), vec![0; 6]).is_err());
        assert!(MonoidHom::new(m.clone(), z3, vec![1; 5]).is_err());
        assert!(!MonoidHom::to_trivial(&FiniteMonoid::cyclic_group(2).unwrap()).preserves_zero());
        let sq = MonoidHom::power(&m, 2);
        assert_eq!(sq.map(), &[0, 1, 4, 3, 4, 1]);
        let id = MonoidHom::identity(&m);
        assert_eq!(sq.then(&id).unwrap(), sq);
    }
}
