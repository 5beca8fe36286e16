//! Finite commutative rings viewed through their multiplicative monoids.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::filter::{all_filters, generate, is_filter, maximal_filters_avoiding, ultrafilters, Filter, FilterFamily};
use crate::filtrum::{pullback, pushforward};
use crate::limits::Limits;
use crate::monoid::{ElementId, FiniteMonoid, MonoidHom};

struct RingData {
    size: usize,
    add: Vec<ElementId>,
    neg: Vec<ElementId>,
    zero: ElementId,
    monoid: FiniteMonoid,
}

/// A finite commutative ring with identity. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingData>,
}

fn ring_err(law: &'static str, elements: &[usize]) -> Error {
    Error::RingAxiom {
        law,
        elements: elements.to_vec(),
    }
}

impl FiniteRing {
    /// Validates both tables; zero and one are inferred as the neutral
    /// elements of addition and multiplication.
    pub fn new(add: &[Vec<ElementId>], mul: &[Vec<ElementId>]) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::Shape("a ring needs at least one element".into()));
        }
        if mul.len() != n {
            return Err(Error::Shape(format!("add has {n} rows, mul has {}", mul.len())));
        }
        for (name, t) in [("add", add), ("mul", mul)] {
            for (i, row) in t.iter().enumerate() {
                if row.len() != n || row.iter().any(|&v| v >= n) {
                    return Err(Error::Shape(format!("{name} row {i} is not {n} entries in 0..{n}")));
                }
            }
        }
        let a = |x: usize, y: usize| add[x][y];
        let m = |x: usize, y: usize| mul[x][y];
        for x in 0..n {
            for y in 0..n {
                if a(x, y) != a(y, x) {
                    return Err(ring_err("addition is commutative", &[x, y]));
                }
                for z in 0..n {
                    if a(a(x, y), z) != a(x, a(y, z)) {
                        return Err(ring_err("addition is associative", &[x, y, z]));
                    }
                }
            }
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| a(z, x) == x))
            .ok_or_else(|| ring_err("addition has a neutral element", &[]))?;
        let mut neg = Vec::with_capacity(n);
        for x in 0..n {
            neg.push(
                (0..n)
                    .find(|&y| a(x, y) == zero)
                    .ok_or_else(|| ring_err("additive inverses exist", &[x]))?,
            );
        }
        let one = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x))
            .ok_or_else(|| ring_err("multiplication has a neutral element", &[]))?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(x, a(y, z)) != a(m(x, y), m(x, z)) {
                        return Err(ring_err("multiplication distributes over addition", &[x, y, z]));
                    }
                }
            }
        }
        let monoid = FiniteMonoid::validate(mul, one, Some(zero))?;
        Ok(FiniteRing {
            inner: Arc::new(RingData {
                size: n,
                add: add.iter().flatten().copied().collect(),
                neg,
                zero,
                monoid,
            }),
        })
    }

    fn from_fns(n: usize, add: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let at = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect()
        };
        Self::new(&at(&add), &at(&mul))
    }

    /// `ℤ/n`, element `k` being the residue `k`.
    pub fn integers_mod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("modulus must be positive".into()));
        }
        Self::from_fns(n, |x, y| (x + y) % n, |x, y| x * y % n)
    }

    /// `(ℤ/2)^k`, elements as bitmasks: addition is xor, multiplication is and.
    pub fn boolean_power(k: usize) -> Result<Self> {
        Self::from_fns(1 << k, |x, y| x ^ y, |x, y| x & y)
    }

    /// `R1 × R2`, element `(x1, x2)` at index `x1·|R2| + x2`.
    pub fn product(r1: &FiniteRing, r2: &FiniteRing, limits: &Limits) -> Result<Self> {
        let n2 = r2.size();
        let n = r1.size() * n2;
        if n > limits.max_product {
            return Err(Error::cap("product ring", n, limits.max_product));
        }
        Self::from_fns(
            n,
            |x, y| r1.add(x / n2, y / n2) * n2 + r2.add(x % n2, y % n2),
            |x, y| r1.mul(x / n2, y / n2) * n2 + r2.mul(x % n2, y % n2),
        )
    }

    pub fn size(&self) -> usize {
        self.inner.size
    }

    pub fn zero(&self) -> ElementId {
        self.inner.zero
    }

    pub fn one(&self) -> ElementId {
        self.inner.monoid.one()
    }

    pub fn add(&self, x: ElementId, y: ElementId) -> ElementId {
        self.inner.add[x * self.inner.size + y]
    }

    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.inner.monoid.mul(x, y)
    }

    pub fn neg(&self, x: ElementId) -> ElementId {
        self.inner.neg[x]
    }

    pub fn sub(&self, x: ElementId, y: ElementId) -> ElementId {
        self.add(x, self.neg(y))
    }

    pub fn add_table(&self) -> Vec<Vec<ElementId>> {
        self.inner.add.chunks(self.size()).map(<[_]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<ElementId>> {
        self.inner.monoid.table()
    }

    /// The multiplicative monoid, with the ring's zero declared.
    pub fn mult_monoid(&self) -> FiniteMonoid {
        self.inner.monoid.clone()
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size() == 1
    }

    pub fn is_boolean(&self) -> bool {
        (0..self.size()).all(|x| self.mul(x, x) == x)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.add == other.inner.add && self.inner.monoid == other.inner.monoid)
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("size", &self.size())
            .field("zero", &self.zero())
            .field("one", &self.one())
            .finish_non_exhaustive()
    }
}

/// An ideal, as its member set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ideal {
    members: ElementSet,
}

impl Ideal {
    pub fn new(r: &FiniteRing, members: ElementSet) -> Result<Self> {
        check_ideal(r, &members).map_err(Error::NotAnIdeal)?;
        Ok(Ideal { members })
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn is_proper(&self, r: &FiniteRing) -> bool {
        !self.members.contains(r.one())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.members.fmt(f)
    }
}

pub fn check_ideal(r: &FiniteRing, s: &ElementSet) -> Result<(), String> {
    if s.bound() > r.size() {
        return Err(format!("{s} mentions elements outside the ring"));
    }
    if !s.contains(r.zero()) {
        return Err("the zero element is missing".into());
    }
    for x in s {
        for y in s.iter().filter(|&y| y >= x) {
            if !s.contains(r.add(x, y)) {
                return Err(format!("not closed under addition: {x} + {y}"));
            }
        }
        for y in 0..r.size() {
            if !s.contains(r.mul(x, y)) {
                return Err(format!("not closed under multiplication: {x}·{y}"));
            }
        }
    }
    Ok(())
}

pub fn is_ideal(r: &FiniteRing, s: &ElementSet) -> bool {
    check_ideal(r, s).is_ok()
}

/// The ideal generated by `s`: finite sums of multiples of its elements.
pub fn ideal_generated(r: &FiniteRing, s: &ElementSet) -> Ideal {
    let mut members = ElementSet::singleton(r.zero());
    for x in s {
        for y in 0..r.size() {
            members.insert(r.mul(x, y));
        }
    }
    let gens: Vec<usize> = members.to_vec();
    let mut frontier = gens.clone();
    while let Some(c) = frontier.pop() {
        for &g in &gens {
            let sum = r.add(c, g);
            if members.insert(sum) {
                frontier.push(sum);
            }
        }
    }
    Ideal { members }
}

/// All ideals, ascending by bitmask, found by adjoining generators one at a time.
pub fn all_ideals(r: &FiniteRing, limits: &Limits) -> Result<Vec<Ideal>> {
    limits.check_elements("ring", r.size())?;
    let start = ElementSet::singleton(r.zero());
    let mut seen: HashSet<ElementSet> = HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(i) = queue.pop() {
        for x in i.complement(r.size()).iter() {
            let mut gens = i.clone();
            gens.insert(x);
            let j = ideal_generated(r, &gens).members;
            if seen.insert(j.clone()) {
                queue.push(j);
            }
        }
    }
    let sorted: BTreeSet<ElementSet> = seen.into_iter().collect();
    Ok(sorted.into_iter().map(|members| Ideal { members }).collect())
}

/// All ideals by testing every subset. Exponential; used as a reference.
pub fn all_ideals_by_scan(r: &FiniteRing, limits: &Limits) -> Result<Vec<Ideal>> {
    let n = r.size();
    if n > limits.max_scan_elements.min(24) {
        return Err(Error::cap("subset scan", n, limits.max_scan_elements.min(24)));
    }
    Ok((0..1u64 << n)
        .map(ElementSet::from_mask)
        .filter(|s| is_ideal(r, s))
        .map(|members| Ideal { members })
        .collect())
}

/// Proper ideals whose complement is multiplicatively closed.
pub fn prime_ideals(r: &FiniteRing, limits: &Limits) -> Result<Vec<Ideal>> {
    Ok(all_ideals(r, limits)?
        .into_iter()
        .filter(|p| p.is_proper(r) && is_prime(r, p))
        .collect())
}

fn is_prime(r: &FiniteRing, p: &Ideal) -> bool {
    let comp = p.members.complement(r.size());
    comp.iter().all(|x| comp.iter().all(|y| comp.contains(r.mul(x, y))))
}

/// Members of `ideals` not strictly containing another member.
pub fn minimal_ideals(ideals: &[Ideal]) -> Vec<Ideal> {
    ideals
        .iter()
        .filter(|p| !ideals.iter().any(|q| q != *p && q.members.is_subset(&p.members)))
        .cloned()
        .collect()
}

/// The primes containing `a` that are minimal with this property.
pub fn minimal_primes_over(r: &FiniteRing, a: &Ideal, limits: &Limits) -> Result<Vec<Ideal>> {
    let over: Vec<Ideal> = prime_ideals(r, limits)?
        .into_iter()
        .filter(|p| a.members.is_subset(&p.members))
        .collect();
    Ok(minimal_ideals(&over))
}

/// The nilpotent elements.
pub fn nilradical(r: &FiniteRing) -> Ideal {
    Ideal {
        members: r.mult_monoid().nilpotents(),
    }
}

/// `R/a` with the quotient map. Cosets are numbered by their smallest element.
#[derive(Clone, Debug)]
pub struct RingQuotient {
    pub ring: FiniteRing,
    pub map: Vec<ElementId>,
    pub cosets: Vec<ElementSet>,
}

impl RingQuotient {
    /// The quotient map as a homomorphism of multiplicative monoids.
    pub fn monoid_hom(&self, r: &FiniteRing) -> MonoidHom {
        MonoidHom::new_unchecked(r.mult_monoid(), self.ring.mult_monoid(), self.map.clone())
    }
}

pub fn quotient(r: &FiniteRing, a: &Ideal) -> Result<RingQuotient> {
    check_ideal(r, &a.members).map_err(Error::NotAnIdeal)?;
    let n = r.size();
    let mut map = vec![usize::MAX; n];
    let mut cosets = Vec::new();
    for x in 0..n {
        if map[x] != usize::MAX {
            continue;
        }
        let coset: ElementSet = a.members.iter().map(|y| r.add(x, y)).collect();
        for y in &coset {
            map[y] = cosets.len();
        }
        cosets.push(coset);
    }
    let k = cosets.len();
    let rep: Vec<usize> = cosets.iter().map(|c| c.first().expect("cosets are nonempty")).collect();
    let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..k)
            .map(|i| (0..k).map(|j| map[op(rep[i], rep[j])]).collect())
            .collect()
    };
    let ring = FiniteRing::new(&table(&|x, y| r.add(x, y)), &table(&|x, y| r.mul(x, y)))?;
    Ok(RingQuotient { ring, map, cosets })
}

/// Writes the complement of a filter as a union of primes: all primes disjoint
/// from it. Also checks the converse, that the complement of every union of
/// primes is a filter.
pub fn filter_complement_decomposition(r: &FiniteRing, f: &Filter, limits: &Limits) -> Result<Vec<Ideal>> {
    if f.carrier() != &r.mult_monoid() {
        return Err(Error::CarrierMismatch);
    }
    let primes = prime_ideals(r, limits)?;
    let chosen: Vec<Ideal> = primes
        .iter()
        .filter(|p| p.members.is_disjoint(f.members()))
        .cloned()
        .collect();
    let mut union = ElementSet::new();
    for p in &chosen {
        union.union_with(&p.members);
    }
    if union != f.members().complement(r.size()) {
        return Err(Error::violation(
            "filter complements are unions of primes",
            format!("the primes avoiding {f} cover {union}, not the complement"),
        ));
    }
    check_prime_unions(r, &primes)?;
    Ok(chosen)
}

/// The complement of every union of primes (the empty union included) is a filter.
pub fn check_prime_unions(r: &FiniteRing, primes: &[Ideal]) -> Result<()> {
    let m = r.mult_monoid();
    let k = primes.len();
    if k > 20 {
        return Err(Error::cap("prime families", k, 20));
    }
    for mask in 0u64..1 << k {
        let mut union = ElementSet::new();
        for (i, p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                union.union_with(&p.members);
            }
        }
        let comp = union.complement(r.size());
        if !is_filter(&m, &comp) {
            return Err(Error::violation(
                "complements of prime unions are filters",
                format!("the complement {comp} of {union} is not a filter"),
            ));
        }
    }
    Ok(())
}

/// Pairs each minimal prime with the ultrafilter that is its complement,
/// after checking that complementation is a bijection between the two sets.
pub fn minimal_prime_ultrafilter_duality(r: &FiniteRing, limits: &Limits) -> Result<Vec<(Ideal, Filter)>> {
    if r.is_zero_ring() {
        return Err(Error::ZeroRing);
    }
    let m = r.mult_monoid();
    let minimal = minimal_ideals(&prime_ideals(r, limits)?);
    let ultra = ultrafilters(&m, limits)?;
    let fail = |detail: String| Error::violation("ultrafilters are complements of minimal primes", detail);
    if minimal.len() != ultra.len() {
        return Err(fail(format!(
            "{} minimal primes, {} ultrafilters",
            minimal.len(),
            ultra.len()
        )));
    }
    let mut pairs = Vec::new();
    for p in minimal {
        let comp = p.members.complement(r.size());
        let i = ultra
            .position(&comp)
            .ok_or_else(|| fail(format!("the complement of {p} is not an ultrafilter")))?;
        pairs.push((p, ultra.as_slice()[i].clone()));
    }
    for u in ultra.iter() {
        let comp = u.members().complement(r.size());
        if !pairs.iter().any(|(p, _)| p.members == comp) {
            return Err(fail(format!("the complement of {u} is not a minimal prime")));
        }
    }
    Ok(pairs)
}

/// For each proper ideal `a`, the filters maximal among those missing `a`
/// are exactly the complements of the minimal primes over `a`.
pub fn check_avoiding_filters_vs_minimal_primes(r: &FiniteRing, limits: &Limits) -> Result<()> {
    let m = r.mult_monoid();
    for a in all_ideals(r, limits)?.into_iter().filter(|a| a.is_proper(r)) {
        let maximal = maximal_filters_avoiding(&m, &m.units(), &a.members, limits)?;
        let mut comps: Vec<ElementSet> = minimal_primes_over(r, &a, limits)?
            .iter()
            .map(|p| p.members.complement(r.size()))
            .collect();
        comps.sort();
        if maximal.member_sets() != comps {
            return Err(Error::violation(
                "maximal filters avoiding an ideal are complements of minimal primes over it",
                format!(
                    "ideal {a}: filters {:?}, prime complements {:?}",
                    maximal.member_sets(),
                    comps
                ),
            ));
        }
    }
    Ok(())
}

/// `{1 − e : e ∈ s}`.
pub fn inner_complement(r: &FiniteRing, s: &ElementSet) -> ElementSet {
    s.iter().map(|e| r.sub(r.one(), e)).collect()
}

/// The ideal/filter correspondence of a boolean ring.
#[derive(Clone, Debug)]
pub struct BooleanCorrespondence {
    /// Each ideal with its filter `{1 − e : e ∈ a}`.
    pub pairs: Vec<(Ideal, Filter)>,
    pub ultrafilters: FilterFamily,
}

/// Verifies, for a boolean ring: `a ↦ {1 − e : e ∈ a}` is a bijection from
/// ideals to filters with the same formula as inverse; a filter is an
/// ultrafilter iff it contains exactly one of `e`, `1 − e` for every `e`; and
/// every filter is the intersection of the ultrafilters containing it.
pub fn boolean_ideal_filter_correspondence(r: &FiniteRing, limits: &Limits) -> Result<BooleanCorrespondence> {
    if let Some(x) = (0..r.size()).find(|&x| r.mul(x, x) != x) {
        return Err(Error::NotBoolean(x));
    }
    let m = r.mult_monoid();
    let ideals = all_ideals(r, limits)?;
    let filters = all_filters(&m, limits)?;
    let fail = |law: &str, detail: String| Error::violation(law, detail);
    if ideals.len() != filters.len() {
        return Err(fail(
            "ideal/filter correspondence",
            format!("{} ideals, {} filters", ideals.len(), filters.len()),
        ));
    }
    let mut pairs = Vec::new();
    for a in &ideals {
        let f = inner_complement(r, &a.members);
        if !filters.contains(&f) {
            return Err(fail(
                "ideal/filter correspondence",
                format!("{{1 - e : e ∈ {a}}} = {f} is not a filter"),
            ));
        }
        if inner_complement(r, &f) != a.members {
            return Err(fail(
                "ideal/filter correspondence",
                format!("the maps are not inverse at {a}"),
            ));
        }
        pairs.push((a.clone(), Filter::new_unchecked(&m, f)));
    }
    for f in filters.iter() {
        let back = inner_complement(r, f.members());
        if !is_ideal(r, &back) {
            return Err(fail(
                "ideal/filter correspondence",
                format!("{{1 - f : f ∈ {f}}} is not an ideal"),
            ));
        }
    }
    let ultra = ultrafilters(&m, limits)?;
    for f in filters.iter() {
        let exactly_one = (0..r.size()).all(|e| f.contains(e) != f.contains(r.sub(r.one(), e)));
        if exactly_one != ultra.contains(f.members()) {
            return Err(fail(
                "boolean ultrafilter criterion",
                format!("{f}: exactly one of e, 1 - e always present = {exactly_one}"),
            ));
        }
        let meet = ultra
            .iter()
            .filter(|u| f.is_subset(u))
            .fold(r.all(), |acc, u| acc.intersection(u.members()));
        if &meet != f.members() {
            return Err(fail(
                "boolean filters are intersections of ultrafilters",
                format!("{f} versus {meet}"),
            ));
        }
    }
    Ok(BooleanCorrespondence {
        pairs,
        ultrafilters: ultra,
    })
}

/// Whether `F` is fix with respect to `R → R/a`, decided by `f + a ∈ F` for
/// all `f ∈ F`, `a ∈ a`, and cross-checked against the quotient map.
pub fn fix_modulo_ideal(r: &FiniteRing, a: &Ideal, f: &Filter) -> Result<bool> {
    check_ideal(r, &a.members).map_err(Error::NotAnIdeal)?;
    if f.carrier() != &r.mult_monoid() {
        return Err(Error::CarrierMismatch);
    }
    let criterion = f
        .members()
        .iter()
        .all(|x| a.members.iter().all(|y| f.contains(r.add(x, y))));
    let q = quotient(r, a)?;
    let h = q.monoid_hom(r);
    let round_trip = pullback(&h, &pushforward(&h, f)?)?;
    if (round_trip == *f) != criterion {
        return Err(Error::violation(
            "fixness modulo an ideal",
            format!(
                "{f} modulo {a}: additive criterion {criterion}, quotient map {}",
                !criterion
            ),
        ));
    }
    Ok(criterion)
}

/// `F(1 + a)`, the smallest filter fix modulo `a`.
pub fn smallest_fix_filter(r: &FiniteRing, a: &Ideal) -> Filter {
    let shifted: ElementSet = a.members.iter().map(|x| r.add(r.one(), x)).collect();
    generate(&r.mult_monoid(), &shifted)
}
