//! Filters: subsets containing 1 that are closed under products and divisors.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::bitset::ElementSet;
use crate::error::{Error, FilterAxiom, Result};
use crate::limits::Limits;
use crate::monoid::{ElementId, FiniteMonoid};

/// A filter of a finite monoid.
#[derive(Clone, PartialEq, Eq)]
pub struct Filter {
    carrier: FiniteMonoid,
    members: ElementSet,
}

impl Filter {
    pub fn new(carrier: &FiniteMonoid, members: ElementSet) -> Result<Self> {
        carrier.check_set(&members)?;
        check_filter(carrier, &members).map_err(Error::NotAFilter)?;
        Ok(Filter {
            carrier: carrier.clone(),
            members,
        })
    }

    pub(crate) fn new_unchecked(carrier: &FiniteMonoid, members: ElementSet) -> Self {
        debug_assert!(check_filter(carrier, &members).is_ok(), "{members} is not a filter");
        Filter {
            carrier: carrier.clone(),
            members,
        }
    }

    pub fn carrier(&self) -> &FiniteMonoid {
        &self.carrier
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn into_members(self) -> ElementSet {
        self.members
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Consistent means the zero is not a member. Without a declared zero every
    /// filter counts as consistent.
    pub fn is_consistent(&self) -> bool {
        self.carrier.zero().is_none_or(|z| !self.members.contains(z))
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Intersections of filters are filters.
    pub fn intersection(&self, other: &Filter) -> Result<Filter> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        Ok(Filter::new_unchecked(
            &self.carrier,
            self.members.intersection(&other.members),
        ))
    }
}

impl PartialOrd for Filter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Filter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl fmt::Debug for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Filter{}", self.members)
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.members.fmt(f)
    }
}

/// Checks the three filter axioms in order and reports the first failure.
pub fn check_filter(m: &FiniteMonoid, s: &ElementSet) -> Result<(), FilterAxiom> {
    if !s.contains(m.one()) {
        return Err(FilterAxiom::ContainsOne);
    }
    for f in s {
        for g in s.iter().filter(|&g| g >= f) {
            if !s.contains(m.mul(f, g)) {
                return Err(FilterAxiom::Multiplicative { f, g });
            }
        }
    }
    for f in s {
        if let Some(g) = m.divisors(f).difference(s).first() {
            return Err(FilterAxiom::DivisorStable { f, g });
        }
    }
    Ok(())
}

pub fn is_filter(m: &FiniteMonoid, s: &ElementSet) -> bool {
    s.bound() <= m.size() && check_filter(m, s).is_ok()
}

/// The smallest filter containing `s`: all divisors of finite products of
/// elements of `s`. The empty product is 1, so `generate(∅)` is the unit group.
pub fn generate(m: &FiniteMonoid, s: &ElementSet) -> Filter {
    let gens: Vec<ElementId> = s.iter().filter(|&x| x < m.size()).collect();
    let mut products = ElementSet::singleton(m.one());
    let mut frontier = vec![m.one()];
    while let Some(c) = frontier.pop() {
        for &g in &gens {
            let p = m.mul(c, g);
            if products.insert(p) {
                frontier.push(p);
            }
        }
    }
    Filter::new_unchecked(m, divisor_closure(m, &products))
}

/// `F(f)`, all divisors of powers of `f`.
pub fn principal_filter(m: &FiniteMonoid, f: ElementId) -> Result<Filter> {
    m.check_index(f)?;
    Ok(generate(m, &ElementSet::singleton(f)))
}

/// `F(F ∪ {x})` for a filter `F`: divisors of `f·x^k`.
fn adjoin(m: &FiniteMonoid, filter: &ElementSet, x: ElementId) -> ElementSet {
    let mut products = filter.clone();
    let mut frontier: Vec<ElementId> = filter.iter().collect();
    while let Some(c) = frontier.pop() {
        let p = m.mul(c, x);
        if products.insert(p) {
            frontier.push(p);
        }
    }
    divisor_closure(m, &products)
}

fn divisor_closure(m: &FiniteMonoid, s: &ElementSet) -> ElementSet {
    let mut out = ElementSet::new();
    for c in s {
        out.union_with(m.divisors(c));
    }
    out
}

/// Filters of one monoid, sorted ascending by bitmask and free of duplicates.
#[derive(Clone, PartialEq, Eq)]
pub struct FilterFamily {
    carrier: FiniteMonoid,
    filters: Vec<Filter>,
}

impl FilterFamily {
    /// Sorts and deduplicates. Every set must already be a filter.
    pub(crate) fn from_sets(carrier: &FiniteMonoid, sets: impl IntoIterator<Item = ElementSet>) -> Self {
        let mut sets: Vec<ElementSet> = sets.into_iter().collect();
        sets.sort();
        sets.dedup();
        FilterFamily {
            carrier: carrier.clone(),
            filters: sets.into_iter().map(|s| Filter::new_unchecked(carrier, s)).collect(),
        }
    }

    pub fn from_filters(carrier: &FiniteMonoid, filters: impl IntoIterator<Item = Filter>) -> Result<Self> {
        let mut sets = Vec::new();
        for f in filters {
            if f.carrier() != carrier {
                return Err(Error::CarrierMismatch);
            }
            sets.push(f.into_members());
        }
        Ok(Self::from_sets(carrier, sets))
    }

    pub fn carrier(&self) -> &FiniteMonoid {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Filter> {
        self.filters.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Filter> {
        self.filters.get(i)
    }

    pub fn as_slice(&self) -> &[Filter] {
        &self.filters
    }

    /// Index of the filter with exactly these members.
    pub fn position(&self, members: &ElementSet) -> Option<usize> {
        self.filters.binary_search_by(|f| f.members().cmp(members)).ok()
    }

    pub fn contains(&self, members: &ElementSet) -> bool {
        self.position(members).is_some()
    }

    pub fn member_sets(&self) -> Vec<ElementSet> {
        self.filters.iter().map(|f| f.members().clone()).collect()
    }

    /// Members satisfying `keep`, order preserved.
    pub fn restrict(&self, keep: impl Fn(&Filter) -> bool) -> FilterFamily {
        FilterFamily {
            carrier: self.carrier.clone(),
            filters: self.filters.iter().filter(|f| keep(f)).cloned().collect(),
        }
    }

    /// Intersection of all members, or the whole carrier for an empty family.
    pub fn intersection(&self) -> ElementSet {
        self.filters
            .iter()
            .fold(self.carrier.all(), |acc, f| acc.intersection(f.members()))
    }
}

impl fmt::Debug for FilterFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.filters.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a FilterFamily {
    type Item = &'a Filter;
    type IntoIter = std::slice::Iter<'a, Filter>;

    fn into_iter(self) -> Self::IntoIter {
        self.filters.iter()
    }
}

/// All filters, found by closing the unit group under adjoining one element at
/// a time. Every filter `G` is reached because adding its elements one by one
/// climbs from the units up to `G`.
pub fn all_filters(m: &FiniteMonoid, limits: &Limits) -> Result<FilterFamily> {
    limits.check_elements("monoid", m.size())?;
    let start = m.units();
    let mut seen: HashSet<ElementSet> = HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(f) = queue.pop() {
        for x in f.complement(m.size()).iter() {
            let g = adjoin(m, &f, x);
            if seen.insert(g.clone()) {
                queue.push(g);
            }
        }
    }
    Ok(FilterFamily::from_sets(m, seen))
}

/// All filters by testing every subset. Exponential; used as a reference.
pub fn all_filters_by_scan(m: &FiniteMonoid, limits: &Limits) -> Result<FilterFamily> {
    let n = m.size();
    if n > limits.max_scan_elements || n > 40 {
        return Err(Error::cap("subset scan", n, limits.max_scan_elements.min(40)));
    }
    let div: Vec<u64> = m.elements().map(|f| m.divisors(f).low_mask()).collect();
    let table: Vec<Vec<ElementId>> = m.table();
    let one_bit = 1u64 << m.one();
    let is_filter_mask = |s: u64| {
        if s & one_bit == 0 {
            return false;
        }
        let mut rest = s;
        while rest != 0 {
            let f = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if div[f] & !s != 0 {
                return false;
            }
        }
        let mut rest = s;
        while rest != 0 {
            let f = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut others = s >> f << f;
            while others != 0 {
                let g = others.trailing_zeros() as usize;
                others &= others - 1;
                if s & (1u64 << table[f][g]) == 0 {
                    return false;
                }
            }
        }
        true
    };
    const CHUNK: u64 = 1 << 12;
    let total = 1u64 << n;
    let chunks = total.div_ceil(CHUNK);
    let masks: Vec<u64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(total);
            (lo..hi).filter(|&s| is_filter_mask(s)).collect::<Vec<_>>()
        })
        .collect();
    Ok(FilterFamily::from_sets(m, masks.into_iter().map(ElementSet::from_mask)))
}

/// The ultrafilter criterion: every non-member `g` has a power `g^n`
/// (`1 ≤ n ≤ |M|`) and a member `f` with `g^n·f` in `target`.
fn reaches(m: &FiniteMonoid, f: &ElementSet, target: &ElementSet) -> bool {
    f.complement(m.size()).iter().all(|g| {
        let mut p = g;
        for _ in 0..m.size() {
            if f.iter().any(|h| target.contains(m.mul(p, h))) {
                return true;
            }
            p = m.mul(p, g);
        }
        false
    })
}

/// Whether `F` satisfies `∀g ∉ F ∃n, f ∈ F: g^n·f = 0`.
pub fn satisfies_ultrafilter_criterion(filter: &Filter) -> Result<bool> {
    let m = filter.carrier();
    let z = m.zero().ok_or(Error::NoZeroElement)?;
    Ok(reaches(m, filter.members(), &ElementSet::singleton(z)))
}

/// Maximal consistent filters. Each is re-checked against the power criterion.
pub fn ultrafilters(m: &FiniteMonoid, limits: &Limits) -> Result<FilterFamily> {
    let z = m.zero().ok_or(Error::NoZeroElement)?;
    if z == m.one() {
        return Err(Error::ZeroEqualsOne);
    }
    let all = all_filters(m, limits)?;
    let family = maximal_within(&all.restrict(Filter::is_consistent));
    let zero = ElementSet::singleton(z);
    for f in all.iter().filter(|f| f.is_consistent()) {
        let maximal = family.contains(f.members());
        if maximal != reaches(m, f.members(), &zero) {
            return Err(Error::violation(
                "ultrafilter criterion",
                format!("filter {f} is maximal: {maximal}, criterion: {}", !maximal),
            ));
        }
    }
    Ok(family)
}

/// Members not strictly contained in another member.
pub(crate) fn maximal_within(family: &FilterFamily) -> FilterFamily {
    family.restrict(|f| {
        !family
            .iter()
            .any(|g| g.members() != f.members() && f.members().is_subset(g.members()))
    })
}

pub fn is_multiplicatively_closed(m: &FiniteMonoid, s: &ElementSet) -> Result<(), (ElementId, ElementId)> {
    for x in s {
        for y in s.iter().filter(|&y| y >= x) {
            if !s.contains(m.mul(x, y)) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

/// Closed under multiplication by arbitrary monoid elements.
pub fn is_pseudoideal(m: &FiniteMonoid, a: &ElementSet) -> Result<(), (ElementId, ElementId)> {
    for x in a {
        for y in m.elements() {
            if !a.contains(m.mul(x, y)) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

/// The maximal filters among those containing `s` and missing `a`, each
/// verified against `∀g ∉ F ∃n, f ∈ F: g^n·f ∈ a`.
pub fn maximal_filters_avoiding(
    m: &FiniteMonoid,
    s: &ElementSet,
    a: &ElementSet,
    limits: &Limits,
) -> Result<FilterFamily> {
    m.check_set(s)?;
    m.check_set(a)?;
    is_multiplicatively_closed(m, s).map_err(|(x, y)| Error::NotMultiplicativelyClosed { x, y })?;
    is_pseudoideal(m, a).map_err(|(x, y)| Error::NotPseudoideal { x, y })?;
    if let Some(x) = s.intersection(a).first() {
        return Err(Error::NotDisjoint(x));
    }
    let all = all_filters(m, limits)?;
    let admissible = all.restrict(|f| s.is_subset(f.members()) && f.members().is_disjoint(a));
    let family = maximal_within(&admissible);
    for f in admissible.iter() {
        let maximal = family.contains(f.members());
        if maximal != reaches(m, f.members(), a) {
            return Err(Error::violation(
                "maximal avoiding filter criterion",
                format!("filter {f} is maximal: {maximal}, criterion: {}", !maximal),
            ));
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> FiniteMonoid {
        FiniteMonoid::integers_mod(n).unwrap()
    }

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn sets(f: &FilterFamily) -> Vec<Vec<usize>> {
        f.iter().map(|f| f.members().to_vec()).collect()
    }

    #[test]
    fn axioms_in_order() {
        let m = zn(6);
        assert!(is_filter(&m, &m.units()));
        assert!(is_filter(&m, &m.all()));
        assert_eq!(check_filter(&m, &set(&[5])), Err(FilterAxiom::ContainsOne));
        assert_eq!(check_filter(&m, &set(&[1, 2])).unwrap_err().index(), 2);
        assert_eq!(check_filter(&m, &set(&[1, 3])).unwrap_err().index(), 3);
        assert!(Filter::new(&m, set(&[1, 9])).is_err());
    }

    #[test]
    fn generation() {
        let m = zn(6);
        assert_eq!(generate(&m, &ElementSet::new()).members().to_vec(), vec![1, 5]);
        assert_eq!(generate(&m, &set(&[2])).members().to_vec(), vec![1, 2, 4, 5]);
        assert_eq!(generate(&m, &set(&[0])).members(), &m.all());
        assert_eq!(generate(&m, &set(&[2, 3])).members(), &m.all());
    }

    #[test]
    fn z6_and_z4_families() {
        let l = Limits::default();
        let f6 = all_filters(&zn(6), &l).unwrap();
        assert_eq!(
            sets(&f6),
            vec![vec![1, 5], vec![1, 3, 5], vec![1, 2, 4, 5], vec![0, 1, 2, 3, 4, 5]]
        );
        assert_eq!(
            sets(&all_filters(&zn(4), &l).unwrap()),
            vec![vec![1, 3], vec![0, 1, 2, 3]]
        );
        assert_eq!(all_filters(&FiniteMonoid::trivial(), &l).unwrap().len(), 1);
    }

    // Filter and ultrafilter counts of (ℤ/n, ·) for n = 1..12, computed by an
    // independent brute-force enumeration.
    const ZN_FILTERS: [usize; 12] = [1, 2, 2, 2, 2, 4, 2, 2, 2, 4, 2, 4];
    const ZN_ULTRA: [usize; 11] = [1, 1, 1, 1, 2, 1, 1, 1, 2, 1, 2];

    #[test]
    fn counts_for_small_moduli() {
        let l = Limits::default();
        for n in 1..=12 {
            let m = zn(n);
            let closure = all_filters(&m, &l).unwrap();
            assert_eq!(closure.len(), ZN_FILTERS[n - 1], "n = {n}");
            assert_eq!(closure, all_filters_by_scan(&m, &l).unwrap(), "n = {n}");
            if n >= 2 {
                assert_eq!(ultrafilters(&m, &l).unwrap().len(), ZN_ULTRA[n - 2], "n = {n}");
            }
        }
    }

    #[test]
    fn ultrafilters_of_z6() {
        let u = ultrafilters(&zn(6), &Limits::default()).unwrap();
        assert_eq!(sets(&u), vec![vec![1, 3, 5], vec![1, 2, 4, 5]]);
        assert_eq!(
            ultrafilters(&FiniteMonoid::trivial(), &Limits::default()),
            Err(Error::ZeroEqualsOne)
        );
        let g = FiniteMonoid::cyclic_group(3).unwrap();
        assert_eq!(ultrafilters(&g, &Limits::default()), Err(Error::NoZeroElement));
    }

    #[test]
    fn integral_monoid_has_one_ultrafilter() {
        let m = zn(7);
        let u = ultrafilters(&m, &Limits::default()).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u.get(0).unwrap().members(), &m.nonzerodivisors().unwrap());
    }

    #[test]
    fn consistency() {
        let m = zn(6);
        assert!(Filter::new(&m, m.units()).unwrap().is_consistent());
        assert!(!Filter::new(&m, m.all()).unwrap().is_consistent());
        assert!(Filter::new(&m, set(&[1, 3, 5])).unwrap().is_consistent());
        let g = FiniteMonoid::cyclic_group(2).unwrap();
        assert!(Filter::new(&g, g.all()).unwrap().is_consistent());
    }

    #[test]
    fn avoiding_zero_gives_ultrafilters() {
        let l = Limits::default();
        let m = zn(12);
        let avoid = maximal_filters_avoiding(&m, &m.units(), &set(&[0]), &l).unwrap();
        assert_eq!(avoid, ultrafilters(&m, &l).unwrap());
        let whole = maximal_filters_avoiding(&m, &m.units(), &ElementSet::new(), &l).unwrap();
        assert_eq!(sets(&whole), vec![m.all().to_vec()]);
    }

    #[test]
    fn avoiding_preconditions() {
        let l = Limits::default();
        let m = zn(6);
        assert!(matches!(
            maximal_filters_avoiding(&m, &set(&[2]), &set(&[0]), &l),
            Err(Error::NotMultiplicativelyClosed { .. })
        ));
        assert!(matches!(
            maximal_filters_avoiding(&m, &set(&[1]), &set(&[2]), &l),
            Err(Error::NotPseudoideal { .. })
        ));
        assert_eq!(
            maximal_filters_avoiding(&m, &set(&[0, 1]), &set(&[0]), &l),
            Err(Error::NotDisjoint(0))
        );
    }

    #[test]
    fn cap_is_enforced() {
        let m = zn(12);
        let l = Limits::default().with_max_elements(10);
        assert!(all_filters(&m, &l).unwrap_err().is_cap());
    }
}
