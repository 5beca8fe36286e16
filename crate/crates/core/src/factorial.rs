//! The free commutative monoid on a finite prime set, where every filter is
//! described by the set of primes it contains.

use std::collections::BTreeSet;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::filter::all_filters;
use crate::limits::Limits;
use crate::monoid::FiniteMonoid;

/// A product of primes, stored as exponents indexed by prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorialElement {
    exponents: Vec<u32>,
}

impl FactorialElement {
    pub fn new(exponents: Vec<u32>) -> Self {
        FactorialElement { exponents }
    }

    pub fn unit(arity: usize) -> Self {
        FactorialElement {
            exponents: vec![0; arity],
        }
    }

    /// The prime with index `p`.
    pub fn prime(arity: usize, p: usize) -> Self {
        let mut e = Self::unit(arity);
        e.exponents[p] = 1;
        e
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Primes dividing the element.
    pub fn support(&self) -> ElementSet {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(FactorialElement {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        FactorialElement {
            exponents: self.exponents.iter().map(|e| e * n).collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.same_arity(other)?;
        Ok(self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b))
    }
}

/// The filter of all elements whose prime factors lie in `primes`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSubsetFilter {
    arity: usize,
    primes: ElementSet,
}

impl PrimeSubsetFilter {
    pub fn new(arity: usize, primes: ElementSet) -> Result<Self> {
        if primes.bound() > arity {
            return Err(Error::IndexOutOfRange {
                index: primes.bound() - 1,
                size: arity,
            });
        }
        Ok(PrimeSubsetFilter { arity, primes })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn primes(&self) -> &ElementSet {
        &self.primes
    }

    pub fn contains(&self, g: &FactorialElement) -> bool {
        g.arity() == self.arity && g.support().is_subset(&self.primes)
    }

    /// An element with exactly this support; it generates the filter.
    pub fn generator(&self) -> FactorialElement {
        FactorialElement {
            exponents: (0..self.arity).map(|p| u32::from(self.primes.contains(p))).collect(),
        }
    }

    /// The filter generated by the primes this filter contains.
    pub fn regenerate(&self) -> PrimeSubsetFilter {
        let primes_inside = (0..self.arity).filter(|&p| self.contains(&FactorialElement::prime(self.arity, p)));
        PrimeSubsetFilter {
            arity: self.arity,
            primes: primes_inside.collect(),
        }
    }

    pub fn is_units(&self) -> bool {
        self.primes.is_empty()
    }
}

/// `F(f)`: `g` lies in it iff `g` divides a power of `f`, i.e. iff the support
/// of `g` is inside the support of `f`.
pub fn principal_filter(f: &FactorialElement) -> PrimeSubsetFilter {
    PrimeSubsetFilter {
        arity: f.arity(),
        primes: f.support(),
    }
}

pub fn intersect_filters(filters: &[PrimeSubsetFilter]) -> Result<PrimeSubsetFilter> {
    let (first, rest) = filters.split_first().ok_or(Error::EmptyList)?;
    let mut primes = first.primes.clone();
    for f in rest {
        if f.arity != first.arity {
            return Err(Error::ArityMismatch {
                expected: first.arity,
                found: f.arity,
            });
        }
        primes.intersect_with(&f.primes);
    }
    Ok(PrimeSubsetFilter {
        arity: first.arity,
        primes,
    })
}

/// No common prime factor.
pub fn coprime(f: &FactorialElement, g: &FactorialElement) -> Result<bool> {
    f.same_arity(g)?;
    Ok(f.support().is_disjoint(&g.support()))
}

/// Membership `g ∈ F(f)` decided by searching for `n ≤ bound` with `g | f^n`.
/// Used to cross-check the support description.
pub fn divides_some_power(g: &FactorialElement, f: &FactorialElement, bound: u32) -> Result<bool> {
    for n in 0..=bound {
        if g.divides(&f.pow(n))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exponent vectors with entries `≤ cap` under addition truncated at `cap`.
/// Divisibility is the componentwise order, so filters are again described by
/// prime subsets. No zero is declared: the all-`cap` vector absorbs, but it
/// stands for arbitrarily high powers rather than for a zero.
pub fn truncated_monoid(primes: usize, cap: u32) -> Result<(FiniteMonoid, Vec<FactorialElement>)> {
    let base = cap as usize + 1;
    let size = base
        .checked_pow(primes as u32)
        .filter(|&s| s <= 1 << 16)
        .ok_or(Error::cap("truncated monoid", usize::MAX, 1 << 16))?;
    let decode = |mut id: usize| {
        let mut e = vec![0u32; primes];
        for slot in e.iter_mut() {
            *slot = (id % base) as u32;
            id /= base;
        }
        FactorialElement::new(e)
    };
    let elements: Vec<FactorialElement> = (0..size).map(decode).collect();
    let encode = |e: &[u32]| e.iter().rev().fold(0usize, |acc, &x| acc * base + x as usize);
    let m = FiniteMonoid::from_fn(size, 0, None, |a, b| {
        let sum: Vec<u32> = elements[a]
            .exponents
            .iter()
            .zip(&elements[b].exponents)
            .map(|(x, y)| (x + y).min(cap))
            .collect();
        encode(&sum)
    })?;
    Ok((m, elements))
}

/// Enumerates the filters of the truncated monoid and checks that
/// `F ↦ {p : p ∈ F}` is a bijection onto all prime subsets, with each filter
/// equal to the elements supported on its subset. Returns the number of filters.
pub fn check_prime_subset_bijection(primes: usize, cap: u32, limits: &Limits) -> Result<usize> {
    let (m, elements) = truncated_monoid(primes, cap)?;
    let filters = all_filters(&m, limits)?;
    let fail = |detail: String| Error::violation("filters correspond to prime subsets", detail);
    let prime_ids: Vec<usize> = (0..primes)
        .map(|p| {
            elements
                .iter()
                .position(|e| *e == FactorialElement::prime(primes, p))
                .unwrap()
        })
        .collect();
    let mut seen = BTreeSet::new();
    for f in filters.iter() {
        if !f.is_consistent() {
            return Err(fail(format!("{f} is inconsistent")));
        }
        let subset: ElementSet = (0..primes).filter(|&p| f.contains(prime_ids[p])).collect();
        let model = PrimeSubsetFilter::new(primes, subset.clone())?;
        let expected: ElementSet = m.elements().filter(|&x| model.contains(&elements[x])).collect();
        if &expected != f.members() {
            return Err(fail(format!(
                "filter {f} differs from the elements supported on {subset}"
            )));
        }
        seen.insert(subset);
    }
    if seen.len() != filters.len() || seen.len() != 1 << primes {
        return Err(fail(format!(
            "{} filters for {} prime subsets",
            filters.len(),
            1usize << primes
        )));
    }
    Ok(filters.len())
}

fn check_arity(set: &[Vec<u32>]) -> Result<usize> {
    let n = set.first().map_or(0, Vec::len);
    if let Some(v) = set.iter().find(|v| v.len() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            found: v.len(),
        });
    }
    Ok(n)
}

fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Minimal elements under the componentwise order, by comparing all pairs.
pub fn minimal_elements_pairwise(set: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    check_arity(set)?;
    let distinct: BTreeSet<&Vec<u32>> = set.iter().collect();
    Ok(distinct
        .iter()
        .filter(|z| !distinct.iter().any(|a| a != *z && leq(a, z)))
        .map(|z| (*z).clone())
        .collect())
}

/// Minimal elements under the componentwise order, by recursion on the
/// dimension. For each coordinate `i` the set is projected away from `i` and
/// its minimal elements found recursively. A minimal `z` either projects onto
/// one of those, or for every `i` some element with a minimal projection below
/// `z`'s is larger in coordinate `i`, which bounds `z_i` by `B_i`, the largest
/// `i`-th coordinate among such elements. This leaves a finite candidate set
/// that contains every minimal element and is compared pairwise.
pub fn minimal_elements(set: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    check_arity(set)?;
    let distinct: Vec<Vec<u32>> = set.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    Ok(minimal_recursive(&distinct))
}

fn drop_coord(v: &[u32], i: usize) -> Vec<u32> {
    v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()
}

fn minimal_recursive(set: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let Some(first) = set.first() else { return Vec::new() };
    let n = first.len();
    match n {
        0 => return vec![Vec::new()],
        1 => return vec![set.iter().min().unwrap().clone()],
        _ => {}
    }
    let mut in_projection = vec![false; set.len()];
    let mut bounds = vec![0u32; n];
    for i in 0..n {
        let projected: Vec<Vec<u32>> = set
            .iter()
            .map(|v| drop_coord(v, i))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let minimal: BTreeSet<Vec<u32>> = minimal_recursive(&projected).into_iter().collect();
        for (k, v) in set.iter().enumerate() {
            if minimal.contains(&drop_coord(v, i)) {
                in_projection[k] = true;
                bounds[i] = bounds[i].max(v[i]);
            }
        }
    }
    let candidates: Vec<&Vec<u32>> = set
        .iter()
        .enumerate()
        .filter(|&(k, v)| in_projection[k] || v.iter().zip(&bounds).all(|(x, b)| x < b))
        .map(|(_, v)| v)
        .collect();
    candidates
        .iter()
        .filter(|z| !candidates.iter().any(|c| c != *z && leq(c, z)))
        .map(|z| (*z).clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(x: &[u32]) -> FactorialElement {
        FactorialElement::new(x.to_vec())
    }

    #[test]
    fn principal_filters_are_supports() {
        assert!(principal_filter(&e(&[0, 0])).is_units());
        assert_eq!(principal_filter(&e(&[2, 1])).primes().to_vec(), vec![0, 1]);
        let f = e(&[1, 0, 3]);
        let g = e(&[0, 2, 0]);
        let joint = principal_filter(&f.mul(&g).unwrap());
        assert_eq!(
            joint.primes(),
            &principal_filter(&f).primes().union(principal_filter(&g).primes())
        );
    }

    #[test]
    fn intersections() {
        let a = principal_filter(&e(&[2, 1]));
        let b = principal_filter(&e(&[3, 0]));
        assert_eq!(intersect_filters(&[a.clone(), b]).unwrap().primes().to_vec(), vec![0]);
        assert_eq!(intersect_filters(&[a.clone(), a.clone()]).unwrap(), a);
        let c = principal_filter(&e(&[0, 4]));
        assert!(intersect_filters(&[principal_filter(&e(&[1, 0])), c])
            .unwrap()
            .is_units());
        assert_eq!(intersect_filters(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn membership_matches_bounded_divisibility() {
        let f = e(&[2, 1, 0]);
        let filter = principal_filter(&f);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..2 {
                    let g = e(&[a, b, c]);
                    assert_eq!(filter.contains(&g), divides_some_power(&g, &f, 4).unwrap(), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn coprimality() {
        assert!(coprime(&e(&[2, 0]), &e(&[0, 3])).unwrap());
        assert!(!coprime(&e(&[1, 1]), &e(&[0, 1])).unwrap());
        assert!(coprime(&e(&[0, 0]), &e(&[5, 5])).unwrap());
        assert!(coprime(&e(&[1]), &e(&[1, 0])).is_err());
    }

    #[test]
    fn prime_subset_bijection() {
        let l = Limits::default().with_max_elements(81);
        for p in 0..=4 {
            assert_eq!(check_prime_subset_bijection(p, 2, &l).unwrap(), 1 << p);
        }
    }

    #[test]
    fn regeneration_from_primes() {
        for mask in 0..16u64 {
            let f = PrimeSubsetFilter::new(4, ElementSet::from_mask(mask)).unwrap();
            assert_eq!(f.regenerate(), f);
            assert_eq!(principal_filter(&f.generator()), f);
        }
    }

    #[test]
    fn dickson_examples() {
        let set = vec![vec![3, 0], vec![0, 3], vec![1, 1], vec![2, 2]];
        let expected = vec![vec![0, 3], vec![1, 1], vec![3, 0]];
        assert_eq!(minimal_elements(&set).unwrap(), expected);
        assert_eq!(minimal_elements_pairwise(&set).unwrap(), expected);
        assert_eq!(minimal_elements(&[vec![4, 2]]).unwrap(), vec![vec![4, 2]]);
        assert_eq!(minimal_elements(&[vec![1], vec![2], vec![3]]).unwrap(), vec![vec![1]]);
        assert!(minimal_elements(&[]).unwrap().is_empty());
        assert!(minimal_elements(&[vec![1], vec![1, 2]]).is_err());
    }
}
