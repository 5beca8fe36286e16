//! Finite topological spaces with an explicit list of open sets.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::monoid::FiniteMonoid;

struct SpaceData {
    names: Vec<String>,
    /// Sorted ascending by mask; index 0 is ∅ and the last entry is the whole space.
    opens: Vec<ElementSet>,
    /// Smallest open set containing each point.
    minimal: Vec<ElementSet>,
    top: OnceLock<FiniteMonoid>,
}

/// A finite space. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteSpace {
    inner: Arc<SpaceData>,
}

impl FiniteSpace {
    /// Validates that the opens contain ∅ and the whole space and are closed
    /// under binary unions and intersections. Duplicates are dropped.
    pub fn new(names: Vec<String>, opens: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let n = names.len();
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::BadSpace("point names must be distinct".into()));
        }
        let opens: BTreeSet<ElementSet> = opens.into_iter().collect();
        if let Some(bad) = opens.iter().find(|u| u.bound() > n) {
            return Err(Error::BadSpace(format!(
                "open set {bad} mentions a point outside 0..{n}"
            )));
        }
        if !opens.contains(&ElementSet::new()) {
            return Err(Error::BadSpace("the empty set must be open".into()));
        }
        if !opens.contains(&ElementSet::full(n)) {
            return Err(Error::BadSpace("the whole space must be open".into()));
        }
        let list: Vec<ElementSet> = opens.into_iter().collect();
        for (i, u) in list.iter().enumerate() {
            for v in &list[i + 1..] {
                if list.binary_search(&u.union(v)).is_err() {
                    return Err(Error::NotClosedUnderOps {
                        op: "union",
                        left: u.to_string(),
                        right: v.to_string(),
                    });
                }
                if list.binary_search(&u.intersection(v)).is_err() {
                    return Err(Error::NotClosedUnderOps {
                        op: "intersection",
                        left: u.to_string(),
                        right: v.to_string(),
                    });
                }
            }
        }
        Ok(Self::from_sorted(names, list))
    }

    fn from_sorted(names: Vec<String>, opens: Vec<ElementSet>) -> Self {
        let n = names.len();
        let minimal = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|u| u.contains(x))
                    .fold(ElementSet::full(n), |acc, u| acc.intersection(u))
            })
            .collect();
        FiniteSpace {
            inner: Arc::new(SpaceData {
                names,
                opens,
                minimal,
                top: OnceLock::new(),
            }),
        }
    }

    /// The topology generated by `basis` (all unions of basis members, plus ∅
    /// and the whole space). Fails if the result is not intersection-closed.
    pub fn from_basis(names: Vec<String>, basis: &[ElementSet], limits: &Limits) -> Result<Self> {
        let n = names.len();
        let opens = union_closure(basis.iter().cloned().chain([ElementSet::full(n)]), limits)?;
        Self::new(names, opens)
    }

    /// The Alexandrov topology of up-sets of a preorder, given as
    /// `leq(x, y)` meaning every neighbourhood of `x` contains `y`.
    pub fn from_preorder(names: Vec<String>, leq: impl Fn(usize, usize) -> bool, limits: &Limits) -> Result<Self> {
        let n = names.len();
        let basis: Vec<ElementSet> = (0..n).map(|x| (0..n).filter(|&y| leq(x, y)).collect()).collect();
        Self::from_basis(names, &basis, limits)
    }

    pub fn discrete(n: usize) -> Self {
        let opens = (0..1u64 << n).map(ElementSet::from_mask).collect();
        Self::from_sorted(default_names(n), opens)
    }

    pub fn indiscrete(n: usize) -> Self {
        let mut opens = vec![ElementSet::new(), ElementSet::full(n)];
        opens.dedup();
        Self::from_sorted(default_names(n), opens)
    }

    /// Points `0..n` with opens `{k, ..., n-1}`: point `n-1` is open, point `0` closed.
    pub fn chain(n: usize) -> Self {
        let mut opens: Vec<ElementSet> = (0..=n)
            .map(|k| ElementSet::full(n).difference(&ElementSet::full(k)))
            .collect();
        opens.sort();
        Self::from_sorted(default_names(n), opens)
    }

    /// Two points `a` (open) and `b` (closed).
    pub fn sierpinski() -> Self {
        let opens = vec![ElementSet::new(), ElementSet::singleton(0), ElementSet::full(2)];
        Self::from_sorted(vec!["a".into(), "b".into()], opens)
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn points(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn opens(&self) -> &[ElementSet] {
        &self.inner.opens
    }

    pub fn open_index(&self, u: &ElementSet) -> Option<usize> {
        self.inner.opens.binary_search(u).ok()
    }

    pub fn is_open(&self, u: &ElementSet) -> bool {
        self.open_index(u).is_some()
    }

    pub fn is_closed(&self, a: &ElementSet) -> bool {
        self.is_open(&a.complement(self.len()))
    }

    pub fn closed_sets(&self) -> Vec<ElementSet> {
        let mut v: Vec<ElementSet> = self.opens().iter().map(|u| u.complement(self.len())).collect();
        v.sort();
        v
    }

    /// Smallest open set containing `x`.
    pub fn minimal_open(&self, x: usize) -> &ElementSet {
        &self.inner.minimal[x]
    }

    /// Smallest open set containing `t`.
    pub fn minimal_open_of(&self, t: &ElementSet) -> ElementSet {
        let mut u = ElementSet::new();
        for x in t {
            u.union_with(self.minimal_open(x));
        }
        u
    }

    /// Largest open subset of `a`.
    pub fn interior(&self, a: &ElementSet) -> ElementSet {
        (0..self.len()).filter(|&x| self.minimal_open(x).is_subset(a)).collect()
    }

    pub fn closure(&self, a: &ElementSet) -> ElementSet {
        (0..self.len())
            .filter(|&x| !self.minimal_open(x).is_disjoint(a))
            .collect()
    }

    /// `x ⪯ y`: every open neighbourhood of `x` contains `y`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.minimal_open(x).contains(y)
    }

    pub fn is_t0(&self) -> bool {
        self.t0_witness().is_none()
    }

    /// Two distinct points with the same neighbourhoods, if any.
    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.minimal_open(x) == self.minimal_open(y))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        !self
            .opens()
            .iter()
            .any(|u| !u.is_empty() && u.len() < n && self.is_closed(u))
    }

    pub fn is_hausdorff(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                self.opens()
                    .iter()
                    .any(|u| u.contains(x) && self.opens().iter().any(|v| v.contains(y) && u.is_disjoint(v)))
            })
        })
    }

    /// Every open set is a union of clopen sets.
    pub fn has_clopen_basis(&self) -> bool {
        let clopen: Vec<&ElementSet> = self.opens().iter().filter(|u| self.is_closed(u)).collect();
        self.opens()
            .iter()
            .all(|u| u.iter().all(|x| clopen.iter().any(|c| c.contains(x) && c.is_subset(u))))
    }

    /// Connected components are single points.
    pub fn is_totally_disconnected(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).filter(|&y| y != x).all(|y| {
                self.opens()
                    .iter()
                    .any(|u| u.contains(x) && !u.contains(y) && self.is_closed(u))
            })
        })
    }

    /// Every open cover of the space contains the space itself, i.e. the
    /// proper open subsets do not cover. Filtrum spaces have this property.
    pub fn has_single_member_subcovers(&self) -> bool {
        let whole = self.points();
        let mut union = ElementSet::new();
        for u in self.opens().iter().filter(|u| **u != whole) {
            union.union_with(u);
        }
        union != whole
    }

    /// Nonempty, and any two open sets meeting `a` meet inside `a`.
    pub fn is_irreducible_set(&self, a: &ElementSet) -> bool {
        if a.is_empty() {
            return false;
        }
        let meeting: Vec<&ElementSet> = self.opens().iter().filter(|u| !u.is_disjoint(a)).collect();
        meeting
            .iter()
            .all(|u| meeting.iter().all(|v| !u.intersection(v).is_disjoint(a)))
    }

    /// Nonempty irreducible closed sets, ascending.
    pub fn irreducible_closed_sets(&self) -> Vec<ElementSet> {
        self.closed_sets()
            .into_iter()
            .filter(|a| self.is_irreducible_set(a))
            .collect()
    }

    /// Every irreducible closed set is the closure of exactly one point.
    pub fn is_sober(&self) -> bool {
        self.irreducible_closed_sets().iter().all(|a| {
            (0..self.len())
                .filter(|&x| self.closure(&ElementSet::singleton(x)) == *a)
                .count()
                == 1
        })
    }

    /// `a` is dense in the subspace `within`.
    pub fn is_dense_in(&self, a: &ElementSet, within: &ElementSet) -> bool {
        within.is_subset(&self.closure(a))
    }

    /// The subspace on `pts`, with points renumbered in ascending order.
    pub fn subspace(&self, pts: &ElementSet) -> FiniteSpace {
        let index: Vec<usize> = pts.to_vec();
        let names = index.iter().map(|&x| self.inner.names[x].clone()).collect();
        let opens: BTreeSet<ElementSet> = self
            .opens()
            .iter()
            .map(|u| {
                index
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| u.contains(x))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Self::from_sorted(names, opens.into_iter().collect())
    }

    /// `X × Y` with point `(x, y)` at index `x·|Y| + y`.
    pub fn product(&self, other: &FiniteSpace, limits: &Limits) -> Result<FiniteSpace> {
        let m = other.len();
        let names: Vec<String> = self
            .names()
            .iter()
            .flat_map(|a| other.names().iter().map(move |b| format!("({a},{b})")))
            .collect();
        limits.check_points("product space", names.len())?;
        let mut basis = Vec::new();
        for u in self.opens() {
            for v in other.opens() {
                basis.push(u.iter().flat_map(|x| v.iter().map(move |y| x * m + y)).collect());
            }
        }
        Self::from_basis(names, &basis, limits)
    }

    /// The monoid of open sets under intersection, one = whole space, zero = ∅.
    /// Element ids are open-set indices.
    pub fn top_monoid(&self) -> FiniteMonoid {
        self.inner
            .top
            .get_or_init(|| {
                let k = self.opens().len();
                let mut mul = Vec::with_capacity(k * k);
                for u in self.opens() {
                    for v in self.opens() {
                        mul.push(self.open_index(&u.intersection(v)).expect("opens are ∩-closed"));
                    }
                }
                FiniteMonoid::from_flat_unchecked(k, mul, k - 1, Some(0))
            })
            .clone()
    }

    pub fn same_topology(&self, other: &FiniteSpace) -> bool {
        self.len() == other.len() && self.opens() == other.opens()
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens().iter().map(ElementSet::to_string).collect();
        f.debug_struct("FiniteSpace")
            .field("points", &self.inner.names)
            .field("opens", &opens)
            .finish()
    }
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || (self.names() == other.names() && self.opens() == other.opens())
    }
}

impl Eq for FiniteSpace {}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// All unions of members of `sets`, including the empty union.
pub(crate) fn union_closure(sets: impl IntoIterator<Item = ElementSet>, limits: &Limits) -> Result<Vec<ElementSet>> {
    let mut all: BTreeSet<ElementSet> = BTreeSet::from([ElementSet::new()]);
    for b in sets {
        if all.contains(&b) {
            continue;
        }
        let fresh: Vec<ElementSet> = all.iter().map(|u| u.union(&b)).filter(|u| !all.contains(u)).collect();
        all.extend(fresh);
        limits.check_opens("open sets", all.len())?;
    }
    Ok(all.into_iter().collect())
}

/// Checks that `map` is a bijection `x → y` under which open sets correspond.
pub fn check_homeomorphism(x: &FiniteSpace, y: &FiniteSpace, map: &[usize]) -> Result<(), String> {
    if map.len() != x.len() || x.len() != y.len() {
        return Err(format!("point counts differ: {} and {}", x.len(), y.len()));
    }
    let image: ElementSet = map.iter().copied().collect();
    if image.len() != y.len() || image.bound() > y.len() {
        return Err("the point map is not a bijection".into());
    }
    if x.opens().len() != y.opens().len() {
        return Err(format!(
            "open counts differ: {} and {}",
            x.opens().len(),
            y.opens().len()
        ));
    }
    for u in x.opens() {
        let img: ElementSet = u.iter().map(|p| map[p]).collect();
        if !y.is_open(&img) {
            return Err(format!("the image of the open set {u} is not open"));
        }
    }
    for v in y.opens() {
        let pre: ElementSet = (0..x.len()).filter(|&p| v.contains(map[p])).collect();
        if !x.is_open(&pre) {
            return Err(format!("the preimage of the open set {v} is not open"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn validation() {
        let names = default_names(2);
        assert!(FiniteSpace::new(names.clone(), [set(&[]), set(&[0, 1]), set(&[0])]).is_ok());
        assert_eq!(
            FiniteSpace::new(names.clone(), [set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]).unwrap(),
            FiniteSpace::discrete(2)
        );
        assert!(matches!(
            FiniteSpace::new(
                default_names(3),
                [set(&[]), set(&[0, 1, 2]), set(&[0, 1]), set(&[1, 2])]
            ),
            Err(Error::NotClosedUnderOps { op: "intersection", .. })
        ));
        assert!(FiniteSpace::new(names.clone(), [set(&[0, 1])]).is_err());
        assert!(FiniteSpace::new(names, [set(&[]), set(&[0, 1, 2])]).is_err());
    }

    #[test]
    fn sierpinski_properties() {
        let s = FiniteSpace::sierpinski();
        assert!(s.is_t0() && s.is_connected() && s.is_sober());
        assert!(!s.is_hausdorff());
        assert!(s.specializes(1, 0));
        assert!(!s.specializes(0, 1));
        assert_eq!(s.closure(&set(&[0])), set(&[0, 1]));
        assert_eq!(s.irreducible_closed_sets(), vec![set(&[1]), set(&[0, 1])]);
        assert_eq!(s.top_monoid().size(), 3);
        assert!(s.has_single_member_subcovers());
        assert!(check_homeomorphism(&FiniteSpace::chain(2), &s, &[1, 0]).is_ok());
    }

    #[test]
    fn discrete_and_indiscrete() {
        let d = FiniteSpace::discrete(2);
        assert!(d.is_hausdorff() && d.has_clopen_basis() && d.is_totally_disconnected() && d.is_sober());
        assert!(!d.is_connected());
        assert_eq!(d.top_monoid().size(), 4);
        let i = FiniteSpace::indiscrete(2);
        assert!(!i.is_t0() && !i.is_sober());
        assert_eq!(i.t0_witness(), Some((0, 1)));
        assert_eq!(i.top_monoid().size(), 2);
        assert_eq!(FiniteSpace::indiscrete(0).opens().len(), 1);
    }

    #[test]
    fn subspace_and_product() {
        let s = FiniteSpace::sierpinski();
        let sub = s.subspace(&set(&[1]));
        assert_eq!(sub.opens().len(), 2);
        let p = s.product(&s, &Limits::default()).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.opens().len(), 6);
        assert!(p.is_t0());
    }

    #[test]
    fn preorder_construction() {
        let c = FiniteSpace::from_preorder(default_names(3), |x, y| x <= y, &Limits::default()).unwrap();
        assert!(c.same_topology(&FiniteSpace::chain(3)));
    }

    #[test]
    fn homeomorphism_check() {
        let s = FiniteSpace::sierpinski();
        assert!(check_homeomorphism(&s, &s, &[0, 1]).is_ok());
        assert!(check_homeomorphism(&s, &s, &[1, 0]).is_err());
        assert!(check_homeomorphism(&s, &FiniteSpace::discrete(2), &[0, 1]).is_err());
    }
}
