//! Topological filters: filters of the monoid of open sets under intersection.
//!
//! Divisibility in that monoid is the superset relation, so a topological
//! filter is a family of open sets that contains the whole space, is closed
//! under finite intersections and under passing to larger open sets.

use std::fmt;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::filter::{Filter, FilterFamily};
use crate::topo::space::FiniteSpace;

/// A filter of `(Top(X), ∩)`. Members are indices into `X.opens()`.
#[derive(Clone, PartialEq, Eq)]
pub struct TopFilter {
    space: FiniteSpace,
    filter: Filter,
}

impl TopFilter {
    /// From a set of open-set indices.
    pub fn new(space: &FiniteSpace, members: ElementSet) -> Result<Self> {
        let filter = Filter::new(&space.top_monoid(), members)?;
        Ok(TopFilter {
            space: space.clone(),
            filter,
        })
    }

    pub fn from_filter(space: &FiniteSpace, filter: Filter) -> Result<Self> {
        if filter.carrier() != &space.top_monoid() {
            return Err(Error::TypeMismatch(
                "filter is not over the open sets of this space".into(),
            ));
        }
        Ok(TopFilter {
            space: space.clone(),
            filter,
        })
    }

    /// The filter of all open supersets of the open set `u`.
    pub fn above(space: &FiniteSpace, u: &ElementSet) -> Result<Self> {
        if !space.is_open(u) {
            return Err(Error::TypeMismatch(format!("{u} is not open")));
        }
        Ok(Self::above_unchecked(space, u))
    }

    fn above_unchecked(space: &FiniteSpace, u: &ElementSet) -> Self {
        let members = space
            .opens()
            .iter()
            .enumerate()
            .filter(|(_, v)| u.is_subset(v))
            .map(|(i, _)| i)
            .collect();
        TopFilter {
            space: space.clone(),
            filter: Filter::new_unchecked(&space.top_monoid(), members),
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn filter(&self) -> &Filter {
        &self.filter
    }

    pub fn members(&self) -> &ElementSet {
        self.filter.members()
    }

    /// The member open sets, ascending.
    pub fn opens(&self) -> impl Iterator<Item = &ElementSet> {
        self.members().iter().map(|i| &self.space.opens()[i])
    }

    pub fn contains_open(&self, u: &ElementSet) -> bool {
        self.space.open_index(u).is_some_and(|i| self.members().contains(i))
    }

    /// Consistent means the empty set is not a member.
    pub fn is_consistent(&self) -> bool {
        !self.members().contains(0)
    }

    /// The intersection of all members; on a finite space it is itself a
    /// member and the filter consists of its open supersets.
    pub fn least_open(&self) -> ElementSet {
        self.opens().fold(self.space.points(), |acc, u| acc.intersection(u))
    }
}

impl fmt::Debug for TopFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens().map(ElementSet::to_string).collect();
        write!(f, "TopFilter[{}]", opens.join(" "))
    }
}

/// All topological filters of a finite space: one per open set `U`, namely the
/// open supersets of `U`. Sorted by member mask.
pub fn all_top_filters(space: &FiniteSpace) -> FilterFamily {
    let m = space.top_monoid();
    FilterFamily::from_sets(
        &m,
        space
            .opens()
            .iter()
            .map(|u| TopFilter::above_unchecked(space, u).members().clone()),
    )
}

/// `U(T)`, the open sets containing `t`.
pub fn neighborhood_filter(space: &FiniteSpace, t: &ElementSet) -> TopFilter {
    let u = space.minimal_open_of(t);
    TopFilter::above_unchecked(space, &u)
}

/// `U ∪ V ∈ F` implies `U ∈ F` or `V ∈ F`.
pub fn is_quasicompact_filter(f: &TopFilter) -> bool {
    let opens = f.space.opens();
    (0..opens.len()).all(|i| {
        (i..opens.len())
            .all(|j| !f.contains_open(&opens[i].union(&opens[j])) || f.members().contains(i) || f.members().contains(j))
    })
}

/// Whenever a union of open sets (any family, the empty one included) is a
/// member, so is one of the sets. It suffices to check, for each member `W`,
/// that the non-members inside `W` do not cover `W`: any family violating the
/// condition for its union `W` consists of such non-members.
pub fn is_irreducible_filter(f: &TopFilter) -> bool {
    f.opens().all(|w| {
        let mut cover = ElementSet::new();
        for (i, u) in f.space.opens().iter().enumerate() {
            if !f.members().contains(i) && u.is_subset(w) {
                cover.union_with(u);
            }
        }
        cover != *w
    })
}

/// The single-union test: the union of all non-member opens is not a member.
pub fn is_irreducible_by_union_of_nonmembers(f: &TopFilter) -> bool {
    !f.contains_open(&union_of_nonmembers(f))
}

/// Irreducibility by trying every subfamily of open sets. Exponential in the
/// number of opens; `None` when there are more than `max_opens`.
pub fn is_irreducible_filter_exhaustive(f: &TopFilter, max_opens: usize) -> Option<bool> {
    let opens = f.space.opens();
    if opens.len() > max_opens.min(24) {
        return None;
    }
    let ok = (0u64..1 << opens.len()).all(|family| {
        let mut union = ElementSet::new();
        let mut hit = false;
        for (i, u) in opens.iter().enumerate() {
            if family >> i & 1 == 1 {
                union.union_with(u);
                hit |= f.members().contains(i);
            }
        }
        hit || !f.contains_open(&union)
    });
    Some(ok)
}

fn union_of_nonmembers(f: &TopFilter) -> ElementSet {
    let mut union = ElementSet::new();
    for (i, u) in f.space.opens().iter().enumerate() {
        if !f.members().contains(i) {
            union.union_with(u);
        }
    }
    union
}

/// `X − ∪{U : U ∉ F}`.
pub fn convergence_points(f: &TopFilter) -> ElementSet {
    union_of_nonmembers(f).complement(f.space.len())
}

/// `{x : U(x) ⊆ F}`, the points the filter converges to, computed pointwise.
pub fn convergence_points_pointwise(f: &TopFilter) -> ElementSet {
    (0..f.space.len())
        .filter(|&x| {
            neighborhood_filter(&f.space, &ElementSet::singleton(x))
                .members()
                .is_subset(f.members())
        })
        .collect()
}

/// `{U : U ∩ A ≠ ∅}`.
pub fn filter_of_closed_set(space: &FiniteSpace, a: &ElementSet) -> Result<TopFilter> {
    let members = space
        .opens()
        .iter()
        .enumerate()
        .filter(|(_, u)| !u.is_disjoint(a))
        .map(|(i, _)| i)
        .collect();
    TopFilter::new(space, members)
}

/// Nonempty irreducible closed sets paired with irreducible filters, after
/// checking that `A ↦ {U : U ∩ A ≠ ∅}` and `F ↦ X − ∪{U ∉ F}` are inverse.
pub fn irreducible_filter_closed_set_bijection(space: &FiniteSpace) -> Result<Vec<(ElementSet, TopFilter)>> {
    let fail = |detail: String| Error::violation("irreducible filters correspond to irreducible closed sets", detail);
    let closed = space.irreducible_closed_sets();
    let mut pairs = Vec::new();
    for a in closed.iter() {
        let f = filter_of_closed_set(space, a)?;
        if !is_irreducible_filter(&f) {
            return Err(fail(format!("the filter of {a} is not irreducible")));
        }
        if convergence_points(&f) != *a {
            return Err(fail(format!(
                "the filter of {a} converges to {}",
                convergence_points(&f)
            )));
        }
        pairs.push((a.clone(), f));
    }
    let irreducible: Vec<TopFilter> = all_top_filters(space)
        .iter()
        .map(|f| TopFilter {
            space: space.clone(),
            filter: f.clone(),
        })
        .filter(is_irreducible_filter)
        .collect();
    if irreducible.len() != pairs.len() {
        return Err(fail(format!(
            "{} irreducible filters, {} irreducible closed sets",
            irreducible.len(),
            pairs.len()
        )));
    }
    for f in &irreducible {
        let a = convergence_points(f);
        if !space.is_closed(&a) || !space.is_irreducible_set(&a) || filter_of_closed_set(space, &a)? != *f {
            return Err(fail(format!("{f:?} does not come from its convergence set {a}")));
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn wrap(space: &FiniteSpace, f: &Filter) -> TopFilter {
        TopFilter::from_filter(space, f.clone()).unwrap()
    }

    #[test]
    fn neighbourhoods() {
        let s = FiniteSpace::sierpinski();
        let all = neighborhood_filter(&s, &ElementSet::new());
        assert_eq!(all.members(), &ElementSet::full(3));
        let ua = neighborhood_filter(&s, &set(&[0]));
        assert_eq!(ua.opens().cloned().collect::<Vec<_>>(), vec![set(&[0]), set(&[0, 1])]);
        let ux = neighborhood_filter(&s, &set(&[0, 1]));
        assert_eq!(ux.opens().cloned().collect::<Vec<_>>(), vec![set(&[0, 1])]);
    }

    #[test]
    fn filter_kinds() {
        for space in [
            FiniteSpace::sierpinski(),
            FiniteSpace::discrete(3),
            FiniteSpace::chain(4),
        ] {
            for x in 0..space.len() {
                let u = neighborhood_filter(&space, &ElementSet::singleton(x));
                assert!(is_irreducible_filter(&u) && is_quasicompact_filter(&u));
            }
            let everything = neighborhood_filter(&space, &ElementSet::new());
            assert!(is_quasicompact_filter(&everything));
            assert!(!is_irreducible_filter(&everything));
            for f in all_top_filters(&space).iter() {
                let f = wrap(&space, f);
                assert_eq!(
                    Some(is_irreducible_filter(&f)),
                    is_irreducible_filter_exhaustive(&f, 24)
                );
                assert_eq!(is_irreducible_filter(&f), is_irreducible_by_union_of_nonmembers(&f));
                assert_eq!(convergence_points(&f), convergence_points_pointwise(&f));
            }
        }
    }

    #[test]
    fn convergence() {
        let d = FiniteSpace::discrete(2);
        let top = neighborhood_filter(&d, &d.points());
        assert!(convergence_points(&top).is_empty());
        let everything = neighborhood_filter(&d, &ElementSet::new());
        assert_eq!(convergence_points(&everything), d.points());
        let s = FiniteSpace::sierpinski();
        let ua = neighborhood_filter(&s, &set(&[0]));
        assert_eq!(convergence_points(&ua), set(&[0, 1]));
    }

    #[test]
    fn closed_set_bijection() {
        assert_eq!(
            irreducible_filter_closed_set_bijection(&FiniteSpace::sierpinski())
                .unwrap()
                .len(),
            2
        );
        let d = FiniteSpace::discrete(2);
        let pairs = irreducible_filter_closed_set_bijection(&d).unwrap();
        assert_eq!(pairs.len(), 2);
        let top = neighborhood_filter(&d, &d.points());
        assert!(!is_irreducible_filter(&top));
        assert_eq!(
            irreducible_filter_closed_set_bijection(&FiniteSpace::discrete(1))
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn all_filters_are_principal_upsets() {
        use crate::filter::all_filters;
        use crate::limits::Limits;
        for space in [
            FiniteSpace::sierpinski(),
            FiniteSpace::discrete(3),
            FiniteSpace::indiscrete(2),
        ] {
            assert_eq!(
                all_top_filters(&space),
                all_filters(&space.top_monoid(), &Limits::default()).unwrap()
            );
        }
    }
}
