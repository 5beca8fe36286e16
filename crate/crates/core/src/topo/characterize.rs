//! Deciding whether a finite space is the filtrum of some monoid.
//!
//! The candidate monoid is the family of local open sets: open `U` having a
//! point `x` whose smallest neighbourhood is `U`. It is a monoid under
//! intersection, and the space is a filtrum iff six conditions on this family
//! hold, in which case `x ↦ {D local : x ∈ D}` is a homeomorphism onto its
//! filtrum.

use std::collections::BTreeSet;
use std::fmt;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::filtrum::Filtrum;
use crate::limits::Limits;
use crate::monoid::FiniteMonoid;
use crate::topo::space::{check_homeomorphism, FiniteSpace};

/// Why a space is not a filtrum, with the condition number it violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterizationFailure {
    /// 1: two points with the same neighbourhoods.
    NotT0 { x: usize, y: usize },
    /// 2: no point has the whole space as its only neighbourhood.
    NoGlobalPoint,
    /// 3: the intersection of two local opens is not local.
    NotIntersectionClosed { left: ElementSet, right: ElementSet },
    /// 4: an open set is not a union of local opens.
    NotABasis { open: ElementSet },
    /// 5: an intersection of local opens has no point below all others.
    NoPoorestPoint {
        family: Vec<ElementSet>,
        intersection: ElementSet,
    },
    /// 6: an inclusion `∩ D_i ⊆ D` not already witnessed by finitely many `D_i`.
    NoFiniteRefinement {
        family: Vec<ElementSet>,
        target: ElementSet,
    },
}

impl CharacterizationFailure {
    pub fn condition(&self) -> u8 {
        match self {
            Self::NotT0 { .. } => 1,
            Self::NoGlobalPoint => 2,
            Self::NotIntersectionClosed { .. } => 3,
            Self::NotABasis { .. } => 4,
            Self::NoPoorestPoint { .. } => 5,
            Self::NoFiniteRefinement { .. } => 6,
        }
    }
}

impl fmt::Display for CharacterizationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[ElementSet]| v.iter().map(ElementSet::to_string).collect::<Vec<_>>().join(" ");
        match self {
            Self::NotT0 { x, y } => write!(f, "points {x} and {y} have the same open neighbourhoods"),
            Self::NoGlobalPoint => write!(f, "no point has the whole space as its only open neighbourhood"),
            Self::NotIntersectionClosed { left, right } => {
                write!(f, "the intersection of the local opens {left} and {right} is not local")
            }
            Self::NotABasis { open } => write!(f, "the open set {open} is not a union of local opens"),
            Self::NoPoorestPoint { family, intersection } => write!(
                f,
                "the intersection {intersection} of [{}] has no point whose neighbourhoods all contain the rest",
                list(family)
            ),
            Self::NoFiniteRefinement { family, target } => {
                write!(
                    f,
                    "the intersection of [{}] lies in {target} but no finite part does",
                    list(family)
                )
            }
        }
    }
}

/// A successful characterisation.
#[derive(Clone, Debug)]
pub struct FiltrumPresentation {
    /// The local opens, ascending; element `i` of `monoid` is `local_opens[i]`.
    pub local_opens: Vec<ElementSet>,
    /// `(local opens, ∩)`.
    pub monoid: FiniteMonoid,
    pub filtrum: Filtrum,
    /// `psi[x]` is the filtrum point `{D : x ∈ D}`.
    pub psi: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Characterization {
    Success(Box<FiltrumPresentation>),
    Failure(CharacterizationFailure),
}

impl Characterization {
    pub fn is_success(&self) -> bool {
        matches!(self, Characterization::Success(_))
    }

    pub fn failed_condition(&self) -> Option<u8> {
        match self {
            Characterization::Success(_) => None,
            Characterization::Failure(f) => Some(f.condition()),
        }
    }
}

/// Open sets that are the smallest neighbourhood of one of their points.
pub fn local_opens(x: &FiniteSpace) -> Vec<ElementSet> {
    let set: BTreeSet<ElementSet> = (0..x.len()).map(|p| x.minimal_open(p).clone()).collect();
    set.into_iter().collect()
}

/// A point `z ∈ t` with `t ⊆ U(z)`, i.e. below every other point of `t`.
fn poorest_point(x: &FiniteSpace, t: &ElementSet) -> Option<usize> {
    t.iter().find(|&z| t.is_subset(x.minimal_open(z)))
}

/// Families of local opens to test in conditions (5) and (6): every subfamily
/// when there are at most 16, otherwise one family per distinct intersection.
fn families(local: &[ElementSet], all: &ElementSet) -> Vec<(Vec<usize>, ElementSet)> {
    if local.len() <= 16 {
        return (0u32..1 << local.len())
            .map(|mask| {
                let idx: Vec<usize> = (0..local.len()).filter(|&i| mask >> i & 1 == 1).collect();
                let meet = idx.iter().fold(all.clone(), |acc, &i| acc.intersection(&local[i]));
                (idx, meet)
            })
            .collect();
    }
    let mut seen: Vec<(Vec<usize>, ElementSet)> = vec![(Vec::new(), all.clone())];
    let mut known: BTreeSet<ElementSet> = BTreeSet::from([all.clone()]);
    let mut k = 0;
    while k < seen.len() {
        for (i, d) in local.iter().enumerate() {
            let meet = seen[k].1.intersection(d);
            if known.insert(meet.clone()) {
                let mut idx = seen[k].0.clone();
                idx.push(i);
                seen.push((idx, meet));
            }
        }
        k += 1;
    }
    seen
}

pub fn characterize_filtrum_space(x: &FiniteSpace, limits: &Limits) -> Result<Characterization> {
    let fail = |f| Ok(Characterization::Failure(f));
    if let Some((a, b)) = x.t0_witness() {
        return fail(CharacterizationFailure::NotT0 { x: a, y: b });
    }
    let local = local_opens(x);
    let all = x.points();
    if !local.contains(&all) {
        return fail(CharacterizationFailure::NoGlobalPoint);
    }
    for (i, a) in local.iter().enumerate() {
        for b in &local[i + 1..] {
            if local.binary_search(&a.intersection(b)).is_err() {
                return fail(CharacterizationFailure::NotIntersectionClosed {
                    left: a.clone(),
                    right: b.clone(),
                });
            }
        }
    }
    for u in x.opens() {
        let mut union = ElementSet::new();
        for d in local.iter().filter(|d| d.is_subset(u)) {
            union.union_with(d);
        }
        if union != *u {
            return fail(CharacterizationFailure::NotABasis { open: u.clone() });
        }
    }
    limits.check_elements("local open sets", local.len())?;
    let fams = families(&local, &all);
    let listed = |idx: &[usize]| idx.iter().map(|&i| local[i].clone()).collect::<Vec<_>>();
    for (idx, meet) in &fams {
        if poorest_point(x, meet).is_none() {
            return fail(CharacterizationFailure::NoPoorestPoint {
                family: listed(idx),
                intersection: meet.clone(),
            });
        }
    }
    // Condition (6), taken literally: a finite index set is its own finite
    // subfamily, so `J = I` is offered as the witness and checked.
    for (idx, meet) in &fams {
        for d in local.iter().filter(|d| meet.is_subset(d)) {
            let witness = idx.iter().fold(all.clone(), |acc, &i| acc.intersection(&local[i]));
            if !witness.is_subset(d) {
                return fail(CharacterizationFailure::NoFiniteRefinement {
                    family: listed(idx),
                    target: d.clone(),
                });
            }
        }
    }

    let k = local.len();
    let mut mul = Vec::with_capacity(k * k);
    for a in &local {
        for b in &local {
            mul.push(local.binary_search(&a.intersection(b)).expect("condition 3"));
        }
    }
    let one = local.binary_search(&all).expect("condition 2");
    let bottom = local.iter().fold(all.clone(), |acc, d| acc.intersection(d));
    let zero = local.binary_search(&bottom).ok();
    let monoid = FiniteMonoid::from_flat_unchecked(k, mul, one, zero);
    let filtrum = Filtrum::new(&monoid, limits)?;
    let psi: Vec<usize> = (0..x.len())
        .map(|p| {
            let members: ElementSet = (0..k).filter(|&i| local[i].contains(p)).collect();
            filtrum
                .point_of(&members)
                .ok_or_else(|| Error::violation("filtrum characterisation", format!("Ψ({p}) is not a filter")))
        })
        .collect::<Result<_>>()?;
    let target = filtrum.space(limits)?;
    check_homeomorphism(x, &target, &psi).map_err(|d| Error::violation("filtrum characterisation", d))?;
    Ok(Characterization::Success(Box::new(FiltrumPresentation {
        local_opens: local,
        monoid,
        filtrum,
        psi,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sierpinski_is_a_filtrum() {
        let c = characterize_filtrum_space(&FiniteSpace::sierpinski(), &Limits::default()).unwrap();
        let Characterization::Success(p) = c else {
            panic!("expected success")
        };
        assert_eq!(p.local_opens, vec![ElementSet::singleton(0), ElementSet::full(2)]);
        assert_eq!(p.filtrum.len(), 2);
    }

    #[test]
    fn failures() {
        let l = Limits::default();
        let c = characterize_filtrum_space(&FiniteSpace::discrete(2), &l).unwrap();
        assert_eq!(c.failed_condition(), Some(2));
        let c = characterize_filtrum_space(&FiniteSpace::indiscrete(2), &l).unwrap();
        assert_eq!(c.failed_condition(), Some(1));
    }

    #[test]
    fn filtrum_round_trip() {
        let l = Limits::default();
        for n in 1..=12 {
            let m = FiniteMonoid::integers_mod(n).unwrap();
            let space = Filtrum::new(&m, &l).unwrap().space(&l).unwrap();
            let c = characterize_filtrum_space(&space, &l).unwrap();
            assert!(c.is_success(), "n = {n}");
        }
    }

    #[test]
    fn intersection_failure() {
        // Two open points under a common generic point: their smallest
        // neighbourhoods meet in the empty set, which is not local.
        let l = Limits::default();
        let names = crate::topo::space::default_names(3);
        let x = FiniteSpace::from_preorder(names, |a, b| a == b || a == 0, &l).unwrap();
        let c = characterize_filtrum_space(&x, &l).unwrap();
        assert_eq!(c.failed_condition(), Some(3));
    }
}
