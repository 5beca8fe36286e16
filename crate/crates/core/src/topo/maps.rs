//! Continuous maps between finite spaces and the filter maps they induce.

use std::fmt;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::filtrum::{pullback, pushforward, Filtrum};
use crate::limits::Limits;
use crate::monoid::MonoidHom;
use crate::topo::filters::{all_top_filters, neighborhood_filter, TopFilter};
use crate::topo::space::{union_closure, FiniteSpace};

/// A continuous map, stored as the image of every source point.
#[derive(Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    source: FiniteSpace,
    target: FiniteSpace,
    map: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(source: &FiniteSpace, target: &FiniteSpace, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::BadSpace(format!(
                "map has {} entries, source has {} points",
                map.len(),
                source.len()
            )));
        }
        if let Some(&y) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::BadSpace(format!("point {y} is outside the target")));
        }
        let f = ContinuousMap {
            source: source.clone(),
            target: target.clone(),
            map,
        };
        if let Some(v) = target.opens().iter().find(|v| !source.is_open(&f.preimage(v))) {
            return Err(Error::NotContinuous(v.to_string()));
        }
        Ok(f)
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        ContinuousMap {
            source: space.clone(),
            target: space.clone(),
            map: (0..space.len()).collect(),
        }
    }

    /// The inclusion of a subspace, as produced by [`FiniteSpace::subspace`].
    pub fn inclusion(space: &FiniteSpace, pts: &ElementSet) -> Self {
        ContinuousMap {
            source: space.subspace(pts),
            target: space.clone(),
            map: pts.to_vec(),
        }
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn preimage(&self, v: &ElementSet) -> ElementSet {
        (0..self.source.len()).filter(|&x| v.contains(self.map[x])).collect()
    }

    pub fn image(&self, u: &ElementSet) -> ElementSet {
        u.iter().map(|x| self.map[x]).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&self.source.points()).len() == self.target.len()
    }

    pub fn is_injective(&self) -> bool {
        self.image(&self.source.points()).len() == self.source.len()
    }

    /// Images of closed sets are closed.
    pub fn is_closed_map(&self) -> bool {
        self.source
            .closed_sets()
            .iter()
            .all(|a| self.target.is_closed(&self.image(a)))
    }

    /// The source opens are exactly the preimages of target opens.
    pub fn has_initial_topology(&self) -> bool {
        let mut pre: Vec<ElementSet> = self.target.opens().iter().map(|v| self.preimage(v)).collect();
        pre.sort();
        pre.dedup();
        pre == self.source.opens()
    }

    /// `V ↦ φ⁻¹(V)`, a homomorphism `Top(Y) → Top(X)` of monoids.
    pub fn opens_hom(&self) -> MonoidHom {
        let map = self
            .target
            .opens()
            .iter()
            .map(|v| self.source.open_index(&self.preimage(v)).expect("continuous"))
            .collect();
        MonoidHom::new_unchecked(self.target.top_monoid(), self.source.top_monoid(), map)
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &ContinuousMap) -> Result<ContinuousMap> {
        if self.target != then.source {
            return Err(Error::TypeMismatch("maps do not compose".into()));
        }
        Ok(ContinuousMap {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&y| then.map[y]).collect(),
        })
    }
}

impl fmt::Debug for ContinuousMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContinuousMap")
            .field("map", &self.map)
            .finish_non_exhaustive()
    }
}

fn on_source(phi: &ContinuousMap, f: &TopFilter) -> Result<()> {
    if f.space() != phi.source() {
        return Err(Error::TypeMismatch("filter does not live on the source space".into()));
    }
    Ok(())
}

fn on_target(phi: &ContinuousMap, g: &TopFilter) -> Result<()> {
    if g.space() != phi.target() {
        return Err(Error::TypeMismatch("filter does not live on the target space".into()));
    }
    Ok(())
}

/// `φ(F) = {V : φ⁻¹(V) ∈ F}`.
pub fn pushforward_filter(phi: &ContinuousMap, f: &TopFilter) -> Result<TopFilter> {
    on_source(phi, f)?;
    TopFilter::from_filter(phi.target(), pullback(&phi.opens_hom(), f.filter())?)
}

/// `φ⁻¹(G)`, the filter generated by `{φ⁻¹(V) : V ∈ G}`.
pub fn pullback_filter(phi: &ContinuousMap, g: &TopFilter) -> Result<TopFilter> {
    on_target(phi, g)?;
    TopFilter::from_filter(phi.source(), pushforward(&phi.opens_hom(), g.filter())?)
}

/// Whether every topological filter `F` on the source satisfies
/// `φ⁻¹(φ(F)) = F`.
pub fn all_filters_fix(phi: &ContinuousMap) -> Result<bool> {
    for f in all_top_filters(phi.source()).iter() {
        let f = TopFilter::from_filter(phi.source(), f.clone())?;
        if pullback_filter(phi, &pushforward_filter(phi, &f)?)? != f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every neighbourhood filter `U(x)` on the source is fix.
pub fn neighborhood_filters_fix(phi: &ContinuousMap) -> Result<bool> {
    for x in 0..phi.source().len() {
        let u = neighborhood_filter(phi.source(), &ElementSet::singleton(x));
        if pullback_filter(phi, &pushforward_filter(phi, &u)?)? != u {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the source carries the initial topology of `φ`.
pub fn initial_topology(phi: &ContinuousMap) -> bool {
    phi.has_initial_topology()
}

/// The three equivalent conditions, each computed on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InitialityReport {
    pub initial_topology: bool,
    pub all_filters_fix: bool,
    pub neighborhoods_fix: bool,
}

impl InitialityReport {
    pub fn consistent(&self) -> bool {
        self.initial_topology == self.all_filters_fix && self.all_filters_fix == self.neighborhoods_fix
    }
}

pub fn initiality_report(phi: &ContinuousMap) -> Result<InitialityReport> {
    Ok(InitialityReport {
        initial_topology: initial_topology(phi),
        all_filters_fix: all_filters_fix(phi)?,
        neighborhoods_fix: neighborhood_filters_fix(phi)?,
    })
}

/// Closedness computed from images of closed sets, and the filter criterion
/// `φ⁻¹(U(y)) = U(φ⁻¹(y))` for all `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedMapReport {
    pub closed: bool,
    pub criterion: bool,
}

pub fn closed_map_criterion(phi: &ContinuousMap) -> Result<ClosedMapReport> {
    let mut criterion = true;
    for y in 0..phi.target().len() {
        let uy = neighborhood_filter(phi.target(), &ElementSet::singleton(y));
        let fibre = phi.preimage(&ElementSet::singleton(y));
        if pullback_filter(phi, &uy)? != neighborhood_filter(phi.source(), &fibre) {
            criterion = false;
            break;
        }
    }
    Ok(ClosedMapReport {
        closed: phi.is_closed_map(),
        criterion,
    })
}

/// For every `y` and open `W ∋ y` there is an open `V` with `y ∈ V ⊆ W` such
/// that every open `V'` with `φ⁻¹(V') ⊆ φ⁻¹(V)` lies inside `W`.
pub fn is_filterhaft(phi: &ContinuousMap) -> bool {
    let opens = phi.target().opens();
    let pre: Vec<ElementSet> = opens.iter().map(|v| phi.preimage(v)).collect();
    (0..phi.target().len()).all(|y| {
        opens.iter().filter(|w| w.contains(y)).all(|w| {
            opens.iter().enumerate().any(|(i, v)| {
                v.contains(y)
                    && v.is_subset(w)
                    && opens
                        .iter()
                        .enumerate()
                        .all(|(j, v2)| !pre[j].is_subset(&pre[i]) || v2.is_subset(w))
            })
        })
    })
}

/// `ψ(y) = φ⁻¹(U(y))`, a point of the filtrum of `Top(X)` for each `y`.
pub fn extension_map(phi: &ContinuousMap) -> Result<Vec<TopFilter>> {
    (0..phi.target().len())
        .map(|y| pullback_filter(phi, &neighborhood_filter(phi.target(), &ElementSet::singleton(y))))
        .collect()
}

/// Whether `ψ` is a topological embedding of the target into the filtrum of
/// `Top(X)`: injective, and the target opens are exactly the preimages of
/// filtrum opens (enough to test on the basis sets `D(U)`).
pub fn extension_is_embedding(phi: &ContinuousMap, limits: &Limits) -> Result<bool> {
    let psi = extension_map(phi)?;
    let filtrum = Filtrum::new(&phi.source().top_monoid(), limits)?;
    let points: Vec<usize> = psi
        .iter()
        .map(|f| filtrum.point_of(f.members()).expect("filters are points"))
        .collect();
    let distinct: ElementSet = points.iter().copied().collect();
    if distinct.len() != points.len() {
        return Ok(false);
    }
    let y = phi.target();
    let pre: Vec<ElementSet> = filtrum
        .basis_sets()
        .iter()
        .map(|d| (0..y.len()).filter(|&k| d.contains(points[k])).collect())
        .collect();
    let generated = union_closure(pre.into_iter().chain([y.points()]), limits)?;
    Ok(generated == y.opens())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn continuity_is_checked() {
        let s = FiniteSpace::sierpinski();
        assert!(ContinuousMap::new(&s, &s, vec![1, 0]).is_err());
        assert!(ContinuousMap::new(&FiniteSpace::discrete(2), &s, vec![1, 0]).is_ok());
        assert!(ContinuousMap::new(&s, &s, vec![0]).is_err());
    }

    #[test]
    fn filter_maps() {
        let d = FiniteSpace::discrete(2);
        let pt = FiniteSpace::discrete(1);
        let collapse = ContinuousMap::new(&d, &pt, vec![0, 0]).unwrap();
        let top = neighborhood_filter(&d, &d.points());
        assert_eq!(
            pushforward_filter(&collapse, &top).unwrap(),
            neighborhood_filter(&pt, &set(&[0]))
        );
        let id = ContinuousMap::identity(&d);
        for x in 0..2 {
            let u = neighborhood_filter(&d, &ElementSet::singleton(x));
            assert_eq!(pushforward_filter(&id, &u).unwrap(), u);
            assert_eq!(pullback_filter(&id, &u).unwrap(), u);
        }
        assert!(pushforward_filter(&collapse, &neighborhood_filter(&pt, &set(&[0]))).is_err());
    }

    #[test]
    fn open_subspace_pullback() {
        let s = FiniteSpace::sierpinski();
        let inc = ContinuousMap::inclusion(&s, &set(&[0]));
        let u = neighborhood_filter(&s, &set(&[0]));
        let sub = inc.source().clone();
        assert_eq!(
            pullback_filter(&inc, &u).unwrap(),
            neighborhood_filter(&sub, &set(&[0]))
        );
    }

    #[test]
    fn initiality() {
        let d = FiniteSpace::discrete(2);
        let i = FiniteSpace::indiscrete(2);
        let f = ContinuousMap::new(&d, &i, vec![0, 1]).unwrap();
        let r = initiality_report(&f).unwrap();
        assert_eq!(
            r,
            InitialityReport {
                initial_topology: false,
                all_filters_fix: false,
                neighborhoods_fix: false
            }
        );
        let s = FiniteSpace::sierpinski();
        let r = initiality_report(&ContinuousMap::inclusion(&s, &set(&[1]))).unwrap();
        assert!(r.initial_topology && r.consistent());
    }

    #[test]
    fn closed_maps() {
        let s = FiniteSpace::sierpinski();
        let open_pt = ContinuousMap::inclusion(&s, &set(&[0]));
        assert_eq!(
            closed_map_criterion(&open_pt).unwrap(),
            ClosedMapReport {
                closed: false,
                criterion: false
            }
        );
        let closed_pt = ContinuousMap::inclusion(&s, &set(&[1]));
        assert_eq!(
            closed_map_criterion(&closed_pt).unwrap(),
            ClosedMapReport {
                closed: true,
                criterion: true
            }
        );
        let d = FiniteSpace::discrete(3);
        let f = ContinuousMap::new(&d, &FiniteSpace::discrete(2), vec![0, 1, 1]).unwrap();
        assert_eq!(
            closed_map_criterion(&f).unwrap(),
            ClosedMapReport {
                closed: true,
                criterion: true
            }
        );
    }

    #[test]
    fn filterhaft_maps() {
        let d = FiniteSpace::discrete(2);
        let s = FiniteSpace::sierpinski();
        let onto = ContinuousMap::new(&d, &s, vec![0, 1]).unwrap();
        assert!(is_filterhaft(&onto));
        assert!(extension_is_embedding(&onto, &Limits::default()).unwrap());
        // The open point alone cannot see the closed point.
        let open_pt = ContinuousMap::inclusion(&s, &set(&[0]));
        assert!(!is_filterhaft(&open_pt));
    }
}
