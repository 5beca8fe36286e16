//! The embedding of a space into the filtrum of its open sets, and sobrification.

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::filtrum::Filtrum;
use crate::limits::Limits;
use crate::topo::filters::{
    all_top_filters, convergence_points, is_irreducible_filter, neighborhood_filter, TopFilter,
};
use crate::topo::maps::ContinuousMap;
use crate::topo::space::FiniteSpace;

/// `x ↦ U(x)` from a space into the filtrum of `(Top(X), ∩)`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub filtrum: Filtrum,
    pub space: FiniteSpace,
    /// Filtrum point of `U(x)` for each point `x`.
    pub map: Vec<usize>,
    /// Points of the filtrum that are consistent filters.
    pub consistent: ElementSet,
}

/// Properties of the embedding, each computed directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub continuous: bool,
    pub initial: bool,
    pub injective: bool,
    pub dense_in_consistent: bool,
}

pub fn embed(x: &FiniteSpace, limits: &Limits) -> Result<Embedding> {
    let filtrum = Filtrum::new(&x.top_monoid(), limits)?;
    let space = filtrum.space(limits)?;
    let map = (0..x.len())
        .map(|p| {
            let u = neighborhood_filter(x, &ElementSet::singleton(p));
            filtrum.point_of(u.members()).expect("neighbourhood filters are points")
        })
        .collect();
    let consistent = filtrum.consistent_points();
    Ok(Embedding {
        filtrum,
        space,
        map,
        consistent,
    })
}

impl Embedding {
    /// The embedding as a map into the whole filtrum.
    pub fn as_map(&self, x: &FiniteSpace) -> Result<ContinuousMap> {
        ContinuousMap::new(x, &self.space, self.map.clone())
    }

    /// The embedding as a map into the subspace of consistent filters.
    pub fn into_consistent(&self, x: &FiniteSpace) -> Result<ContinuousMap> {
        let sub = self.space.subspace(&self.consistent);
        let index: Vec<usize> = self.consistent.to_vec();
        let map = self
            .map
            .iter()
            .map(|p| {
                index
                    .binary_search(p)
                    .map_err(|_| Error::violation("embedding", "U(x) is inconsistent"))
            })
            .collect::<Result<Vec<_>>>()?;
        ContinuousMap::new(x, &sub, map)
    }

    pub fn report(&self, x: &FiniteSpace) -> EmbeddingReport {
        let pre = |o: &ElementSet| -> ElementSet { (0..x.len()).filter(|&p| o.contains(self.map[p])).collect() };
        let continuous = self.space.opens().iter().all(|o| x.is_open(&pre(o)));
        let mut preimages: Vec<ElementSet> = self.space.opens().iter().map(pre).collect();
        preimages.sort();
        preimages.dedup();
        let image: ElementSet = self.map.iter().copied().collect();
        EmbeddingReport {
            continuous,
            initial: preimages == x.opens(),
            injective: image.len() == x.len(),
            dense_in_consistent: self.space.is_dense_in(&image, &self.consistent),
        }
    }
}

/// The space of irreducible filters with opens `D(U) = {F : U ∈ F}`.
#[derive(Clone, Debug)]
pub struct Sobrification {
    pub space: FiniteSpace,
    pub points: Vec<TopFilter>,
    /// `x ↦ U(x)`.
    pub map: ContinuousMap,
    /// `open_map[i]` is the index in `space` of `D(U_i)`.
    pub open_map: Vec<usize>,
}

/// Builds `X'` and checks that `U ↦ D(U)` is a lattice isomorphism of open
/// sets and that `X'` is sober.
pub fn sobrify(x: &FiniteSpace, limits: &Limits) -> Result<Sobrification> {
    limits.check_opens("open sets", x.opens().len())?;
    let points: Vec<TopFilter> = all_top_filters(x)
        .iter()
        .map(|f: &Filter| TopFilter::from_filter(x, f.clone()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(is_irreducible_filter)
        .collect();
    limits.check_points("sobrification", points.len())?;
    let names = points
        .iter()
        .map(|f| {
            let a = convergence_points(f);
            let inner: Vec<&str> = a.iter().map(|p| x.names()[p].as_str()).collect();
            format!("[{}]", inner.join(","))
        })
        .collect();
    let d = |i: usize| -> ElementSet { (0..points.len()).filter(|&k| points[k].members().contains(i)).collect() };
    let opens: Vec<ElementSet> = (0..x.opens().len()).map(d).collect();
    let space = FiniteSpace::new(names, opens.clone())?;
    let open_map: Vec<usize> = opens.iter().map(|o| space.open_index(o).unwrap()).collect();
    let fail = |detail: String| Error::violation("sobrification", detail);
    let distinct: ElementSet = open_map.iter().copied().collect();
    if distinct.len() != x.opens().len() || space.opens().len() != x.opens().len() {
        return Err(fail("U ↦ D(U) is not a bijection of open sets".into()));
    }
    for (i, u) in x.opens().iter().enumerate() {
        for (j, v) in x.opens().iter().enumerate() {
            let meet = x.open_index(&u.intersection(v)).unwrap();
            let join = x.open_index(&u.union(v)).unwrap();
            if opens[meet] != opens[i].intersection(&opens[j]) || opens[join] != opens[i].union(&opens[j]) {
                return Err(fail(format!("U ↦ D(U) does not preserve ∩ and ∪ at {u}, {v}")));
            }
        }
    }
    if !space.is_sober() {
        return Err(fail("the sobrification is not sober".into()));
    }
    let map = (0..x.len())
        .map(|p| {
            let u = neighborhood_filter(x, &ElementSet::singleton(p));
            points.iter().position(|f| *f == u).expect("U(x) is irreducible")
        })
        .collect();
    let map = ContinuousMap::new(x, &space, map)?;
    Ok(Sobrification {
        space,
        points,
        map,
        open_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::space::check_homeomorphism;

    #[test]
    fn embedding_examples() {
        let l = Limits::default();
        let s = FiniteSpace::sierpinski();
        let e = embed(&s, &l).unwrap();
        assert_eq!(e.consistent.len(), 2);
        let r = e.report(&s);
        assert!(r.continuous && r.initial && r.injective && r.dense_in_consistent);
        let into = e.into_consistent(&s).unwrap();
        assert!(check_homeomorphism(&s, into.target(), into.map()).is_ok());

        let d = FiniteSpace::discrete(2);
        let e = embed(&d, &l).unwrap();
        assert_eq!(e.consistent.len(), 3);
        assert!(e.report(&d).dense_in_consistent);

        let one = FiniteSpace::discrete(1);
        assert_eq!(embed(&one, &l).unwrap().consistent.len(), 1);

        let i = FiniteSpace::indiscrete(2);
        let r = embed(&i, &l).unwrap().report(&i);
        assert!(!r.injective && r.initial);
    }

    #[test]
    fn sobrification_examples() {
        let l = Limits::default();
        for x in [FiniteSpace::sierpinski(), FiniteSpace::discrete(2)] {
            let s = sobrify(&x, &l).unwrap();
            assert!(check_homeomorphism(&x, &s.space, s.map.map()).is_ok());
        }
        let s = sobrify(&FiniteSpace::indiscrete(2), &l).unwrap();
        assert_eq!(s.space.len(), 1);
        assert_eq!(s.space.names(), &["[p0,p1]".to_string()]);
    }
}
