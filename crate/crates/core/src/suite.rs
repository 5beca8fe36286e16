//! Law checks over concrete instances.
//!
//! Every law is a statement about filters, filtra or finite spaces that must
//! hold on each instance it applies to. A run produces one [`LawRecord`] per
//! (law, instance) pair, with a counterexample description on failure. Runs
//! are deterministic: records come out in a fixed order whatever the number of
//! worker threads.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::corpus;
use crate::error::{Error, Result};
use crate::factorial::{
    check_prime_subset_bijection, coprime, divides_some_power, intersect_filters, minimal_elements,
    minimal_elements_pairwise, principal_filter as support_filter, FactorialElement, PrimeSubsetFilter,
};
use crate::filter::{
    all_filters, all_filters_by_scan, generate, is_filter, maximal_filters_avoiding, principal_filter,
    satisfies_ultrafilter_criterion, ultrafilters, Filter, FilterFamily,
};
use crate::filtrum::{fixfilters, product_homeomorphism, pullback, pushforward, Filtrum};
use crate::limits::Limits;
use crate::monoid::{find_isomorphism, fraction_monoid, principal_quotient, product_monoid, FiniteMonoid, MonoidHom};
use crate::quadratic::{member_bounded, norm_refutes, Membership, QuadInt};
use crate::ring::{
    all_ideals, all_ideals_by_scan, boolean_ideal_filter_correspondence, check_avoiding_filters_vs_minimal_primes,
    filter_complement_decomposition, fix_modulo_ideal, minimal_ideals, minimal_prime_ultrafilter_duality, nilradical,
    prime_ideals, smallest_fix_filter, FiniteRing,
};
use crate::topo::{
    all_top_filters, characterize_filtrum_space, check_homeomorphism, closed_map_criterion, convergence_points,
    convergence_points_pointwise, embed, extension_is_embedding, initiality_report,
    irreducible_filter_closed_set_bijection, is_filterhaft, is_irreducible_by_union_of_nonmembers,
    is_irreducible_filter, is_irreducible_filter_exhaustive, is_quasicompact_filter, neighborhood_filter,
    pullback_filter, pushforward_filter, sobrify, Characterization, CharacterizationFailure, ContinuousMap,
    FiniteSpace, TopFilter,
};

/// Which group of laws to run: `Ch1` covers filters of monoids and rings and
/// the factorial and quadratic models, `Ch2` filtrum spaces and the functors
/// between them, `Ch3` topological filters of finite spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawSet {
    Ch1,
    Ch2,
    Ch3,
    All,
}

impl LawSet {
    pub fn includes(self, other: LawSet) -> bool {
        self == LawSet::All || self == other
    }

    pub fn name(self) -> &'static str {
        match self {
            LawSet::Ch1 => "ch1",
            LawSet::Ch2 => "ch2",
            LawSet::Ch3 => "ch3",
            LawSet::All => "all",
        }
    }
}

impl fmt::Display for LawSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawSet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ch1" => Ok(LawSet::Ch1),
            "ch2" => Ok(LawSet::Ch2),
            "ch3" => Ok(LawSet::Ch3),
            "all" => Ok(LawSet::All),
            _ => Err(format!("unknown law set {s:?}; expected ch1, ch2, ch3 or all")),
        }
    }
}

/// A named law with a one-line statement.
#[derive(Clone, Copy, Debug)]
pub struct Law {
    pub id: &'static str,
    pub anchor: &'static str,
    pub set: LawSet,
}

const fn law(id: &'static str, set: LawSet, anchor: &'static str) -> Law {
    Law { id, anchor, set }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawRecord {
    pub law: String,
    pub anchor: String,
    pub instance: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub laws: LawSet,
    pub summary: SuiteSummary,
    pub records: Vec<LawRecord>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, laws: LawSet, records: Vec<LawRecord>) -> Self {
        let passed = records.iter().filter(|r| r.passed).count();
        SuiteReport {
            suite: suite.into(),
            laws,
            summary: SuiteSummary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawRecord> {
        self.records.iter().filter(|r| !r.passed)
    }
}

/// `None` when the check holds, otherwise a counterexample.
type Outcome = Option<String>;

fn unless(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    (!ok).then(detail)
}

/// The first counterexample among `items`.
fn first<T>(items: impl IntoIterator<Item = T>, check: impl FnMut(T) -> Result<Outcome>) -> Result<Outcome> {
    items.into_iter().map(check).find_map(|r| r.transpose()).transpose()
}

struct Recorder<'a> {
    instance: &'a str,
    set: LawSet,
    records: Vec<LawRecord>,
}

impl<'a> Recorder<'a> {
    fn new(instance: &'a str, set: LawSet) -> Self {
        Recorder {
            instance,
            set,
            records: Vec::new(),
        }
    }

    fn wants(&self, set: LawSet) -> bool {
        self.set.includes(set)
    }

    /// Runs one law. Cap errors abort the run; any other error counts as a
    /// failure of the law, with the error as counterexample.
    fn check(&mut self, law: Law, run: impl FnOnce() -> Result<Outcome>) -> Result<()> {
        if !self.wants(law.set) {
            return Ok(());
        }
        let counterexample = match run() {
            Ok(outcome) => outcome,
            Err(e) if e.is_cap() => return Err(e),
            Err(e) => Some(e.to_string()),
        };
        self.records.push(LawRecord {
            law: law.id.to_string(),
            anchor: law.anchor.to_string(),
            instance: self.instance.to_string(),
            passed: counterexample.is_none(),
            counterexample,
        });
        Ok(())
    }

    fn finish(self) -> Vec<LawRecord> {
        self.records
    }
}

// ---------------------------------------------------------------------------
// Monoids

const MONOID_AXIOMS: Law = law(
    "monoid.axioms",
    LawSet::Ch1,
    "the table is associative, commutative, unital, with the declared zero absorbing",
);
const UNITS_IN_FILTERS: Law = law(
    "filter.units_in_every_filter",
    LawSet::Ch1,
    "every filter contains all units",
);
const DIVIDES_PREORDER: Law = law(
    "monoid.divides_preorder",
    LawSet::Ch1,
    "divisibility is reflexive and transitive",
);
const FRACTION_AT_UNITS: Law = law(
    "monoid.fraction_at_units",
    LawSet::Ch1,
    "localising at the units gives an isomorphic monoid",
);
const QUOTIENT_PRINCIPAL: Law = law(
    "monoid.principal_quotient",
    LawSet::Ch1,
    "the quotient by equality of principal filters sends F(f) to F(class of f) and keeps the filter count",
);
const ORACLE: Law = law(
    "filter.closure_matches_scan",
    LawSet::Ch1,
    "closure enumeration equals the exhaustive subset scan",
);
const GENERATE: Law = law(
    "filter.generate_is_intersection",
    LawSet::Ch1,
    "the filter generated by S is the intersection of all filters containing S",
);
const INTERSECTIONS: Law = law(
    "filter.intersections",
    LawSet::Ch1,
    "the intersection of two filters is a filter",
);
const BELOW_ULTRA: Law = law(
    "filter.below_ultrafilter",
    LawSet::Ch1,
    "every consistent filter lies in an ultrafilter",
);
const ULTRA_CRITERION: Law = law(
    "filter.ultrafilter_criterion",
    LawSet::Ch1,
    "a consistent filter is maximal iff every non-member has a power killed by a member",
);
const NZD: Law = law(
    "filter.nonzerodivisors",
    LawSet::Ch1,
    "in a reduced monoid the non-zero-divisors are the intersection of the ultrafilters",
);
const AVOIDING: Law = law(
    "filter.maximal_avoiding_pseudoideal",
    LawSet::Ch1,
    "a filter maximal among those missing a pseudoideal a is characterised by powers of non-members reaching a",
);

const BASIS_UP_SET: Law = law(
    "filtrum.basis_is_up_set",
    LawSet::Ch2,
    "D(f) is the set of filters containing F(f)",
);
const WHOLE_BASIS: Law = law(
    "filtrum.whole_space_basis",
    LawSet::Ch2,
    "D(f) is the whole space iff f is a unit",
);
const OPEN_UPWARD: Law = law(
    "filtrum.open_sets_upward",
    LawSet::Ch2,
    "open sets are closed upwards under inclusion",
);
const OPEN_RULE: Law = law(
    "filtrum.open_rule",
    LawSet::Ch2,
    "U is open iff it is upward closed and each member F contains f with F(f) in U",
);
const PRINCIPAL_IN_OPEN: Law = law(
    "filtrum.principal_in_open",
    LawSet::Ch2,
    "F(f) lies in an open U iff D(f) is contained in U",
);
const BASIS_ORDER: Law = law(
    "filtrum.basis_order",
    LawSet::Ch2,
    "D(f) is contained in D(g) iff F(g) is contained in F(f)",
);
const BASIS_COVERS: Law = law(
    "filtrum.basis_single_subcover",
    LawSet::Ch2,
    "every open cover of D(f) has a member containing D(f)",
);
const BASIS_LEAST: Law = law(
    "filtrum.basis_has_least_point",
    LawSet::Ch2,
    "an open set is a basis set iff it has a point included in all its points",
);
const T0_CLOSED_POINT: Law = law(
    "filtrum.t0_closed_point",
    LawSet::Ch2,
    "the filtrum is T0 and the units are its unique closed point",
);
const COMPACT_CONNECTED: Law = law(
    "filtrum.quasicompact_connected",
    LawSet::Ch2,
    "the filtrum is connected and every open cover contains the whole space",
);
const CONSISTENT_CLOSED: Law = law(
    "filtrum.consistent_closed",
    LawSet::Ch2,
    "consistent filters form a closed subspace in which D(f) is empty iff f is nilpotent",
);
const ULTRA_SUBSPACE: Law = law(
    "filtrum.ultrafilter_subspace",
    LawSet::Ch2,
    "ultrafilters form a Hausdorff subspace with a clopen basis, dense among consistent filters",
);
const QUOTIENT_HOMEO: Law = law(
    "filtrum.principal_quotient_homeomorphism",
    LawSet::Ch2,
    "pushing forward to the principal quotient is a homeomorphism of filtra",
);
const LOCALIZATION: Law = law(
    "filtrum.localization_fixfilters",
    LawSet::Ch2,
    "for M to its fractions at F, the fix source filters are those containing F and every target filter is fix",
);
const ROUND_TRIP: Law = law(
    "filtrum.characterization_round_trip",
    LawSet::Ch2,
    "a filtrum space is recognised as the filtrum of its local open sets",
);

/// Laws about one monoid. A table failing the monoid axioms yields a single
/// failed record.
pub fn monoid_table_laws(
    name: &str,
    table: &[Vec<usize>],
    one: usize,
    zero: Option<usize>,
    set: LawSet,
    limits: &Limits,
) -> Result<Vec<LawRecord>> {
    match FiniteMonoid::validate(table, one, zero) {
        Ok(m) => {
            let mut records = Recorder::new(name, set);
            records.check(MONOID_AXIOMS, || Ok(None))?;
            let mut rest = monoid_laws(name, &m, set, limits)?;
            let mut out = records.finish();
            out.append(&mut rest);
            Ok(out)
        }
        Err(e @ Error::Shape(_)) | Err(e @ Error::IndexOutOfRange { .. }) => Err(e),
        Err(e) => {
            let mut records = Recorder::new(name, set);
            records.check(MONOID_AXIOMS, || Ok(Some(e.to_string())))?;
            Ok(records.finish())
        }
    }
}

pub fn monoid_laws(name: &str, m: &FiniteMonoid, set: LawSet, limits: &Limits) -> Result<Vec<LawRecord>> {
    let mut r = Recorder::new(name, set);
    let filters = all_filters(m, limits)?;
    let has_ultra = m.zero().is_some_and(|z| z != m.one());

    r.check(UNITS_IN_FILTERS, || {
        let units = m.units();
        Ok(filters
            .iter()
            .find(|f| !units.is_subset(f.members()))
            .map(|f| format!("{f} misses a unit")))
    })?;
    r.check(DIVIDES_PREORDER, || {
        if let Some(x) = m.elements().find(|&x| !m.divisors(x).contains(x)) {
            return Ok(Some(format!("{x} does not divide itself")));
        }
        Ok(m.elements().find_map(|b| {
            m.divisors(b)
                .iter()
                .find(|&a| !m.divisors(a).is_subset(m.divisors(b)))
                .map(|a| format!("a divisor of {a} does not divide {b} although {a} | {b}"))
        }))
    })?;
    r.check(FRACTION_AT_UNITS, || {
        let loc = fraction_monoid(m, &principal_filter(m, m.one())?)?;
        Ok(unless(
            loc.hom.is_isomorphism() && find_isomorphism(m, &loc.monoid).is_some(),
            || {
                format!(
                    "fractions at the units have {} elements, not {}",
                    loc.monoid.size(),
                    m.size()
                )
            },
        ))
    })?;
    r.check(QUOTIENT_PRINCIPAL, || {
        let q = principal_quotient(m)?;
        let count = all_filters(&q.monoid, limits)?.len();
        if count != filters.len() {
            return Ok(Some(format!(
                "{count} filters on the quotient, {} on the monoid",
                filters.len()
            )));
        }
        first(m.elements(), |f| {
            let pf = principal_filter(m, f)?;
            let image = pushforward(&q.hom, &pf)?;
            let expected = principal_filter(&q.monoid, q.hom.apply(f))?;
            Ok(unless(image == expected && pullback(&q.hom, &image)? == pf, || {
                format!("F({f}) is sent to {image}, expected {expected}")
            }))
        })
    })?;
    if m.size() <= 16 {
        r.check(ORACLE, || {
            let scan = all_filters_by_scan(m, limits)?;
            Ok(unless(scan.member_sets() == filters.member_sets(), || {
                format!("closure {:?}, scan {:?}", filters.member_sets(), scan.member_sets())
            }))
        })?;
    }
    r.check(GENERATE, || {
        let subsets: Vec<ElementSet> = if m.size() <= 10 {
            (0u64..1 << m.size()).map(ElementSet::from_mask).collect()
        } else {
            let mut v = vec![ElementSet::new()];
            for a in m.elements() {
                for b in a..m.size() {
                    v.push([a, b].into_iter().collect());
                }
            }
            v
        };
        first(subsets, |s| {
            let meet = filters
                .iter()
                .filter(|f| s.is_subset(f.members()))
                .fold(m.all(), |acc, f| acc.intersection(f.members()));
            let g = generate(m, &s);
            Ok(unless(*g.members() == meet, || {
                format!("generate({s}) = {g}, intersection {meet}")
            }))
        })
    })?;
    r.check(INTERSECTIONS, || {
        let all = filters.as_slice();
        Ok(all.iter().enumerate().find_map(|(i, f)| {
            all[i + 1..].iter().find_map(|g| {
                let meet = f.members().intersection(g.members());
                unless(is_filter(m, &meet) && filters.contains(&meet), || {
                    format!("{f} ∩ {g} = {meet}")
                })
            })
        }))
    })?;
    if has_ultra {
        let ultra = ultrafilters(m, limits);
        r.check(BELOW_ULTRA, || {
            let ultra = ultra.clone()?;
            Ok(filters
                .iter()
                .filter(|f| f.is_consistent())
                .find(|f| !ultra.iter().any(|u| f.is_subset(u)))
                .map(|f| format!("{f} lies in no ultrafilter")))
        })?;
        r.check(ULTRA_CRITERION, || {
            let ultra = ultra.clone()?;
            first(filters.iter().filter(|f| f.is_consistent()), |f| {
                let criterion = satisfies_ultrafilter_criterion(f)?;
                Ok(unless(criterion == ultra.contains(f.members()), || {
                    format!("{f}: criterion {criterion}, maximal {}", !criterion)
                }))
            })
        })?;
        if m.is_reduced() {
            r.check(NZD, || {
                let ultra = ultra.clone()?;
                let nzd = m.nonzerodivisors()?;
                let meet = ultra.intersection();
                Ok(unless(nzd == meet, || {
                    format!("non-zero-divisors {nzd}, intersection of ultrafilters {meet}")
                }))
            })?;
        }
    }
    r.check(AVOIDING, || {
        let units = m.units();
        first(m.elements().filter(|&x| !m.is_unit(x)), |x| {
            let a: ElementSet = m.elements().map(|y| m.mul(x, y)).collect();
            maximal_filters_avoiding(m, &units, &a, limits)?;
            Ok(None)
        })
    })?;

    if r.wants(LawSet::Ch2) {
        filtrum_laws(&mut r, m, &filters, limits)?;
    }
    Ok(r.finish())
}

fn filtrum_laws(r: &mut Recorder<'_>, m: &FiniteMonoid, filters: &FilterFamily, limits: &Limits) -> Result<()> {
    let phi = Filtrum::new(m, limits)?;
    let space = phi.space(limits)?;
    let n = phi.len();

    r.check(BASIS_UP_SET, || {
        first(m.elements(), |f| {
            let d = phi.basis_set(f)?;
            let up = phi.up_set(phi.principal_point(f));
            Ok(unless(d == up, || format!("D({f}) = {d}, filters above F({f}) = {up}")))
        })
    })?;
    r.check(WHOLE_BASIS, || {
        let all = phi.all_points();
        Ok(m.elements()
            .find(|&f| (phi.basis_sets()[f] == all) != m.is_unit(f))
            .map(|f| format!("D({f}) = {}, unit: {}", phi.basis_sets()[f], m.is_unit(f))))
    })?;
    r.check(OPEN_UPWARD, || {
        Ok(space
            .opens()
            .iter()
            .find(|u| !phi.is_upward_closed(u))
            .map(|u| format!("{u} is open but not upward closed")))
    })?;
    r.check(OPEN_RULE, || {
        if n <= 12 {
            Ok((0u64..1 << n)
                .map(ElementSet::from_mask)
                .find(|u| phi.is_open(u) != space.is_open(u))
                .map(|u| {
                    format!(
                        "{u}: rule says {}, unions of basis sets say {}",
                        phi.is_open(&u),
                        space.is_open(&u)
                    )
                }))
        } else {
            Ok(space
                .opens()
                .iter()
                .find(|u| !phi.is_open(u))
                .map(|u| format!("the open set {u} fails the rule")))
        }
    })?;
    r.check(PRINCIPAL_IN_OPEN, || {
        Ok(space.opens().iter().find_map(|u| {
            m.elements()
                .find(|&f| u.contains(phi.principal_point(f)) != phi.basis_sets()[f].is_subset(u))
                .map(|f| format!("open {u}, element {f}"))
        }))
    })?;
    r.check(BASIS_ORDER, || {
        Ok(m.elements().find_map(|f| {
            m.elements()
                .find(|&g| {
                    let fg = phi.basis_sets()[f].is_subset(&phi.basis_sets()[g]);
                    let pf = phi
                        .point(phi.principal_point(g))
                        .is_subset(phi.point(phi.principal_point(f)));
                    fg != pf
                })
                .map(|g| format!("D({f}) ⊆ D({g}) disagrees with F({g}) ⊆ F({f})"))
        }))
    })?;
    r.check(BASIS_COVERS, || {
        Ok(m.elements().find_map(|f| {
            let d = &phi.basis_sets()[f];
            let mut union = ElementSet::new();
            for u in space.opens().iter().filter(|u| !d.is_subset(u)) {
                union.union_with(u);
            }
            unless(!d.is_subset(&union), || {
                format!("opens not containing D({f}) = {d} still cover it")
            })
        }))
    })?;
    r.check(BASIS_LEAST, || {
        let basis: Vec<&ElementSet> = phi.basis_sets().iter().collect();
        Ok(space.opens().iter().filter(|u| !u.is_empty()).find_map(|u| {
            let least = u.iter().any(|i| u.iter().all(|j| phi.includes(i, j)));
            unless(least == basis.contains(&u), || format!("{u}: has least point {least}"))
        }))
    })?;
    r.check(T0_CLOSED_POINT, || {
        if let Some((a, b)) = space.t0_witness() {
            return Ok(Some(format!("points {a} and {b} are not separated")));
        }
        let closed: Vec<usize> = (0..n).filter(|&i| space.is_closed(&ElementSet::singleton(i))).collect();
        Ok(unless(closed == [phi.units_point()], || {
            format!("closed points {closed:?}")
        }))
    })?;
    r.check(COMPACT_CONNECTED, || {
        Ok(unless(
            space.is_connected() && space.has_single_member_subcovers(),
            || {
                format!(
                    "connected {}, local {}",
                    space.is_connected(),
                    space.has_single_member_subcovers()
                )
            },
        ))
    })?;
    let consistent = phi.consistent_points();
    if m.zero().is_some() {
        r.check(CONSISTENT_CLOSED, || {
            if !space.is_closed(&consistent) {
                return Ok(Some(format!("consistent points {consistent} are not closed")));
            }
            Ok(m.elements()
                .find(|&f| phi.basis_sets()[f].is_disjoint(&consistent) != m.is_nilpotent(f))
                .map(|f| {
                    format!(
                        "element {f}: D(f) misses the consistent filters but nilpotent is {}",
                        m.is_nilpotent(f)
                    )
                }))
        })?;
    }
    if m.zero().is_some_and(|z| z != m.one()) {
        r.check(ULTRA_SUBSPACE, || {
            let ultra = phi.ultrafilter_points(limits)?;
            let sub = space.subspace(&ultra);
            Ok(unless(
                sub.is_hausdorff() && sub.has_clopen_basis() && space.is_dense_in(&ultra, &consistent),
                || format!("ultrafilter points {ultra}"),
            ))
        })?;
    }
    r.check(QUOTIENT_HOMEO, || {
        let q = principal_quotient(m)?;
        let target = Filtrum::new(&q.monoid, limits)?;
        let map = (0..n)
            .map(|i| {
                let image = pushforward(&q.hom, phi.point(i))?;
                target
                    .point_of(image.members())
                    .ok_or_else(|| Error::violation("principal quotient", format!("{image} is not a point")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(check_homeomorphism(&space, &target.space(limits)?, &map).err())
    })?;
    r.check(LOCALIZATION, || {
        first(filters.iter(), |f| {
            let loc = fraction_monoid(m, f)?;
            let fx = fixfilters(&loc.hom, limits)?;
            let above: Vec<ElementSet> = filters
                .iter()
                .filter(|g| f.is_subset(g))
                .map(|g| g.members().clone())
                .collect();
            let target_total = all_filters(&loc.monoid, limits)?.len();
            Ok(unless(
                fx.source.member_sets() == above && fx.target.len() == target_total,
                || {
                    format!(
                        "at {f}: fix source {:?}, filters above {above:?}",
                        fx.source.member_sets()
                    )
                },
            ))
        })
    })?;
    if n <= 12 {
        r.check(ROUND_TRIP, || match characterize_filtrum_space(&space, limits)? {
            Characterization::Success(_) => Ok(None),
            Characterization::Failure(f) => Ok(Some(format!("condition {} fails: {f}", f.condition()))),
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Pairs and homomorphisms

const PROJECTIONS: Law = law(
    "monoid.product_projections",
    LawSet::Ch1,
    "the projections of a product are homomorphisms",
);
const PRODUCT: Law = law(
    "filtrum.product",
    LawSet::Ch2,
    "the filtrum of a product is homeomorphic to the product of the filtra, with matching counts",
);

pub fn pair_laws(
    name: &str,
    m1: &FiniteMonoid,
    m2: &FiniteMonoid,
    set: LawSet,
    limits: &Limits,
) -> Result<Vec<LawRecord>> {
    let mut r = Recorder::new(name, set);
    r.check(PROJECTIONS, || {
        let p = product_monoid(m1, m2, limits)?;
        MonoidHom::new(p.monoid.clone(), m1.clone(), p.first.map().to_vec())?;
        MonoidHom::new(p.monoid, m2.clone(), p.second.map().to_vec())?;
        Ok(None)
    })?;
    r.check(PRODUCT, || {
        let cert = product_homeomorphism(m1, m2, limits)?;
        let (a, b, c) = (cert.filtrum.len(), cert.left.len(), cert.right.len());
        if a != b * c {
            return Ok(Some(format!("{a} filters on the product, {b} and {c} on the factors")));
        }
        Ok(unless(cert.explicit, || {
            "the explicit homeomorphism check did not run".to_string()
        }))
    })?;
    Ok(r.finish())
}

const HOM_AXIOMS: Law = law("hom.axioms", LawSet::Ch1, "the map preserves products and the identity");
const ROUND_TRIPS: Law = law(
    "hom.round_trips",
    LawSet::Ch2,
    "pullback after pushforward grows a filter and pushforward after pullback shrinks one",
);
const PULLBACK_CONTINUOUS: Law = law(
    "hom.pullback_continuous",
    LawSet::Ch2,
    "the preimage of D(f) under pullback is D(image of f)",
);
const PUSHFORWARD_CONTINUOUS: Law = law(
    "hom.pushforward_continuous",
    LawSet::Ch2,
    "preimages of basis sets under pushforward are open",
);
const FIX_HOMEO: Law = law(
    "hom.fixfilter_homeomorphism",
    LawSet::Ch2,
    "pushforward restricts to a homeomorphism between the fixfilter subspaces",
);
const SURJECTIVE_FIX: Law = law(
    "hom.surjective_fix",
    LawSet::Ch2,
    "for a surjective homomorphism every target filter is fix",
);
const PRINCIPAL_FIX: Law = law(
    "hom.principal_fix",
    LawSet::Ch2,
    "all source filters are fix iff all principal filters are fix",
);
const FUNCTORIAL: Law = law(
    "hom.functorial",
    LawSet::Ch2,
    "pushforward and pullback respect composition",
);

/// Laws about a homomorphism given as raw data.
pub fn hom_map_laws(
    name: &str,
    source: &FiniteMonoid,
    target: &FiniteMonoid,
    map: &[usize],
    set: LawSet,
    limits: &Limits,
) -> Result<Vec<LawRecord>> {
    match MonoidHom::new(source.clone(), target.clone(), map.to_vec()) {
        Ok(h) => {
            let mut r = Recorder::new(name, set);
            r.check(HOM_AXIOMS, || Ok(None))?;
            let mut out = r.finish();
            out.extend(hom_laws(name, &h, set, limits)?);
            Ok(out)
        }
        Err(e @ Error::NotAHom(_)) => {
            let mut r = Recorder::new(name, set);
            r.check(HOM_AXIOMS, || Ok(Some(e.to_string())))?;
            Ok(r.finish())
        }
        Err(e) => Err(e),
    }
}

pub fn hom_laws(name: &str, h: &MonoidHom, set: LawSet, limits: &Limits) -> Result<Vec<LawRecord>> {
    let mut r = Recorder::new(name, set);
    if !r.wants(LawSet::Ch2) {
        return Ok(r.finish());
    }
    let src = Filtrum::new(h.source(), limits)?;
    let tgt = Filtrum::new(h.target(), limits)?;
    let point = |phi: &Filtrum, f: &Filter| -> Result<usize> {
        phi.point_of(f.members())
            .ok_or_else(|| Error::violation("filter functors", format!("{f} is not a filter")))
    };

    r.check(ROUND_TRIPS, || {
        if let Some(f) = first(src.points().iter(), |f| {
            Ok(unless(f.is_subset(&pullback(h, &pushforward(h, f)?)?), || {
                format!("source filter {f} shrinks")
            }))
        })? {
            return Ok(Some(f));
        }
        first(tgt.points().iter(), |g| {
            Ok(unless(pushforward(h, &pullback(h, g)?)?.is_subset(g), || {
                format!("target filter {g} grows")
            }))
        })
    })?;
    r.check(PULLBACK_CONTINUOUS, || {
        let back = (0..tgt.len())
            .map(|j| point(&src, &pullback(h, tgt.point(j))?))
            .collect::<Result<Vec<_>>>()?;
        Ok(h.source().elements().find_map(|f| {
            let pre: ElementSet = (0..tgt.len())
                .filter(|&j| src.basis_sets()[f].contains(back[j]))
                .collect();
            let expected = &tgt.basis_sets()[h.apply(f)];
            unless(pre == *expected, || {
                format!("preimage of D({f}) is {pre}, D({}) is {expected}", h.apply(f))
            })
        }))
    })?;
    r.check(PUSHFORWARD_CONTINUOUS, || {
        let fwd = (0..src.len())
            .map(|i| point(&tgt, &pushforward(h, src.point(i))?))
            .collect::<Result<Vec<_>>>()?;
        Ok(h.target().elements().find_map(|g| {
            let pre: ElementSet = (0..src.len())
                .filter(|&i| tgt.basis_sets()[g].contains(fwd[i]))
                .collect();
            unless(src.is_open(&pre), || format!("preimage {pre} of D({g}) is not open"))
        }))
    })?;
    let fx = fixfilters(h, limits);
    r.check(FIX_HOMEO, || {
        let fx = fx.clone()?;
        let s_pts: ElementSet = fx.source.iter().map(|f| point(&src, f)).collect::<Result<_>>()?;
        let t_pts: ElementSet = fx.target.iter().map(|g| point(&tgt, g)).collect::<Result<_>>()?;
        let s_space = src.space(limits)?.subspace(&s_pts);
        let t_space = tgt.space(limits)?.subspace(&t_pts);
        let s_list = s_pts.to_vec();
        let t_list = t_pts.to_vec();
        let map = s_list
            .iter()
            .map(|&i| {
                let j = point(&tgt, &pushforward(h, src.point(i))?)?;
                t_list
                    .binary_search(&j)
                    .map_err(|_| Error::violation("fixfilters", format!("point {i} is sent outside the fixfilters")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(check_homeomorphism(&s_space, &t_space, &map).err())
    })?;
    if h.is_surjective() {
        r.check(SURJECTIVE_FIX, || {
            let fx = fx.clone()?;
            Ok(unless(fx.target.len() == tgt.len(), || {
                format!("{} of {} target filters are fix", fx.target.len(), tgt.len())
            }))
        })?;
    }
    r.check(PRINCIPAL_FIX, || {
        let fx = fx.clone()?;
        let all_fix = fx.source.len() == src.len();
        let principal_fix = h
            .source()
            .elements()
            .all(|f| fx.source.contains(src.point(src.principal_point(f)).members()));
        Ok(unless(all_fix == principal_fix, || {
            format!("all fix {all_fix}, principal fix {principal_fix}")
        }))
    })?;
    r.check(FUNCTORIAL, || {
        let q = principal_quotient(h.target())?;
        let comp = h.then(&q.hom)?;
        if let Some(f) = first(src.points().iter(), |f| {
            let direct = pushforward(&comp, f)?;
            let staged = pushforward(&q.hom, &pushforward(h, f)?)?;
            Ok(unless(direct == staged, || {
                format!("pushforward of {f}: {direct} versus {staged}")
            }))
        })? {
            return Ok(Some(f));
        }
        first(all_filters(&q.monoid, limits)?.iter(), |g| {
            let direct = pullback(&comp, g)?;
            let staged = pullback(h, &pullback(&q.hom, g)?)?;
            Ok(unless(direct == staged, || {
                format!("pullback of {g}: {direct} versus {staged}")
            }))
        })
    })?;
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// Rings

const IDEAL_ORACLE: Law = law(
    "ring.ideals_match_scan",
    LawSet::Ch1,
    "ideal closure enumeration equals the subset scan",
);
const COMPLEMENTS: Law = law(
    "ring.filter_complements",
    LawSet::Ch1,
    "a subset is a filter iff its complement is a union of prime ideals",
);
const MINIMAL_OVER: Law = law(
    "ring.maximal_avoiding_ideal",
    LawSet::Ch1,
    "the filters maximal among those missing an ideal a are the complements of the minimal primes over a",
);
const MINIMAL_PRIMES: Law = law(
    "ring.minimal_primes_ultrafilters",
    LawSet::Ch1,
    "ultrafilters are exactly the complements of minimal primes",
);
const BOOLEAN: Law = law(
    "ring.boolean_correspondence",
    LawSet::Ch1,
    "in a boolean ring a ↦ {1 - e} matches ideals with filters, and F is an ultrafilter iff it holds exactly one of e, 1 - e",
);
const MINIMAL_PRIME_SUBSPACE: Law = law(
    "ring.minimal_prime_subspace",
    LawSet::Ch2,
    "among prime complements the minimal-prime points form a Hausdorff, totally disconnected subspace dense in the consistent filters",
);
const FIX_MODULO: Law = law(
    "ring.fix_modulo_ideal",
    LawSet::Ch2,
    "F is fix modulo a iff f + a lies in F for all f in F and a in a",
);
const PRIME_FIX: Law = law(
    "ring.prime_complement_fix",
    LawSet::Ch2,
    "the complement of a prime p is fix modulo a iff a ⊆ p",
);
const SMALLEST_FIX: Law = law(
    "ring.smallest_fix",
    LawSet::Ch2,
    "F(1 + a) is the smallest filter fix modulo a",
);
const NILRADICAL_FIX: Law = law(
    "ring.nilradical_fix",
    LawSet::Ch2,
    "every filter is fix modulo the nilradical",
);

const RING_AXIOMS: Law = law(
    "ring.axioms",
    LawSet::Ch1,
    "addition is an abelian group, multiplication a commutative monoid, and they distribute",
);

/// Laws about a ring given by its tables, including those of its
/// multiplicative monoid. Tables failing the ring axioms yield a single
/// failed record.
pub fn ring_table_laws(
    name: &str,
    add: &[Vec<usize>],
    mul: &[Vec<usize>],
    set: LawSet,
    limits: &Limits,
) -> Result<Vec<LawRecord>> {
    match FiniteRing::new(add, mul) {
        Ok(ring) => {
            let mut r = Recorder::new(name, set);
            r.check(RING_AXIOMS, || Ok(None))?;
            let mut out = r.finish();
            out.extend(monoid_laws(name, &ring.mult_monoid(), set, limits)?);
            out.extend(ring_laws(name, &ring, set, limits)?);
            Ok(out)
        }
        Err(e @ Error::Shape(_)) | Err(e @ Error::IndexOutOfRange { .. }) => Err(e),
        Err(e) => {
            let mut r = Recorder::new(name, set);
            r.check(RING_AXIOMS, || Ok(Some(e.to_string())))?;
            Ok(r.finish())
        }
    }
}

/// Laws about a ring, not including those of its multiplicative monoid.
pub fn ring_laws(name: &str, ring: &FiniteRing, set: LawSet, limits: &Limits) -> Result<Vec<LawRecord>> {
    let mut r = Recorder::new(name, set);
    let m = ring.mult_monoid();
    let filters = all_filters(&m, limits)?;
    let ideals = all_ideals(ring, limits)?;
    let primes = prime_ideals(ring, limits)?;

    if ring.size() <= 16 {
        r.check(IDEAL_ORACLE, || {
            let scan = all_ideals_by_scan(ring, limits)?;
            Ok(unless(scan == ideals, || {
                format!("{} ideals by closure, {} by scan", ideals.len(), scan.len())
            }))
        })?;
    }
    r.check(COMPLEMENTS, || {
        first(filters.iter(), |f| {
            filter_complement_decomposition(ring, f, limits)?;
            Ok(None)
        })
    })?;
    if !ring.is_zero_ring() {
        r.check(MINIMAL_OVER, || {
            check_avoiding_filters_vs_minimal_primes(ring, limits)?;
            Ok(None)
        })?;
        r.check(MINIMAL_PRIMES, || {
            minimal_prime_ultrafilter_duality(ring, limits)?;
            Ok(None)
        })?;
    }
    if ring.is_boolean() {
        r.check(BOOLEAN, || {
            boolean_ideal_filter_correspondence(ring, limits)?;
            Ok(None)
        })?;
    }
    if !r.wants(LawSet::Ch2) {
        return Ok(r.finish());
    }
    r.check(MINIMAL_PRIME_SUBSPACE, || {
        let phi = Filtrum::new(&m, limits)?;
        let space = phi.space(limits)?;
        let point = |s: &ElementSet| {
            phi.point_of(&s.complement(ring.size()))
                .ok_or_else(|| Error::violation("prime complements", format!("the complement of {s} is not a filter")))
        };
        let prime_points: ElementSet = primes.iter().map(|p| point(p.members())).collect::<Result<_>>()?;
        let minimal: ElementSet = minimal_ideals(&primes)
            .iter()
            .map(|p| point(p.members()))
            .collect::<Result<_>>()?;
        let sub = space.subspace(&minimal);
        Ok(unless(
            minimal.is_subset(&prime_points)
                && sub.is_hausdorff()
                && sub.is_totally_disconnected()
                && space.is_dense_in(&minimal, &phi.consistent_points()),
            || format!("minimal prime points {minimal} among prime points {prime_points}"),
        ))
    })?;
    r.check(FIX_MODULO, || {
        first(ideals.iter(), |a| {
            first(filters.iter(), |f| {
                fix_modulo_ideal(ring, a, f)?;
                Ok(None)
            })
        })
    })?;
    r.check(PRIME_FIX, || {
        first(ideals.iter(), |a| {
            first(primes.iter(), |p| {
                let f = Filter::new(&m, p.members().complement(ring.size()))?;
                let fix = fix_modulo_ideal(ring, a, &f)?;
                let contained = a.members().is_subset(p.members());
                Ok(unless(fix == contained, || {
                    format!("ideal {a}, prime {p}: fix {fix}, contained {contained}")
                }))
            })
        })
    })?;
    r.check(SMALLEST_FIX, || {
        first(ideals.iter(), |a| {
            let s = smallest_fix_filter(ring, a);
            if !fix_modulo_ideal(ring, a, &s)? {
                return Ok(Some(format!("F(1 + {a}) = {s} is not fix")));
            }
            first(filters.iter(), |f| {
                Ok(unless(!fix_modulo_ideal(ring, a, f)? || s.is_subset(f), || {
                    format!("{f} is fix modulo {a} but misses F(1 + a) = {s}")
                }))
            })
        })
    })?;
    r.check(NILRADICAL_FIX, || {
        let nil = nilradical(ring);
        first(filters.iter(), |f| {
            Ok(unless(fix_modulo_ideal(ring, &nil, f)?, || {
                format!("{f} is not fix modulo the nilradical {nil}")
            }))
        })
    })?;
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// Factorial and quadratic models

const PRIME_SUBSETS: Law = law(
    "factorial.prime_subsets",
    LawSet::Ch1,
    "filters of a free commutative monoid correspond to subsets of the primes",
);
const REGENERATE: Law = law(
    "factorial.regenerate",
    LawSet::Ch1,
    "a filter is generated by the primes it contains",
);
const PRINCIPAL_SUPPORT: Law = law(
    "factorial.principal_support",
    LawSet::Ch1,
    "g lies in F(f) iff its support is inside that of f, and F(fg) is generated by F(f) and F(g)",
);
const RADICAL_MEMBERSHIP: Law = law(
    "factorial.intersection_membership",
    LawSet::Ch1,
    "g lies in every F(f_i) iff its support lies in the intersection of the supports",
);
const PRINCIPAL_INTERSECTION: Law = law(
    "factorial.principal_intersection",
    LawSet::Ch1,
    "an intersection of principal filters is principal, generated by an element with the common support",
);
const COPRIME: Law = law(
    "factorial.coprime",
    LawSet::Ch1,
    "F(f) ∩ F(g) is the units iff f and g are coprime",
);
const DICKSON: Law = law(
    "factorial.dickson",
    LawSet::Ch1,
    "the recursive minimal-element algorithm agrees with pairwise comparison",
);

/// Exponent vectors with entries `0..=cap`.
fn exponent_box(arity: usize, cap: u32) -> Vec<FactorialElement> {
    let side = cap as usize + 1;
    (0..side.pow(arity as u32))
        .map(|code| FactorialElement::new((0..arity).map(|i| (code / side.pow(i as u32) % side) as u32).collect()))
        .collect()
}

/// Laws of the factorial model, on prime sets of up to four elements and
/// 500 seeded random instances of the minimal-element problem.
pub fn factorial_laws(set: LawSet, limits: &Limits) -> Result<Vec<LawRecord>> {
    let mut r = Recorder::new("factorial", set);
    r.check(PRIME_SUBSETS, || {
        let wide = limits.with_max_elements(limits.max_elements.max(81));
        first(1..=4, |k| {
            let count = check_prime_subset_bijection(k, 2, &wide)?;
            Ok(unless(count == 1 << k, || format!("{count} filters for {k} primes")))
        })
    })?;
    r.check(REGENERATE, || {
        first(1..=4usize, |k| {
            first(0u64..1 << k, |mask| {
                let f = PrimeSubsetFilter::new(k, ElementSet::from_mask(mask))?;
                Ok(unless(
                    f.regenerate() == f && support_filter(&f.generator()) == f,
                    || format!("{:?}", f.primes()),
                ))
            })
        })
    })?;
    let elements = exponent_box(3, 2);
    // The exponent bound 2 suffices: supports are checked against powers up
    // to f^2, and every entry is at most 2.
    let member = |g: &FactorialElement, f: &FactorialElement| divides_some_power(g, f, 2);
    r.check(PRINCIPAL_SUPPORT, || {
        first(elements.iter(), |f| {
            first(elements.iter(), |g| {
                let by_power = member(g, f)?;
                let by_support = support_filter(f).contains(g);
                if by_power != by_support {
                    return Ok(Some(format!("g = {:?}, f = {:?}", g.exponents(), f.exponents())));
                }
                let fg = support_filter(&f.mul(g)?);
                let joined = support_filter(f).primes().union(support_filter(g).primes());
                Ok(unless(*fg.primes() == joined, || {
                    format!("F(fg) for {:?}, {:?}", f.exponents(), g.exponents())
                }))
            })
        })
    })?;
    r.check(RADICAL_MEMBERSHIP, || {
        first(elements.iter(), |f1| {
            first(elements.iter(), |f2| {
                let common = f1.support().intersection(&f2.support());
                Ok(elements.iter().find_map(|g| {
                    let in_both = member(g, f1).ok()? && member(g, f2).ok()?;
                    unless(in_both == g.support().is_subset(&common), || {
                        format!("g = {:?}", g.exponents())
                    })
                }))
            })
        })
    })?;
    r.check(PRINCIPAL_INTERSECTION, || {
        first(elements.iter(), |f1| {
            first(elements.iter(), |f2| {
                let meet = intersect_filters(&[support_filter(f1), support_filter(f2)])?;
                let gen = meet.generator();
                Ok(elements.iter().find_map(|g| {
                    let in_meet = member(g, f1).ok()? && member(g, f2).ok()?;
                    unless(in_meet == member(g, &gen).ok()?, || {
                        format!("{:?} ∩ {:?} at {:?}", f1.exponents(), f2.exponents(), g.exponents())
                    })
                }))
            })
        })
    })?;
    r.check(COPRIME, || {
        first(elements.iter(), |f| {
            first(elements.iter(), |g| {
                let units = intersect_filters(&[support_filter(f), support_filter(g)])?.is_units();
                Ok(unless(units == coprime(f, g)?, || {
                    format!("{:?}, {:?}", f.exponents(), g.exponents())
                }))
            })
        })
    })?;
    r.check(DICKSON, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0d1c_4507);
        first(0..500, |_| {
            let arity = rng.gen_range(1..=5);
            let count = rng.gen_range(1..=12);
            let set: Vec<Vec<u32>> = (0..count)
                .map(|_| (0..arity).map(|_| rng.gen_range(0..=10)).collect())
                .collect();
            let fast = minimal_elements(&set)?;
            let slow = minimal_elements_pairwise(&set)?;
            Ok(unless(fast == slow, || {
                format!("{set:?}: recursive {fast:?}, pairwise {slow:?}")
            }))
        })
    })?;
    Ok(r.finish())
}

const IDENTITIES: Law = law(
    "quadratic.identities",
    LawSet::Ch1,
    "(1+√-5)² = -4+2√-5, 9 = (2-√-5)(2+√-5) and (1+√-5)² = -2(2-√-5)",
);
const CERTIFICATES: Law = law(
    "quadratic.membership_certificates",
    LawSet::Ch1,
    "2 and 2-√-5 divide (1+√-5)², and 2-√-5 divides 3², each found at exponent 2",
);
const NORM_REFUTATION: Law = law(
    "quadratic.norm_refutation",
    LawSet::Ch1,
    "1+√-5 divides no power 2^n, n ≤ 20, refuted by norms",
);
const NORM_MULTIPLICATIVE: Law = law(
    "quadratic.norm_multiplicative",
    LawSet::Ch1,
    "the norm is multiplicative",
);
const NORM_DIVIDES: Law = law("quadratic.divides_norm", LawSet::Ch1, "g | f implies norm(g) | norm(f)");

pub fn quadratic_laws(set: LawSet) -> Result<Vec<LawRecord>> {
    let q = |a: i64, b: i64| QuadInt::new(a, b);
    let mut r = Recorder::new("quadratic", set);
    r.check(IDENTITIES, || {
        let ok =
            q(1, 1).pow(2) == q(-4, 2) && &q(2, -1) * &q(2, 1) == q(9, 0) && q(1, 1).pow(2) == &q(-2, 0) * &q(2, -1);
        Ok(unless(ok, || format!("(1+√-5)² = {}", q(1, 1).pow(2))))
    })?;
    r.check(CERTIFICATES, || {
        let cases = [
            (q(2, 0), q(1, 1), q(-2, 1)),
            (q(2, -1), q(1, 1), q(-2, 0)),
            (q(2, -1), q(3, 0), q(2, 1)),
        ];
        first(cases, |(g, f, w)| {
            let got = member_bounded(&g, &f, 4)?;
            let expected = Membership::Member {
                exponent: 2,
                witness: w,
            };
            Ok(unless(got == expected, || format!("{g} in F({f}): {got:?}")))
        })
    })?;
    r.check(NORM_REFUTATION, || {
        first(1..=20u32, |n| {
            let refuted = norm_refutes(&q(1, 1), &q(2, 0), n) && !q(1, 1).divides(&q(2, 0).pow(n))?;
            Ok(unless(refuted, || format!("n = {n}")))
        })
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let pairs: Vec<(QuadInt, QuadInt)> = (0..1000)
        .map(|_| {
            let mut draw = || q(rng.gen_range(-100..=100), rng.gen_range(-100..=100));
            (draw(), draw())
        })
        .collect();
    r.check(NORM_MULTIPLICATIVE, || {
        Ok(pairs
            .iter()
            .find_map(|(x, y)| unless((x * y).norm() == x.norm() * y.norm(), || format!("x = {x}, y = {y}"))))
    })?;
    r.check(NORM_DIVIDES, || {
        first(pairs.iter().filter(|(x, _)| !x.is_zero()), |(g, x)| {
            // Half the pairs are made divisible on purpose.
            let f = g * x;
            let zero = BigInt::from(0);
            for f in [&f, x] {
                if g.divides(f)? && f.norm() % g.norm() != zero {
                    return Ok(Some(format!("{g} | {f} but the norms do not divide")));
                }
            }
            Ok(None)
        })
    })?;
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// Spaces and continuous maps

const SPACE_AXIOMS: Law = law(
    "space.axioms",
    LawSet::Ch3,
    "the open sets contain ∅ and X and are closed under ∪ and ∩",
);
const TOP_FILTERS: Law = law(
    "space.filters_are_up_sets",
    LawSet::Ch3,
    "the topological filters are exactly the sets of opens above one open",
);
const IRREDUCIBLE_TESTS: Law = law(
    "space.irreducibility_tests_agree",
    LawSet::Ch3,
    "the irreducibility tests by members, by one union and by all subfamilies agree",
);
const FILTER_EXAMPLES: Law = law(
    "space.filter_examples",
    LawSet::Ch3,
    "U(x) is irreducible, ultrafilters are quasicompact, the inconsistent filter is quasicompact but not irreducible",
);
const CONVERGES: Law = law(
    "space.quasicompact_converges",
    LawSet::Ch3,
    "every quasicompact filter converges, and X minus the non-member opens is {x : U(x) ⊆ F}",
);
const CLOSED_SETS: Law = law(
    "space.irreducible_closed_sets",
    LawSet::Ch3,
    "irreducible filters correspond to nonempty irreducible closed sets",
);
const CONSISTENT_IRREDUCIBLE: Law = law(
    "space.consistent_quasicompact_irreducible",
    LawSet::Ch3,
    "a consistent quasicompact filter is irreducible",
);
const QC_INTERSECTION: Law = law(
    "space.quasicompact_intersection",
    LawSet::Ch3,
    "every filter is the intersection of the quasicompact filters containing it",
);
const SOBER_NEIGHBOURHOODS: Law = law(
    "space.sober_neighbourhood_filters",
    LawSet::Ch3,
    "on a sober space every filter F is U(T) for T = {x : F ⊆ U(x)}",
);
const EMBEDDING: Law = law(
    "space.embedding",
    LawSet::Ch3,
    "x ↦ U(x) is continuous and initial, dense among consistent filters, injective iff X is T0",
);
const EMBEDDING_FILTERHAFT: Law = law(
    "space.embedding_filterhaft",
    LawSet::Ch3,
    "x ↦ U(x) into the consistent filters is filterhaft",
);
const SOBRIFICATION: Law = law(
    "space.sobrification",
    LawSet::Ch3,
    "U ↦ D(U) is a lattice isomorphism onto the opens of the sober space of irreducible filters",
);
const SOBRIFICATION_IDEMPOTENT: Law = law(
    "space.sobrification_idempotent",
    LawSet::Ch3,
    "sobrifying twice gives a homeomorphic space, and sober spaces are their own sobrification",
);
const CHARACTERIZATION: Law = law(
    "space.characterization",
    LawSet::Ch3,
    "the filtrum test is decided, with a verified homeomorphism on success and a T0 failure exactly for non-T0 spaces",
);
const SUBSPACE_INITIAL: Law = law(
    "space.subspace_initial",
    LawSet::Ch3,
    "subspace inclusions have the initial topology, all filters fix and all U(x) fix",
);

/// Laws about a space given by names and open sets.
pub fn space_table_laws(
    name: &str,
    names: Vec<String>,
    opens: Vec<ElementSet>,
    set: LawSet,
    limits: &Limits,
) -> Result<Vec<LawRecord>> {
    match FiniteSpace::new(names, opens) {
        Ok(x) => {
            let mut r = Recorder::new(name, set);
            r.check(SPACE_AXIOMS, || Ok(None))?;
            let mut out = r.finish();
            out.extend(space_laws(name, &x, set, limits)?);
            Ok(out)
        }
        Err(e @ Error::NotClosedUnderOps { .. }) | Err(e @ Error::BadSpace(_)) => {
            let mut r = Recorder::new(name, set);
            r.check(SPACE_AXIOMS, || Ok(Some(e.to_string())))?;
            Ok(r.finish())
        }
        Err(e) => Err(e),
    }
}

pub fn space_laws(name: &str, x: &FiniteSpace, set: LawSet, limits: &Limits) -> Result<Vec<LawRecord>> {
    let mut r = Recorder::new(name, set);
    if !r.wants(LawSet::Ch3) {
        return Ok(r.finish());
    }
    limits.check_opens("open sets", x.opens().len())?;
    let family = all_top_filters(x);
    let filters: Vec<TopFilter> = family
        .iter()
        .map(|f| TopFilter::from_filter(x, f.clone()))
        .collect::<Result<_>>()?;
    let point = |p: usize| ElementSet::singleton(p);

    r.check(TOP_FILTERS, || {
        let m = x.top_monoid();
        let by_closure = all_filters(&m, limits)?;
        Ok(unless(
            by_closure.member_sets() == family.member_sets() && family.len() == x.opens().len(),
            || format!("{} filters by closure, {} open sets", by_closure.len(), x.opens().len()),
        ))
    })?;
    r.check(IRREDUCIBLE_TESTS, || {
        Ok(filters.iter().find_map(|f| {
            let a = is_irreducible_filter(f);
            let b = is_irreducible_by_union_of_nonmembers(f);
            let c = is_irreducible_filter_exhaustive(f, 16).unwrap_or(a);
            unless(a == b && b == c, || format!("{}: {a} {b} {c}", f.filter()))
        }))
    })?;
    r.check(FILTER_EXAMPLES, || {
        if let Some(p) = (0..x.len()).find(|&p| !is_irreducible_filter(&neighborhood_filter(x, &point(p)))) {
            return Ok(Some(format!("U({p}) is not irreducible")));
        }
        let inconsistent = neighborhood_filter(x, &ElementSet::new());
        if !is_quasicompact_filter(&inconsistent) || is_irreducible_filter(&inconsistent) {
            return Ok(Some("the inconsistent filter".into()));
        }
        let ultra = ultrafilters(&x.top_monoid(), limits)?;
        Ok(ultra
            .iter()
            .find(|u| !is_quasicompact_filter(&TopFilter::from_filter(x, (*u).clone()).expect("same carrier")))
            .map(|u| format!("ultrafilter {u} is not quasicompact")))
    })?;
    r.check(CONVERGES, || {
        Ok(filters.iter().find_map(|f| {
            let c = convergence_points(f);
            unless(
                c == convergence_points_pointwise(f) && (!is_quasicompact_filter(f) || !c.is_empty()),
                || format!("{} converges to {c}", f.filter()),
            )
        }))
    })?;
    r.check(CLOSED_SETS, || {
        irreducible_filter_closed_set_bijection(x)?;
        Ok(None)
    })?;
    r.check(CONSISTENT_IRREDUCIBLE, || {
        Ok(filters
            .iter()
            .find(|f| f.is_consistent() && is_quasicompact_filter(f) && !is_irreducible_filter(f))
            .map(|f| format!("{}", f.filter())))
    })?;
    r.check(QC_INTERSECTION, || {
        let qc: Vec<&TopFilter> = filters.iter().filter(|f| is_quasicompact_filter(f)).collect();
        let all_opens = ElementSet::full(x.opens().len());
        Ok(filters.iter().find_map(|f| {
            let meet = qc
                .iter()
                .filter(|g| f.members().is_subset(g.members()))
                .fold(all_opens.clone(), |acc, g| acc.intersection(g.members()));
            unless(meet == *f.members(), || format!("{} versus {meet}", f.filter()))
        }))
    })?;
    if x.is_sober() {
        r.check(SOBER_NEIGHBOURHOODS, || {
            Ok(filters.iter().find_map(|f| {
                let t: ElementSet = (0..x.len())
                    .filter(|&p| f.members().is_subset(neighborhood_filter(x, &point(p)).members()))
                    .collect();
                unless(neighborhood_filter(x, &t) == *f, || {
                    format!("{} is not U({t})", f.filter())
                })
            }))
        })?;
    }
    let embedding = embed(x, limits);
    r.check(EMBEDDING, || {
        let e = embedding.clone()?;
        let rep = e.report(x);
        Ok(unless(
            rep.continuous && rep.initial && rep.dense_in_consistent && rep.injective == x.is_t0(),
            || format!("{rep:?}"),
        ))
    })?;
    r.check(EMBEDDING_FILTERHAFT, || {
        let map = embedding.clone()?.into_consistent(x)?;
        Ok(unless(is_filterhaft(&map), || format!("map {:?}", map.map())))
    })?;
    let sober = sobrify(x, limits);
    r.check(SOBRIFICATION, || {
        sober.clone()?;
        Ok(None)
    })?;
    r.check(SOBRIFICATION_IDEMPOTENT, || {
        let s = sober.clone()?;
        let twice = sobrify(&s.space, limits)?;
        if let Err(d) = check_homeomorphism(&s.space, &twice.space, twice.map.map()) {
            return Ok(Some(format!("second sobrification: {d}")));
        }
        if x.is_sober() {
            return Ok(check_homeomorphism(x, &s.space, s.map.map()).err());
        }
        Ok(None)
    })?;
    r.check(CHARACTERIZATION, || {
        let c = characterize_filtrum_space(x, limits)?;
        let t0_failure = matches!(c, Characterization::Failure(CharacterizationFailure::NotT0 { .. }));
        Ok(unless(t0_failure != x.is_t0(), || {
            format!("verdict {c:?} for a space with T0 = {}", x.is_t0())
        }))
    })?;
    if x.len() <= 4 {
        r.check(SUBSPACE_INITIAL, || {
            first(1u64..1 << x.len(), |mask| {
                let inc = ContinuousMap::inclusion(x, &ElementSet::from_mask(mask));
                let rep = initiality_report(&inc)?;
                Ok(unless(
                    rep.initial_topology && rep.all_filters_fix && rep.neighborhoods_fix,
                    || format!("subspace {}: {rep:?}", ElementSet::from_mask(mask)),
                ))
            })
        })?;
    }
    Ok(r.finish())
}

const MAP_NEIGHBOURHOODS: Law = law(
    "map.neighbourhood_filters",
    LawSet::Ch3,
    "the pushforward of U(T) is U(image of T)",
);
const MAP_PRESERVES: Law = law(
    "map.preserves_filter_kinds",
    LawSet::Ch3,
    "pushforward preserves quasicompact and irreducible filters",
);
const MAP_ROUND_TRIPS: Law = law(
    "map.round_trips",
    LawSet::Ch3,
    "pushforward after pullback grows a target filter and pullback after pushforward shrinks a source filter",
);
const MAP_INITIAL: Law = law(
    "map.initial_iff_fix",
    LawSet::Ch3,
    "a map has the initial topology iff all filters are fix iff all U(x) are fix",
);
const MAP_CLOSED: Law = law(
    "map.closed_criterion",
    LawSet::Ch3,
    "a map is closed iff the pullback of U(y) is U(preimage of y) for all y",
);
const MAP_SURJECTIVE: Law = law(
    "map.surjective_filterhaft",
    LawSet::Ch3,
    "surjective continuous maps are filterhaft",
);
const MAP_EXTENSION: Law = law(
    "map.filterhaft_extension",
    LawSet::Ch3,
    "for a filterhaft dense embedding into a T0 space, y ↦ pullback of U(y) is an embedding",
);
const MAP_OPENS_HOM: Law = law(
    "map.opens_hom",
    LawSet::Ch3,
    "taking preimages is a homomorphism of open-set monoids",
);

const MAP_CONTINUOUS: Law = law("map.continuous", LawSet::Ch3, "preimages of open sets are open");

/// Laws about a point assignment between two spaces. A discontinuous
/// assignment yields a single failed record.
pub fn map_table_laws(
    name: &str,
    source: &FiniteSpace,
    target: &FiniteSpace,
    map: Vec<usize>,
    set: LawSet,
    limits: &Limits,
) -> Result<Vec<LawRecord>> {
    match ContinuousMap::new(source, target, map) {
        Ok(phi) => {
            let mut r = Recorder::new(name, set);
            r.check(MAP_CONTINUOUS, || Ok(None))?;
            let mut out = r.finish();
            out.extend(map_laws(name, &phi, set, limits)?);
            Ok(out)
        }
        Err(e @ Error::NotContinuous(_)) => {
            let mut r = Recorder::new(name, set);
            r.check(MAP_CONTINUOUS, || Ok(Some(e.to_string())))?;
            Ok(r.finish())
        }
        Err(e) => Err(e),
    }
}

pub fn map_laws(name: &str, phi: &ContinuousMap, set: LawSet, limits: &Limits) -> Result<Vec<LawRecord>> {
    let mut r = Recorder::new(name, set);
    if !r.wants(LawSet::Ch3) {
        return Ok(r.finish());
    }
    let (x, y) = (phi.source(), phi.target());
    limits.check_opens("open sets", x.opens().len().max(y.opens().len()))?;
    let on = |s: &FiniteSpace| -> Result<Vec<TopFilter>> {
        all_top_filters(s)
            .iter()
            .map(|f| TopFilter::from_filter(s, f.clone()))
            .collect()
    };
    let fx = on(x)?;
    let fy = on(y)?;

    r.check(MAP_NEIGHBOURHOODS, || {
        if x.len() > 12 {
            return Ok(None);
        }
        first((0u64..1 << x.len()).map(ElementSet::from_mask), |t| {
            let lhs = pushforward_filter(phi, &neighborhood_filter(x, &t))?;
            let rhs = neighborhood_filter(y, &phi.image(&t));
            Ok(unless(lhs == rhs, || format!("T = {t}")))
        })
    })?;
    r.check(MAP_PRESERVES, || {
        first(fx.iter(), |f| {
            let g = pushforward_filter(phi, f)?;
            let ok = (!is_quasicompact_filter(f) || is_quasicompact_filter(&g))
                && (!is_irreducible_filter(f) || is_irreducible_filter(&g));
            Ok(unless(ok, || format!("{} is sent to {}", f.filter(), g.filter())))
        })
    })?;
    r.check(MAP_ROUND_TRIPS, || {
        if let Some(d) = first(fy.iter(), |g| {
            let back = pushforward_filter(phi, &pullback_filter(phi, g)?)?;
            Ok(unless(g.members().is_subset(back.members()), || {
                format!("target filter {} shrinks", g.filter())
            }))
        })? {
            return Ok(Some(d));
        }
        first(fx.iter(), |f| {
            let back = pullback_filter(phi, &pushforward_filter(phi, f)?)?;
            Ok(unless(back.members().is_subset(f.members()), || {
                format!("source filter {} grows", f.filter())
            }))
        })
    })?;
    r.check(MAP_INITIAL, || {
        let rep = initiality_report(phi)?;
        Ok(unless(rep.consistent(), || format!("{rep:?}")))
    })?;
    r.check(MAP_CLOSED, || {
        let rep = closed_map_criterion(phi)?;
        Ok(unless(rep.closed == rep.criterion, || format!("{rep:?}")))
    })?;
    if phi.is_surjective() {
        r.check(MAP_SURJECTIVE, || {
            Ok(unless(is_filterhaft(phi), || format!("map {:?}", phi.map())))
        })?;
    }
    let image = phi.image(&x.points());
    let dense_embedding = phi.is_injective() && phi.has_initial_topology() && y.is_dense_in(&image, &y.points());
    if dense_embedding && y.is_t0() && is_filterhaft(phi) {
        r.check(MAP_EXTENSION, || {
            Ok(unless(extension_is_embedding(phi, limits)?, || {
                format!("map {:?}", phi.map())
            }))
        })?;
    }
    r.check(MAP_OPENS_HOM, || {
        let h = phi.opens_hom();
        MonoidHom::new(h.source().clone(), h.target().clone(), h.map().to_vec())?;
        Ok(None)
    })?;
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// The whole corpus

enum Job {
    Monoid(corpus::Named<FiniteMonoid>),
    Pair(String, FiniteMonoid, FiniteMonoid),
    Hom(corpus::Named<MonoidHom>),
    Ring(corpus::Named<FiniteRing>),
    Factorial,
    Quadratic,
    Space(corpus::Named<FiniteSpace>),
    Map(corpus::Named<ContinuousMap>),
}

impl Job {
    fn run(&self, set: LawSet, limits: &Limits) -> Result<Vec<LawRecord>> {
        match self {
            Job::Monoid(m) => monoid_laws(&format!("monoid:{}", m.name), &m.value, set, limits),
            Job::Pair(name, a, b) => pair_laws(name, a, b, set, limits),
            Job::Hom(h) => hom_laws(&format!("hom:{}", h.name), &h.value, set, limits),
            Job::Ring(r) => ring_laws(&format!("ring:{}", r.name), &r.value, set, limits),
            Job::Factorial => factorial_laws(set, limits),
            Job::Quadratic => quadratic_laws(set),
            Job::Space(x) => space_laws(&format!("space:{}", x.name), &x.value, set, &space_limits(limits)),
            Job::Map(m) => map_laws(&format!("map:{}", m.name), &m.value, set, limits),
        }
    }
}

/// The corpus holds spaces with up to 32 open sets, whose open-set monoids
/// are enumerated by closure; the subset scan cap is left alone.
fn space_limits(limits: &Limits) -> Limits {
    limits.with_max_elements(limits.max_elements.max(32))
}

fn corpus_jobs(set: LawSet) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    if set.includes(LawSet::Ch1) || set.includes(LawSet::Ch2) {
        jobs.extend(corpus::monoids()?.into_iter().map(Job::Monoid));
        for (a, b) in corpus::monoid_pairs()? {
            jobs.push(Job::Pair(format!("pair:{}x{}", a.name, b.name), a.value, b.value));
        }
        jobs.extend(corpus::rings()?.into_iter().map(Job::Ring));
    }
    if set.includes(LawSet::Ch2) {
        jobs.extend(corpus::homs()?.into_iter().map(Job::Hom));
    }
    if set.includes(LawSet::Ch1) {
        jobs.push(Job::Factorial);
        jobs.push(Job::Quadratic);
    }
    if set.includes(LawSet::Ch3) {
        jobs.extend(corpus::spaces()?.into_iter().map(Job::Space));
        jobs.extend(corpus::continuous_maps().into_iter().map(Job::Map));
    }
    Ok(jobs)
}

/// Runs `set` over the built-in corpus on the current rayon pool. The records
/// are in corpus order regardless of scheduling.
pub fn run_corpus(set: LawSet, limits: &Limits) -> Result<SuiteReport> {
    let jobs = corpus_jobs(set)?;
    let chunks: Vec<Vec<LawRecord>> = jobs.par_iter().map(|j| j.run(set, limits)).collect::<Result<_>>()?;
    Ok(SuiteReport::new("corpus", set, chunks.into_iter().flatten().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all_pass(records: &[LawRecord]) {
        let failed: Vec<&LawRecord> = records.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn small_instances_pass() {
        let l = Limits::default();
        for n in [1, 4, 6, 8] {
            let m = FiniteMonoid::integers_mod(n).unwrap();
            assert_all_pass(&monoid_laws("z", &m, LawSet::All, &l).unwrap());
        }
        let r = FiniteRing::integers_mod(12).unwrap();
        assert_all_pass(&ring_laws("z12", &r, LawSet::All, &l).unwrap());
        assert_all_pass(&space_laws("s", &FiniteSpace::sierpinski(), LawSet::All, &l).unwrap());
        assert_all_pass(&space_laws("i", &FiniteSpace::indiscrete(2), LawSet::All, &l).unwrap());
    }

    #[test]
    fn corrupted_table_fails_axioms() {
        let table = vec![vec![0, 1], vec![1, 1]];
        let records = monoid_table_laws("bad", &table, 0, Some(0), LawSet::All, &Limits::default()).unwrap();
        assert_eq!(records.len(), 1);
        assert!(!records[0].passed);
        assert!(records[0].counterexample.is_some());
    }

    #[test]
    fn law_set_parsing() {
        assert_eq!("ch2".parse::<LawSet>(), Ok(LawSet::Ch2));
        assert!("ch4".parse::<LawSet>().is_err());
        assert!(LawSet::All.includes(LawSet::Ch3) && !LawSet::Ch1.includes(LawSet::Ch3));
    }
}
