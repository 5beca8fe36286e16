//! The built-in validation corpus: small named monoids, rings, homs, spaces
//! and continuous maps that the law suite runs over.

use crate::bitset::ElementSet;
use crate::error::Result;
use crate::factorial::truncated_monoid;
use crate::filter::all_filters;
use crate::limits::Limits;
use crate::monoid::{fraction_monoid, principal_quotient, product_monoid, FiniteMonoid, MonoidHom};
use crate::ring::{all_ideals, quotient, FiniteRing};
use crate::topo::{check_homeomorphism, default_names, ContinuousMap, FiniteSpace};

/// A corpus entry with a stable identifier.
#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named {
        name: name.into(),
        value,
    }
}

/// Largest product monoid built for the pair corpus.
pub const MAX_PAIR_SIZE: usize = 24;

pub fn monoids() -> Result<Vec<Named<FiniteMonoid>>> {
    let l = Limits::default();
    let mut out = vec![named("trivial", FiniteMonoid::trivial())];
    for n in 2..=12 {
        out.push(named(format!("z{n}"), FiniteMonoid::integers_mod(n)?));
    }
    out.push(named("z16", FiniteMonoid::integers_mod(16)?));
    for k in 2..=3 {
        out.push(named(format!("bool{k}"), FiniteRing::boolean_power(k)?.mult_monoid()));
    }
    out.push(named(
        "z2xz4",
        product_monoid(&FiniteMonoid::integers_mod(2)?, &FiniteMonoid::integers_mod(4)?, &l)?.monoid,
    ));
    for n in 3..=4 {
        out.push(named(format!("chain{n}"), FiniteMonoid::chain(n)?));
        out.push(named(format!("c{n}"), FiniteMonoid::cyclic_group(n)?));
    }
    out.push(named("cyclic_i2_p2", FiniteMonoid::cyclic_monoid(2, 2)?));
    out.push(named("nil3", FiniteMonoid::cyclic_monoid(2, 1)?));
    out.push(named("top_sierpinski", FiniteSpace::sierpinski().top_monoid()));
    out.push(named("top_chain3", FiniteSpace::chain(3).top_monoid()));
    out.push(named("top_discrete2", FiniteSpace::discrete(2).top_monoid()));
    out.push(named("factorial2", truncated_monoid(2, 2)?.0));
    Ok(out)
}

/// Pairs of corpus monoids whose product stays within [`MAX_PAIR_SIZE`].
pub fn monoid_pairs() -> Result<Vec<(Named<FiniteMonoid>, Named<FiniteMonoid>)>> {
    let base: Vec<Named<FiniteMonoid>> = monoids()?
        .into_iter()
        .filter(|m| {
            [
                "trivial",
                "z2",
                "z3",
                "z4",
                "z6",
                "c3",
                "chain3",
                "nil3",
                "top_sierpinski",
            ]
            .contains(&m.name.as_str())
        })
        .collect();
    let mut out = Vec::new();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.value.size() * b.value.size() <= MAX_PAIR_SIZE {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

pub fn rings() -> Result<Vec<Named<FiniteRing>>> {
    let l = Limits::default();
    let mut out = Vec::new();
    for n in 2..=12 {
        out.push(named(format!("z{n}"), FiniteRing::integers_mod(n)?));
    }
    for k in 1..=3 {
        out.push(named(format!("bool{k}"), FiniteRing::boolean_power(k)?));
    }
    let factors = [2, 3, 4, 5, 6, 8];
    for (i, &a) in factors.iter().enumerate() {
        for &b in &factors[i..] {
            if a * b <= 16 {
                let r = FiniteRing::product(&FiniteRing::integers_mod(a)?, &FiniteRing::integers_mod(b)?, &l)?;
                out.push(named(format!("z{a}xz{b}"), r));
            }
        }
    }
    Ok(out)
}

/// The submonoid of units with its inclusion.
pub fn units_inclusion(m: &FiniteMonoid) -> Result<MonoidHom> {
    let units = m.units().to_vec();
    let index = |x: usize| units.binary_search(&x).expect("units are closed under products");
    let zero = (units.len() == 1 && m.zero() == Some(units[0])).then_some(0);
    let u = FiniteMonoid::from_fn(units.len(), index(m.one()), zero, |a, b| {
        index(m.mul(units[a], units[b]))
    })?;
    MonoidHom::new(u, m.clone(), units)
}

/// Reduction `ℤ/n → ℤ/d` for `d | n`, multiplicatively.
pub fn reduction(n: usize, d: usize) -> Result<MonoidHom> {
    MonoidHom::new(
        FiniteMonoid::integers_mod(n)?,
        FiniteMonoid::integers_mod(d)?,
        (0..n).map(|x| x % d).collect(),
    )
}

pub fn homs() -> Result<Vec<Named<MonoidHom>>> {
    let l = Limits::default();
    let mut out = Vec::new();
    let keep = [
        "trivial",
        "z2",
        "z4",
        "z6",
        "z8",
        "z12",
        "bool2",
        "chain3",
        "c4",
        "nil3",
        "cyclic_i2_p2",
        "top_sierpinski",
        "factorial2",
    ];
    for m in monoids()?.into_iter().filter(|m| keep.contains(&m.name.as_str())) {
        let name = &m.name;
        let m = &m.value;
        out.push(named(format!("{name}/identity"), MonoidHom::identity(m)));
        out.push(named(format!("{name}/to_trivial"), MonoidHom::to_trivial(m)));
        out.push(named(format!("{name}/from_trivial"), MonoidHom::from_trivial(m)));
        out.push(named(format!("{name}/principal_quotient"), principal_quotient(m)?.hom));
        out.push(named(format!("{name}/units"), units_inclusion(m)?));
        for k in 2..=3 {
            out.push(named(format!("{name}/power{k}"), MonoidHom::power(m, k)));
        }
        for (i, f) in all_filters(m, &l)?.iter().enumerate() {
            out.push(named(format!("{name}/localize{i}"), fraction_monoid(m, f)?.hom));
        }
    }
    for (n, d) in [(4, 2), (6, 2), (6, 3), (8, 4), (12, 4), (12, 6)] {
        out.push(named(format!("z{n}/reduce{d}"), reduction(n, d)?));
    }
    for (a, b) in [(2, 3), (2, 4), (3, 4)] {
        let p = product_monoid(&FiniteMonoid::integers_mod(a)?, &FiniteMonoid::integers_mod(b)?, &l)?;
        out.push(named(format!("z{a}xz{b}/first"), p.first));
        out.push(named(format!("z{a}xz{b}/second"), p.second));
    }
    for r in rings()?.into_iter().filter(|r| r.value.size() <= 8) {
        for (i, a) in all_ideals(&r.value, &l)?.iter().enumerate() {
            out.push(named(
                format!("ring_{}/quotient{i}", r.name),
                quotient(&r.value, a)?.monoid_hom(&r.value),
            ));
        }
    }
    Ok(out)
}

/// Every partial order on `0..n`, as the specialisation order of a space.
pub fn t0_spaces(n: usize) -> Vec<FiniteSpace> {
    let l = Limits::default();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let leq = |a: usize, b: usize| {
            a == b
                || pairs
                    .iter()
                    .position(|&p| p == (a, b))
                    .is_some_and(|i| mask >> i & 1 == 1)
        };
        let antisymmetric = pairs.iter().all(|&(a, b)| !(leq(a, b) && leq(b, a)));
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq(a, b) && leq(b, c)) || leq(a, c))));
        if antisymmetric && transitive {
            out.push(FiniteSpace::from_preorder(default_names(n), leq, &l).expect("small space"));
        }
    }
    out
}

/// One representative per homeomorphism class.
pub fn up_to_homeomorphism(spaces: Vec<FiniteSpace>) -> Vec<FiniteSpace> {
    let mut reps: Vec<FiniteSpace> = Vec::new();
    for s in spaces {
        if !reps.iter().any(|r| homeomorphic(r, &s)) {
            reps.push(s);
        }
    }
    reps
}

fn homeomorphic(x: &FiniteSpace, y: &FiniteSpace) -> bool {
    if x.len() != y.len() || x.opens().len() != y.opens().len() {
        return false;
    }
    permutations(x.len())
        .iter()
        .any(|p| check_homeomorphism(x, y, p).is_ok())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// All labelled T0 spaces up to 4 points, the discrete, indiscrete and chain
/// spaces up to 5 points, a few non-T0 fixtures, and filtrum spaces of small
/// corpus monoids.
pub fn spaces() -> Result<Vec<Named<FiniteSpace>>> {
    let l = Limits::default();
    let mut out = Vec::new();
    for n in 1..=4 {
        for (i, s) in t0_spaces(n).into_iter().enumerate() {
            out.push(named(format!("t0_{n}_{i}"), s));
        }
    }
    for n in 1..=5 {
        out.push(named(format!("discrete{n}"), FiniteSpace::discrete(n)));
        out.push(named(format!("indiscrete{n}"), FiniteSpace::indiscrete(n)));
        out.push(named(format!("chain{n}"), FiniteSpace::chain(n)));
    }
    out.push(named("sierpinski", FiniteSpace::sierpinski()));
    let pairs = FiniteSpace::new(default_names(4), [0b0000u64, 0b0011, 0b1111].map(ElementSet::from_mask))?;
    out.push(named("paired_points", pairs));
    let doubled = FiniteSpace::new(default_names(3), [0b000u64, 0b001, 0b111].map(ElementSet::from_mask))?;
    out.push(named("open_point_over_pair", doubled));
    for m in monoids()? {
        let f = crate::filtrum::Filtrum::new(&m.value, &l)?;
        if f.len() <= 8 {
            out.push(named(format!("filtrum_{}", m.name), f.space(&l)?));
        }
    }
    Ok(out)
}

/// Small spaces for the map corpus, one per homeomorphism class up to 3
/// points plus an indiscrete pair.
pub fn map_spaces() -> Vec<Named<FiniteSpace>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for (i, s) in up_to_homeomorphism(t0_spaces(n)).into_iter().enumerate() {
            out.push(named(format!("t0_{n}_{i}"), s));
        }
    }
    out.push(named("indiscrete2", FiniteSpace::indiscrete(2)));
    out
}

/// Every continuous map between two spaces of [`map_spaces`].
pub fn continuous_maps() -> Vec<Named<ContinuousMap>> {
    let spaces = map_spaces();
    let mut out = Vec::new();
    for x in &spaces {
        for y in &spaces {
            let (n, k) = (x.value.len(), y.value.len());
            for code in 0..k.pow(n as u32) {
                let map: Vec<usize> = (0..n).map(|i| code / k.pow(i as u32) % k).collect();
                if let Ok(phi) = ContinuousMap::new(&x.value, &y.value, map) {
                    out.push(named(format!("{}->{}#{code}", x.name, y.name), phi));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| t0_spaces(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 19, 219]);
        let classes: Vec<usize> = (1..=4).map(|n| up_to_homeomorphism(t0_spaces(n)).len()).collect();
        assert_eq!(classes, vec![1, 2, 5, 16]);
    }

    #[test]
    fn corpus_builds() {
        assert!(monoids().unwrap().len() > 20);
        assert!(!monoid_pairs().unwrap().is_empty());
        assert!(homs().unwrap().len() > 50);
        assert!(rings().unwrap().len() > 15);
        assert!(!continuous_maps().is_empty());
    }
}
