//! The filtrum: all filters of a monoid as a finite topological space, and
//! the maps induced by monoid homomorphisms.

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::filter::{all_filters, generate, ultrafilters, Filter, FilterFamily};
use crate::limits::Limits;
use crate::monoid::{product_monoid, ElementId, FiniteMonoid, MonoidHom, Product};
use crate::topo::space::{check_homeomorphism, union_closure, FiniteSpace};

/// All filters of a monoid with the topology generated by `D(f) = {F : f ∈ F}`.
///
/// Points are indices into [`Filtrum::points`], which is sorted by bitmask.
#[derive(Clone, Debug)]
pub struct Filtrum {
    monoid: FiniteMonoid,
    points: FilterFamily,
    /// `up[i]` = points whose filter contains filter `i`.
    up: Vec<ElementSet>,
    /// `basis[f]` = `D(f)`.
    basis: Vec<ElementSet>,
    /// `principal[f]` = point of `F(f)`.
    principal: Vec<usize>,
}

impl Filtrum {
    pub fn new(m: &FiniteMonoid, limits: &Limits) -> Result<Self> {
        let points = all_filters(m, limits)?;
        limits.check_points("filtrum", points.len())?;
        let k = points.len();
        let up = (0..k)
            .map(|i| {
                let fi = points.as_slice()[i].members();
                (0..k)
                    .filter(|&j| fi.is_subset(points.as_slice()[j].members()))
                    .collect()
            })
            .collect();
        let basis = m
            .elements()
            .map(|f| (0..k).filter(|&i| points.as_slice()[i].contains(f)).collect())
            .collect();
        let principal = m
            .elements()
            .map(|f| {
                let p = generate(m, &ElementSet::singleton(f));
                points.position(p.members()).expect("principal filters are enumerated")
            })
            .collect();
        Ok(Filtrum {
            monoid: m.clone(),
            points,
            up,
            basis,
            principal,
        })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn points(&self) -> &FilterFamily {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn all_points(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn point(&self, i: usize) -> &Filter {
        &self.points.as_slice()[i]
    }

    pub fn point_of(&self, members: &ElementSet) -> Option<usize> {
        self.points.position(members)
    }

    /// Whether filter `i` is contained in filter `j`.
    pub fn includes(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// Points above `i` in the inclusion order, `i` included.
    pub fn up_set(&self, i: usize) -> &ElementSet {
        &self.up[i]
    }

    /// The unit group, the least point.
    pub fn units_point(&self) -> usize {
        self.principal[self.monoid.one()]
    }

    /// The point of the principal filter `F(f)`.
    pub fn principal_point(&self, f: ElementId) -> usize {
        self.principal[f]
    }

    /// `D(f)`.
    pub fn basis_set(&self, f: ElementId) -> Result<&ElementSet> {
        self.monoid.check_index(f)?;
        Ok(&self.basis[f])
    }

    pub fn basis_sets(&self) -> &[ElementSet] {
        &self.basis
    }

    /// `D(N)`, the filters meeting `n`.
    pub fn basis_of_subset(&self, n: &ElementSet) -> Result<ElementSet> {
        self.monoid.check_set(n)?;
        let mut out = ElementSet::new();
        for f in n {
            out.union_with(&self.basis[f]);
        }
        Ok(out)
    }

    pub fn is_upward_closed(&self, u: &ElementSet) -> bool {
        u.iter().all(|i| self.up[i].is_subset(u))
    }

    /// A union of basis sets: upward closed, and each member filter has an
    /// element whose principal filter also lies in the set.
    pub fn is_open(&self, u: &ElementSet) -> bool {
        u.bound() <= self.len()
            && self.is_upward_closed(u)
            && u.iter()
                .all(|i| self.point(i).members().iter().any(|f| u.contains(self.principal[f])))
    }

    /// Points not containing the zero; all points if there is no zero.
    pub fn consistent_points(&self) -> ElementSet {
        (0..self.len()).filter(|&i| self.point(i).is_consistent()).collect()
    }

    pub fn ultrafilter_points(&self, limits: &Limits) -> Result<ElementSet> {
        let u = ultrafilters(&self.monoid, limits)?;
        Ok(u.iter()
            .map(|f| self.point_of(f.members()).expect("ultrafilters are points"))
            .collect())
    }

    /// A readable name for point `i`: its sorted member list.
    pub fn point_name(&self, i: usize) -> String {
        self.point(i).members().to_string()
    }

    /// The filtrum with every open set materialised.
    pub fn space(&self, limits: &Limits) -> Result<FiniteSpace> {
        let names = (0..self.len()).map(|i| self.point_name(i)).collect();
        let opens = union_closure(self.basis.iter().cloned(), limits)?;
        FiniteSpace::new(names, opens)
    }
}

fn check_carrier(f: &Filter, m: &FiniteMonoid) -> Result<()> {
    if f.carrier() != m {
        return Err(Error::CarrierMismatch);
    }
    Ok(())
}

/// `φ⁻¹(G)` for a filter `G` of the target.
pub fn pullback(h: &MonoidHom, g: &Filter) -> Result<Filter> {
    check_carrier(g, h.target())?;
    Ok(Filter::new_unchecked(h.source(), h.preimage(g.members())))
}

/// `F(φ(F))` for a filter `F` of the source.
pub fn pushforward(h: &MonoidHom, f: &Filter) -> Result<Filter> {
    check_carrier(f, h.source())?;
    Ok(generate(h.target(), &h.image(f.members())))
}

/// Fixfilters on both sides of a homomorphism and the bijection between them.
#[derive(Clone, Debug)]
pub struct Fixfilters {
    pub source: FilterFamily,
    pub target: FilterFamily,
    /// `(i, j)`: source fixfilter `i` is sent to target fixfilter `j`.
    pub pairs: Vec<(usize, usize)>,
}

impl Fixfilters {
    /// Every filter on both sides is fix.
    pub fn covers(&self, source_total: usize, target_total: usize) -> bool {
        self.source.len() == source_total && self.target.len() == target_total
    }
}

/// Computes fixfilters and verifies that pushforward and pullback are mutually
/// inverse, inclusion-preserving bijections between them.
pub fn fixfilters(h: &MonoidHom, limits: &Limits) -> Result<Fixfilters> {
    let src = all_filters(h.source(), limits)?;
    let tgt = all_filters(h.target(), limits)?;
    let mut source = Vec::new();
    for f in src.iter() {
        if pullback(h, &pushforward(h, f)?)? == *f {
            source.push(f.clone());
        }
    }
    let mut target = Vec::new();
    for g in tgt.iter() {
        if pushforward(h, &pullback(h, g)?)? == *g {
            target.push(g.clone());
        }
    }
    let source = FilterFamily::from_filters(h.source(), source)?;
    let target = FilterFamily::from_filters(h.target(), target)?;
    if source.len() != target.len() {
        return Err(Error::violation(
            "fixfilter bijection",
            format!("{} source and {} target fixfilters", source.len(), target.len()),
        ));
    }
    let mut pairs = Vec::with_capacity(source.len());
    for (i, f) in source.iter().enumerate() {
        let g = pushforward(h, f)?;
        let j = target
            .position(g.members())
            .ok_or_else(|| Error::violation("fixfilter bijection", format!("{f} is sent to {g}, which is not fix")))?;
        pairs.push((i, j));
    }
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            let below = source.as_slice()[i].is_subset(&source.as_slice()[k]);
            let image_below = target.as_slice()[j].is_subset(&target.as_slice()[l]);
            if below != image_below {
                return Err(Error::violation(
                    "fixfilter bijection",
                    format!("inclusion between source fixfilters {i} and {k} is not mirrored"),
                ));
            }
        }
    }
    Ok(Fixfilters { source, target, pairs })
}

/// The product theorem for `M1 × M2` with its verification data.
#[derive(Clone, Debug)]
pub struct ProductCertificate {
    pub product: Product,
    pub filtrum: Filtrum,
    pub left: Filtrum,
    pub right: Filtrum,
    /// Point `i` of the product filtrum goes to `(map[i].0, map[i].1)`.
    pub map: Vec<(usize, usize)>,
    /// Whether the open-set comparison ran on fully materialised topologies
    /// (it is skipped when they exceed the open-set limit).
    pub explicit: bool,
}

/// Verifies that `F ↦ (p1(F), p2(F))` is a homeomorphism
/// `Filt(M1 × M2) → Filt M1 × Filt M2`.
pub fn product_homeomorphism(m1: &FiniteMonoid, m2: &FiniteMonoid, limits: &Limits) -> Result<ProductCertificate> {
    let product = product_monoid(m1, m2, limits)?;
    let filtrum = Filtrum::new(&product.monoid, limits)?;
    let left = Filtrum::new(m1, limits)?;
    let right = Filtrum::new(m2, limits)?;
    let fail = |detail: String| Error::violation("product filtrum homeomorphism", detail);

    let mut map = Vec::with_capacity(filtrum.len());
    for f in filtrum.points().iter() {
        let a = pushforward(&product.first, f)?;
        let b = pushforward(&product.second, f)?;
        map.push((
            left.point_of(a.members()).unwrap(),
            right.point_of(b.members()).unwrap(),
        ));
    }
    let flat: Vec<usize> = map.iter().map(|&(a, b)| a * right.len() + b).collect();
    let image: ElementSet = flat.iter().copied().collect();
    if flat.len() != left.len() * right.len() || image.len() != flat.len() {
        return Err(fail(format!(
            "{} product filters against {} × {} pairs, or the map is not injective",
            flat.len(),
            left.len(),
            right.len()
        )));
    }
    // Basis sets correspond: D((f1, f2)) ↦ D(f1) × D(f2).
    for f1 in m1.elements() {
        for f2 in m2.elements() {
            let d = filtrum.basis_set(product.pair(f1, f2))?;
            let img: ElementSet = d.iter().map(|i| flat[i]).collect();
            let r = right.len();
            let d2 = &right.basis_sets()[f2];
            let expected: ElementSet = left.basis_sets()[f1]
                .iter()
                .flat_map(|a| d2.iter().map(move |b| a * r + b))
                .collect();
            if img != expected {
                return Err(fail(format!("D(({f1},{f2})) is not sent to D({f1}) × D({f2})")));
            }
        }
    }
    let explicit = match (filtrum.space(limits), left.space(limits), right.space(limits)) {
        (Ok(x), Ok(l), Ok(r)) => {
            let y = l.product(&r, limits)?;
            check_homeomorphism(&x, &y, &flat).map_err(fail)?;
            true
        }
        (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) if e.is_cap() => false,
        (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => return Err(e),
    };
    Ok(ProductCertificate {
        product,
        filtrum,
        left,
        right,
        map,
        explicit,
    })
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

    #[test]
    fn basis_sets_of_z6() {
        let l = Limits::default();
        let phi = Filtrum::new(&zn(6), &l).unwrap();
        assert_eq!(phi.basis_set(1).unwrap(), &phi.all_points());
        assert_eq!(phi.basis_set(0).unwrap(), &set(&[3]));
        // Points: {1,5}, {1,3,5}, {1,2,4,5}, M.
        assert_eq!(phi.basis_set(3).unwrap(), &set(&[1, 3]));
        assert!(phi.basis_set(6).is_err());
        assert_eq!(phi.units_point(), 0);
        assert_eq!(phi.basis_of_subset(&set(&[2, 3])).unwrap(), set(&[1, 2, 3]));
    }

    #[test]
    fn open_sets_of_z6() {
        let phi = Filtrum::new(&zn(6), &Limits::default()).unwrap();
        assert!(phi.is_open(&ElementSet::new()));
        assert!(phi.is_open(&phi.all_points()));
        assert!(phi.is_open(&set(&[3])));
        assert!(!phi.is_open(&set(&[0])));
        assert!(!phi.is_open(&set(&[1])));
        let space = phi.space(&Limits::default()).unwrap();
        assert_eq!(space.len(), 4);
        for u in (0..16u64).map(ElementSet::from_mask) {
            assert_eq!(phi.is_open(&u), space.is_open(&u), "{u}");
        }
        let closed: Vec<usize> = (0..4).filter(|&x| space.is_closed(&ElementSet::singleton(x))).collect();
        assert_eq!(closed, vec![phi.units_point()]);
    }

    #[test]
    fn small_filtrum_spaces() {
        let l = Limits::default();
        let one = Filtrum::new(&FiniteMonoid::trivial(), &l).unwrap().space(&l).unwrap();
        assert_eq!((one.len(), one.opens().len()), (1, 2));
        let z4 = Filtrum::new(&zn(4), &l).unwrap().space(&l).unwrap();
        assert_eq!((z4.len(), z4.opens().len()), (2, 3));
    }

    #[test]
    fn functors_on_a_quotient() {
        let l = Limits::default();
        let (m, n) = (zn(6), zn(3));
        let h = MonoidHom::new(m.clone(), n.clone(), (0..6).map(|x| x % 3).collect()).unwrap();
        let units = Filter::new(&n, set(&[1, 2])).unwrap();
        assert_eq!(pullback(&h, &units).unwrap().members(), &set(&[1, 2, 4, 5]));
        let fx = fixfilters(&h, &l).unwrap();
        assert_eq!(fx.target.len(), all_filters(&n, &l).unwrap().len());
        assert!(pullback(&h, &Filter::new(&m, m.units()).unwrap()).is_err());
    }

    #[test]
    fn pushforward_from_units_inclusion() {
        let m = zn(6);
        let g = FiniteMonoid::from_fn(2, 0, None, |a, b| a ^ b).unwrap();
        let h = MonoidHom::new(g.clone(), m.clone(), vec![1, 5]).unwrap();
        let one = Filter::new(&g, g.all()).unwrap();
        assert_eq!(pushforward(&h, &one).unwrap().members(), &m.units());
    }

    #[test]
    fn identity_fixes_everything() {
        let l = Limits::default();
        let m = zn(12);
        let fx = fixfilters(&MonoidHom::identity(&m), &l).unwrap();
        let total = all_filters(&m, &l).unwrap().len();
        assert!(fx.covers(total, total));
    }

    #[test]
    fn product_counts() {
        let l = Limits::default();
        let c = product_homeomorphism(&zn(2), &zn(2), &l).unwrap();
        assert_eq!(c.filtrum.len(), 4);
        assert!(c.explicit);
        let c = product_homeomorphism(&zn(4), &zn(6), &l).unwrap();
        assert_eq!(c.filtrum.len(), 8);
        let c = product_homeomorphism(&FiniteMonoid::trivial(), &zn(6), &l).unwrap();
        assert_eq!(c.map.iter().map(|p| p.1).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }
}
