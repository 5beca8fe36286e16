//! Filters of finite commutative monoids and the finite spaces they form.
//!
//! A filter of a commutative monoid `M` is a subset containing 1 that is closed
//! under products and under taking divisors. The set of all filters, with basis
//! sets `D(f) = {F : f ∈ F}`, is a topological space called the filtrum of `M`.
//! This crate enumerates filters of finite monoids, rings and topologies, builds
//! filtrum spaces and checks their structural properties on concrete instances.

pub mod bitset;
pub mod corpus;
pub mod error;
pub mod factorial;
pub mod filter;
pub mod filtrum;
pub mod limits;
pub mod monoid;
pub mod quadratic;
pub mod ring;
pub mod suite;
pub mod topo;

pub use bitset::ElementSet;
pub use error::{Error, FilterAxiom, Result};
pub use filter::{
    all_filters, all_filters_by_scan, check_filter, generate, is_filter, maximal_filters_avoiding, principal_filter,
    ultrafilters, Filter, FilterFamily,
};
pub use filtrum::{fixfilters, product_homeomorphism, pullback, pushforward, Filtrum, Fixfilters};
pub use limits::Limits;
pub use monoid::{
    find_isomorphism, fraction_monoid, principal_quotient, product_monoid, validate_monoid, ElementId, FiniteMonoid,
    MonoidHom,
};
pub use quadratic::{member_bounded, Membership, QuadInt};
pub use ring::{FiniteRing, Ideal};
pub use topo::FiniteSpace;
