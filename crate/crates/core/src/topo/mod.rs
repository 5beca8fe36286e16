//! Finite topological spaces and topological filters.

pub mod characterize;
pub mod filters;
pub mod maps;
pub mod sober;
pub mod space;

pub use characterize::{characterize_filtrum_space, Characterization, CharacterizationFailure, FiltrumPresentation};
pub use filters::{
    all_top_filters, convergence_points, convergence_points_pointwise, filter_of_closed_set,
    irreducible_filter_closed_set_bijection, is_irreducible_by_union_of_nonmembers, is_irreducible_filter,
    is_irreducible_filter_exhaustive, is_quasicompact_filter, neighborhood_filter, TopFilter,
};
pub use maps::{
    all_filters_fix, closed_map_criterion, extension_is_embedding, extension_map, initial_topology, initiality_report,
    is_filterhaft, neighborhood_filters_fix, pullback_filter, pushforward_filter, ClosedMapReport, ContinuousMap,
    InitialityReport,
};
pub use sober::{embed, sobrify, Embedding, EmbeddingReport, Sobrification};
pub use space::{check_homeomorphism, default_names, FiniteSpace};
