//! Filtered and bifiltered complexes, shift and décalage, spectral pages.

mod chain;
mod complex;
pub(crate) mod fcomplex;
mod spectral;

pub use chain::{Chain, Direction, Filtration};
pub use complex::{Complex, GradedMap, Grading, Subquotient};
pub use fcomplex::{is_filtered_morphism, preserves, FilteredComplex, HODGE_F, W};
pub use spectral::{bigraded_cohomology, is_er0_quis, is_er_quis, page_map, SpectralPage};
