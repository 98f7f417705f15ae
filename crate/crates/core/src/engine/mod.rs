//! Certified distortion of arbitrary codebooks, Lloyd iteration and
//! multistart search.
//!
//! The support is explored through the tree of Cantor product cells. A cell
//! whose bounding square lies in one Voronoi region contributes its exact
//! distortion about the owner; cut cells are split. Cells still cut at the
//! depth limit contribute a rigorous interval.

mod distortion;
mod lloyd;
mod multistart;
pub mod rng;
mod tree;

pub use distortion::{default_tolerance, exact_distortion, CertifiedInterval, DEFAULT_MAX_DEPTH};
pub use lloyd::{lloyd, lloyd_step, relaxed_step, LloydOutcome};
pub use multistart::{multistart_search, MultistartReport, RunOutcome, RELAXED_DEPTH};
pub use tree::resolve_cell;
