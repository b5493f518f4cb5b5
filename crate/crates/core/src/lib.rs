//! Verification and enumeration toolkit for `(t, λ)`-liking digraphs:
//! digraphs in which every `t` vertices have exactly `λ` common
//! out-neighbors.
//!
//! - [`digraph`], [`canon`], [`io`]: bitset digraphs, canonical labeling and
//!   the `.dg` text format
//! - [`analysis`]: exact liking checks and validators for the known necessary
//!   conditions
//! - [`search`]: isomorph-free exhaustive enumeration
//! - [`design`]: symmetric t-designs from diregular liking digraphs

pub mod analysis;
pub mod binomial;
pub mod canon;
pub mod design;
pub mod digraph;
pub mod fixtures;
pub mod io;
pub mod search;
pub mod vertex_set;

pub use analysis::{check_liking, liking_profile, LikingProfile, LikingReport, Precondition};
pub use canon::{canonical_form, CanonicalKey};
pub use digraph::{Digraph, DigraphError};
pub use vertex_set::VertexSet;
