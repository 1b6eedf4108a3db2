//! Distance-two coloring of plane graphs with maximum degree at most five.
//!
//! The colorer peels the graph down one reducible configuration at a time
//! (a vertex deleted and its neighbours re-joined by chords, or a single edge
//! deleted), colors the trivial remainder, and extends the coloring back up
//! the chain with at most 17 colors. Alongside it sit an auditor for the
//! charge-redistribution argument that guarantees a reducible configuration
//! always exists, an exact chromatic-number oracle for small squares, and a
//! seeded generator for test corpora.

pub mod color;
pub mod discharge;
pub mod embed;
pub mod gen;
pub mod metrics;
pub mod reduce;
pub mod square;

/// Largest vertex degree the colorer accepts.
pub const MAX_DEGREE: usize = 5;

pub use embed::{EmbedError, EmbeddedGraph, Face, FaceId, IdMap, Vertex};
