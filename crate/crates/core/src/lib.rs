//! Rainbow Turán problems for directed stars: collections of digraphs,
//! detection of rainbow stars, extremal constructions, closed-form bounds and
//! an exact search oracle for small instances.

pub mod bounds;
pub mod constructions;
pub mod detector;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod verify;

pub use bounds::{exact_bound, BoundKind, BoundResult, BoundValue, Objective, Rational};
pub use detector::{find_rainbow_star, find_rainbow_star_naive, StarEmbedding};
pub use model::{DigraphCollection, ModelError, StarPattern};
