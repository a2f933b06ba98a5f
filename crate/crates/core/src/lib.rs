//! Executable pieces of JSJ theory on decidable instances: generalized
//! Baumslag-Solitar graphs of groups and their length functions, the
//! collapse lattice of a splitting, trees of cylinders from local data, and
//! classification of 2-orbifolds.

pub mod cylinders;
pub mod gbs;
pub mod io;
pub mod lattice;
pub mod orbifold;

pub use cylinders::{CylinderAtlas, CylinderError, QuotientGraph, SkeletonGraph};
pub use gbs::{GbsError, GenWord, GroupWord, LabeledGraph};
pub use io::{Document, IoError, Report};
pub use lattice::{CollapseTree, MasterSplitting};
pub use num_rational::Rational64;
pub use orbifold::{BoundaryCircle, Orbifold2, OrbifoldError};
