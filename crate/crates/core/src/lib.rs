//! Exact computations on invariant forms of complex nilmanifolds:
//! deformations of complex structures, special Hermitian metrics and the
//! first-order obstruction to extending astheno-Kähler metrics.

pub mod scalars;
pub mod exterior;
pub mod algebra;
pub mod linalg;
pub mod contraction;
pub mod deformation;
pub mod metrics;
pub mod cohomology;
pub mod conditions;
pub mod obstruction;
pub mod io;
