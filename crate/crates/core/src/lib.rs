//! Lipschitz normal embedding of superisolated surface singularities:
//! exact analysis of the tangent-cone curve, the LNE verdict, decorated
//! resolution graphs and numeric cross-checks.

pub mod algebra;
pub mod cluster;
pub mod curve;
pub mod graph;
pub mod numeric;
pub mod oracle;
pub mod report;
pub mod sis;
