//! Exact computations around the Klein and Wiman line arrangements in the
//! projective plane: finite reflection groups, their invariant rings, the
//! configurations of lines and multiple points, expected-dimension series,
//! negative-curve searches and symbolic-power containment.

pub mod configs;
pub mod divisors;
pub mod exactfield;
pub mod fatideals;
pub mod golden;
pub mod groups;
pub mod invariants;
pub mod linalg;
pub mod polyring;
pub mod series;
