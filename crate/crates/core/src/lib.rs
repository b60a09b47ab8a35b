//! Exact arithmetic for the refined Brill-Noether stratification of trigonal
//! curves by splitting type.
//!
//! Given a genus `g`, a Maroni invariant `n` and a line-bundle degree `d`,
//! the crate classifies every rank-3 splitting stratum of `Pic^d(C)`:
//! dimension, emptiness, irreducibility/connectedness, component and point
//! counts, and the symbolic theta-power class of the closure. Everything is
//! computed in exact integer arithmetic; counts use big integers.
//!
//! Module map:
//! - [`splitting`]: splitting-type arithmetic (codimension, cohomology,
//!   dominance order, enumeration, covering relations);
//! - [`hirzebruch`]: intersection theory and line-bundle section counts on
//!   the Hirzebruch surface `F_n`;
//! - [`theory`]: the stratum classifier and Brill-Noether decompositions;
//! - [`phi`]: an independent combinatorial model of the divisor-pair variety
//!   that cross-validates the classifier's counts;
//! - [`report`]: full-stratification reports, Hasse diagrams (JSON, text,
//!   DOT) and the oracle cross-validation sweep.

pub mod binom;
pub mod hirzebruch;
pub mod phi;
pub mod report;
pub mod splitting;
pub mod theory;
