//! Sub-k-domination number of a graph and the degree-sequence bounds around it.
//!
//! `sub_k(G)` is the least `t` with `t + (1/k) * (d_1 + ... + d_t) >= n` for the
//! non-increasing degree sequence `d_1 >= ... >= d_n`. It is a lower bound on
//! the k-domination number `gamma_k(G)`, computable in linear time.
//!
//! * [`graph`]: simple graphs, named families, mutations.
//! * [`invariants`]: `sub_k`, the Fink–Jacobson and stratified lower bounds.
//! * [`exact`]: the exact `gamma_k` oracle and Caro–Roditty upper bounds.
//! * [`criticality`]: ED/EA/VD-critical detection and their structural checks.
//! * [`io`]: graph6 and edge-list input, JSONL/CSV records.
//! * [`enumerate`]: all non-isomorphic graphs of small order.
//! * [`bench`]: timing of `sub_k` on synthetic degree sequences.

pub mod bench;
pub mod criticality;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod graph;
pub mod invariants;
pub mod io;

pub use error::{Error, Location, Result};
pub use exact::{gamma_k, KDomWitness, Oracle};
pub use graph::{FamilySpec, Graph};
pub use invariants::{sub_k, BoundReport, DegreeSequence, Rational};
